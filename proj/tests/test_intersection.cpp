#include <functional>
#include <random>

#include "doctest.h"
#include "fibrk/intersection.hpp"
#include "helpers.hpp"

using namespace fibrk;
using fibrk_tests::load_example;

namespace {

ClassMono mono_of(const ClassListRef& classes, std::map<std::string, int> exps) {
    ClassMono mono(static_cast<std::size_t>(classes->size()), 0);
    for (const auto& [name, e] : exps) mono[static_cast<std::size_t>(classes->index(name))] = e;
    return mono;
}

// Independent expansion of (polarization + j Lp)^total * aux: recursively
// pick a class from every factor, never using the binomial shortcut.
Poly brute_force_twisted(const TestConfigDatum& datum, const std::optional<ClassCombo>& aux,
                         int total) {
    const VarTableRef& vars = datum.table.vars();
    Poly j = Poly::variable(vars, "j");
    ClassCombo twisted = datum.polarization;
    if (datum.base_pullback) twisted.add(*datum.base_pullback, j);

    Poly result(vars);
    ClassMono mono(static_cast<std::size_t>(datum.table.classes()->size()), 0);
    std::function<void(int, Poly)> recurse = [&](int remaining, Poly weight) {
        if (remaining == 0) {
            result += weight * datum.table.eval(mono);
            return;
        }
        for (const auto& [cls, coeff] : twisted.parts) {
            ++mono[static_cast<std::size_t>(cls)];
            recurse(remaining - 1, weight * coeff);
            --mono[static_cast<std::size_t>(cls)];
        }
    };
    Poly seed(vars, Rational(1));
    if (aux) {
        for (const auto& [cls, coeff] : aux->parts) {
            ++mono[static_cast<std::size_t>(cls)];
            recurse(total, seed * coeff);
            --mono[static_cast<std::size_t>(cls)];
        }
    } else {
        recurse(total, seed);
    }
    return result;
}

}  // namespace

TEST_CASE("eval_product on the lc-base table") {
    DatumFile file = load_example("lcbase-symbolic");
    const IntersectionTable& table = file.datum.table;
    auto classes = table.classes();
    const VarTableRef& vars = table.vars();

    CHECK(table.eval(mono_of(classes, {{"H", 4}})).is_zero());
    CHECK(table.eval(mono_of(classes, {{"E", 4}})) == Poly::variable(vars, "u"));
    CHECK(table.eval(mono_of(classes, {{"H", 1}, {"E", 3}})) == Poly::variable(vars, "t"));

    try {
        table.eval(mono_of(classes, {{"H", 2}, {"E", 1}}));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegreeMismatch);
    }
}

TEST_CASE("missing monomials are named, zero_default monomials are zero") {
    auto classes = std::make_shared<const ClassList>(std::vector<std::string>{"A", "B"});
    auto vars = make_vars({"eps", "j"});
    IntersectionTable table(classes, vars, 2);
    table.set({2, 0}, Poly(vars, Rational(1)));
    table.add_zero_default(ZeroPattern{{{1, 2}}});  // B^2 and beyond vanish

    CHECK(table.eval({2, 0}) == Poly(vars, Rational(1)));
    CHECK(table.eval({0, 2}).is_zero());
    try {
        table.eval({1, 1});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MissingIntersectionNumber);
        CHECK(std::string(e.what()).find("A*B") != std::string::npos);
    }
}

TEST_CASE("expand_twisted_power at degree one") {
    auto classes = std::make_shared<const ClassList>(std::vector<std::string>{"Hp", "Lp"});
    auto vars = make_vars({"eps", "j"});
    IntersectionTable table(classes, vars, 1);
    table.set({1, 0}, Poly(vars, Rational(2)));
    table.set({0, 1}, Poly(vars, Rational(3)));
    TestConfigDatum datum(table);
    datum.fibration.n = 1;
    datum.fibration.m = 0;
    datum.polarization = ClassCombo::single(vars, 0);
    datum.trivial_pullback = ClassCombo::single(vars, 0);
    datum.base_pullback = 1;

    Poly expanded = expand_twisted_power(datum, std::nullopt, 1);
    Poly expected = Poly(vars, Rational(2)) + Rational(3) * Poly::variable(vars, "j");
    CHECK(expanded == expected);
}

TEST_CASE("expand_twisted_power equals brute-force multinomial enumeration") {
    std::mt19937 rng(424242);
    std::uniform_int_distribution<long> numd(-5, 5);
    std::uniform_int_distribution<long> dend(1, 3);
    for (int trial = 0; trial < 25; ++trial) {
        for (int total_degree = 2; total_degree <= 5; ++total_degree) {
            auto classes =
                std::make_shared<const ClassList>(std::vector<std::string>{"Hp", "Lp", "E"});
            auto vars = make_vars({"eps", "j", "t"});
            IntersectionTable table(classes, vars, total_degree);
            // All monomials of the right degree, with random small values.
            for (int a = 0; a <= total_degree; ++a)
                for (int b = 0; a + b <= total_degree; ++b) {
                    int c = total_degree - a - b;
                    Poly value(vars, Rational(numd(rng), dend(rng)));
                    value += Rational(numd(rng), dend(rng)) * Poly::variable(vars, "eps") *
                             Poly::variable(vars, "t");
                    table.set({a, b, c}, value);
                }
            TestConfigDatum datum(table);
            // n = total_degree so no structural pullback-power capping.
            datum.fibration.n = total_degree;
            datum.fibration.m = 0;
            ClassCombo pol = ClassCombo::single(vars, 0);
            pol.add(2, Rational(-1) * Poly::variable(vars, "eps"));
            datum.polarization = pol;
            datum.trivial_pullback = ClassCombo::single(vars, 0);
            datum.base_pullback = 1;

            std::optional<ClassCombo> aux;
            if (trial % 2 == 0) aux = ClassCombo::single(vars, 2);
            int total = aux ? total_degree - 1 : total_degree;
            if (total <= 0) continue;
            CHECK(expand_twisted_power(datum, aux, total) == brute_force_twisted(datum, aux, total));
        }
    }
}

TEST_CASE("lc-base H-bar^4 expansion") {
    DatumFile file = load_example("lcbase-symbolic");
    const VarTableRef& vars = file.datum.table.vars();
    Poly eps = Poly::variable(vars, "eps");
    Poly expected = Rational(-4) * eps.pow(3) * Poly::variable(vars, "t") +
                    eps.pow(4) * Poly::variable(vars, "u");
    CHECK(expand_twisted_power(file.datum, std::nullopt, 4) == expected);
}

TEST_CASE("scalar curvature") {
    FibrationComponent fib;
    fib.n = 0;
    fib.m = 1;
    fib.mixed.emplace(0, Rational(1));
    fib.canonical.emplace(std::make_pair(0, 0), Rational(-2));
    // P^1 with a degree-1 polarization: deg K = -2, S = 2.
    CHECK(scalar_curvature(fib, CurvatureScope::Whole) == Rational(2));

    FibrationComponent flat;
    flat.n = 1;
    flat.m = 1;
    flat.mixed.emplace(0, Rational(1));
    flat.mixed.emplace(1, Rational(2));
    flat.canonical.emplace(std::make_pair(1, 0), Rational(0));
    flat.canonical.emplace(std::make_pair(0, 1), Rational(0));
    CHECK(scalar_curvature(flat, CurvatureScope::Whole) == Rational(0));
    CHECK(scalar_curvature(flat, CurvatureScope::Fiber) == Rational(0));

    // Relatively Fano: lambda H = K + f*L0 with lambda = 2 gives S_fiber = -m lambda.
    FibrationComponent fano;
    fano.n = 1;
    fano.m = 2;
    fano.mixed.emplace(0, Rational(3));
    fano.canonical.emplace(std::make_pair(1, 1), Rational(6));
    CHECK(scalar_curvature(fano, CurvatureScope::Fiber) == Rational(-4));

    FibrationComponent degenerate = fib;
    degenerate.mixed[0] = Rational(0);
    CHECK_THROWS_AS(scalar_curvature(degenerate, CurvatureScope::Whole), Error);
}

TEST_CASE("scalar curvature is scale-invariant") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> numd(1, 9);
    for (int trial = 0; trial < 40; ++trial) {
        FibrationComponent fib;
        fib.n = 2;
        fib.m = 1;
        fib.mixed.emplace(0, Rational(numd(rng)));
        fib.mixed.emplace(2, Rational(numd(rng)));
        fib.canonical.emplace(std::make_pair(2, 0), Rational(numd(rng) - 5));
        fib.canonical.emplace(std::make_pair(0, 2), Rational(numd(rng) - 5));
        Rational scale(numd(rng), numd(rng));
        FibrationComponent scaled = fib;
        for (auto& [k, v] : scaled.mixed) v *= scale;
        for (auto& [k, v] : scaled.canonical) v *= scale;
        CHECK(scalar_curvature(fib, CurvatureScope::Whole) ==
              scalar_curvature(scaled, CurvatureScope::Whole));
        CHECK(scalar_curvature(fib, CurvatureScope::Fiber) ==
              scalar_curvature(scaled, CurvatureScope::Fiber));
    }
}

TEST_CASE("twist shifts the fibration data") {
    DatumFile file = load_example("product-curve");
    TestConfigDatum twisted = twist_datum(file.datum, Rational(1));
    // H' = H + L on P^1 x P^1 with H = O(1,1): H'^2 = (h + 2l)^2 = 4, H'.L = 1.
    CHECK(mixed_volume(twisted.fibration, 1) == Rational(4));
    CHECK(mixed_volume(twisted.fibration, 0) == Rational(1));
    // K.H' = K.H + K.L = -4 - 2 = -6.
    CHECK(canonical_product(twisted.fibration, 1, 0) == Rational(-6));
}
