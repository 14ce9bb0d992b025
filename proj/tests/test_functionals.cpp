#include <algorithm>
#include <random>

#include "doctest.h"
#include "fibrk/functionals.hpp"
#include "helpers.hpp"

using namespace fibrk;
using fibrk_tests::load_example;

namespace {

Poly eps_poly(const TestConfigDatum& d) { return Poly::variable(d.table.vars(), "eps"); }

}  // namespace

TEST_CASE("trivial configuration: every functional vanishes") {
    DatumFile file = load_example("trivial");
    FunctionalReport report = functional_report(file.datum, true);
    CHECK(report.e_na.is_zero());
    CHECK(report.i_na.is_zero());
    CHECK(report.j_na.is_zero());
    CHECK(report.h_na.is_zero());
    CHECK(report.m_na.is_zero());
    CHECK(report.r_na.is_zero());
    CHECK(report.df.is_zero());
    for (const IdentityCheck& check : report.identities_checked) CHECK(check.holds);
}

TEST_CASE("point blow-up of P1: the surface oracle values") {
    DatumFile file = load_example("p1-point");
    const TestConfigDatum& d = file.datum;
    Poly eps = eps_poly(d);

    CHECK(e_na(d) == Rational(-1, 2) * eps.pow(2));
    CHECK(i_na(d) == eps.pow(2));
    CHECK(j_na(d) == Rational(1, 2) * eps.pow(2));
    CHECK(h_na(d) == eps);
    CHECK(m_na(d) == eps - eps.pow(2));
    CHECK(df_intersection(d) == m_na(d));  // reduced central fiber
    CHECK(r_na(d).is_zero());
    // Normalized identity and the norm equality at N = 1.
    CHECK(j_na(d) == -e_na(d));
    CHECK(i_na(d) == Rational(2) * j_na(d));
}

TEST_CASE("lc-base example: E, I, J, H and the I - 3J collapse") {
    DatumFile file = load_example("lcbase-symbolic");
    const TestConfigDatum& d = file.datum;
    const VarTableRef& vars = d.table.vars();
    Poly eps = Poly::variable(vars, "eps");
    Poly t = Poly::variable(vars, "t");
    Poly u = Poly::variable(vars, "u");

    CHECK(e_na(d) == Rational(1, 4) * (Rational(-4) * eps.pow(3) * t + eps.pow(4) * u));
    CHECK(h_na(d).is_zero());
    // V (I - 3J) = -1/4 eps^4 E^4, independent of t.
    Poly collapse = d.volume() * (i_na(d) - Rational(3) * j_na(d));
    CHECK(collapse == Rational(-1, 4) * eps.pow(4) * u);
}

TEST_CASE("uniform slack") {
    DatumFile file = load_example("p1-point");
    const TestConfigDatum& d = file.datum;
    Poly eps = eps_poly(d);
    CHECK(uniform_slack(d, Rational(1, 4)) == eps - Rational(5, 4) * eps.pow(2));
    DatumFile trivial = load_example("trivial");
    CHECK(uniform_slack(trivial.datum, Rational(1, 3)).is_zero());
}

TEST_CASE("uniform slack sign scan over numeric eps") {
    DatumFile file = load_example("p1-point");
    const TestConfigDatum& d = file.datum;
    Poly slack = uniform_slack(d, Rational(1, 4));
    int ev = d.table.vars()->index("eps");
    // (eps - eps^2) - eps^2/4 > 0 on 0 < eps < 4/5.
    for (long k = 1; k <= 7; ++k) {
        Rational value = slack.substitute({{ev, Rational(k, 10)}}).constant_value();
        CHECK(value.sign() > 0);
    }
    Rational at_one = slack.substitute({{ev, Rational(1)}}).constant_value();
    CHECK(at_one.sign() < 0);
}

TEST_CASE("df_from_weights") {
    CHECK(df_from_weights(Rational(1), Rational(2), Rational(0), Rational(0)) == Rational(0));
    CHECK(df_from_weights(Rational(1), Rational(0), Rational(0), Rational(1)) == Rational(2));
    // (2,1,4,3) -> 2(6-4)/4 = 1; log terms (1,2) add (4-4)/4 = 0.
    CHECK(df_from_weights(Rational(2), Rational(1), Rational(4), Rational(3)) == Rational(1));
    CHECK(df_from_weights(Rational(2), Rational(1), Rational(4), Rational(3),
                          std::make_pair(Rational(1), Rational(2))) == Rational(1));
    CHECK_THROWS_AS(df_from_weights(Rational(0), Rational(1), Rational(1), Rational(1)), Error);
    CHECK_THROWS_AS(df_from_weights(Rational(-1), Rational(1), Rational(1), Rational(1)), Error);
}

TEST_CASE("DF equals M^NA exactly when all multiplicities are 1") {
    for (const char* name : {"p1-point", "product-curve", "trivial"}) {
        DatumFile file = load_example(name);
        CHECK(std::all_of(file.datum.exceptionals.begin(), file.datum.exceptionals.end(),
                          [](const Exceptional& e) { return e.multiplicity == 1; }));
        CHECK(df_intersection(file.datum) == m_na(file.datum));
    }
}

TEST_CASE("DF - M^NA is the multiplicity-weighted excess") {
    DatumFile file = load_example("p1-point");
    TestConfigDatum d = file.datum;
    d.exceptionals.front().multiplicity = 3;
    Poly eps = eps_poly(d);
    // (b-1) E.(H - eps E) = 2 eps.
    CHECK(df_intersection(d) - m_na(d) == Rational(2) * eps);
}

TEST_CASE("normalized flag is checked, not assumed") {
    DatumFile file = load_example("p1-point");
    TestConfigDatum d = file.datum;
    // Corrupt the mixed pullback row so J != -E.
    ClassMono mono(static_cast<std::size_t>(d.table.classes()->size()), 0);
    mono[static_cast<std::size_t>(d.table.classes()->index("H"))] = 2;
    d.table.set(mono, Poly(d.table.vars(), Rational(5)));
    CHECK_THROWS_AS(functional_report(d, false), Error);
}

TEST_CASE("functional values are invariant under class renaming") {
    DatumFile original = load_example("lcbase-symbolic");
    Json doc = Json::parse(find_example("lcbase-symbolic").json_text);
    // Pure symbol permutation: H -> alpha, E -> beta.
    std::string text = doc.dump();
    auto replace_all = [](std::string s, const std::string& from, const std::string& to) {
        std::string out;
        std::size_t pos = 0;
        while (true) {
            auto hit = s.find(from, pos);
            if (hit == std::string::npos) {
                out += s.substr(pos);
                return out;
            }
            out += s.substr(pos, hit - pos) + to;
            pos = hit + from.size();
        }
    };
    text = replace_all(text, "\"H\"", "\"alpha\"");
    text = replace_all(text, "\"E\"", "\"beta\"");
    DatumFile renamed = load_datum(Json::parse(text));

    CHECK(e_na(renamed.datum) == e_na(original.datum));
    CHECK(i_na(renamed.datum) == i_na(original.datum));
    CHECK(j_na(renamed.datum) == j_na(original.datum));
    CHECK(h_na(renamed.datum) == h_na(original.datum));
}

TEST_CASE("j_aux reproduces the canonical J-functional route") {
    // On the p1-point datum, (J^K)^NA = M - H = -eps^2, with K the pullback of
    // K_X: the table carries Klog = Kpull + E, so Kpull rows follow.
    DatumFile file = load_example("p1-point");
    const TestConfigDatum& d = file.datum;
    const VarTableRef& vars = d.table.vars();
    ClassCombo kpull = *d.klog;
    kpull.add(d.table.classes()->index("E"), Poly(vars, Rational(-1)));
    Poly jk = j_aux(d, kpull, canonical_product(d.fibration, 0, 0));
    CHECK(jk == m_na(d) - h_na(d));
}
