#include "fibrk/intersection.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace fibrk {

ClassList::ClassList(std::vector<std::string> names) : names_(std::move(names)) {
    for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
        if (names_[static_cast<std::size_t>(i)].empty())
            throw Error(ErrorKind::ValidationFailed, "empty class name");
        auto [it, inserted] = index_.emplace(names_[static_cast<std::size_t>(i)], i);
        if (!inserted)
            throw Error(ErrorKind::ValidationFailed, "duplicate class '" + it->first + "'");
    }
}

int ClassList::index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw Error(ErrorKind::UnknownClass, "undeclared class '" + name + "'");
    return it->second;
}

bool ClassList::contains(const std::string& name) const { return index_.count(name) != 0; }

IntersectionTable::IntersectionTable(ClassListRef classes, VarTableRef vars, int total_degree)
    : classes_(std::move(classes)), vars_(std::move(vars)), total_degree_(total_degree) {
    if (total_degree_ <= 0)
        throw Error(ErrorKind::ValidationFailed, "total_degree must be positive");
}

void IntersectionTable::check_mono(const ClassMono& mono) const {
    if (static_cast<int>(mono.size()) != classes_->size())
        throw Error(ErrorKind::DegreeMismatch, "monomial length does not match class list");
    int degree = 0;
    for (int e : mono) {
        if (e < 0) throw Error(ErrorKind::DegreeMismatch, "negative exponent in monomial");
        degree += e;
    }
    if (degree != total_degree_)
        throw Error(ErrorKind::DegreeMismatch,
                    "monomial " + monomial_name(mono) + " has degree " + std::to_string(degree) +
                        ", table degree is " + std::to_string(total_degree_));
}

std::string IntersectionTable::monomial_name(const ClassMono& mono) const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < static_cast<int>(mono.size()); ++i) {
        int e = mono[static_cast<std::size_t>(i)];
        if (e == 0) continue;
        if (!first) os << "*";
        os << classes_->name(i);
        if (e > 1) os << "^" << e;
        first = false;
    }
    if (first) os << "1";
    return os.str();
}

void IntersectionTable::set(ClassMono mono, Poly value) {
    check_mono(mono);
    entries_.insert_or_assign(std::move(mono), std::move(value));
}

bool IntersectionTable::is_zero_default(const ClassMono& mono) const {
    return std::any_of(zero_defaults_.begin(), zero_defaults_.end(),
                       [&](const ZeroPattern& p) { return p.matches(mono); });
}

bool IntersectionTable::has(const ClassMono& mono) const { return entries_.count(mono) != 0; }

Poly IntersectionTable::eval(const ClassMono& mono) const {
    check_mono(mono);
    auto it = entries_.find(mono);
    if (it != entries_.end()) return it->second;
    if (is_zero_default(mono)) return Poly(vars_);
    throw Error(ErrorKind::MissingIntersectionNumber,
                "intersection number " + monomial_name(mono) + " is not in the table");
}

ClassCombo ClassCombo::single(const VarTableRef& vars, int cls) {
    ClassCombo combo;
    combo.parts.emplace(cls, Poly(vars, Rational(1)));
    return combo;
}

ClassCombo& ClassCombo::add(int cls, const Poly& coeff) {
    auto it = parts.find(cls);
    if (it == parts.end()) {
        if (!coeff.is_zero()) parts.emplace(cls, coeff);
    } else {
        it->second += coeff;
        if (it->second.is_zero()) parts.erase(it);
    }
    return *this;
}

ClassCombo operator+(ClassCombo a, const ClassCombo& b) {
    for (const auto& [cls, coeff] : b.parts) a.add(cls, coeff);
    return a;
}

ClassCombo operator-(ClassCombo a, const ClassCombo& b) {
    for (const auto& [cls, coeff] : b.parts) a.add(cls, -coeff);
    return a;
}

Rational mixed_volume(const FibrationComponent& fib, int i) {
    auto it = fib.mixed.find(i);
    if (it == fib.mixed.end())
        throw Error(ErrorKind::MissingIntersectionNumber,
                    "mixed volume H^" + std::to_string(fib.m + i) + "*L^" + std::to_string(fib.n - i) +
                        " is not in the datum");
    return it->second;
}

Rational canonical_product(const FibrationComponent& fib, int a, int b) {
    auto it = fib.canonical.find({a, b});
    if (it == fib.canonical.end())
        throw Error(ErrorKind::MissingIntersectionNumber,
                    "canonical product K*H^" + std::to_string(a) + "*L^" + std::to_string(b) +
                        " is not in the datum");
    return it->second;
}

Rational scalar_curvature(const FibrationComponent& fib, CurvatureScope scope) {
    if (scope == CurvatureScope::Fiber && fib.m == 0) return Rational(0);
    int dim = scope == CurvatureScope::Whole ? fib.n + fib.m : fib.m;
    Rational vol = scope == CurvatureScope::Whole ? mixed_volume(fib, fib.n) : mixed_volume(fib, 0);
    if (vol.is_zero()) throw Error(ErrorKind::DegenerateVolume, "zero volume in scalar curvature");
    Rational kprod = scope == CurvatureScope::Whole ? canonical_product(fib, dim - 1, 0)
                                                    : canonical_product(fib, fib.m - 1, fib.n);
    return Rational(-dim) * kprod / vol;
}

Rational TestConfigDatum::volume() const {
    Rational v = mixed_volume(fibration, fibration.n);
    if (v.sign() <= 0) throw Error(ErrorKind::DegenerateVolume, "volume H^(n+m) must be positive");
    return v;
}

Poly eval_power_product(const IntersectionTable& table,
                        const std::vector<std::pair<ClassCombo, int>>& factors) {
    const VarTableRef& vars = table.vars();
    int degree = 0;
    for (const auto& [combo, power] : factors) {
        if (power < 0) throw Error(ErrorKind::IndexOutOfRange, "negative power in product");
        degree += power;
    }
    if (degree != table.total_degree())
        throw Error(ErrorKind::DegreeMismatch,
                    "product degree " + std::to_string(degree) + " does not match table degree " +
                        std::to_string(table.total_degree()));

    std::map<ClassMono, Poly> acc;
    acc.emplace(ClassMono(static_cast<std::size_t>(table.classes()->size()), 0), Poly(vars, Rational(1)));
    for (const auto& [combo, power] : factors) {
        for (int rep = 0; rep < power; ++rep) {
            std::map<ClassMono, Poly> next;
            for (const auto& [mono, weight] : acc) {
                for (const auto& [cls, coeff] : combo.parts) {
                    ClassMono extended = mono;
                    ++extended[static_cast<std::size_t>(cls)];
                    Poly contribution = weight * coeff;
                    if (contribution.is_zero()) continue;
                    auto it = next.find(extended);
                    if (it == next.end())
                        next.emplace(std::move(extended), std::move(contribution));
                    else
                        it->second += contribution;
                }
            }
            acc = std::move(next);
        }
    }

    Poly result(vars);
    for (const auto& [mono, weight] : acc) {
        if (weight.is_zero()) continue;
        result += weight * table.eval(mono);
    }
    return result;
}

Poly expand_twisted_power(const TestConfigDatum& datum, const std::optional<ClassCombo>& aux,
                          int total) {
    if (total <= 0) throw Error(ErrorKind::IndexOutOfRange, "twisted power needs a positive degree");
    const VarTableRef& vars = datum.table.vars();
    Poly j = Poly::variable(vars, "j");
    // L_pull^k = 0 for k > n: the base pullback comes from the n-dimensional base.
    int max_k = datum.base_pullback ? std::min(total, datum.n()) : 0;
    Poly result(vars);
    for (int k = 0; k <= max_k; ++k) {
        std::vector<std::pair<ClassCombo, int>> factors;
        if (aux) factors.emplace_back(*aux, 1);
        factors.emplace_back(datum.polarization, total - k);
        if (k > 0) factors.emplace_back(ClassCombo::single(vars, *datum.base_pullback), k);
        Poly value = eval_power_product(datum.table, factors);
        result += binomial(total, k) * value * j.pow(k);
    }
    return result;
}

TestConfigDatum twist_datum(const TestConfigDatum& datum, const Rational& c) {
    if (!datum.base_pullback)
        throw Error(ErrorKind::PreconditionUnverifiable, "twisting needs a base_pullback role");
    TestConfigDatum out = datum;
    const VarTableRef& vars = datum.table.vars();
    Poly coeff(vars, c);
    out.polarization.add(*datum.base_pullback, coeff);
    out.trivial_pullback.add(*datum.base_pullback, coeff);

    const FibrationDatum& fib = datum.fibration;
    auto shift_component = [&](const FibrationComponent& src) {
        FibrationComponent dst = src;
        dst.mixed.clear();
        dst.canonical.clear();
        for (const auto& [i, unused] : src.mixed) {
            // (H+cL)^{m+i} L^{n-i} = sum_k binom(m+i,k) c^k H^{m+i-k} L^{n-i+k}
            Rational value(0);
            bool complete = true;
            for (int k = 0; k <= i; ++k) {
                auto it = src.mixed.find(i - k);
                if (it == src.mixed.end()) {
                    complete = false;
                    break;
                }
                value += binomial(src.m + i, k) * c.pow(static_cast<unsigned>(k)) * it->second;
            }
            if (complete) dst.mixed.emplace(i, value);
        }
        for (const auto& [key, unused] : src.canonical) {
            auto [a, b] = key;
            Rational value(0);
            bool complete = true;
            for (int k = 0; k <= std::min(a, src.n - b); ++k) {
                auto it = src.canonical.find({a - k, b + k});
                if (it == src.canonical.end()) {
                    complete = false;
                    break;
                }
                value += binomial(a, k) * c.pow(static_cast<unsigned>(k)) * it->second;
            }
            if (complete) dst.canonical.emplace(key, value);
        }
        return dst;
    };

    static_cast<FibrationComponent&>(out.fibration) = shift_component(fib);
    out.fibration.components.clear();
    for (const FibrationComponent& comp : fib.components)
        out.fibration.components.push_back(shift_component(comp));
    return out;
}

ClassCombo infer_trivial_pullback(const IntersectionTable& table, const ClassCombo& polarization,
                                  const std::vector<Exceptional>& exceptionals) {
    std::vector<int> candidates;
    for (const auto& [cls, coeff] : polarization.parts) {
        bool exceptional = std::any_of(exceptionals.begin(), exceptionals.end(),
                                       [&](const Exceptional& e) { return e.cls == cls; });
        if (!exceptional) candidates.push_back(cls);
    }
    if (candidates.size() != 1)
        throw Error(ErrorKind::ValidationFailed,
                    "trivial_pullback role is ambiguous; declare it explicitly");
    const Poly& coeff = polarization.parts.at(candidates.front());
    if (!coeff.is_constant() || coeff.constant_value() != Rational(1))
        throw Error(ErrorKind::ValidationFailed,
                    "trivial_pullback inference needs the pullback class with coefficient 1");
    return ClassCombo::single(table.vars(), candidates.front());
}

}  // namespace fibrk
