#include "fibrk/degenerations.hpp"

#include <algorithm>
#include <string>

namespace fibrk {

namespace {

std::string tail_name(int component, int row) {
    return "tail" + std::to_string(component) + "_" + std::to_string(row);
}

// Reduced-component row E_s . H-bar_eps^i . Hp^{N-i} (multiplicity NOT
// applied). Zero for i below the codimension, a single exact term at i equal
// to it (the binomial expansion terminates there and lower E-powers die by
// the codimension of the center), leading term plus a tail marker above it.
Poly component_row(const NormalConeDatum& datum, const VarTableRef& vars, int s, int i) {
    const NormalConeComponent& comp = datum.components[static_cast<std::size_t>(s)];
    int j = comp.codim;
    if (i < j) return Poly(vars);
    Rational lead = comp.deg_e * binomial(i, j) * comp.center_degree;
    Poly row = lead * Poly::variable(vars, "eps", j);
    if (i > j) row += Poly::variable(vars, "eps", j + 1) * Poly::variable(vars, tail_name(s, i));
    return row;
}

void require_positive_codim(const NormalConeDatum& datum, const char* what) {
    for (const NormalConeComponent& comp : datum.components)
        if (comp.codim < 1)
            throw Error(ErrorKind::ValidationFailed,
                        std::string(what) + " needs every center of codimension >= 1");
}

}  // namespace

void NormalConeDatum::validate() const {
    if (N < 1) throw Error(ErrorKind::ValidationFailed, "dim X must be positive");
    if (n < 0 || n > N) throw Error(ErrorKind::ValidationFailed, "dim B must lie in [0, dim X]");
    if (volume.sign() <= 0) throw Error(ErrorKind::DegenerateVolume, "volume must be positive");
    if (truncation_order < 0) throw Error(ErrorKind::ValidationFailed, "negative truncation order");
    for (const NormalConeComponent& comp : components) {
        if (comp.codim < 0 || comp.codim > N)
            throw Error(ErrorKind::ValidationFailed, "component codimension out of range");
        if (comp.multiplicity < 1)
            throw Error(ErrorKind::ValidationFailed, "component multiplicity must be >= 1");
        if ((comp.deg_e * comp.center_degree).sign() <= 0)
            throw Error(ErrorKind::ValidationFailed,
                        "deg_E * center_degree must be positive (ampleness)");
    }
}

int NormalConeDatum::min_codim() const {
    if (components.empty())
        throw Error(ErrorKind::PreconditionUnverifiable, "empty component list has no minimal codimension");
    int r = N;
    for (const NormalConeComponent& comp : components) r = std::min(r, comp.codim);
    return r;
}

VarTableRef builder_vars(const NormalConeDatum& datum) {
    std::vector<std::string> names{"eps", "j"};
    for (int s = 0; s < static_cast<int>(datum.components.size()); ++s)
        for (int i = 0; i <= datum.N; ++i) names.push_back(tail_name(s, i));
    return make_vars(std::move(names));
}

Poly a_series(const NormalConeDatum& datum, const VarTableRef& vars, int i, int j) {
    datum.validate();
    if (i < 0 || i > datum.N || j < 0 || j > datum.N)
        throw Error(ErrorKind::IndexOutOfRange, "a-series indices must lie in [0, N]");
    Poly sum(vars);
    for (int s = 0; s < static_cast<int>(datum.components.size()); ++s) {
        if (datum.components[static_cast<std::size_t>(s)].codim != j) continue;
        sum += Rational(datum.components[static_cast<std::size_t>(s)].multiplicity) *
               component_row(datum, vars, s, i);
    }
    return sum;
}

Poly a_series(const NormalConeDatum& datum, int i, int j) {
    return a_series(datum, builder_vars(datum), i, j);
}

std::pair<Poly, Poly> i_j_series(const NormalConeDatum& datum, const VarTableRef& vars) {
    datum.validate();
    require_positive_codim(datum, "i_j_series");
    Poly eps = Poly::variable(vars, "eps");
    Poly vi(vars);
    Poly vj(vars);
    for (int s = 0; s < static_cast<int>(datum.components.size()); ++s) {
        Rational mult(datum.components[static_cast<std::size_t>(s)].multiplicity);
        vi += mult * component_row(datum, vars, s, datum.N);
        for (int i = 0; i <= datum.N; ++i) vj += mult * component_row(datum, vars, s, i);
    }
    vi = eps * vi;
    vj = eps * vj;
    vj /= Rational(datum.N + 1);
    Rational vinv = datum.volume.inverse();
    return {vinv * vi, vinv * vj};
}

std::pair<Poly, Poly> i_j_series(const NormalConeDatum& datum) {
    return i_j_series(datum, builder_vars(datum));
}

Poly entropy_series(const NormalConeDatum& datum, const VarTableRef& vars) {
    datum.validate();
    Poly sum(vars);
    for (int s = 0; s < static_cast<int>(datum.components.size()); ++s) {
        const NormalConeComponent& comp = datum.components[static_cast<std::size_t>(s)];
        if (comp.discrepancy.is_zero()) continue;
        sum += (comp.discrepancy * Rational(comp.multiplicity)) * component_row(datum, vars, s, datum.N);
    }
    sum /= datum.volume;
    return sum;
}

Poly entropy_series(const NormalConeDatum& datum) {
    return entropy_series(datum, builder_vars(datum));
}

std::pair<int, Rational> fano_leading(const NormalConeDatum& datum, int n) {
    datum.validate();
    int r = datum.min_codim();
    Rational coeff(0);
    for (const NormalConeComponent& comp : datum.components) {
        if (comp.codim != r) continue;
        coeff += Rational(comp.multiplicity) * comp.deg_e * comp.center_degree;
    }
    coeff *= binomial(datum.N, r) * (Rational(1) - Rational(n + 1, r + 1));
    return {r + 1, coeff};
}

StabilityVerdict lc_obstruction(const NormalConeDatum& datum, std::optional<int> k) {
    datum.validate();
    StabilityVerdict v;
    if (datum.components.empty()) {
        v.kind = VerdictKind::AllTestedNonnegative;
        v.detail = "trivial degeneration: no exceptional components";
        return v;
    }
    require_positive_codim(datum, "lc_obstruction");

    bool heuristic = false;
    int level;
    if (k) {
        level = *k;
    } else {
        bool have_all = std::all_of(datum.components.begin(), datum.components.end(),
                                    [](const NormalConeComponent& c) { return c.codim_base.has_value(); });
        if (!have_all)
            throw Error(ErrorKind::PreconditionUnverifiable,
                        "first nontrivial level k not supplied and codim_base data is incomplete");
        level = datum.n;
        for (const NormalConeComponent& comp : datum.components)
            level = std::min(level, *comp.codim_base);
        heuristic = true;
    }
    if (level < 0 || level > datum.n)
        throw Error(ErrorKind::IndexOutOfRange, "obstruction level out of [0, n]");

    int r = datum.min_codim();
    Poly entropy = entropy_series(datum);
    std::string marker = heuristic ? " (level k chosen by heuristic k = min codim_B(image))" : "";
    if (entropy.is_zero()) {
        v.kind = VerdictKind::AllTestedNonnegative;
        v.detail = "entropy vanishes identically (all discrepancies zero); no obstruction from this datum" + marker;
        return v;
    }
    auto [order, lead] = leading_in_eps(entropy, "eps");
    EpsAnalysis analysis{level, order, lead.str()};
    if (order > r || !lead.is_constant()) {
        v.kind = VerdictKind::Indeterminate;
        v.epsilon_validity.push_back(analysis);
        v.detail = "entropy leading term is not the exact order-r coefficient; "
                   "the O(eps^(r+1)) Ricci/energy terms may compete" + marker;
        return v;
    }
    int sign = lead.constant_value().sign();
    v.epsilon_validity.push_back(analysis);
    if (sign < 0) {
        v.kind = VerdictKind::ObstructionFound;
        v.witness = LevelSign{level, -1};
        v.witnesses_instability = true;
        v.detail = "entropy = -T eps^r + O(eps^(r+1)) with T > 0 dominates the O(eps^(r+1)) terms: W_" +
                   std::to_string(level) + " < 0 for small eps" + marker;
    } else {
        v.kind = VerdictKind::AllTestedNonnegative;
        v.detail = "entropy is positive at leading order; no obstruction at this configuration" + marker;
    }
    return v;
}

StabilityVerdict fano_fiber_type_obstruction(const NormalConeDatum& datum, int n,
                                             const Rational& lambda) {
    datum.validate();
    if (lambda.sign() <= 0)
        throw Error(ErrorKind::PreconditionUnverifiable, "relative-Fano lambda must be positive");
    for (const NormalConeComponent& comp : datum.components)
        if (!comp.discrepancy.is_zero())
            throw Error(ErrorKind::PreconditionUnverifiable,
                        "Fano fiber-type obstruction needs all discrepancies zero");
    StabilityVerdict v;
    if (datum.components.empty()) {
        v.kind = VerdictKind::AllTestedNonnegative;
        v.detail = "trivial degeneration: no exceptional components";
        return v;
    }
    require_positive_codim(datum, "fano_fiber_type_obstruction");
    int r = datum.min_codim();
    bool any_fiber_type = false;
    for (const NormalConeComponent& comp : datum.components)
        if (comp.codim == r && comp.fiber_type) any_fiber_type = true;
    if (any_fiber_type) {
        v.kind = VerdictKind::AllTestedNonnegative;
        v.detail = "a minimal-codimension center is of fiber type; no obstruction claimed from this datum";
        return v;
    }
    if (r <= n) {
        v.kind = VerdictKind::AllTestedNonnegative;
        v.detail = "minimal codimension r <= n; no obstruction claimed from this datum";
        return v;
    }
    auto [order, coeff] = fano_leading(datum, n);
    Rational wn_lead = -coeff / lambda;
    v.kind = VerdictKind::ObstructionFound;
    v.witness = LevelSign{n, -1};
    v.witnesses_instability = true;
    v.epsilon_validity.push_back({n, order, wn_lead.str()});
    v.detail = "all minimal-codim centers are of non-fiber type and r > n: W_" + std::to_string(n) +
               " = -(1/lambda) V (I - (n+1)J) < 0 for small eps";
    return v;
}

SameScalarResult same_scalar_check(const std::vector<ComponentScalarData>& components) {
    if (components.size() < 2)
        throw Error(ErrorKind::InsufficientComponents,
                    "same-scalar check needs at least two components");
    for (const ComponentScalarData& comp : components)
        if (comp.base_volume.sign() <= 0 || comp.fiber_volume.sign() <= 0)
            throw Error(ErrorKind::ValidationFailed, "component volumes must be positive");

    SameScalarResult result;
    result.equal = std::all_of(components.begin(), components.end(), [&](const ComponentScalarData& c) {
        return c.fiber_scalar == components.front().fiber_scalar;
    });
    if (result.equal) return result;

    std::size_t imax = 0;
    for (std::size_t i = 1; i < components.size(); ++i)
        if (components[i].fiber_scalar > components[imax].fiber_scalar) imax = i;
    Rational total_volume(0);
    Rational weighted(0);
    for (const ComponentScalarData& comp : components) {
        total_volume += comp.base_volume;
        weighted += comp.base_volume * comp.fiber_scalar;
    }
    result.leading_coefficient =
        components[imax].fiber_volume * (weighted - total_volume * components[imax].fiber_scalar);
    result.w0_leading_sign = -1;
    return result;
}

std::vector<ComponentScalarData> scalar_components_of(const FibrationDatum& fibration) {
    std::vector<ComponentScalarData> out;
    for (const FibrationComponent& comp : fibration.components) {
        if (!comp.fiber_volume || comp.fiber_volume->sign() <= 0) return {};
        if (!comp.mixed.count(0)) return {};
        if (comp.m > 0 && !comp.canonical.count({comp.m - 1, comp.n})) return {};
        ComponentScalarData data;
        data.fiber_scalar = scalar_curvature(comp, CurvatureScope::Fiber);
        data.fiber_volume = *comp.fiber_volume;
        data.base_volume = comp.mixed.at(0) / data.fiber_volume;
        out.push_back(data);
    }
    return out;
}

TestConfigDatum build_test_config(const NormalConeDatum& datum) {
    datum.validate();
    require_positive_codim(datum, "build_test_config");
    VarTableRef vars = builder_vars(datum);
    std::vector<std::string> class_names{"Hp", "Hc"};
    for (std::size_t s = 0; s < datum.components.size(); ++s)
        class_names.push_back("E" + std::to_string(s + 1));
    auto classes = std::make_shared<const ClassList>(class_names);
    int N = datum.N;
    IntersectionTable table(classes, vars, N + 1);

    auto mono_of = [&](int hp, int hc, int e_cls, int e_exp) {
        ClassMono mono(static_cast<std::size_t>(classes->size()), 0);
        mono[0] = hp;
        mono[1] = hc;
        if (e_cls >= 0) mono[static_cast<std::size_t>(e_cls)] = e_exp;
        return mono;
    };

    // E_s . Hc^i . Hp^{N-i} rows straight from the a-series display.
    for (int s = 0; s < static_cast<int>(datum.components.size()); ++s)
        for (int i = 0; i <= N; ++i)
            table.set(mono_of(N - i, i, 2 + s, 1), component_row(datum, vars, s, i));

    // Hc^a . Hp^{N+1-a} rows by the recursion Hc = Hp - eps sum m_s E_s,
    // grounded at Hp^{N+1} = 0.
    Poly eps = Poly::variable(vars, "eps");
    Poly previous(vars);  // Hp^{N+1}
    table.set(mono_of(N + 1, 0, -1, 0), previous);
    for (int a = 1; a <= N + 1; ++a) {
        Poly correction(vars);
        for (int s = 0; s < static_cast<int>(datum.components.size()); ++s)
            correction += Rational(datum.components[static_cast<std::size_t>(s)].multiplicity) *
                          component_row(datum, vars, s, a - 1);
        Poly current = previous - eps * correction;
        table.set(mono_of(N + 1 - a, a, -1, 0), current);
        previous = std::move(current);
    }

    TestConfigDatum out(std::move(table));
    out.fibration.n = datum.n;
    out.fibration.m = N - datum.n;
    out.fibration.mixed.emplace(datum.n, datum.volume);
    out.polarization = ClassCombo::single(vars, 1);
    out.trivial_pullback = ClassCombo::single(vars, 0);
    for (int s = 0; s < static_cast<int>(datum.components.size()); ++s) {
        const NormalConeComponent& comp = datum.components[static_cast<std::size_t>(s)];
        out.exceptionals.push_back({2 + s, comp.multiplicity, comp.discrepancy});
    }
    out.declared_normalized = true;
    out.declared_trivial = datum.components.empty();
    return out;
}

}  // namespace fibrk
