#include "fibrk/winvariants.hpp"

#include <sstream>

namespace fibrk {

const char* to_string(VerdictKind kind) {
    switch (kind) {
        case VerdictKind::ObstructionFound: return "ObstructionFound";
        case VerdictKind::AllTestedNonnegative: return "AllTestedNonnegative";
        case VerdictKind::StrictlyPositiveAtLevel: return "StrictlyPositiveAtLevel";
        case VerdictKind::Indeterminate: return "Indeterminate";
    }
    return "Indeterminate";
}

SignResult sign_for_small_eps(const Poly& p, const SignHypotheses& hypotheses,
                              EpsAnalysis* analysis) {
    if (p.is_zero()) return SignResult::Zero;
    const VarTableRef& vars = p.vars();
    int eps_var = vars->index("eps");
    auto [order, lead] = leading_in_eps(p, eps_var);
    if (analysis) {
        analysis->order = order;
        analysis->leading = lead.str();
    }
    int combined = 0;
    for (const auto& [mono, coeff] : lead.terms()) {
        int sign = coeff.sign();
        for (int v = 0; v < static_cast<int>(mono.size()); ++v) {
            int e = mono[static_cast<std::size_t>(v)];
            if (e == 0 || v == eps_var) continue;
            auto it = hypotheses.signs.find(vars->name(v));
            if (it == hypotheses.signs.end()) return SignResult::Unknown;
            if (it->second < 0 && e % 2 == 1) sign = -sign;
        }
        if (combined == 0)
            combined = sign;
        else if (combined != sign)
            return SignResult::Unknown;
    }
    return combined > 0 ? SignResult::Positive : SignResult::Negative;
}

namespace {

// g(j) = (H+jL)^{n+m} and f(j) = -K_(X,Delta).(H+jL)^{n+m-1} on X, from the
// fibration's mixed volumes and canonical products.
Poly volume_poly(const TestConfigDatum& datum) {
    const VarTableRef& vars = datum.table.vars();
    int N = datum.total_dim();
    Poly j = Poly::variable(vars, "j");
    Poly g(vars);
    for (int i = 0; i <= datum.n(); ++i)
        g += binomial(N, datum.n() - i) * mixed_volume(datum.fibration, i) * j.pow(datum.n() - i);
    return g;
}

Poly anticanonical_poly(const TestConfigDatum& datum) {
    const VarTableRef& vars = datum.table.vars();
    int N = datum.total_dim();
    Poly j = Poly::variable(vars, "j");
    Poly f(vars);
    for (int b = 0; b <= datum.n(); ++b)
        f -= binomial(N - 1, b) * canonical_product(datum.fibration, N - 1 - b, b) * j.pow(b);
    return f;
}

RationalFn twisted_mabuchi(const TestConfigDatum& datum, bool df_path) {
    if (!datum.klog)
        throw Error(ErrorKind::MissingIntersectionNumber, "datum has no klog role");
    datum.volume();
    int N = datum.total_dim();
    Poly g = volume_poly(datum);
    Poly f = anticanonical_poly(datum);
    Poly klog_part = expand_twisted_power(datum, datum.klog, N);
    Poly top = expand_twisted_power(datum, std::nullopt, N + 1);
    Poly num = klog_part * g + Rational(N, N + 1) * f * top;
    if (df_path) {
        const VarTableRef& vars = datum.table.vars();
        Poly excess(vars);
        if (datum.excess_class) {
            excess = expand_twisted_power(datum, ClassCombo::single(vars, *datum.excess_class), N);
        } else {
            for (const Exceptional& e : datum.exceptionals) {
                if (e.multiplicity == 1) continue;
                excess += Rational(e.multiplicity - 1) *
                          expand_twisted_power(datum, ClassCombo::single(vars, e.cls), N);
            }
        }
        num += excess * g;
    }
    return RationalFn(std::move(num), std::move(g), "j");
}

}  // namespace

RationalFn mabuchi_rational_fn(const TestConfigDatum& datum) { return twisted_mabuchi(datum, false); }

RationalFn df_rational_fn(const TestConfigDatum& datum) { return twisted_mabuchi(datum, true); }

WDecomposition w_decompose(const RationalFn& fn, int n) {
    if (n < 0) throw Error(ErrorKind::IndexOutOfRange, "negative base dimension");
    int var = fn.var();
    int dnum = fn.num().degree_in(var);
    int dden = fn.den().degree_in(var);
    if (dnum > dden + n)
        throw Error(ErrorKind::DegreeOverflow,
                    "numerator degree " + std::to_string(dnum) + " exceeds denominator degree + n = " +
                        std::to_string(dden + n));
    auto [quotient, rem] = poly_div_rem(fn.num(), fn.den(), var);
    WDecomposition dec{{}, RationalFn(rem, fn.den(), var), n};
    dec.w.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) dec.w.push_back(quotient.coeff_in(var, n - i));
    return dec;
}

WDecomposition w_sum(const WDecomposition& a, const WDecomposition& b) {
    if (a.n != b.n)
        throw Error(ErrorKind::DimensionMismatch, "summing decompositions over different base dimensions");
    WDecomposition out{{}, a.remainder + b.remainder, a.n};
    out.w.reserve(a.w.size());
    for (std::size_t i = 0; i < a.w.size(); ++i) out.w.push_back(a.w[i] + b.w[i]);
    return out;
}

StabilityVerdict verdict(const WDecomposition& dec, bool declared_trivial,
                         const SignHypotheses& hypotheses) {
    StabilityVerdict v;
    for (int k = 0; k <= dec.n; ++k) {
        const Poly& wk = dec.w[static_cast<std::size_t>(k)];
        EpsAnalysis analysis;
        analysis.level = k;
        SignResult sign = sign_for_small_eps(wk, hypotheses, &analysis);
        if (sign == SignResult::Zero) continue;
        v.epsilon_validity.push_back(analysis);
        switch (sign) {
            case SignResult::Negative:
                v.kind = VerdictKind::ObstructionFound;
                v.witness = LevelSign{k, -1};
                v.witnesses_instability = true;
                v.detail = "W_" + std::to_string(k) +
                           " < 0 for sufficiently small eps > 0 with W_i = 0 below it: destabilizing";
                return v;
            case SignResult::Positive:
                v.kind = VerdictKind::StrictlyPositiveAtLevel;
                v.witness = LevelSign{k, +1};
                v.detail = "all tested levels nonnegative; W_" + std::to_string(k) +
                           " > 0 at the first nonzero level";
                return v;
            default:
                v.kind = VerdictKind::Indeterminate;
                v.detail = "sign of W_" + std::to_string(k) +
                           " depends on an unconstrained parameter (leading coefficient " +
                           analysis.leading + ")";
                return v;
        }
    }
    v.kind = VerdictKind::AllTestedNonnegative;
    if (declared_trivial) {
        v.detail = "trivial degeneration: every level vanishes, no information";
    } else {
        v.witnesses_instability = true;
        v.detail =
            "not f-stable (all levels vanish on a nontrivial degeneration); "
            "semistable-compatible, not stable";
    }
    return v;
}

W0FiberCheck w0_fiber_check(const TestConfigDatum& datum, const TestConfigDatum& fiber_datum) {
    WDecomposition dec = w_decompose(mabuchi_rational_fn(datum), datum.n());
    Rational vl = mixed_volume(datum.fibration, 0);  // V(L) = H^m.L^n
    Poly rhs = binomial(datum.total_dim(), datum.n()) * vl * m_na(fiber_datum);
    W0FiberCheck check{false, dec.w.front(), rhs, ""};
    check.equal = check.lhs == check.rhs;
    if (!check.equal) {
        std::ostringstream os;
        os << "W_0 = " << check.lhs.str() << " but binom(n+m,n)*V(L)*M^NA(fiber) = " << check.rhs.str();
        check.diagnostic = os.str();
    }
    return check;
}

Poly w1_curve_formula(const TestConfigDatum& datum, const TestConfigDatum& fiber_datum) {
    if (datum.n() != 1)
        throw Error(ErrorKind::DimensionMismatch,
                    "curve-base W_1 formula needs n = 1, datum has n = " + std::to_string(datum.n()));
    Rational s_fiber = scalar_curvature(datum.fibration, CurvatureScope::Fiber);
    Rational s_whole = scalar_curvature(datum.fibration, CurvatureScope::Whole);
    Poly correction = e_na(datum) - e_na(fiber_datum);
    return datum.volume() * (m_na(datum) + (s_fiber - s_whole) * correction);
}

Poly w_k_via_fano_identity(const TestConfigDatum& datum, int k, const Rational& lambda,
                           bool lower_cuts_trivial) {
    if (k < 0 || k > datum.n())
        throw Error(ErrorKind::IndexOutOfRange, "W level out of range");
    if (!datum.declared_normalized)
        throw Error(ErrorKind::PreconditionUnverifiable,
                    "Fano-identity shortcut needs a datum normalized with respect to the central fiber");
    if (!lower_cuts_trivial)
        throw Error(ErrorKind::PreconditionUnverifiable,
                    "Fano-identity shortcut needs the lower-level cut configurations declared trivial");
    Poly e = e_na(datum);
    Poly j = j_na(datum);
    if (j != -e)
        throw Error(ErrorKind::ValidationFailed,
                    "normalized datum violates J^NA = -E^NA: J = " + j.str() + ", E = " + e.str());
    Poly body = h_na(datum) + lambda * (i_na(datum) - Rational(k + 1) * j);
    return binomial(datum.total_dim(), datum.n() - k) * mixed_volume(datum.fibration, k) * body;
}

}  // namespace fibrk
