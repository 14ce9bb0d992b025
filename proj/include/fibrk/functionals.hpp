#ifndef FIBRK_FUNCTIONALS_HPP
#define FIBRK_FUNCTIONALS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fibrk/intersection.hpp"

namespace fibrk {

// Non-Archimedean functionals of a compactified test configuration, all as
// exact polynomials in eps and the declared free parameters.
//
// With N = n+m, V = H^N and L-bar the compactified polarization:
//   E = L-bar^{N+1} / ((N+1) V)
//   I = V^{-1} (L-bar . Hp^N) - V^{-1} (L-bar - Hp) . L-bar^N
//   J = V^{-1} (L-bar . Hp^N) - E
//   H = V^{-1} sum_E b_E A(v_E) (E . L-bar^N)
//   M = V^{-1} (Klog . L-bar^N) + S(X,Delta,H) E
//   R = M - H - S(X,Delta,H) E
//   DF = M + V^{-1} sum_E (b_E - 1) (E . L-bar^N)
Poly e_na(const TestConfigDatum& datum);
Poly i_na(const TestConfigDatum& datum);
Poly j_na(const TestConfigDatum& datum);
Poly h_na(const TestConfigDatum& datum);
Poly m_na(const TestConfigDatum& datum);
Poly r_na(const TestConfigDatum& datum);
Poly df_intersection(const TestConfigDatum& datum);

// (J^aux)^NA for an arbitrary auxiliary class: V^{-1}(aux . L-bar^N) minus
// V^{-1} (N aux_dot_x) E, where aux_dot_x = aux . H^{N-1} on X.
Poly j_aux(const TestConfigDatum& datum, const ClassCombo& aux, const Rational& aux_dot_x);

// V^{-1} (X_0 - X_0,red) . L-bar^N, from the explicit excess rows when the
// datum declares them, otherwise from sum_E (b_E - 1) (E . L-bar^N).
Poly central_fiber_excess(const TestConfigDatum& datum);

// M^NA - eps_unif * I^NA.
Poly uniform_slack(const TestConfigDatum& datum, const Rational& eps_unif);

// 2 (b1 a0 - a1 b0) / a0^2, plus (b0_log a0 - a0_log b0) / a0^2 when the log
// weight terms are supplied. Error(DegenerateVolume) unless a0 > 0.
Rational df_from_weights(const Rational& a0, const Rational& a1, const Rational& b0,
                         const Rational& b1,
                         std::optional<std::pair<Rational, Rational>> log_terms = std::nullopt);

struct IdentityCheck {
    std::string name;
    bool holds = false;
    std::string note;
};

struct FunctionalReport {
    Poly e_na, i_na, j_na, h_na, r_na, m_na, df;
    Rational volume;
    std::vector<IdentityCheck> identities_checked;
};

// Every functional at once. With check = true the report also carries the
// identity checks (J = -E on normalized data, all-zero on declared-trivial
// data, DF - M nonnegative excess). A normalized datum violating J = -E is a
// datum-validation failure and throws Error(ValidationFailed).
FunctionalReport functional_report(const TestConfigDatum& datum, bool check = false);

}  // namespace fibrk

#endif
