#ifndef FIBRK_DEGENERATIONS_HPP
#define FIBRK_DEGENERATIONS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "fibrk/winvariants.hpp"

namespace fibrk {

// One exceptional component of a deformation to the normal cone, described
// by purely numerical data. codim is the codimension of the center Z in X;
// deg_e = F.H-bar^codim is the generic-fiber degree; center_degree is
// Z.H^{N-codim} (the dimensionally consistent reading of the source's
// Z.H^{n-j}); discrepancy is A_{(X,Delta)}(v_E).
struct NormalConeComponent {
    int codim = 1;
    long multiplicity = 1;
    Rational deg_e;
    Rational center_degree;
    Rational discrepancy;
    bool fiber_type = false;
    // codim_B of the image f(Z), for the heuristic obstruction level.
    std::optional<int> codim_base;
};

struct NormalConeDatum {
    int N = 1;                // dim X
    int n = 0;                // dim B
    Rational volume = 1;      // H^N
    int truncation_order = 4; // eps-order up to which expansions are exact
    std::vector<NormalConeComponent> components;

    // Structural checks: 0 <= codim <= N, multiplicity >= 1,
    // deg_e * center_degree > 0, volume > 0, 0 <= n < ... <= N.
    void validate() const;
    int min_codim() const;  // r; Error(PreconditionUnverifiable) when empty
};

// Deminormal per-component scalar data: fiber scalar curvature S_i, base
// component volume (L|_{B_k})^n, fiber volume (H|_{X_i,b})^m.
struct ComponentScalarData {
    Rational fiber_scalar;
    Rational base_volume;
    Rational fiber_volume;
};

// Variable universe of all builder output for this datum: eps, j, and one
// reserved tail symbol per (component, row) marking the unknown O(eps^{j+1})
// remainders. Tail symbols are never dropped and never multiply each other.
VarTableRef builder_vars(const NormalConeDatum& datum);

// a_i^(j)(eps) = sum_{codim=j} m_s E_j^(s) . H-bar_eps^i . Hp^{N-i}
//             = eps^j sum m_s deg binom(i,j) center + O(eps^{j+1}) for i >= j,
//             = 0 for i < j, and exact at i = j.
// Accepts 0 <= i, j <= N (Error(IndexOutOfRange) otherwise).
Poly a_series(const NormalConeDatum& datum, int i, int j);
Poly a_series(const NormalConeDatum& datum, const VarTableRef& vars, int i, int j);

// (I^NA, J^NA) of the slope configuration H-bar_eps = Hp - eps E:
//   V I = eps sum_j a_N^(j),  V J = eps/(N+1) sum_j sum_{i=j}^N a_i^(j).
// Exact at leading order eps^{r+1}; tails tracked. Needs min codim >= 1.
std::pair<Poly, Poly> i_j_series(const NormalConeDatum& datum);
std::pair<Poly, Poly> i_j_series(const NormalConeDatum& datum, const VarTableRef& vars);

// H^NA series: V H = sum_s A_s m_s (E_s . H-bar_eps^N).
Poly entropy_series(const NormalConeDatum& datum);
Poly entropy_series(const NormalConeDatum& datum, const VarTableRef& vars);

// Leading term of V (I - (n+1) J): order r+1 with exact coefficient
//   sum_{codim=r} m deg center binom(N,r) (1 - (n+1)/(r+1)),
// positive iff r > n, zero iff r = n, negative iff r < n.
std::pair<int, Rational> fano_leading(const NormalConeDatum& datum, int n);

// Negative-discrepancy obstruction: entropy -T eps^r dominates the
// O(eps^{r+1}) R/E terms, so W_k < 0 at the first nontrivial level k.
// k is caller-supplied; when absent it falls back to the heuristic
// k = min codim_B(image) over components (marked "heuristic" in the detail)
// and is PreconditionUnverifiable without codim_base data.
StabilityVerdict lc_obstruction(const NormalConeDatum& datum, std::optional<int> k);

// Fano-fibration obstruction: all discrepancies zero, every minimal-codim
// center of non-fiber type and r > n force W_n < 0 through
// W_n = -(1/lambda) V (I - (n+1) J).
StabilityVerdict fano_fiber_type_obstruction(const NormalConeDatum& datum, int n,
                                             const Rational& lambda);

struct SameScalarResult {
    bool equal = false;
    std::optional<int> w0_leading_sign;  // -1 when unequal
    // Exact coefficient of eps*eta in the W_0 expansion, up to binom(n+m,n):
    // (H|_max)^m (sum_k vol_k S_k - (sum_k vol_k) S_max).
    Rational leading_coefficient;
};

// Unequal fiber scalar curvatures destabilize: returns the (strictly
// negative) leading W_0 coefficient. Error(InsufficientComponents) for
// fewer than two components.
SameScalarResult same_scalar_check(const std::vector<ComponentScalarData>& components);

// Derive the per-component scalar data of a deminormal fibration: S_i from
// the component's canonical products, base volume as (H^m.L^n)/(H|_b)^m.
// Empty when any component lacks the needed products or a fiber volume.
std::vector<ComponentScalarData> scalar_components_of(const FibrationDatum& fibration);

// Assemble a TestConfigDatum (table over Hp, Hc, E_1..E_k) whose
// na-functionals reproduce i_j_series and entropy_series exactly, tails
// included. Output is normalized with respect to the central fiber.
// Needs min codim >= 1 (empty component list gives the trivial datum).
TestConfigDatum build_test_config(const NormalConeDatum& datum);

}  // namespace fibrk

#endif
