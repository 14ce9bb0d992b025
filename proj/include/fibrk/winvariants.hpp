#ifndef FIBRK_WINVARIANTS_HPP
#define FIBRK_WINVARIANTS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fibrk/functionals.hpp"

namespace fibrk {

// Coefficients of the large-twist expansion
//   V(H+jL) M^NA(X, H-bar + jL) = remainder(j) + sum_i j^i W_{n-i},
// remainder -> 0 as j -> infinity.
struct WDecomposition {
    std::vector<Poly> w;   // W_0 .. W_n, free of j
    RationalFn remainder;  // W_{n+1}(j)
    int n = 0;
};

enum class VerdictKind { ObstructionFound, AllTestedNonnegative, StrictlyPositiveAtLevel, Indeterminate };

const char* to_string(VerdictKind kind);

struct LevelSign {
    int level = -1;
    int sign = 0;  // -1 or +1
};

struct EpsAnalysis {
    int level = -1;
    int order = 0;          // minimal eps-order of W_level
    std::string leading;    // the coefficient whose sign decided the level
};

// A single datum can witness instability or provide consistency evidence; it
// can never certify global f-stability, which quantifies over all
// degenerations. The detail strings reflect that.
struct StabilityVerdict {
    VerdictKind kind = VerdictKind::Indeterminate;
    std::optional<LevelSign> witness;          // first index k with W_k != 0, with its sign
    std::vector<EpsAnalysis> epsilon_validity; // eps-order analysis used per level
    bool witnesses_instability = false;
    std::string detail;
};

// Declared signs of free parameters, e.g. {"t", +1}. Anything undeclared
// (including tail symbols) has unknown sign.
struct SignHypotheses {
    std::map<std::string, int> signs;
};

enum class SignResult { Zero, Positive, Negative, Unknown };

// Sign of p for all sufficiently small eps > 0 via the leading eps
// coefficient; Unknown when that coefficient's sign depends on an
// unconstrained parameter or a tail symbol.
SignResult sign_for_small_eps(const Poly& p, const SignHypotheses& hypotheses,
                              EpsAnalysis* analysis = nullptr);

// V(H+jL) M^NA(X, H-bar + jL) as an exact rational function of j with
// denominator g(j) = (H+jL)^{n+m}.
RationalFn mabuchi_rational_fn(const TestConfigDatum& datum);
// Same with DF in place of M^NA (adds the central-fiber excess polynomial).
RationalFn df_rational_fn(const TestConfigDatum& datum);

// Polynomial part of fn mapped j^i -> W_{n-i}; Error(DegreeOverflow) when
// deg num > deg den + n (inconsistent datum).
WDecomposition w_decompose(const RationalFn& fn, int n);

// Componentwise sum (deminormal additivity over normalization components).
WDecomposition w_sum(const WDecomposition& a, const WDecomposition& b);

// Lexicographic sign rule on W_0..W_n. All-zero on a non-trivial
// degeneration is reported as failure of f-stability.
StabilityVerdict verdict(const WDecomposition& dec, bool declared_trivial,
                         const SignHypotheses& hypotheses = {});

struct W0FiberCheck {
    bool equal = false;
    Poly lhs;  // W_0 from the decomposition
    Poly rhs;  // binom(n+m,n) (H^m L^n) M^NA(fiber)
    std::string diagnostic;
};

// W_0 = binom(n+m,n) (H^m.L^n) M^NA(X_b, H_b) against a supplied fiber datum.
W0FiberCheck w0_fiber_check(const TestConfigDatum& datum, const TestConfigDatum& fiber_datum);

// Curve-base formula (deg L = 1): W_1 = V(H) (M^NA + (S_b - S)(E^NA - E^NA_b)).
// Error(DimensionMismatch) unless n = 1.
Poly w1_curve_formula(const TestConfigDatum& datum, const TestConfigDatum& fiber_datum);

// W_k shortcut on a normalized datum with vanishing lower-level cut J's and a
// declared relative-Fano relation lambda*H = K+Delta+f*L0:
//   W_k = binom(n+m,n-k) (H^{m+k} L^{n-k}) (H^NA + lambda (I - (k+1) J)).
// The J = -E identity is verified, not assumed.
Poly w_k_via_fano_identity(const TestConfigDatum& datum, int k, const Rational& lambda,
                           bool lower_cuts_trivial);

}  // namespace fibrk

#endif
