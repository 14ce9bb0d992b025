#ifndef FIBRK_INTERSECTION_HPP
#define FIBRK_INTERSECTION_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fibrk/poly.hpp"

namespace fibrk {

// Named divisor classes of one datum. Index order is the declaration order.
class ClassList {
public:
    explicit ClassList(std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }
    const std::vector<std::string>& names() const { return names_; }
    int index(const std::string& name) const;
    bool contains(const std::string& name) const;

private:
    std::vector<std::string> names_;
    std::map<std::string, int> index_;
};

using ClassListRef = std::shared_ptr<const ClassList>;

// Exponent vector over a ClassList.
using ClassMono = std::vector<int>;

// A monomial pattern declared to vanish: matches when every listed class
// appears with at least the stated exponent.
struct ZeroPattern {
    std::map<int, int> min_exponents;

    bool matches(const ClassMono& mono) const {
        for (const auto& [cls, min_exp] : min_exponents)
            if (mono[static_cast<std::size_t>(cls)] < min_exp) return false;
        return true;
    }
};

// Top intersection products of one compactified test configuration. Values
// are polynomials in eps and declared free parameters. Lookups of missing
// monomials are errors unless a zero_default pattern covers them.
class IntersectionTable {
public:
    IntersectionTable(ClassListRef classes, VarTableRef vars, int total_degree);

    const ClassListRef& classes() const { return classes_; }
    const VarTableRef& vars() const { return vars_; }
    int total_degree() const { return total_degree_; }
    const std::map<ClassMono, Poly>& entries() const { return entries_; }

    void set(ClassMono mono, Poly value);
    void add_zero_default(ZeroPattern pattern) { zero_defaults_.push_back(std::move(pattern)); }
    const std::vector<ZeroPattern>& zero_defaults() const { return zero_defaults_; }

    bool is_zero_default(const ClassMono& mono) const;
    bool has(const ClassMono& mono) const;
    // Stored value, or 0 for zero_default monomials. Errors: DegreeMismatch,
    // MissingIntersectionNumber (names the monomial).
    Poly eval(const ClassMono& mono) const;

    std::string monomial_name(const ClassMono& mono) const;

private:
    void check_mono(const ClassMono& mono) const;

    ClassListRef classes_;
    VarTableRef vars_;
    int total_degree_;
    std::map<ClassMono, Poly> entries_;
    std::vector<ZeroPattern> zero_defaults_;
};

// Formal linear combination of classes with polynomial coefficients
// (e.g. H - eps*E).
struct ClassCombo {
    std::map<int, Poly> parts;

    static ClassCombo single(const VarTableRef& vars, int cls);
    bool empty() const { return parts.empty(); }
    ClassCombo& add(int cls, const Poly& coeff);
    friend ClassCombo operator+(ClassCombo a, const ClassCombo& b);
    friend ClassCombo operator-(ClassCombo a, const ClassCombo& b);
};

// One irreducible component of the central fiber. The discrepancy is
// A_{(X,Delta)}(v_E) for v_E = b_E^{-1} ord_E; the strict transform of
// X x {0} enters with A = 0.
struct Exceptional {
    int cls = -1;
    long multiplicity = 1;  // b_E = ord_E of the central fiber
    Rational discrepancy;   // A(v_E)
};

// Purely fiber-space numerical data: mixed volumes H^{m+i} L^{n-i} (key i)
// and canonical products K_(X,Delta) . H^a L^b (key (a, b), a+b = n+m-1).
struct FibrationComponent {
    int n = 0;
    int m = 0;
    std::map<int, Rational> mixed;
    std::map<std::pair<int, int>, Rational> canonical;
    // (H|_{X_b})^m, needed to split H^m L^n into fiber and base volumes in
    // the deminormal scalar-curvature check.
    std::optional<Rational> fiber_volume;
};

struct FibrationDatum : FibrationComponent {
    std::vector<FibrationComponent> components;  // deminormal case
};

// Mixed volume accessor with a named error; checks positivity of volumes.
Rational mixed_volume(const FibrationComponent& fib, int i);
Rational canonical_product(const FibrationComponent& fib, int a, int b);

enum class CurvatureScope { Whole, Fiber };

// S(X,Delta,L) = -dim (K.L^{dim-1}) / L^dim for the whole space or the
// general fiber (computed from L^n-saturated products, so base volume
// factors cancel).
Rational scalar_curvature(const FibrationComponent& fib, CurvatureScope scope);

// The full geometric input: a fibration, an intersection table and the class
// roles of a compactified fibration degeneration.
struct TestConfigDatum {
    FibrationDatum fibration;
    IntersectionTable table;
    ClassCombo polarization;                   // compactified L-bar
    ClassCombo trivial_pullback;               // pullback of the X-polarization
    std::optional<int> base_pullback;          // pullback of the base polarization
    std::optional<ClassCombo> klog;            // K^log_{(X-bar,D)/P1}
    std::optional<int> excess_class;           // optional explicit (X_0 - X_0,red) rows
    std::vector<Exceptional> exceptionals;
    bool declared_trivial = false;
    bool declared_normalized = false;

    explicit TestConfigDatum(IntersectionTable t) : table(std::move(t)) {}

    int n() const { return fibration.n; }
    int m() const { return fibration.m; }
    int total_dim() const { return fibration.n + fibration.m; }  // N = dim X
    // H^{n+m} on X; Error(DegenerateVolume) unless positive.
    Rational volume() const;
};

// Exact value of a product of combo powers against the table, expanded
// multilinearly. The monomial degree must equal the table's total degree.
Poly eval_power_product(const IntersectionTable& table,
                        const std::vector<std::pair<ClassCombo, int>>& factors);

// (polarization + j L_pull)^total . aux, exact polynomial in j. Powers of the
// base pullback beyond n vanish structurally (it is pulled back from the
// n-dimensional base); all other monomials must be present or zero_default.
Poly expand_twisted_power(const TestConfigDatum& datum, const std::optional<ClassCombo>& aux,
                          int total);

// Replace H by H + c L throughout (polarization, pullback, fibration data).
// The table itself is untouched; only roles and fiber-space data shift.
TestConfigDatum twist_datum(const TestConfigDatum& datum, const Rational& c);

// Unique non-exceptional class in the polarization combo, used when the
// trivial_pullback role is not given explicitly.
ClassCombo infer_trivial_pullback(const IntersectionTable& table, const ClassCombo& polarization,
                                  const std::vector<Exceptional>& exceptionals);

}  // namespace fibrk

#endif
