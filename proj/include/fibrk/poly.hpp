#ifndef FIBRK_POLY_HPP
#define FIBRK_POLY_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fibrk/rational.hpp"

namespace fibrk {

// The variable universe of a computation context. Declared up front and
// immutable; polynomials from different universes never mix.
class VarTable {
public:
    explicit VarTable(std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }
    const std::vector<std::string>& names() const { return names_; }

    // Index of a declared variable; throws Error(UnknownVariable) otherwise.
    int index(const std::string& name) const;
    bool contains(const std::string& name) const;

    friend bool operator==(const VarTable& a, const VarTable& b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
    std::map<std::string, int> index_;
};

using VarTableRef = std::shared_ptr<const VarTable>;

VarTableRef make_vars(std::vector<std::string> names);

// Exponent vector over a VarTable; entries are nonnegative.
using Monomial = std::vector<int>;

// Sparse multivariate polynomial with exact rational coefficients.
// No zero coefficients are stored.
class Poly {
public:
    explicit Poly(VarTableRef vars);
    Poly(VarTableRef vars, const Rational& constant);

    static Poly variable(const VarTableRef& vars, const std::string& name, int exponent = 1);
    static Poly term(const VarTableRef& vars, Monomial mono, const Rational& coeff);

    const VarTableRef& vars() const { return vars_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // The constant value; throws Error(ValidationFailed) when non-constant.
    Rational constant_value() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly& operator*=(const Rational& c);
    friend Poly operator*(Poly p, const Rational& c) { return p *= c; }
    friend Poly operator*(const Rational& c, Poly p) { return p *= c; }
    Poly& operator/=(const Rational& c);

    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly pow(int exponent) const;

    // Max exponent of `var` over all terms; -1 for the zero polynomial.
    int degree_in(int var) const;
    // Min exponent of `var` over all terms; meaningless for zero (returns 0).
    int min_degree_in(int var) const;
    // True when no term involves any variable outside `var`.
    bool univariate_in(int var) const;
    bool involves(int var) const { return degree_in(var) > 0; }

    // Coefficient of var^k, with var stripped from the result.
    Poly coeff_in(int var, int k) const;
    // Substitute exact rationals for a subset of the variables.
    Poly substitute(const std::map<int, Rational>& values) const;
    // Substitute a polynomial for one variable (used for twist shifts).
    Poly substitute(int var, const Poly& replacement) const;

    std::string str() const;

private:
    void check_same(const Poly& o) const;

    VarTableRef vars_;
    std::map<Monomial, Rational> terms_;
};

// Minimal ε-order present in p and the coefficient at that order with ε
// stripped. Throws Error(ZeroPolynomial) when p = 0.
std::pair<int, Poly> leading_in_eps(const Poly& p, int eps_var);
std::pair<int, Poly> leading_in_eps(const Poly& p, const std::string& eps_name = "eps");

// Schoolbook long division in `var`. den must be nonzero and free of every
// other variable (Error(ZeroDivisor) / Error(MixedVariableDivision)).
// Postcondition: num = quotient*den + remainder, deg_var(remainder) < deg_var(den).
std::pair<Poly, Poly> poly_div_rem(const Poly& num, const Poly& den, int var);
std::pair<Poly, Poly> poly_div_rem(const Poly& num, const Poly& den, const std::string& var = "j");

// Univariate rational function in j, stored with num/den gcd 1 and a monic
// denominator (canonical representative; leading coefficient positive).
class RationalFn {
public:
    // Normalizes on construction. den must be nonzero and univariate in var.
    RationalFn(Poly num, Poly den, int var);
    RationalFn(Poly num, Poly den, const std::string& var = "j");

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    int var() const { return var_; }

    bool is_zero() const { return num_.is_zero(); }

    friend bool operator==(const RationalFn& a, const RationalFn& b) {
        return a.var_ == b.var_ && a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFn& a, const RationalFn& b) { return !(a == b); }

    RationalFn operator+(const RationalFn& o) const;

    std::string str() const;

private:
    void init();
    void normalize();

    Poly num_;
    Poly den_;
    int var_;
};

}  // namespace fibrk

#endif
