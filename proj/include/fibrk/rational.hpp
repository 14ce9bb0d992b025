#ifndef FIBRK_RATIONAL_HPP
#define FIBRK_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

#include "fibrk/error.hpp"

namespace fibrk {

// Arbitrary-precision rational, always reduced, denominator > 0, zero is 0/1.
// Serializes as "p/q", or "p" when q = 1.
class Rational {
public:
    Rational() : value_(0) {}
    Rational(long n) : value_(n) {}  // NOLINT: implicit by design
    Rational(long num, long den);
    explicit Rational(mpq_class v);

    // Parses "p", "p/q", optional leading '-'. Throws Error(ValidationFailed)
    // on malformed input, Error(ZeroDivisor) on q = 0.
    static Rational parse(const std::string& text);

    const mpq_class& raw() const { return value_; }
    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    Rational operator-() const { return Rational(mpq_class(-value_)); }
    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

    Rational pow(unsigned exponent) const;
    Rational inverse() const;
    Rational abs() const { return Rational(mpq_class(::abs(value_))); }

    std::string str() const;
    double approx() const { return value_.get_d(); }

private:
    mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// binom(a, b); 0 when b < 0 or b > a. a must be nonnegative.
Rational binomial(long a, long b);

}  // namespace fibrk

#endif
