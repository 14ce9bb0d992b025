#include "fibrk/rational.hpp"

#include <cctype>
#include <ostream>

namespace fibrk {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ZeroDivisor: return "ZeroDivisor";
        case ErrorKind::MixedVariableDivision: return "MixedVariableDivision";
        case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
        case ErrorKind::DegreeMismatch: return "DegreeMismatch";
        case ErrorKind::MissingIntersectionNumber: return "MissingIntersectionNumber";
        case ErrorKind::DegenerateVolume: return "DegenerateVolume";
        case ErrorKind::DegreeOverflow: return "DegreeOverflow";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::PreconditionUnverifiable: return "PreconditionUnverifiable";
        case ErrorKind::InsufficientComponents: return "InsufficientComponents";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::ValidationFailed: return "ValidationFailed";
        case ErrorKind::UnknownVariable: return "UnknownVariable";
        case ErrorKind::UnknownClass: return "UnknownClass";
    }
    return "Error";
}

Rational::Rational(long num, long den) {
    if (den == 0) throw Error(ErrorKind::ZeroDivisor, "rational with zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational::Rational(mpq_class v) : value_(std::move(v)) {
    if (value_.get_den() == 0) throw Error(ErrorKind::ZeroDivisor, "rational with zero denominator");
    value_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(ErrorKind::ZeroDivisor, "division by zero rational");
    value_ /= o.value_;
    return *this;
}

Rational Rational::parse(const std::string& text) {
    auto fail = [&] { throw Error(ErrorKind::ValidationFailed, "malformed rational literal '" + text + "'"); };
    if (text.empty()) fail();
    std::string num = text;
    std::string den = "1";
    if (auto slash = text.find('/'); slash != std::string::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    auto check = [&](const std::string& part, bool sign_ok) {
        if (part.empty()) fail();
        std::size_t i = (sign_ok && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
        if (i == part.size()) fail();
        for (; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i]))) fail();
    };
    check(num, true);
    check(den, false);
    mpq_class v{mpz_class(num), mpz_class(den)};
    return Rational(std::move(v));
}

Rational Rational::pow(unsigned exponent) const {
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), value_.get_num().get_mpz_t(), exponent);
    mpz_pow_ui(d.get_mpz_t(), value_.get_den().get_mpz_t(), exponent);
    return Rational(mpq_class(n, d));
}

Rational Rational::inverse() const {
    if (is_zero()) throw Error(ErrorKind::ZeroDivisor, "inverse of zero");
    return Rational(mpq_class(value_.get_den(), value_.get_num()));
}

std::string Rational::str() const {
    if (value_.get_den() == 1) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational binomial(long a, long b) {
    if (a < 0) throw Error(ErrorKind::IndexOutOfRange, "binomial with negative upper index");
    if (b < 0 || b > a) return Rational(0);
    mpz_class result;
    mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
    return Rational(mpq_class(result));
}

}  // namespace fibrk
