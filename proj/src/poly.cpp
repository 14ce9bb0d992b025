#include "fibrk/poly.hpp"

#include <algorithm>
#include <sstream>

namespace fibrk {

VarTable::VarTable(std::vector<std::string> names) : names_(std::move(names)) {
    for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
        if (names_[static_cast<std::size_t>(i)].empty())
            throw Error(ErrorKind::ValidationFailed, "empty variable name");
        auto [it, inserted] = index_.emplace(names_[static_cast<std::size_t>(i)], i);
        if (!inserted)
            throw Error(ErrorKind::ValidationFailed, "duplicate variable '" + it->first + "'");
    }
}

int VarTable::index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw Error(ErrorKind::UnknownVariable, "undeclared variable '" + name + "'");
    return it->second;
}

bool VarTable::contains(const std::string& name) const { return index_.count(name) != 0; }

VarTableRef make_vars(std::vector<std::string> names) {
    return std::make_shared<const VarTable>(std::move(names));
}

Poly::Poly(VarTableRef vars) : vars_(std::move(vars)) {}

Poly::Poly(VarTableRef vars, const Rational& constant) : vars_(std::move(vars)) {
    if (!constant.is_zero()) terms_.emplace(Monomial(static_cast<std::size_t>(vars_->size()), 0), constant);
}

Poly Poly::variable(const VarTableRef& vars, const std::string& name, int exponent) {
    if (exponent < 0) throw Error(ErrorKind::IndexOutOfRange, "negative exponent");
    Monomial mono(static_cast<std::size_t>(vars->size()), 0);
    mono[static_cast<std::size_t>(vars->index(name))] = exponent;
    return term(vars, std::move(mono), Rational(1));
}

Poly Poly::term(const VarTableRef& vars, Monomial mono, const Rational& coeff) {
    if (static_cast<int>(mono.size()) != vars->size())
        throw Error(ErrorKind::ValidationFailed, "monomial length does not match variable table");
    for (int e : mono)
        if (e < 0) throw Error(ErrorKind::IndexOutOfRange, "negative exponent");
    Poly p(vars);
    if (!coeff.is_zero()) p.terms_.emplace(std::move(mono), coeff);
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const Monomial& mono = terms_.begin()->first;
    return std::all_of(mono.begin(), mono.end(), [](int e) { return e == 0; });
}

Rational Poly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw Error(ErrorKind::ValidationFailed, "polynomial is not constant: " + str());
    return terms_.begin()->second;
}

void Poly::check_same(const Poly& o) const {
    if (vars_ != o.vars_ && !(*vars_ == *o.vars_))
        throw Error(ErrorKind::ValidationFailed, "mixing polynomials from different variable universes");
}

Poly Poly::operator-() const {
    Poly r(vars_);
    for (const auto& [mono, coeff] : terms_) r.terms_.emplace(mono, -coeff);
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    check_same(o);
    for (const auto& [mono, coeff] : o.terms_) {
        auto it = terms_.find(mono);
        if (it == terms_.end()) {
            terms_.emplace(mono, coeff);
        } else {
            it->second += coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    check_same(o);
    for (const auto& [mono, coeff] : o.terms_) {
        auto it = terms_.find(mono);
        if (it == terms_.end()) {
            terms_.emplace(mono, -coeff);
        } else {
            it->second -= coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    a.check_same(b);
    Poly r(a.vars_);
    Monomial prod(static_cast<std::size_t>(a.vars_->size()), 0);
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = ma[i] + mb[i];
            Rational c = ca * cb;
            auto it = r.terms_.find(prod);
            if (it == r.terms_.end()) {
                r.terms_.emplace(prod, c);
            } else {
                it->second += c;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
    }
    return r;
}

Poly& Poly::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [mono, coeff] : terms_) coeff *= c;
    return *this;
}

Poly& Poly::operator/=(const Rational& c) {
    if (c.is_zero()) throw Error(ErrorKind::ZeroDivisor, "dividing polynomial by zero");
    return *this *= c.inverse();
}

bool operator==(const Poly& a, const Poly& b) {
    a.check_same(b);
    return a.terms_ == b.terms_;
}

Poly Poly::pow(int exponent) const {
    if (exponent < 0) throw Error(ErrorKind::IndexOutOfRange, "negative polynomial power");
    Poly result(vars_, Rational(1));
    for (int i = 0; i < exponent; ++i) result = result * *this;
    return result;
}

int Poly::degree_in(int var) const {
    int deg = -1;
    for (const auto& [mono, coeff] : terms_) deg = std::max(deg, mono[static_cast<std::size_t>(var)]);
    return deg;
}

int Poly::min_degree_in(int var) const {
    int deg = 0;
    bool first = true;
    for (const auto& [mono, coeff] : terms_) {
        int e = mono[static_cast<std::size_t>(var)];
        deg = first ? e : std::min(deg, e);
        first = false;
    }
    return deg;
}

bool Poly::univariate_in(int var) const {
    for (const auto& [mono, coeff] : terms_)
        for (int i = 0; i < static_cast<int>(mono.size()); ++i)
            if (i != var && mono[static_cast<std::size_t>(i)] != 0) return false;
    return true;
}

Poly Poly::coeff_in(int var, int k) const {
    Poly r(vars_);
    for (const auto& [mono, coeff] : terms_) {
        if (mono[static_cast<std::size_t>(var)] != k) continue;
        Monomial stripped = mono;
        stripped[static_cast<std::size_t>(var)] = 0;
        r += term(vars_, std::move(stripped), coeff);
    }
    return r;
}

Poly Poly::substitute(const std::map<int, Rational>& values) const {
    Poly r(vars_);
    for (const auto& [mono, coeff] : terms_) {
        Rational c = coeff;
        Monomial reduced = mono;
        for (const auto& [var, value] : values) {
            int e = reduced[static_cast<std::size_t>(var)];
            if (e > 0) {
                c *= value.pow(static_cast<unsigned>(e));
                reduced[static_cast<std::size_t>(var)] = 0;
            }
        }
        r += term(vars_, std::move(reduced), c);
    }
    return r;
}

Poly Poly::substitute(int var, const Poly& replacement) const {
    check_same(replacement);
    Poly r(vars_);
    for (const auto& [mono, coeff] : terms_) {
        int e = mono[static_cast<std::size_t>(var)];
        Monomial stripped = mono;
        stripped[static_cast<std::size_t>(var)] = 0;
        Poly piece = term(vars_, std::move(stripped), coeff);
        if (e > 0) piece = piece * replacement.pow(e);
        r += piece;
    }
    return r;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mono, coeff] : terms_) {
        Rational c = coeff;
        if (first) {
            if (c.sign() < 0) {
                os << "-";
                c = -c;
            }
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
            c = c.abs();
        }
        first = false;
        bool has_vars = std::any_of(mono.begin(), mono.end(), [](int e) { return e > 0; });
        bool coeff_shown = !has_vars || c != Rational(1);
        if (coeff_shown) os << c.str();
        bool need_star = coeff_shown;
        for (int i = 0; i < static_cast<int>(mono.size()); ++i) {
            int e = mono[static_cast<std::size_t>(i)];
            if (e == 0) continue;
            if (need_star) os << "*";
            os << vars_->name(i);
            if (e > 1) os << "^" << e;
            need_star = true;
        }
    }
    return os.str();
}

std::pair<int, Poly> leading_in_eps(const Poly& p, int eps_var) {
    if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "leading term of the zero polynomial");
    int order = p.min_degree_in(eps_var);
    return {order, p.coeff_in(eps_var, order)};
}

std::pair<int, Poly> leading_in_eps(const Poly& p, const std::string& eps_name) {
    return leading_in_eps(p, p.vars()->index(eps_name));
}

std::pair<Poly, Poly> poly_div_rem(const Poly& num, const Poly& den, int var) {
    if (den.is_zero()) throw Error(ErrorKind::ZeroDivisor, "polynomial division by zero");
    if (!den.univariate_in(var))
        throw Error(ErrorKind::MixedVariableDivision,
                    "divisor involves variables beyond " + den.vars()->name(var) + ": " + den.str());
    const VarTableRef& vars = num.vars();
    int dden = den.degree_in(var);
    Rational lead = den.coeff_in(var, dden).constant_value();

    Poly quotient(vars);
    Poly rem = num;
    while (!rem.is_zero() && rem.degree_in(var) >= dden) {
        int drem = rem.degree_in(var);
        Poly factor = rem.coeff_in(var, drem);
        factor /= lead;
        factor = factor * Poly::variable(vars, vars->name(var), drem - dden);
        quotient += factor;
        rem -= factor * den;
    }
    return {quotient, rem};
}

std::pair<Poly, Poly> poly_div_rem(const Poly& num, const Poly& den, const std::string& var) {
    return poly_div_rem(num, den, num.vars()->index(var));
}

namespace {

// Univariate gcd over Q in `var`, monic. Inputs must be univariate in var.
Poly monic_gcd(Poly a, Poly b, int var) {
    const VarTableRef& vars = a.vars();
    auto make_monic = [&](Poly p) {
        if (p.is_zero()) return p;
        p /= p.coeff_in(var, p.degree_in(var)).constant_value();
        return p;
    };
    a = make_monic(std::move(a));
    b = make_monic(std::move(b));
    while (!b.is_zero()) {
        Poly r = poly_div_rem(a, b, var).second;
        a = std::move(b);
        b = make_monic(std::move(r));
    }
    if (a.is_zero()) return Poly(vars, Rational(1));
    return a;
}

}  // namespace

RationalFn::RationalFn(Poly num, Poly den, int var)
    : num_(std::move(num)), den_(std::move(den)), var_(var) {
    init();
}

RationalFn::RationalFn(Poly num, Poly den, const std::string& var)
    : num_(std::move(num)), den_(std::move(den)), var_(num_.vars()->index(var)) {
    init();
}

void RationalFn::init() {
    if (den_.is_zero()) throw Error(ErrorKind::ZeroDivisor, "rational function with zero denominator");
    if (!den_.univariate_in(var_))
        throw Error(ErrorKind::MixedVariableDivision,
                    "rational-function denominator involves variables beyond " + den_.vars()->name(var_));
    normalize();
}

void RationalFn::normalize() {
    const VarTableRef& vars = num_.vars();
    // Largest Q[var]-divisor common to den and num: it must divide every
    // coefficient polynomial of num when num is grouped by the non-var part.
    std::map<Monomial, Poly> groups;
    for (const auto& [mono, coeff] : num_.terms()) {
        Monomial rest = mono;
        int e = rest[static_cast<std::size_t>(var_)];
        rest[static_cast<std::size_t>(var_)] = 0;
        auto it = groups.find(rest);
        if (it == groups.end()) it = groups.emplace(rest, Poly(vars)).first;
        Monomial jpow(static_cast<std::size_t>(vars->size()), 0);
        jpow[static_cast<std::size_t>(var_)] = e;
        it->second += Poly::term(vars, std::move(jpow), coeff);
    }
    Poly g = den_;
    for (const auto& [rest, cpoly] : groups) g = monic_gcd(std::move(g), cpoly, var_);
    if (!num_.is_zero() && g.degree_in(var_) > 0) {
        num_ = poly_div_rem(num_, g, var_).first;
        den_ = poly_div_rem(den_, g, var_).first;
    }
    // Monic denominator fixes the representative.
    Rational lead = den_.coeff_in(var_, den_.degree_in(var_)).constant_value();
    den_ /= lead;
    num_ /= lead;
    if (num_.is_zero()) den_ = Poly(num_.vars(), Rational(1));
}

RationalFn RationalFn::operator+(const RationalFn& o) const {
    if (var_ != o.var_)
        throw Error(ErrorKind::ValidationFailed, "adding rational functions in different variables");
    return RationalFn(num_ * o.den_ + o.num_ * den_, den_ * o.den_, var_);
}

std::string RationalFn::str() const {
    std::string d = den_.str();
    if (d == "1") return num_.str();
    return "(" + num_.str() + ")/(" + d + ")";
}

}  // namespace fibrk
