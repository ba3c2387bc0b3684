#include "tdl/rational.hpp"

#include <algorithm>
#include <sstream>

#include "tdl/errors.hpp"

namespace tdl {

BigRational make_rational(long num, long den) {
    if (den == 0) throw DomainError("zero denominator");
    BigRational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const BigRational& q) { return q.get_str(); }

BigRational parse_rational(const std::string& text) {
    BigRational q;
    if (text.empty() || q.set_str(text, 10) != 0) throw DomainError("malformed rational '" + text + "'");
    if (q.get_den() == 0) throw DomainError("zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(std::vector<BigRational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const BigRational& c) { return Poly(std::vector<BigRational>{c}); }

Poly Poly::monomial(const BigRational& c, int n) {
    std::vector<BigRational> v(static_cast<std::size_t>(n) + 1);
    v[n] = c;
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigRational Poly::coeff(int i) const {
    if (i < 0 || i > degree()) return 0;
    return coeffs_[i];
}

BigRational Poly::eval(const BigRational& k) const {
    BigRational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * k + *it;
    return acc;
}

double Poly::eval(double k) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * k + it->get_d();
    return acc;
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<BigRational> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
    return Poly(std::move(v));
}

Poly Poly::operator-() const {
    std::vector<BigRational> v = coeffs_;
    for (auto& c : v) c = -c;
    return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigRational> v(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Poly(std::move(v));
}

Poly operator*(const BigRational& c, const Poly& a) { return Poly::constant(c) * a; }

void Poly::divmod(const Poly& num, const Poly& den, Poly& quot, Poly& rem) {
    if (den.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<BigRational> q(std::max(0, num.degree() - den.degree() + 1));
    std::vector<BigRational> r = num.coeffs_;
    const int dd = den.degree();
    for (int i = num.degree() - dd; i >= 0; --i) {
        const BigRational f = r[i + dd] / den.leading();
        q[i] = f;
        for (int j = 0; j <= dd; ++j) r[i + j] -= f * den.coeffs_[j];
    }
    quot = Poly(std::move(q));
    rem = Poly(std::move(r));
}

Poly Poly::monic() const {
    if (is_zero()) return {};
    const BigRational lead = leading();
    std::vector<BigRational> v = coeffs_;
    for (auto& c : v) c /= lead;
    return Poly(std::move(v));
}

Poly Poly::gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

namespace {

std::string power_text(const std::string& var, int n) {
    if (n == 0) return "";
    if (n == 1) return var;
    return var + "^" + std::to_string(n);
}

/// Positive coefficient times var^n, e.g. "6*k", "k^2", "(1/2)*k".
std::string term_text(const BigRational& absc, const std::string& var, int n) {
    const bool integral = absc.get_den() == 1;
    const std::string c = integral ? absc.get_str() : "(" + absc.get_str() + ")";
    if (n == 0) return absc.get_str();
    if (absc == 1) return power_text(var, n);
    return c + "*" + power_text(var, n);
}

}  // namespace

std::string Poly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        const BigRational& c = coeffs_[i];
        if (c == 0) continue;
        const BigRational absc = abs(c);
        if (out.empty())
            out = (c < 0 ? "-" : "") + term_text(absc, var, i);
        else
            out += (c < 0 ? " - " : " + ") + term_text(absc, var, i);
    }
    return out;
}

// --------------------------------------------------------- RationalFunc

RationalFunc::RationalFunc(Poly num, Poly den) {
    if (den.is_zero()) throw DomainError("rational function with zero denominator");
    if (num.is_zero()) {
        num_ = Poly();
        den_ = Poly::constant(1);
        return;
    }
    const Poly g = Poly::gcd(num, den);
    Poly q, r;
    Poly::divmod(num, g, q, r);
    num = q;
    Poly::divmod(den, g, q, r);
    den = q;
    const BigRational lead = den.leading();
    num_ = (BigRational(1) / lead) * num;
    den_ = (BigRational(1) / lead) * den;
}

RationalFunc RationalFunc::constant(const BigRational& c) { return {Poly::constant(c), Poly::constant(1)}; }

RationalFunc RationalFunc::monomial(const BigRational& c, int n) {
    if (n >= 0) return {Poly::monomial(c, n), Poly::constant(1)};
    return {Poly::constant(c), Poly::monomial(1, -n)};
}

bool RationalFunc::has_pure_power_denominator() const {
    const int n = den_.degree();
    for (int i = 0; i < n; ++i)
        if (den_.coeff(i) != 0) return false;
    return den_.leading() == 1;
}

bool RationalFunc::decays() const { return num_.is_zero() || num_.degree() < den_.degree(); }

double RationalFunc::eval(double k) const { return num_.eval(k) / den_.eval(k); }

RationalFunc operator+(const RationalFunc& a, const RationalFunc& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

RationalFunc operator-(const RationalFunc& a, const RationalFunc& b) { return a + (-b); }

RationalFunc operator*(const RationalFunc& a, const RationalFunc& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
}

RationalFunc operator*(const BigRational& c, const RationalFunc& a) { return {c * a.num_, a.den_}; }

RationalFunc RationalFunc::operator-() const { return {-num_, den_}; }

std::string RationalFunc::to_string() const {
    if (den_.degree() == 0) return num_.to_string();
    const bool negative = num_.leading() < 0;
    const Poly shown = negative ? -num_ : num_;
    std::size_t nonzero = 0;
    for (const auto& c : shown.coeffs())
        if (c != 0) ++nonzero;
    std::string top = shown.to_string();
    if (nonzero > 1 || top.find('*') != std::string::npos) top = "(" + top + ")";
    std::size_t den_terms = 0;
    for (const auto& c : den_.coeffs())
        if (c != 0) ++den_terms;
    std::string bottom = den_.to_string();
    if (den_terms > 1) bottom = "(" + bottom + ")";
    return (negative ? "-" : "") + top + "/" + bottom;
}

}  // namespace tdl
