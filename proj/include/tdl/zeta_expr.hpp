#pragma once

// The coefficient ring: rational combinations of pi^even * prod zeta(odd),
// tagged with a power of e^gamma.
//
// Even zeta values never appear as generators; they are rewritten into
// rational multiples of pi powers on construction, so two expressions are
// equal exactly when their term maps are equal.

#include <compare>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "tdl/rational.hpp"

namespace tdl {

struct Monomial {
    int pi_power = 0;           // even, >= 0
    std::vector<int> zetas;     // sorted odd arguments >= 3, repeats allowed

    friend auto operator<=>(const Monomial&, const Monomial&) = default;
    friend bool operator==(const Monomial&, const Monomial&) = default;
    Monomial operator*(const Monomial& other) const;
};

class ZetaExpr {
public:
    ZetaExpr() = default;
    /// Rational constant.
    ZetaExpr(const BigRational& q);  // NOLINT(google-explicit-constructor)
    ZetaExpr(long n) : ZetaExpr(BigRational(n)) {}  // NOLINT

    static ZetaExpr pi_pow(int n);
    /// zeta(r) for r >= 2 in canonical form.
    static ZetaExpr zeta(int r);
    /// e^{n gamma} as a unit element carrying only the tag.
    static ZetaExpr egamma(int n);
    static ZetaExpr term(const BigRational& coef, Monomial mono, int gamma_power = 0);

    const std::map<Monomial, BigRational>& terms() const noexcept { return terms_; }
    int gamma_power() const noexcept { return gamma_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    /// True when the expression is a pure rational with no gamma tag.
    bool is_rational() const noexcept;
    BigRational rational_part() const;

    ZetaExpr operator-() const;
    friend ZetaExpr operator+(const ZetaExpr& a, const ZetaExpr& b);
    friend ZetaExpr operator-(const ZetaExpr& a, const ZetaExpr& b);
    friend ZetaExpr operator*(const ZetaExpr& a, const ZetaExpr& b);
    ZetaExpr& operator+=(const ZetaExpr& b) { return *this = *this + b; }
    ZetaExpr& operator-=(const ZetaExpr& b) { return *this = *this - b; }
    ZetaExpr& operator*=(const ZetaExpr& b) { return *this = *this * b; }
    friend bool operator==(const ZetaExpr& a, const ZetaExpr& b);

    /// Canonical text, e.g. "-(1/6)*pi^2*egamma^2". Stable across runs.
    std::string to_text() const;
    /// Human form, e.g. "-(pi^2/6 + 37*pi^4/360)*egamma^4".
    std::string to_pretty() const;
    nlohmann::json to_json() const;
    static ZetaExpr from_json(const nlohmann::json& j);

private:
    void insert(const Monomial& m, const BigRational& c);
    std::map<Monomial, BigRational> terms_;
    int gamma_ = 0;
};

/// Bernoulli number B_n (B_1 = -1/2).
BigRational bernoulli(int n);

/// Dirichlet eta value (1 - 2^{1-r}) zeta(r), r >= 2.
ZetaExpr eta_value(int r);

/// Floating value using pi, zeta(odd) and gamma evaluated at `digits`
/// significant decimal digits before rounding to double.
double numeric_eval(const ZetaExpr& x, int digits = 30);

/// Decimal string of the value to `digits` significant digits.
std::string numeric_string(const ZetaExpr& x, int digits);

}  // namespace tdl
