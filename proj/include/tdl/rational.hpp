#pragma once

// Exact rationals, polynomials in the summation index k, and rational
// functions of k.

#include <gmpxx.h>

#include <compare>
#include <string>
#include <vector>

namespace tdl {

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
using BigRational = mpq_class;

BigRational make_rational(long num, long den = 1);
std::string to_string(const BigRational& q);
/// Parses "p", "-p" or "p/q".
BigRational parse_rational(const std::string& text);

/// Dense polynomial in k with rational coefficients, lowest degree first.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<BigRational> coeffs);
    static Poly constant(const BigRational& c);
    /// c * k^n
    static Poly monomial(const BigRational& c, int n);

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    const std::vector<BigRational>& coeffs() const noexcept { return coeffs_; }
    BigRational coeff(int i) const;
    const BigRational& leading() const { return coeffs_.back(); }

    BigRational eval(const BigRational& k) const;
    double eval(double k) const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const BigRational& c, const Poly& a);
    Poly operator-() const;
    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

    /// Euclidean division; divisor must be nonzero.
    static void divmod(const Poly& num, const Poly& den, Poly& quot, Poly& rem);
    /// Monic greatest common divisor (zero if both are zero).
    static Poly gcd(Poly a, Poly b);

    Poly monic() const;
    std::string to_string(const std::string& var = "k") const;

private:
    void trim();
    std::vector<BigRational> coeffs_;
};

/// Reduced quotient of polynomials in k. The denominator is monic and
/// shares no factor with the numerator.
class RationalFunc {
public:
    RationalFunc() : num_(), den_(Poly::constant(1)) {}
    RationalFunc(Poly num, Poly den);
    static RationalFunc constant(const BigRational& c);
    /// c * k^n, n may be negative
    static RationalFunc monomial(const BigRational& c, int n);

    const Poly& numerator() const noexcept { return num_; }
    const Poly& denominator() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }

    /// True when the denominator is exactly k^n for some n >= 0.
    bool has_pure_power_denominator() const;
    /// Exponent n of a pure-power denominator k^n.
    int denominator_power() const { return den_.degree(); }
    /// deg(numerator) < deg(denominator), i.e. the function is O(1/k).
    bool decays() const;

    double eval(double k) const;

    friend RationalFunc operator+(const RationalFunc& a, const RationalFunc& b);
    friend RationalFunc operator-(const RationalFunc& a, const RationalFunc& b);
    friend RationalFunc operator*(const RationalFunc& a, const RationalFunc& b);
    friend RationalFunc operator*(const BigRational& c, const RationalFunc& a);
    RationalFunc operator-() const;
    friend bool operator==(const RationalFunc& a, const RationalFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    /// e.g. "-(k + 2)/k^2", "1/k", "(k^2 + 6*k + 6)/k^3"
    std::string to_string() const;

private:
    Poly num_;
    Poly den_;
};

}  // namespace tdl
