#pragma once

// Truncated power series in one formal small variable with ZetaExpr
// coefficients. Every operation truncates at the series order.

#include <string>
#include <vector>

#include "tdl/zeta_expr.hpp"

namespace tdl {

class FormalSeries {
public:
    /// Zero series of the given order.
    explicit FormalSeries(int order = 0);
    FormalSeries(int order, std::vector<ZetaExpr> coeffs);
    /// The variable itself, eps.
    static FormalSeries variable(int order);
    static FormalSeries constant(int order, const ZetaExpr& c);

    int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const ZetaExpr& operator[](int i) const { return coeffs_.at(i); }
    ZetaExpr& operator[](int i) { return coeffs_.at(i); }
    const std::vector<ZetaExpr>& coeffs() const noexcept { return coeffs_; }

    /// Same coefficients, padded with zeros or cut to a new order.
    FormalSeries truncated(int order) const;

    friend FormalSeries operator+(const FormalSeries& a, const FormalSeries& b);
    friend FormalSeries operator-(const FormalSeries& a, const FormalSeries& b);
    friend FormalSeries operator*(const ZetaExpr& c, const FormalSeries& a);
    FormalSeries operator-() const;
    friend bool operator==(const FormalSeries&, const FormalSeries&) = default;

    std::string to_text(const std::string& var = "eps") const;

private:
    std::vector<ZetaExpr> coeffs_;
};

FormalSeries series_mul(const FormalSeries& a, const FormalSeries& b);
/// exp(a); requires a[0] = 0.
FormalSeries series_exp(const FormalSeries& a);
/// 1/a; requires a[0] to be a nonzero rational.
FormalSeries series_reciprocal(const FormalSeries& a);
/// a(b(eps)); requires b[0] = 0.
FormalSeries series_compose(const FormalSeries& a, const FormalSeries& b);
/// Compositional inverse of eps*(1 + ...); requires a[0] = 0 and a[1] = 1.
FormalSeries series_revert(const FormalSeries& a);

}  // namespace tdl
