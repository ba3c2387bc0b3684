#include "tdl/series.hpp"

#include <algorithm>

#include "tdl/errors.hpp"

namespace tdl {

FormalSeries::FormalSeries(int order) {
    if (order < 0) throw DomainError("series order must be nonnegative");
    coeffs_.resize(static_cast<std::size_t>(order) + 1);
}

FormalSeries::FormalSeries(int order, std::vector<ZetaExpr> coeffs) : FormalSeries(order) {
    if (static_cast<int>(coeffs.size()) > order + 1) coeffs.resize(static_cast<std::size_t>(order) + 1);
    std::copy(coeffs.begin(), coeffs.end(), coeffs_.begin());
}

FormalSeries FormalSeries::variable(int order) {
    FormalSeries out(order);
    if (order >= 1) out[1] = 1;
    return out;
}

FormalSeries FormalSeries::constant(int order, const ZetaExpr& c) {
    FormalSeries out(order);
    out[0] = c;
    return out;
}

FormalSeries FormalSeries::truncated(int order) const { return {order, coeffs_}; }

namespace {

void require_same_order(const FormalSeries& a, const FormalSeries& b) {
    if (a.order() != b.order()) throw DomainError("series orders do not match");
}

}  // namespace

FormalSeries operator+(const FormalSeries& a, const FormalSeries& b) {
    require_same_order(a, b);
    FormalSeries out = a;
    for (int i = 0; i <= a.order(); ++i) out[i] += b[i];
    return out;
}

FormalSeries FormalSeries::operator-() const {
    FormalSeries out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

FormalSeries operator-(const FormalSeries& a, const FormalSeries& b) { return a + (-b); }

FormalSeries operator*(const ZetaExpr& c, const FormalSeries& a) {
    FormalSeries out = a;
    for (auto& x : out.coeffs_) x = c * x;
    return out;
}

std::string FormalSeries::to_text(const std::string& var) const {
    std::string out;
    for (int i = 0; i <= order(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        std::string t = "(" + coeffs_[i].to_text() + ")";
        if (i == 1) t += "*" + var;
        if (i > 1) t += "*" + var + "^" + std::to_string(i);
        out += (out.empty() ? "" : " + ") + t;
    }
    return (out.empty() ? "0" : out) + " + O(" + var + "^" + std::to_string(order() + 1) + ")";
}

FormalSeries series_mul(const FormalSeries& a, const FormalSeries& b) {
    require_same_order(a, b);
    const int m = a.order();
    FormalSeries out(m);
    for (int i = 0; i <= m; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; i + j <= m; ++j)
            if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
    }
    return out;
}

FormalSeries series_exp(const FormalSeries& a) {
    if (!a[0].is_zero()) throw DomainError("series_exp requires a zero constant term");
    // f = exp(a) solves f' = a' f:  n f_n = sum_{k=1}^{n} k a_k f_{n-k}
    const int m = a.order();
    FormalSeries out(m);
    out[0] = 1;
    for (int n = 1; n <= m; ++n) {
        ZetaExpr acc;
        for (int k = 1; k <= n; ++k)
            if (!a[k].is_zero()) acc += ZetaExpr(BigRational(k)) * a[k] * out[n - k];
        out[n] = ZetaExpr(BigRational(1, n)) * acc;
    }
    return out;
}

FormalSeries series_reciprocal(const FormalSeries& a) {
    if (!a[0].is_rational() || a[0].is_zero())
        throw DomainError("series_reciprocal requires a nonzero rational constant term");
    const BigRational inv = BigRational(1) / a[0].rational_part();
    const int m = a.order();
    FormalSeries out(m);
    out[0] = inv;
    for (int n = 1; n <= m; ++n) {
        ZetaExpr acc;
        for (int k = 1; k <= n; ++k)
            if (!a[k].is_zero()) acc += a[k] * out[n - k];
        out[n] = ZetaExpr(-inv) * acc;
    }
    return out;
}

FormalSeries series_compose(const FormalSeries& a, const FormalSeries& b) {
    require_same_order(a, b);
    if (!b[0].is_zero()) throw DomainError("series_compose requires inner constant term 0");
    // Horner: (((a_m) b + a_{m-1}) b + ...) + a_0
    const int m = a.order();
    FormalSeries out = FormalSeries::constant(m, a[m]);
    for (int i = m - 1; i >= 0; --i) {
        out = series_mul(out, b);
        out[0] += a[i];
    }
    return out;
}

FormalSeries series_revert(const FormalSeries& a) {
    const int m = a.order();
    if (!a[0].is_zero() || m < 1 || !(a[1] == ZetaExpr(1)))
        throw DomainError("series_revert requires a = eps + O(eps^2)");
    // The eps^n coefficient of a(b) is b_n + (terms in b_1..b_{n-1}), so each
    // b_n is fixed by cancelling whatever the lower coefficients produce.
    FormalSeries b = FormalSeries::variable(m);
    for (int n = 2; n <= m; ++n) {
        const FormalSeries c = series_compose(a, b);
        b[n] = -c[n];
    }
    return b;
}

}  // namespace tdl
