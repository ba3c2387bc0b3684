#include "tdl/integral.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "tdl/errors.hpp"
#include "tdl/numeric.hpp"
#include "tdl/wfunc.hpp"

namespace tdl {

namespace {

constexpr double kE = 2.71828182845904523536;

/// log(1 + e^w) without overflow.
inline double softplus(double w) { return w > 30.0 ? w + std::log1p(std::exp(-w)) : std::log1p(std::exp(w)); }

template <class F>
void integrate_split(F f, double a, double b, double z, double tol, QuadratureResult& acc) {
    if (!(b > a)) return;
    std::vector<double> cuts{a};
    for (double c : {z / 4.0, z / 2.0, z, 2.0 * z, 4.0 * z})
        if (c > a && c < b) cuts.push_back(c);
    cuts.push_back(b);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double err = 0.0;
        const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
            f, cuts[i], cuts[i + 1], 15, tol, &err);
        acc.value += v;
        acc.error += err;
        ++acc.panels;
    }
}

const double kDegenerateSlack = 1e-12;

}  // namespace

QuadratureResult integral_I_detail(double y, double s, double tol) {
    if (!(y >= kE * (1.0 - kDegenerateSlack))) throw DomainError("integral_I requires y >= e");
    if (!(s >= 0.0)) throw DomainError("integral_I requires s > 0");
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    QuadratureResult out;
    if (y <= kE * (1.0 + kDegenerateSlack)) return out;  // [e, e] and [e, e log e]
    const double z = s >= kE ? solve_z(s) : y;
    auto lower = [s](double x) {
        const double lx = std::log(x);
        return std::log1p(std::exp(lx - s / x)) / lx;
    };
    auto upper = [s](double x) {
        const double lx = std::log(x);
        return softplus(s / x - lx) / lx;
    };
    integrate_split(lower, kE, y, z, tol, out);
    integrate_split(upper, y, y * std::log(y), z, tol, out);
    return out;
}

double integral_I(double y, double s, double tol) { return integral_I_detail(y, s, tol).value; }

IntegralEstimate thm2_estimate(double t, double tol) {
    IntegralEstimate out;
    out.t = t;
    out.y = tail_scale(t);
    const double y = out.y;
    if (!(y >= kE * (1.0 - kDegenerateSlack))) throw DomainError("thm2_estimate requires y(t) >= e");
    const double center = y * std::log(std::max(y, kE));
    out.j_lo = std::max(0.0, center - y);
    out.j_hi = center + y;
    if (y <= kE * (1.0 + kDegenerateSlack)) {
        // I vanishes identically on degenerate ranges
        out.y = kE;
        out.s_min = center;
        out.log_value = -kE;
        out.interior = true;
        return out;
    }

    auto eval = [&](double s) {
        const QuadratureResult q = integral_I_detail(y, s, tol);
        out.quadrature_error = std::max(out.quadrature_error, q.error);
        out.panels = std::max(out.panels, q.panels);
        return q.value;
    };

    // unimodality audit on 64 points
    constexpr int kSamples = 64;
    std::vector<double> grid(kSamples), vals(kSamples);
    for (int i = 0; i < kSamples; ++i) {
        grid[i] = out.j_lo + (out.j_hi - out.j_lo) * i / (kSamples - 1);
        vals[i] = eval(grid[i]);
    }
    int changes = 0;
    bool rising = false;
    for (int i = 1; i < kSamples; ++i) {
        const bool up = vals[i] > vals[i - 1];
        if (i > 1 && up != rising) ++changes;
        rising = up;
    }
    // only a single fall-to-rise switch (or none) is unimodal
    out.unimodal = changes == 0 || (changes == 1 && rising);

    int best = static_cast<int>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    if (!out.unimodal) {
        constexpr int kFine = 512;
        double best_v = vals[best];
        double best_s = grid[best];
        for (int i = 0; i < kFine; ++i) {
            const double s = out.j_lo + (out.j_hi - out.j_lo) * (i + 0.5) / kFine;
            const double v = eval(s);
            if (v < best_v) {
                best_v = v;
                best_s = s;
            }
        }
        const double step = (out.j_hi - out.j_lo) / kFine;
        grid = {std::max(out.j_lo, best_s - step), best_s, std::min(out.j_hi, best_s + step)};
        best = 1;
    }
    double a = grid[std::max(best - 1, 0)];
    double b = grid[std::min<int>(best + 1, static_cast<int>(grid.size()) - 1)];

    // golden-section search on [a, b]
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    const double s_tol = y * 1e-6;
    double c = b - ratio * (b - a);
    double d = a + ratio * (b - a);
    double fc = eval(c);
    double fd = eval(d);
    while (b - a > s_tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = eval(d);
        }
    }
    out.s_min = fc < fd ? c : d;
    out.I_min = std::min(fc, fd);

    // endpoint checks
    const double f_lo = eval(out.j_lo);
    const double f_hi = eval(out.j_hi);
    if (f_lo <= out.I_min) {
        out.s_min = out.j_lo;
        out.I_min = f_lo;
    }
    if (f_hi < out.I_min) {
        out.s_min = out.j_hi;
        out.I_min = f_hi;
    }
    out.interior = out.s_min - out.j_lo > s_tol && out.j_hi - out.s_min > s_tol;
    out.log_value = -y + out.I_min;
    return out;
}

}  // namespace tdl
