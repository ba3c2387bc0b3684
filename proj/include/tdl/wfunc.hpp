#pragma once

// g(s) = log W(s), W(s) = prod_p (1 + ((1 - 1/p)^{-s} - 1)/p), the mean value
// of (n/phi(n))^s, together with its derivatives and the truncated product
// forms used to expand it.

#include <cstdint>

#include "tdl/coeffs.hpp"

namespace tdl {

struct LogWValue {
    double s = 0.0;
    double value = 0.0;       // sum over p <= cutoff
    double cutoff = 0.0;      // largest prime bound v used
    double tail_bound = 0.0;  // estimate of the neglected sum over p > v
};

struct LogWDerivatives {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

/// Exponent above which e^A - 1 and e^A are treated with the rearranged
/// large-A formula.
inline constexpr double kLargeExponent = 30.0;

/// Largest prime bound a cutoff search may reach.
inline constexpr std::uint64_t kMaxCutoff = 4'000'000'000ull;

/// Estimated size of sum_{p>v} log(1 + ((1-1/p)^{-s}-1)/p), ~ s/(v log v).
double log_w_tail_bound(double s, double v);
double log_w_d1_tail_bound(double s, double v);
double log_w_d2_tail_bound(double s, double v);

/// v = max(4s, 10^4), doubled until the tail estimate is below tol.
/// Throws ResourceError past kMaxCutoff.
std::uint64_t choose_cutoff(double s, double tol);

LogWValue log_w(double s, double tol);
/// Same sum with an explicit prime bound.
LogWValue log_w_at(double s, std::uint64_t cutoff);

double log_w_d1(double s, double tol);
double log_w_d2(double s, double tol);
/// g, g', g'' at a shared cutoff, so finite differences and Newton steps
/// see one consistent function.
LogWDerivatives log_w_all(double s, std::uint64_t cutoff);

/// Truncated product form with smoothed exponentials:
///   s log t_u + log(t_u / (t_v P_u)) + sum_{p<=u} log(1 + p e^{-s/p})
///                                    + sum_{u<p<=v} log(1 + e^{s/p}/p)
/// Needs 2 <= u <= v and v >= min_ratio * s.
double log_w_we(double s, double u, double v, double min_ratio = 1.0);

/// Solution z of z log z = s, s >= e (Newton from s / max(1, log s)).
double solve_z(double s);

/// z log z log(e^gamma log z) - z + z sum_{j=2}^m b_j / (log z)^j.
double log_w_wz(double s, int m, const CoefficientSet& coeffs);

}  // namespace tdl
