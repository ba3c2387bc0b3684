#pragma once

// Chernoff bound B(t) <= W(s)/t^s minimized over s >= 0, and the
// closed-form tail estimates it is compared with.

#include <optional>
#include <string>
#include <vector>

#include "tdl/coeffs.hpp"

namespace tdl {

struct SaddleOptions {
    /// Tail target for log W is tail_rel * max(1, s_ref), s_ref = 2 y log y.
    double tail_rel = 1e-8;
    int max_iterations = 200;
    /// Bracket doublings allowed when g'(hi) < log t.
    int max_extensions = 60;
};

struct SaddleResult {
    double t = 0.0;
    double y = 0.0;
    double s_star = 0.0;
    double log_min = 0.0;        // g(s*) - s* log t
    double grad_residual = 0.0;  // |g'(s*) - log t|
    int iterations = 0;
    bool boundary = false;       // minimum at s = 0
    double cutoff = 0.0;
    double tail_bound = 0.0;
    /// log B(t) lies in [log_min - log(3 s*), log_min] at a maximizer t.
    double lower_bracket() const;
};

/// Safeguarded Newton (bisection fallback) for g'(s) = log t on
/// [0, 4 y log y]. `tol` bounds the stationarity residual.
SaddleResult minimize_chernoff(double t, double tol, const SaddleOptions& options = {});

enum class Method { baseline, thm1, saddle, thm2 };
std::string to_string(Method m);
/// Accepts "baseline", "thm1", "saddle", "thm2".
Method parse_method(const std::string& name);

struct TailEstimate {
    double t = 0.0;
    double y = 0.0;
    Method method = Method::baseline;
    std::optional<int> m;
    double log_value = 0.0;
    /// Per-order contributions -y a_j / t^j for the expansion.
    std::vector<double> terms;
};

/// -y, the leading term shared by every estimate.
TailEstimate baseline_estimate(double t);

/// -y (1 + sum_{j=2}^m a_j / t^j).
TailEstimate thm1_estimate(double t, int m, const CoefficientSet& coeffs);

TailEstimate saddle_estimate(const SaddleResult& r);

/// |s* - y log y| / y.
double sylogy_check(double t, double tol = 1e-10);

}  // namespace tdl
