#include "tdl/saddle.hpp"

#include <algorithm>
#include <cmath>

#include "tdl/errors.hpp"
#include "tdl/numeric.hpp"
#include "tdl/wfunc.hpp"

namespace tdl {

double SaddleResult::lower_bracket() const {
    return s_star > 0.0 ? log_min - std::log(3.0 * s_star) : log_min;
}

SaddleResult minimize_chernoff(double t, double tol, const SaddleOptions& options) {
    if (!(t > 0.0)) throw DomainError("minimize_chernoff requires t > 0");
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    SaddleResult out;
    out.t = t;
    out.y = tail_scale(t);
    const double log_t = std::log(t);
    const double ylogy = out.y * std::log(out.y);
    const double s_ref = 2.0 * std::max(ylogy, 1.0);
    const double tail_target = options.tail_rel * std::max(1.0, s_ref);

    double lo = 0.0;
    double hi = std::max(4.0 * ylogy, 8.0);
    std::uint64_t cutoff = choose_cutoff(hi, tail_target);
    LogWDerivatives at_hi = log_w_all(hi, cutoff);
    for (int ext = 0; at_hi.d1 <= log_t; ++ext) {
        if (ext >= options.max_extensions) throw PipelineError("Chernoff bracket exhausted");
        hi *= 2.0;
        cutoff = choose_cutoff(hi, tail_target);
        at_hi = log_w_all(hi, cutoff);
    }
    out.cutoff = static_cast<double>(cutoff);

    const LogWDerivatives at_zero = log_w_all(0.0, cutoff);
    if (at_zero.d1 >= log_t) {
        // h'(0) >= 0 and h is convex: boundary minimum with W(0) = 1
        out.boundary = true;
        out.s_star = 0.0;
        out.log_min = 0.0;
        out.grad_residual = std::fabs(at_zero.d1 - log_t);
        out.tail_bound = 0.0;
        return out;
    }

    double s = std::clamp(ylogy, lo, hi);
    if (!(s > lo && s < hi)) s = 0.5 * (lo + hi);
    LogWDerivatives d{};
    int it = 0;
    for (; it < options.max_iterations; ++it) {
        d = log_w_all(s, cutoff);
        const double h1 = d.d1 - log_t;
        if (std::fabs(h1) <= tol) break;
        if (h1 > 0.0)
            hi = s;
        else
            lo = s;
        if (hi - lo <= 1e-15 * hi) break;
        double next = s - h1 / d.d2;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        s = next;
    }
    out.iterations = it + 1;
    out.s_star = s;
    out.log_min = d.value - s * log_t;
    out.grad_residual = std::fabs(d.d1 - log_t);
    out.tail_bound = log_w_tail_bound(s, out.cutoff);
    return out;
}

std::string to_string(Method m) {
    switch (m) {
        case Method::baseline: return "baseline";
        case Method::thm1: return "thm1";
        case Method::saddle: return "saddle";
        case Method::thm2: return "thm2";
    }
    return "?";
}

Method parse_method(const std::string& name) {
    for (Method m : {Method::baseline, Method::thm1, Method::saddle, Method::thm2})
        if (to_string(m) == name) return m;
    throw DomainError("unknown method '" + name + "'");
}

TailEstimate baseline_estimate(double t) {
    TailEstimate e;
    e.t = t;
    e.y = tail_scale(t);
    e.method = Method::baseline;
    e.log_value = -e.y;
    return e;
}

TailEstimate thm1_estimate(double t, int m, const CoefficientSet& coeffs) {
    if (!(t >= 2.0)) throw DomainError("thm1_estimate requires t >= 2");
    if (m < 2 || m > coeffs.m) throw DomainError("expansion order outside the coefficient set");
    TailEstimate e = baseline_estimate(t);
    e.method = Method::thm1;
    e.m = m;
    KahanSum total;
    total.add(-e.y);
    for (int j = 2; j <= m; ++j) {
        const double term = -e.y * numeric_eval(coeffs.a.at(j)) / std::pow(t, j);
        e.terms.push_back(term);
        total.add(term);
    }
    e.log_value = total.value();
    return e;
}

TailEstimate saddle_estimate(const SaddleResult& r) {
    TailEstimate e;
    e.t = r.t;
    e.y = r.y;
    e.method = Method::saddle;
    e.log_value = r.log_min;
    return e;
}

double sylogy_check(double t, double tol) {
    if (!(t >= 5.0)) throw DomainError("sylogy_check requires t >= 5");
    const SaddleResult r = minimize_chernoff(t, tol);
    return std::fabs(r.s_star - r.y * std::log(r.y)) / r.y;
}

}  // namespace tdl
