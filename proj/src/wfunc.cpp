#include "tdl/wfunc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "tdl/errors.hpp"
#include "tdl/numeric.hpp"
#include "tdl/parallel.hpp"
#include "tdl/primes.hpp"

namespace tdl {

namespace {

constexpr std::size_t kChunk = std::size_t{1} << 15;

/// Chunked, compensated prime sum. Chunk boundaries do not depend on the
/// worker count, and partials are reduced in chunk order.
template <std::size_t N, class Term>
std::array<double, N> prime_sum(std::span<const std::uint32_t> primes, Term term) {
    const std::size_t chunks = (primes.size() + kChunk - 1) / kChunk;
    std::vector<std::array<KahanSum, N>> partial(chunks);
    parallel_for(chunks, [&](std::size_t c) {
        const std::size_t lo = c * kChunk;
        const std::size_t hi = std::min(primes.size(), lo + kChunk);
        std::array<double, N> t{};
        for (std::size_t i = lo; i < hi; ++i) {
            term(static_cast<double>(primes[i]), t);
            for (std::size_t k = 0; k < N; ++k) partial[c][k].add(t[k]);
        }
    });
    std::array<KahanSum, N> total{};
    for (const auto& p : partial)
        for (std::size_t k = 0; k < N; ++k) total[k].add(p[k]);
    std::array<double, N> out{};
    for (std::size_t k = 0; k < N; ++k) out[k] = total[k].value();
    return out;
}

/// log(1 + ((1-1/p)^{-s} - 1)/p) with A = -s log(1 - 1/p).
inline double log_term(double p, double s) {
    const double a = -s * std::log1p(-1.0 / p);
    if (a < kLargeExponent) return std::log1p(std::expm1(a) / p);
    // 1 + (e^A - 1)/p = (e^A / p) (1 + (p - 1) e^{-A})
    return a - std::log(p) + std::log1p((p - 1.0) * std::exp(-a));
}

void check_s(double s) {
    if (!(s >= 0.0)) throw DomainError("log W(s) requires s >= 0");
}

std::uint64_t grow_cutoff(double s, double tol, double (*bound)(double, double)) {
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    double v = std::max(4.0 * s, 1e4);
    while (bound(s, v) >= tol) {
        v *= 2.0;
        if (v > static_cast<double>(kMaxCutoff))
            throw ResourceError("prime cutoff for s = " + std::to_string(s) +
                                " at the requested tolerance exceeds the sieve bound");
    }
    return static_cast<std::uint64_t>(v);
}

}  // namespace

// For p > v >= 4s each term is below (E - 1)/p with E - 1 <= s e^{s/(v-1)}/(p - 1);
// sum_{p>v} 1/(p(p-1)) is taken as 1.25/(v log v).
double log_w_tail_bound(double s, double v) {
    return 1.25 * s * std::exp(s / (v - 1.0)) / (v * std::log(v));
}

double log_w_d1_tail_bound(double s, double v) {
    return 1.25 * std::exp(s / (v - 1.0)) / (v * std::log(v));
}

double log_w_d2_tail_bound(double s, double v) {
    return 1.25 * std::exp(s / (v - 1.0)) / (2.0 * v * v * std::log(v));
}

std::uint64_t choose_cutoff(double s, double tol) {
    check_s(s);
    return grow_cutoff(s, tol, &log_w_tail_bound);
}

LogWValue log_w_at(double s, std::uint64_t cutoff) {
    check_s(s);
    if (cutoff < 2) throw DomainError("cutoff must be at least 2");
    const auto table = shared_primes(cutoff);
    const auto sums = prime_sum<1>(table->up_to(cutoff), [s](double p, std::array<double, 1>& t) {
        t[0] = log_term(p, s);
    });
    const double v = static_cast<double>(cutoff);
    return {s, sums[0], v, s == 0.0 ? 0.0 : log_w_tail_bound(s, v)};
}

LogWValue log_w(double s, double tol) {
    check_s(s);
    return log_w_at(s, choose_cutoff(s, tol));
}

LogWDerivatives log_w_all(double s, std::uint64_t cutoff) {
    check_s(s);
    if (cutoff < 2) throw DomainError("cutoff must be at least 2");
    const auto table = shared_primes(cutoff);
    const auto sums = prime_sum<3>(table->up_to(cutoff), [s](double p, std::array<double, 3>& t) {
        const double ell = -std::log1p(-1.0 / p);
        const double a = s * ell;
        t[0] = log_term(p, s);
        // d/ds of the log term: ell E / (p - 1 + E) = ell / (1 + x), x = (p - 1) e^{-A}
        const double x = (p - 1.0) * std::exp(-a);
        t[1] = ell / (1.0 + x);
        t[2] = ell * ell * x / ((1.0 + x) * (1.0 + x));
    });
    return {sums[0], sums[1], sums[2]};
}

double log_w_d1(double s, double tol) {
    check_s(s);
    return log_w_all(s, grow_cutoff(s, tol, &log_w_d1_tail_bound)).d1;
}

double log_w_d2(double s, double tol) {
    check_s(s);
    return log_w_all(s, grow_cutoff(s, tol, &log_w_d2_tail_bound)).d2;
}

double log_w_we(double s, double u, double v, double min_ratio) {
    check_s(s);
    if (!(u >= 2.0)) throw DomainError("log_w_we requires u >= 2");
    if (u > v) throw DomainError("log_w_we requires u <= v");
    if (v < min_ratio * s) throw DomainError("log_w_we requires v >= c s");
    const auto iu = static_cast<std::uint64_t>(std::floor(u));
    const auto iv = static_cast<std::uint64_t>(std::floor(v));
    const auto table = shared_primes(iv);
    const double log_tu = log_mertens(u);
    const double log_tv = log_mertens(v);
    const double theta_u = log_primorial(u);
    const auto low = prime_sum<1>(table->up_to(iu), [s](double p, std::array<double, 1>& t) {
        t[0] = std::log1p(std::exp(std::log(p) - s / p));
    });
    const auto high = prime_sum<1>(table->range(iu, iv), [s](double p, std::array<double, 1>& t) {
        t[0] = std::log1p(std::exp(s / p - std::log(p)));
    });
    KahanSum total;
    total.add(s * log_tu);
    total.add(log_tu - log_tv - theta_u);
    total.add(low[0]);
    total.add(high[0]);
    return total.value();
}

double solve_z(double s) {
    if (!(s >= std::exp(1.0) * (1.0 - 1e-15))) throw DomainError("solve_z requires s >= e");
    double z = s / std::max(1.0, std::log(s));
    for (int i = 0; i < 60; ++i) {
        const double lz = std::log(z);
        const double step = (z * lz - s) / (lz + 1.0);
        z -= step;
        if (std::fabs(step) <= 1e-15 * z) break;
    }
    return z;
}

double log_w_wz(double s, int m, const CoefficientSet& coeffs) {
    if (!(s >= std::exp(1.0) * (1.0 - 1e-15))) throw DomainError("log_w_wz requires s >= e");
    if (m < 2 || m > coeffs.m) throw DomainError("expansion order outside the coefficient set");
    const double z = solve_z(s);
    const double lz = std::log(z);
    double sum = 0.0;
    for (int j = 2; j <= m; ++j) sum += numeric_eval(coeffs.b.at(j)) / std::pow(lz, j);
    return z * lz * (kEulerGamma + std::log(lz)) - z + z * sum;
}

}  // namespace tdl
