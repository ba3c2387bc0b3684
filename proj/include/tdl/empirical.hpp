#pragma once

// Exact finite-N counts of sigma(n)/n, n/phi(n) and psi(n)/n above
// thresholds, and checks of the inequalities relating them.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace tdl {

/// A decimal threshold held as an exact rational, with its source text.
struct Threshold {
    std::string text;
    std::int64_t num = 1;
    std::int64_t den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Parses "2", "2.5", "1.125" exactly (at most 15 fractional digits).
Threshold parse_threshold(const std::string& text);
/// Comma-separated list.
std::vector<Threshold> parse_thresholds(const std::string& list);

struct EmpiricalOptions {
    std::uint64_t segment_size = std::uint64_t{1} << 18;
    std::uint64_t max_n = 10'000'000'000ull;
};

/// Multiplicative data of one n.
struct ArithRecord {
    std::uint64_t n;
    std::uint64_t sigma;
    std::uint64_t phi;
    std::uint64_t psi;
};

/// Segmented factor sieve over [lo, hi]. Segments may be visited from
/// several threads at once and in any order; each span is one segment in
/// ascending n.
void for_each_arith(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::span<const ArithRecord>)>& visit,
                    const EmpiricalOptions& options = {});

struct EmpiricalTail {
    std::uint64_t N = 0;
    std::vector<Threshold> thresholds;
    std::vector<std::uint64_t> counts_A;  // sigma(n)/n >= t
    std::vector<std::uint64_t> counts_B;  // n/phi(n) >= t
    std::vector<std::uint64_t> counts_D;  // psi(n)/n >= t

    /// header `threshold,count_A,count_B,count_D,N`
    std::string to_csv() const;
};

EmpiricalTail sieve_tails(std::uint64_t N, std::vector<Threshold> thresholds,
                          const EmpiricalOptions& options = {});

/// First n in [2, limit] with sigma(n)/n >= n/phi(n), or 0 if none.
std::uint64_t pointwise_sigma_phi_violation(std::uint64_t limit);

struct ChernoffRow {
    Threshold t;
    double density = 0.0;    // counts_B / N
    double log_bound = 0.0;  // min_s log W(s)/t^s
    double gap = 0.0;        // density - exp(log_bound)
    bool within = false;     // density <= 1.05 bound + 10/N
};

/// Chernoff comparison for every threshold of an existing tail.
std::vector<ChernoffRow> chernoff_rows(const EmpiricalTail& tail);

/// counts_B(t)/N - exp(min_s log W(s)/t^s).
double chernoff_gap(std::uint64_t N, const Threshold& t);

struct DedekindRow {
    Threshold t;
    std::uint64_t count_B = 0;  // n/phi(n) >= t
    std::uint64_t count_D = 0;  // psi(n)/n >= t / zeta(2)
    bool holds() const { return count_D >= count_B; }
};

std::vector<DedekindRow> dedekind_rows(std::uint64_t N, const std::vector<Threshold>& thresholds,
                                       const EmpiricalOptions& options = {});

/// count of psi(n)/n >= t/zeta(2) is at least the count of n/phi(n) >= t.
bool dedekind_check(std::uint64_t N, const Threshold& t);

struct BridgeCertificate {
    double t = 0.0;
    double y = 0.0;
    std::string m;             // decimal m(t) = prod_{p <= sqrt y} p^{h_p}
    double log_m = 0.0;
    double log_m_limit = 0.0;  // 3 sqrt y
    double p_lower = 0.0;      // (1 - 1/y)^{pi(sqrt y)} prod_{p > sqrt y} (1 - p^-2)
    double p_limit = 0.0;      // 1 - 5/(sqrt y log y)
    double shifted_t = 0.0;    // t - 5 e^gamma / sqrt y
    std::uint64_t sample_limit = 0;
    std::uint64_t samples_checked = 0;
    std::vector<std::uint64_t> failures;
    bool all_passed = false;
};

/// Builds m(t) and checks every n <= sample_limit with n/phi(n) >= t
/// satisfies sigma(nm)/(nm) >= t - 5 e^gamma / sqrt y, exactly.
BridgeCertificate bridge_certificate(double t, std::uint64_t sample_limit);

/// Smallest grid value from which the P lower bound holds at every larger
/// grid value; returns NaN if it fails at the last one.
double smallest_certified_t(const std::vector<double>& ascending_grid);

}  // namespace tdl
