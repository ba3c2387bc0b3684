#pragma once

// Prime generation and exact prime sums over the sieve.

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace tdl {

struct SieveOptions {
    /// Numbers per sieve segment.
    std::uint64_t segment_size = std::uint64_t{1} << 20;
    /// Upper bound on the bytes a materialized table may occupy.
    std::uint64_t memory_budget_bytes = std::uint64_t{2} << 30;
};

/// All primes up to `limit`, ascending. Immutable once built.
class PrimeTable {
public:
    PrimeTable() = default;
    PrimeTable(std::uint64_t limit, std::uint64_t segment_size,
               std::vector<std::uint32_t> primes)
        : limit_(limit), segment_size_(segment_size), primes_(std::move(primes)) {}

    std::uint64_t limit() const noexcept { return limit_; }
    std::uint64_t segment_size() const noexcept { return segment_size_; }
    std::size_t size() const noexcept { return primes_.size(); }
    std::span<const std::uint32_t> primes() const noexcept { return primes_; }

    /// Primes p with p <= x, as a prefix of primes().
    std::span<const std::uint32_t> up_to(std::uint64_t x) const noexcept;
    /// Primes p with lo < p <= hi.
    std::span<const std::uint32_t> range(std::uint64_t lo, std::uint64_t hi) const noexcept;

private:
    std::uint64_t limit_ = 0;
    std::uint64_t segment_size_ = 0;
    std::vector<std::uint32_t> primes_;
};

/// Segmented sieve of Eratosthenes. Throws ResourceError when the table
/// would exceed the memory budget or limit does not fit in 32 bits.
PrimeTable sieve_primes(std::uint64_t limit, const SieveOptions& options = {});

/// Streams the primes in [lo, hi] segment by segment without materializing
/// them; `visit` sees each segment's primes in ascending order.
void for_each_prime_segment(std::uint64_t lo, std::uint64_t hi,
                            const std::function<void(std::span<const std::uint64_t>)>& visit,
                            std::uint64_t segment_size = std::uint64_t{1} << 20);

/// Process-wide cache. Returns a table covering at least `limit`; tables
/// only grow, and returned pointers stay valid.
std::shared_ptr<const PrimeTable> shared_primes(std::uint64_t limit);

/// log t_u = -sum_{p<=u} log(1 - 1/p), summed exactly over the sieve.
double log_mertens(double u);

/// log P_u = theta(u) = sum_{p<=u} log p.
double log_primorial(double u);

}  // namespace tdl
