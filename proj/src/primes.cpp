#include "tdl/primes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>

#include "tdl/errors.hpp"
#include "tdl/numeric.hpp"

namespace tdl {

namespace {

std::vector<std::uint64_t> small_primes(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

std::span<const std::uint32_t> PrimeTable::up_to(std::uint64_t x) const noexcept {
    auto end = std::upper_bound(primes_.begin(), primes_.end(), x,
                                [](std::uint64_t v, std::uint32_t p) { return v < p; });
    return {primes_.data(), static_cast<std::size_t>(end - primes_.begin())};
}

std::span<const std::uint32_t> PrimeTable::range(std::uint64_t lo, std::uint64_t hi) const noexcept {
    if (hi <= lo) return {};
    const auto begin = up_to(lo).size();
    const auto end = up_to(hi).size();
    return {primes_.data() + begin, end - begin};
}

void for_each_prime_segment(std::uint64_t lo, std::uint64_t hi,
                            const std::function<void(std::span<const std::uint64_t>)>& visit,
                            std::uint64_t segment_size) {
    lo = std::max<std::uint64_t>(lo, 2);
    if (hi < lo) return;
    if (segment_size == 0) throw DomainError("segment_size must be positive");
    const auto base = small_primes(isqrt(hi));
    std::vector<char> composite;
    std::vector<std::uint64_t> found;
    for (std::uint64_t start = lo; start <= hi;) {
        const std::uint64_t stop = std::min(hi, start + segment_size - 1);
        composite.assign(stop - start + 1, 0);
        for (std::uint64_t p : base) {
            if (p * p > stop) break;
            std::uint64_t first = std::max(p * p, (start + p - 1) / p * p);
            for (std::uint64_t j = first; j <= stop; j += p) composite[j - start] = 1;
        }
        found.clear();
        for (std::uint64_t n = start; n <= stop; ++n)
            if (!composite[n - start]) found.push_back(n);
        visit(found);
        if (stop == hi) break;
        start = stop + 1;
    }
}

PrimeTable sieve_primes(std::uint64_t limit, const SieveOptions& options) {
    if (limit > std::numeric_limits<std::uint32_t>::max())
        throw ResourceError("prime table limit " + std::to_string(limit) +
                            " exceeds 32-bit storage");
    // pi(x) < 1.26 x / log x for x > 1
    const double estimate =
        limit < 17 ? 8.0 : 1.26 * static_cast<double>(limit) / std::log(static_cast<double>(limit));
    if (estimate * sizeof(std::uint32_t) > static_cast<double>(options.memory_budget_bytes))
        throw ResourceError("prime table up to " + std::to_string(limit) +
                            " exceeds memory budget");
    std::vector<std::uint32_t> primes;
    primes.reserve(static_cast<std::size_t>(estimate));
    for_each_prime_segment(
        2, limit,
        [&](std::span<const std::uint64_t> seg) {
            for (auto p : seg) primes.push_back(static_cast<std::uint32_t>(p));
        },
        options.segment_size);
    primes.shrink_to_fit();
    return PrimeTable(limit, options.segment_size, std::move(primes));
}

std::shared_ptr<const PrimeTable> shared_primes(std::uint64_t limit) {
    static std::mutex mutex;
    static std::shared_ptr<const PrimeTable> cached;
    std::lock_guard lock(mutex);
    if (!cached || cached->limit() < limit) {
        // grow geometrically so repeated slightly larger requests stay cheap
        std::uint64_t target = std::max<std::uint64_t>(limit, 1u << 16);
        if (cached) target = std::max(target, std::min<std::uint64_t>(cached->limit() * 2,
                                                                        std::numeric_limits<std::uint32_t>::max()));
        cached = std::make_shared<const PrimeTable>(sieve_primes(target));
    }
    return cached;
}

double log_mertens(double u) {
    if (!(u >= 2.0)) return 0.0;
    const auto table = shared_primes(static_cast<std::uint64_t>(std::floor(u)));
    KahanSum sum;
    for (std::uint32_t p : table->up_to(static_cast<std::uint64_t>(std::floor(u))))
        sum.add(-std::log1p(-1.0 / p));
    return sum.value();
}

double log_primorial(double u) {
    if (!(u >= 2.0)) return 0.0;
    const auto table = shared_primes(static_cast<std::uint64_t>(std::floor(u)));
    KahanSum sum;
    for (std::uint32_t p : table->up_to(static_cast<std::uint64_t>(std::floor(u))))
        sum.add(std::log(static_cast<double>(p)));
    return sum.value();
}

}  // namespace tdl
