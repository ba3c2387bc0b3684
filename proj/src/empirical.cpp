#include "tdl/empirical.hpp"

#include <gmp.h>
#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "tdl/errors.hpp"
#include "tdl/numeric.hpp"
#include "tdl/parallel.hpp"
#include "tdl/primes.hpp"
#include "tdl/saddle.hpp"

namespace tdl {

using u128 = unsigned __int128;

// ----------------------------------------------------------- thresholds

Threshold parse_threshold(const std::string& raw) {
    std::string text = raw;
    text.erase(std::remove_if(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); }),
               text.end());
    const auto dot = text.find('.');
    const std::string whole = text.substr(0, dot);
    const std::string frac = dot == std::string::npos ? "" : text.substr(dot + 1);
    auto digits = [](const std::string& s) {
        return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
    };
    if (whole.empty() || !digits(whole) || !digits(frac) || (dot != std::string::npos && frac.empty()))
        throw DomainError("threshold '" + raw + "' is not a plain decimal");
    if (whole.size() > 3 || frac.size() > 15)
        throw DomainError("threshold '" + raw + "' has too many digits");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    std::int64_t num = std::stoll(whole) * den + (frac.empty() ? 0 : std::stoll(frac));
    const std::int64_t g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return {text, num, den};
}

std::vector<Threshold> parse_thresholds(const std::string& list) {
    std::vector<Threshold> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_threshold(item));
    if (out.empty()) throw DomainError("empty threshold list");
    return out;
}

namespace {

/// num/den >= t, exactly.
inline bool ratio_at_least(std::uint64_t num, std::uint64_t den, const Threshold& t) {
    return static_cast<u128>(num) * static_cast<u128>(t.den) >=
           static_cast<u128>(t.num) * static_cast<u128>(den);
}

/// Number of thresholds t_i (ascending) with num/den >= t_i.
inline std::size_t thresholds_reached(std::uint64_t num, std::uint64_t den, std::span<const Threshold> ts) {
    std::size_t lo = 0, hi = ts.size();
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (ratio_at_least(num, den, ts[mid]))
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

void validate_thresholds(const std::vector<Threshold>& ts) {
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (ts[i].num < ts[i].den) throw DomainError("thresholds must be >= 1");
        if (i > 0 && static_cast<u128>(ts[i].num) * static_cast<u128>(ts[i - 1].den) <
                         static_cast<u128>(ts[i - 1].num) * static_cast<u128>(ts[i].den))
            throw DomainError("thresholds must be ascending");
    }
}

void validate_n(std::uint64_t N, const EmpiricalOptions& options) {
    if (N < 1) throw DomainError("N must be at least 1");
    if (N > options.max_n) throw ResourceError("N = " + std::to_string(N) + " exceeds the configured maximum");
}

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

constexpr long double kPiSquared = 9.869604401089358618834490999876151135L;

/// psi/n >= (t.num/t.den) * 6/pi^2, decided exactly: psi den pi^2 vs 6 num n.
bool psi_at_least_scaled(std::uint64_t psi, std::uint64_t n, const Threshold& t) {
    const u128 lhs = static_cast<u128>(psi) * static_cast<u128>(t.den);
    const u128 rhs = static_cast<u128>(6) * static_cast<u128>(t.num) * static_cast<u128>(n);
    const long double l = static_cast<long double>(lhs) * kPiSquared;
    const long double r = static_cast<long double>(rhs);
    if (std::fabs(l - r) > 1e-15L * r) return l >= r;
    // pi^2 is irrational, so equality never occurs; refine at high precision
    mpfr_t a, b;
    mpfr_inits2(256, a, b, static_cast<mpfr_ptr>(nullptr));
    mpfr_const_pi(a, MPFR_RNDN);
    mpfr_sqr(a, a, MPFR_RNDN);
    auto set_u128 = [](mpfr_ptr x, u128 v) {
        mpfr_set_ui(x, static_cast<unsigned long>(v >> 64), MPFR_RNDN);
        mpfr_mul_2ui(x, x, 64, MPFR_RNDN);
        mpfr_add_ui(x, x, static_cast<unsigned long>(v & 0xffffffffffffffffULL), MPFR_RNDN);
    };
    set_u128(b, lhs);
    mpfr_mul(a, a, b, MPFR_RNDN);
    set_u128(b, rhs);
    const bool out = mpfr_cmp(a, b) >= 0;
    mpfr_clears(a, b, static_cast<mpfr_ptr>(nullptr));
    return out;
}

}  // namespace

// ------------------------------------------------------------ factor sieve

void for_each_arith(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::span<const ArithRecord>)>& visit,
                    const EmpiricalOptions& options) {
    lo = std::max<std::uint64_t>(lo, 1);
    if (hi < lo) return;
    if (hi > std::numeric_limits<std::uint32_t>::max() * std::uint64_t{16})
        throw ResourceError("factor sieve range too large");
    const std::uint64_t root = isqrt(hi);
    const auto table = shared_primes(std::max<std::uint64_t>(root, 2));
    const auto base = table->up_to(root);
    const std::uint64_t seg = std::max<std::uint64_t>(options.segment_size, 1024);
    const std::uint64_t segments = (hi - lo) / seg + 1;

    parallel_for(segments, [&](std::size_t index) {
        const std::uint64_t start = lo + index * seg;
        const std::uint64_t stop = std::min(hi, start + seg - 1);
        const std::size_t len = stop - start + 1;
        std::vector<std::uint64_t> rem(len);
        std::vector<ArithRecord> rec(len);
        for (std::size_t i = 0; i < len; ++i) {
            rem[i] = start + i;
            rec[i] = {start + i, 1, 1, 1};
        }
        for (std::uint32_t p32 : base) {
            const std::uint64_t p = p32;
            for (std::uint64_t n = (start + p - 1) / p * p; n <= stop; n += p) {
                const std::size_t i = n - start;
                std::uint64_t pk = 1;
                while (rem[i] % p == 0) {
                    rem[i] /= p;
                    pk *= p;
                }
                ArithRecord& r = rec[i];
                r.sigma *= (pk * p - 1) / (p - 1);
                r.phi *= pk / p * (p - 1);
                r.psi *= pk / p * (p + 1);
            }
        }
        for (std::size_t i = 0; i < len; ++i) {
            const std::uint64_t q = rem[i];
            if (q > 1) {
                ArithRecord& r = rec[i];
                r.sigma *= q + 1;
                r.phi *= q - 1;
                r.psi *= q + 1;
            }
        }
        visit(rec);
    });
}

// -------------------------------------------------------------- tails

EmpiricalTail sieve_tails(std::uint64_t N, std::vector<Threshold> thresholds, const EmpiricalOptions& options) {
    validate_n(N, options);
    validate_thresholds(thresholds);
    const std::size_t T = thresholds.size();
    const std::uint64_t seg = std::max<std::uint64_t>(options.segment_size, 1024);
    const std::uint64_t segments = (N - 1) / seg + 1;
    // per-segment histograms of "number of thresholds reached", merged in order
    std::vector<std::vector<std::uint64_t>> hist(segments, std::vector<std::uint64_t>(3 * (T + 1), 0));
    for_each_arith(
        1, N,
        [&](std::span<const ArithRecord> recs) {
            auto& h = hist[(recs.front().n - 1) / seg];
            for (const ArithRecord& r : recs) {
                ++h[thresholds_reached(r.sigma, r.n, thresholds)];
                ++h[(T + 1) + thresholds_reached(r.n, r.phi, thresholds)];
                ++h[2 * (T + 1) + thresholds_reached(r.psi, r.n, thresholds)];
            }
        },
        options);
    std::vector<std::uint64_t> total(3 * (T + 1), 0);
    for (const auto& h : hist)
        for (std::size_t i = 0; i < total.size(); ++i) total[i] += h[i];

    EmpiricalTail out;
    out.N = N;
    out.thresholds = std::move(thresholds);
    auto suffix = [&](std::size_t offset) {
        // count of n reaching threshold i = number that reached more than i thresholds
        std::vector<std::uint64_t> counts(T, 0);
        std::uint64_t acc = 0;
        for (std::size_t c = T; c >= 1; --c) {
            acc += total[offset + c];
            counts[c - 1] = acc;
        }
        return counts;
    };
    out.counts_A = suffix(0);
    out.counts_B = suffix(T + 1);
    out.counts_D = suffix(2 * (T + 1));
    return out;
}

std::string EmpiricalTail::to_csv() const {
    std::ostringstream os;
    os << "threshold,count_A,count_B,count_D,N\n";
    for (std::size_t i = 0; i < thresholds.size(); ++i)
        os << thresholds[i].text << ',' << counts_A[i] << ',' << counts_B[i] << ',' << counts_D[i] << ',' << N
           << '\n';
    return os.str();
}

std::uint64_t pointwise_sigma_phi_violation(std::uint64_t limit) {
    std::uint64_t witness = 0;
    if (limit < 2) return 0;
    for_each_arith(2, limit, [&](std::span<const ArithRecord> recs) {
        for (const ArithRecord& r : recs) {
            // sigma/n < n/phi  <=>  sigma phi < n^2
            if (static_cast<u128>(r.sigma) * r.phi >= static_cast<u128>(r.n) * r.n) {
                static std::mutex m;
                std::lock_guard lock(m);
                if (witness == 0 || r.n < witness) witness = r.n;
            }
        }
    });
    return witness;
}

// ------------------------------------------------------------ Chernoff

std::vector<ChernoffRow> chernoff_rows(const EmpiricalTail& tail) {
    std::vector<ChernoffRow> rows;
    for (std::size_t i = 0; i < tail.thresholds.size(); ++i) {
        ChernoffRow row;
        row.t = tail.thresholds[i];
        row.density = static_cast<double>(tail.counts_B[i]) / static_cast<double>(tail.N);
        row.log_bound = minimize_chernoff(row.t.value(), 1e-10).log_min;
        const double bound = std::exp(row.log_bound);
        row.gap = row.density - bound;
        row.within = row.density <= 1.05 * bound + 10.0 / static_cast<double>(tail.N);
        rows.push_back(row);
    }
    return rows;
}

double chernoff_gap(std::uint64_t N, const Threshold& t) {
    return chernoff_rows(sieve_tails(N, {t})).front().gap;
}

// ------------------------------------------------------------ Dedekind

std::vector<DedekindRow> dedekind_rows(std::uint64_t N, const std::vector<Threshold>& thresholds,
                                       const EmpiricalOptions& options) {
    validate_n(N, options);
    validate_thresholds(thresholds);
    const std::size_t T = thresholds.size();
    const std::uint64_t seg = std::max<std::uint64_t>(options.segment_size, 1024);
    const std::uint64_t segments = (N - 1) / seg + 1;
    std::vector<std::vector<std::uint64_t>> hist(segments, std::vector<std::uint64_t>(2 * (T + 1), 0));
    for_each_arith(
        1, N,
        [&](std::span<const ArithRecord> recs) {
            auto& h = hist[(recs.front().n - 1) / seg];
            for (const ArithRecord& r : recs) {
                ++h[thresholds_reached(r.n, r.phi, thresholds)];
                std::size_t a = 0, b = T;
                while (a < b) {
                    const std::size_t mid = (a + b) / 2;
                    if (psi_at_least_scaled(r.psi, r.n, thresholds[mid]))
                        a = mid + 1;
                    else
                        b = mid;
                }
                ++h[(T + 1) + a];
            }
        },
        options);
    std::vector<std::uint64_t> total(2 * (T + 1), 0);
    for (const auto& h : hist)
        for (std::size_t i = 0; i < total.size(); ++i) total[i] += h[i];
    std::vector<DedekindRow> rows(T);
    std::uint64_t acc_b = 0, acc_d = 0;
    for (std::size_t c = T; c >= 1; --c) {
        acc_b += total[c];
        acc_d += total[(T + 1) + c];
        rows[c - 1] = {thresholds[c - 1], acc_b, acc_d};
    }
    return rows;
}

bool dedekind_check(std::uint64_t N, const Threshold& t) { return dedekind_rows(N, {t}).front().holds(); }

// -------------------------------------------------------------- bridge

namespace {

struct BridgeShape {
    double y, root;
    std::vector<std::pair<std::uint64_t, int>> m_factors;  // (p, h_p) for p <= sqrt y
    double log_m, p_lower, p_limit;
};

BridgeShape bridge_shape(double t) {
    BridgeShape b{};
    b.y = tail_scale(t);
    b.root = std::sqrt(b.y);
    const auto table = shared_primes(std::max<std::uint64_t>(static_cast<std::uint64_t>(b.root), 2));
    KahanSum log_m;
    double small_prod = 1.0;
    for (std::uint32_t p : table->up_to(static_cast<std::uint64_t>(std::floor(b.root)))) {
        // h_p = largest h with p^h <= y, i.e. floor(log y / log p)
        int h = 0;
        long double pw = p;
        while (pw <= static_cast<long double>(b.y)) {
            ++h;
            pw *= p;
        }
        b.m_factors.emplace_back(p, h);
        log_m.add(h * std::log(static_cast<double>(p)));
        small_prod *= 1.0 - 1.0 / (static_cast<double>(p) * p);
    }
    b.log_m = log_m.value();
    // prod_{p <= sqrt y} (1 - 1/y) * prod_{p > sqrt y} (1 - 1/p^2), the latter as (6/pi^2) / prod_{p <= sqrt y}
    b.p_lower = std::pow(1.0 - 1.0 / b.y, static_cast<double>(b.m_factors.size())) *
                (6.0 / (kPi * kPi)) / small_prod;
    b.p_limit = 1.0 - 5.0 / (b.root * std::log(b.y));
    return b;
}

}  // namespace

BridgeCertificate bridge_certificate(double t, std::uint64_t sample_limit) {
    if (!(t >= 2.0)) throw DomainError("bridge_certificate requires t >= 2");
    if (sample_limit > 1'000'000) throw DomainError("bridge_certificate samples at most 10^6 values of n");
    const BridgeShape shape = bridge_shape(t);
    BridgeCertificate cert;
    cert.t = t;
    cert.y = shape.y;
    cert.log_m = shape.log_m;
    cert.log_m_limit = 3.0 * shape.root;
    cert.p_lower = shape.p_lower;
    cert.p_limit = shape.p_limit;
    cert.shifted_t = t - 5.0 * std::exp(kEulerGamma) / shape.root;
    cert.sample_limit = sample_limit;

    mpz_class m = 1;
    std::map<std::uint64_t, int> m_exp;
    for (const auto& [p, h] : shape.m_factors) {
        mpz_class pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), p, static_cast<unsigned long>(h));
        m *= pk;
        m_exp[p] = h;
    }
    cert.m = m.get_str();

    const mpq_class t_exact(t);
    const mpq_class shifted_exact(cert.shifted_t);

    // smallest prime factor table for the sample range
    std::vector<std::uint32_t> spf(sample_limit + 1, 0);
    for (std::uint64_t i = 2; i <= sample_limit; ++i) {
        if (spf[i] != 0) continue;
        for (std::uint64_t j = i; j <= sample_limit; j += i)
            if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }
    for (std::uint64_t n = 1; n <= sample_limit; ++n) {
        std::map<std::uint64_t, int> fac;
        for (std::uint64_t r = n; r > 1;) {
            const std::uint64_t p = spf[r];
            while (r % p == 0) {
                r /= p;
                ++fac[p];
            }
        }
        // n / phi(n) = prod p/(p-1)
        mpz_class num = 1, den = 1;
        for (const auto& [p, k] : fac) {
            num *= p;
            den *= p - 1;
        }
        if (mpq_class(num, den) < t_exact) continue;
        ++cert.samples_checked;
        std::map<std::uint64_t, int> merged = m_exp;
        for (const auto& [p, k] : fac) merged[p] += k;
        // sigma(nm)/(nm) = prod (p^{k+1} - 1) / (p^k (p - 1))
        mpz_class snum = 1, sden = 1;
        for (const auto& [p, k] : merged) {
            mpz_class pk;
            mpz_ui_pow_ui(pk.get_mpz_t(), p, static_cast<unsigned long>(k));
            snum *= pk * p - 1;
            sden *= pk * (p - 1);
        }
        mpq_class ratio(snum, sden);
        ratio.canonicalize();
        if (ratio < shifted_exact) cert.failures.push_back(n);
    }
    cert.all_passed = cert.failures.empty() && cert.log_m < cert.log_m_limit && cert.p_lower >= cert.p_limit;
    return cert;
}

double smallest_certified_t(const std::vector<double>& grid) {
    double best = std::numeric_limits<double>::quiet_NaN();
    for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
        const BridgeShape s = bridge_shape(*it);
        if (!(s.p_lower >= s.p_limit && s.log_m < 3.0 * s.root)) break;
        best = *it;
    }
    return best;
}

}  // namespace tdl
