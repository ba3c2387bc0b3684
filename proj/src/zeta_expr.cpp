#include "tdl/zeta_expr.hpp"

#include <gmp.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <mutex>

#include "tdl/errors.hpp"

namespace tdl {

Monomial Monomial::operator*(const Monomial& other) const {
    Monomial out;
    out.pi_power = pi_power + other.pi_power;
    out.zetas = zetas;
    out.zetas.insert(out.zetas.end(), other.zetas.begin(), other.zetas.end());
    std::sort(out.zetas.begin(), out.zetas.end());
    return out;
}

// --------------------------------------------------------------- Bernoulli

BigRational bernoulli(int n) {
    if (n < 0) throw DomainError("bernoulli index must be nonnegative");
    static std::mutex mutex;
    static std::vector<BigRational> cache{BigRational(1)};
    std::lock_guard lock(mutex);
    // sum_{j=0}^{m} C(m+1, j) B_j = 0
    while (static_cast<int>(cache.size()) <= n) {
        const int m = static_cast<int>(cache.size());
        mpz_class binom = 1;  // C(m+1, 0)
        BigRational acc = 0;
        for (int j = 0; j < m; ++j) {
            acc += BigRational(binom) * cache[j];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        BigRational b = -acc / BigRational(m + 1);
        b.canonicalize();
        cache.push_back(b);
    }
    return cache[n];
}

// ---------------------------------------------------------------- ZetaExpr

ZetaExpr::ZetaExpr(const BigRational& q) {
    if (q != 0) terms_.emplace(Monomial{}, q);
}

ZetaExpr ZetaExpr::term(const BigRational& coef, Monomial mono, int gamma_power) {
    if (mono.pi_power < 0 || mono.pi_power % 2 != 0)
        throw DomainError("pi power must be even and nonnegative");
    for (int r : mono.zetas)
        if (r < 3 || r % 2 == 0) throw DomainError("zeta generators must be odd arguments >= 3");
    if (gamma_power < 0) throw DomainError("gamma power must be nonnegative");
    std::sort(mono.zetas.begin(), mono.zetas.end());
    ZetaExpr out;
    out.insert(mono, coef);
    out.gamma_ = out.is_zero() ? 0 : gamma_power;
    return out;
}

ZetaExpr ZetaExpr::pi_pow(int n) { return term(1, Monomial{n, {}}); }

ZetaExpr ZetaExpr::egamma(int n) { return term(1, Monomial{}, n); }

ZetaExpr ZetaExpr::zeta(int r) {
    if (r < 2) throw DomainError("zeta(r) requires r >= 2");
    if (r % 2 == 1) return term(1, Monomial{0, {r}});
    // zeta(2n) = (-1)^{n+1} B_{2n} (2 pi)^{2n} / (2 (2n)!)
    const int n = r / 2;
    mpz_class fact = 1;
    for (int i = 2; i <= r; ++i) fact *= i;
    mpz_class two_pow = 1;
    two_pow <<= r;
    BigRational c = bernoulli(r) * BigRational(two_pow) / BigRational(2 * fact);
    if (n % 2 == 0) c = -c;
    c.canonicalize();
    return term(c, Monomial{r, {}});
}

void ZetaExpr::insert(const Monomial& m, const BigRational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

bool ZetaExpr::is_rational() const noexcept {
    if (gamma_ != 0) return false;
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{});
}

BigRational ZetaExpr::rational_part() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? BigRational(0) : it->second;
}

ZetaExpr ZetaExpr::operator-() const {
    ZetaExpr out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

ZetaExpr operator+(const ZetaExpr& a, const ZetaExpr& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.gamma_ != b.gamma_) throw DomainError("adding expressions with different egamma powers");
    ZetaExpr out = a;
    for (const auto& [m, c] : b.terms_) out.insert(m, c);
    if (out.is_zero()) out.gamma_ = 0;
    return out;
}

ZetaExpr operator-(const ZetaExpr& a, const ZetaExpr& b) { return a + (-b); }

ZetaExpr operator*(const ZetaExpr& a, const ZetaExpr& b) {
    ZetaExpr out;
    if (a.is_zero() || b.is_zero()) return out;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) out.insert(ma * mb, ca * cb);
    out.gamma_ = out.is_zero() ? 0 : a.gamma_ + b.gamma_;
    return out;
}

bool operator==(const ZetaExpr& a, const ZetaExpr& b) {
    return a.terms_ == b.terms_ && a.gamma_ == b.gamma_;
}

// ------------------------------------------------------------------- text

namespace {

std::string generators_text(const Monomial& m) {
    std::vector<std::string> parts;
    if (m.pi_power == 1)
        parts.emplace_back("pi");
    else if (m.pi_power > 1)
        parts.push_back("pi^" + std::to_string(m.pi_power));
    for (std::size_t i = 0; i < m.zetas.size();) {
        std::size_t j = i;
        while (j < m.zetas.size() && m.zetas[j] == m.zetas[i]) ++j;
        std::string z = "zeta(" + std::to_string(m.zetas[i]) + ")";
        if (j - i > 1) z += "^" + std::to_string(j - i);
        parts.push_back(z);
        i = j;
    }
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : "*") + p;
    return out;
}

std::string egamma_text(int g) {
    if (g == 0) return "";
    if (g == 1) return "egamma";
    return "egamma^" + std::to_string(g);
}

/// |c| * generators in pretty form, e.g. "37*pi^4/360".
std::string pretty_term(const BigRational& absc, const Monomial& m) {
    const std::string gens = generators_text(m);
    if (gens.empty()) return absc.get_str();
    const mpz_class num = absc.get_num();
    const mpz_class den = absc.get_den();
    std::string out = num == 1 ? gens : num.get_str() + "*" + gens;
    if (den != 1) out += "/" + den.get_str();
    return out;
}

std::string pretty_sum(const std::map<Monomial, BigRational>& terms) {
    std::string out;
    for (const auto& [m, c] : terms) {
        const std::string t = pretty_term(abs(c), m);
        if (out.empty())
            out = (c < 0 ? "-" : "") + t;
        else
            out += (c < 0 ? " - " : " + ") + t;
    }
    return out;
}

}  // namespace

std::string ZetaExpr::to_text() const {
    if (is_zero()) return "0";
    std::string out;
    const std::string eg = egamma_text(gamma_);
    for (const auto& [m, c] : terms_) {
        std::string t = "(" + BigRational(abs(c)).get_str() + ")";
        const std::string gens = generators_text(m);
        if (!gens.empty()) t += "*" + gens;
        if (!eg.empty()) t += "*" + eg;
        if (out.empty())
            out = (c < 0 ? "-" : "") + t;
        else
            out += (c < 0 ? " - " : " + ") + t;
    }
    return out;
}

std::string ZetaExpr::to_pretty() const {
    if (is_zero()) return "0";
    if (gamma_ == 0) return pretty_sum(terms_);
    const bool all_negative =
        std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.second < 0; });
    std::map<Monomial, BigRational> shown = terms_;
    if (all_negative)
        for (auto& [m, c] : shown) c = -c;
    return std::string(all_negative ? "-" : "") + "(" + pretty_sum(shown) + ")*" + egamma_text(gamma_);
}

nlohmann::json ZetaExpr::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [m, c] : terms_)
        terms.push_back({{"pi", m.pi_power}, {"zeta", m.zetas}, {"coef", c.get_str()}});
    return {{"terms", terms}, {"gamma", gamma_}};
}

ZetaExpr ZetaExpr::from_json(const nlohmann::json& j) {
    ZetaExpr out;
    const int gamma = j.at("gamma").get<int>();
    for (const auto& t : j.at("terms")) {
        Monomial m{t.at("pi").get<int>(), t.at("zeta").get<std::vector<int>>()};
        out += term(parse_rational(t.at("coef").get<std::string>()), m, gamma);
    }
    return out;
}

// ------------------------------------------------------------------- eta

ZetaExpr eta_value(int r) {
    if (r < 2) throw DomainError("eta(r) is only defined in the ring for r >= 2");
    mpz_class two_pow = 1;
    two_pow <<= (r - 1);
    BigRational factor = BigRational(1) - BigRational(1, 1) / BigRational(two_pow);
    factor.canonicalize();
    return ZetaExpr(factor) * ZetaExpr::zeta(r);
}

// --------------------------------------------------------------- numeric

namespace {

class MpfrValue {
public:
    explicit MpfrValue(mpfr_prec_t bits) { mpfr_init2(v_, bits); mpfr_set_ui(v_, 0, MPFR_RNDN); }
    ~MpfrValue() { mpfr_clear(v_); }
    MpfrValue(const MpfrValue&) = delete;
    MpfrValue& operator=(const MpfrValue&) = delete;
    mpfr_ptr get() { return v_; }

private:
    mpfr_t v_;
};

void evaluate(const ZetaExpr& x, int digits, mpfr_ptr result) {
    if (digits < 1) throw DomainError("numeric_eval needs at least one digit");
    const auto bits = static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623) + 32);
    MpfrValue pi(bits), term(bits), tmp(bits), q(bits);
    mpfr_set_prec(result, bits);
    mpfr_set_ui(result, 0, MPFR_RNDN);
    mpfr_const_pi(pi.get(), MPFR_RNDN);
    for (const auto& [m, c] : x.terms()) {
        mpfr_set_q(term.get(), c.get_mpq_t(), MPFR_RNDN);
        mpfr_pow_ui(tmp.get(), pi.get(), static_cast<unsigned long>(m.pi_power), MPFR_RNDN);
        mpfr_mul(term.get(), term.get(), tmp.get(), MPFR_RNDN);
        for (int r : m.zetas) {
            mpfr_zeta_ui(tmp.get(), static_cast<unsigned long>(r), MPFR_RNDN);
            mpfr_mul(term.get(), term.get(), tmp.get(), MPFR_RNDN);
        }
        mpfr_add(result, result, term.get(), MPFR_RNDN);
    }
    if (x.gamma_power() != 0) {
        mpfr_const_euler(tmp.get(), MPFR_RNDN);
        mpfr_mul_si(tmp.get(), tmp.get(), x.gamma_power(), MPFR_RNDN);
        mpfr_exp(tmp.get(), tmp.get(), MPFR_RNDN);
        mpfr_mul(result, result, tmp.get(), MPFR_RNDN);
    }
}

}  // namespace

double numeric_eval(const ZetaExpr& x, int digits) {
    MpfrValue v(64);
    evaluate(x, std::max(digits, 17), v.get());
    return mpfr_get_d(v.get(), MPFR_RNDN);
}

std::string numeric_string(const ZetaExpr& x, int digits) {
    MpfrValue v(64);
    evaluate(x, digits + 5, v.get());
    std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v.get());
    return buf.data();
}

}  // namespace tdl
