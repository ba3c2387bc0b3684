#include "tdl/coeffs.hpp"

#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include "tdl/errors.hpp"
#include "tdl/series.hpp"

namespace tdl {

// ------------------------------------------------------ recursion engine
//
// A pending node stands for  coef(k) * z^zpow * (log z)^(-lpow) * X_k(a, b)
// with a = k + depth for the lower integral and a = k - depth for the
// upper one. Expanding X_k(a, b) once emits its leading term
//   z^{1 + depth} / (k (log z)^{b+1})
// and spawns two children scaled by 1/(s k) = 1/(k z log z). The
// O_m(1/(sk)) remainders are never represented: they carry z^{zpow - 1}
// and lie below the z^1 terms being collected.

RationalFuncList expand_recursion(Recursion which, int m) {
    if (m < 2) throw DomainError("expansion order m must be >= 2");
    struct Node {
        int depth;
        int b;
        int zpow;
        int lpow;
        RationalFunc coef;
    };
    std::map<std::pair<int, int>, RationalFunc> collected;  // (z power, log power)
    std::vector<Node> pending{{0, 1, 0, 0, RationalFunc::constant(1)}};
    const RationalFunc inv_k = RationalFunc::monomial(1, -1);

    while (!pending.empty()) {
        Node node = std::move(pending.back());
        pending.pop_back();
        const int emitted_log = node.lpow + node.b + 1;
        if (emitted_log > m) continue;
        const int emitted_z = node.zpow + 1 + node.depth;
        auto [it, fresh] = collected.try_emplace({emitted_z, emitted_log}, RationalFunc());
        it->second = it->second + node.coef * inv_k;

        // branch coefficients of X_k(a+-1, b) and X_k(a+-1, b+1)
        RationalFunc same_b, next_b;
        if (which == Recursion::lower) {
            // -(a + 2) with a = k + depth
            same_b = RationalFunc(Poly({BigRational(-(node.depth + 2)), BigRational(-1)}), Poly::constant(1));
            next_b = RationalFunc::constant(node.b);
        } else {
            // (2 - a) with a = k - depth
            same_b = RationalFunc(Poly({BigRational(node.depth + 2), BigRational(-1)}), Poly::constant(1));
            next_b = RationalFunc::constant(-node.b);
        }
        const RationalFunc scale = node.coef * inv_k;
        pending.push_back({node.depth + 1, node.b, node.zpow - 1, node.lpow + 1, scale * same_b});
        pending.push_back({node.depth + 1, node.b + 1, node.zpow - 1, node.lpow + 1, scale * next_b});
    }

    RationalFuncList out;
    for (int j = 2; j <= m; ++j) out[j] = RationalFunc();
    for (const auto& [key, f] : collected) {
        const auto [zpow, lpow] = key;
        if (zpow != 1) throw PipelineError("recursion produced a term outside the z^1 scale", f.to_string());
        out[lpow] = f;
    }
    for (const auto& [j, f] : out)
        if (!f.decays())
            throw PipelineError("coefficient " + std::to_string(j) + " is not O(1/k)", f.to_string());
    return out;
}

RationalFuncList compute_qj(int m) { return expand_recursion(Recursion::lower, m); }

RationalFuncList compute_rj(int m) { return expand_recursion(Recursion::upper, m); }

// ---------------------------------------------------- alternating sums

double alternating_sum_numeric(const RationalFunc& f, int terms) {
    // sum_{j>=0} (-1)^j f(j + 1), Cohen-Villegas-Zagier algorithm 1
    const int n = terms;
    double d = std::pow(3.0 + std::sqrt(8.0), n);
    d = 0.5 * (d + 1.0 / d);
    double b = -1.0;
    double c = -d;
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
        c = b - c;
        s += c * f.eval(static_cast<double>(k + 1));
        b = (static_cast<double>(k + n) * static_cast<double>(k - n)) * b /
            ((k + 0.5) * (k + 1.0));
    }
    return s / d;
}

ZetaExpr alternating_sum(const RationalFunc& f) {
    if (f.is_zero()) return {};
    auto fail = [&](const std::string& why) -> ZetaExpr {
        throw PipelineError("alternating sum not expressible in eta values: " + why, f.to_string(),
                            alternating_sum_numeric(f, 30), true);
    };
    if (!f.has_pure_power_denominator()) return fail("denominator is not a pure power of k");
    const int n = f.denominator_power();
    ZetaExpr out;
    const auto& num = f.numerator().coeffs();
    for (int i = 0; i < static_cast<int>(num.size()); ++i) {
        if (num[i] == 0) continue;
        const int power = n - i;  // N_i k^i / k^n = N_i / k^power
        if (power < 2) return fail("term 1/k^" + std::to_string(power) + " diverges or leaves the ring");
        out += ZetaExpr(num[i]) * eta_value(power);
    }
    return out;
}

ExprList compute_b(int m) {
    const auto q = compute_qj(m);
    const auto r = compute_rj(m);
    const RationalFunc inv_k = RationalFunc::monomial(1, -1);
    ExprList b;
    for (int j = 2; j <= m; ++j)
        b[j] = alternating_sum(q.at(j) * inv_k) + alternating_sum(r.at(j) * inv_k);
    return b;
}

// --------------------------------------------------------------- chain

CoefficientSet compute_chain(int m) {
    if (m < 2) throw DomainError("expansion order m must be >= 2");
    CoefficientSet cs;
    cs.m = m;
    cs.q = compute_qj(m);
    cs.r = compute_rj(m);
    const RationalFunc inv_k = RationalFunc::monomial(1, -1);
    for (int j = 2; j <= m; ++j) {
        cs.theta[j] = alternating_sum(cs.q.at(j) * inv_k);
        cs.rho[j] = alternating_sum(cs.r.at(j) * inv_k);
        cs.b[j] = cs.theta[j] + cs.rho[j];
    }

    // stationarity of f(z): log y = log z exp(sum alpha_k / ((1 + log z) log^k z))
    cs.alpha[2] = cs.b[2];
    for (int k = 3; k <= m; ++k) cs.alpha[k] = cs.b[k] - ZetaExpr(k - 1) * cs.b[k - 1];
    cs.alpha[m + 1] = ZetaExpr(-m) * cs.b[m];

    // dividing by 1 + log z: beta_k = alpha_k - beta_{k-1}, only alpha_2..alpha_m enter
    cs.beta[2] = cs.alpha[2];
    for (int k = 3; k <= m; ++k) cs.beta[k] = cs.alpha[k] - cs.beta[k - 1];

    // Series in eps = 1/log z up to eps^{m+1}.
    const int order = m + 1;
    FormalSeries beta_series(order);
    for (int k = 2; k <= m; ++k) beta_series[k + 1] = cs.beta[k];
    // log y / log z = 1 + D(eps),  D = exp(sum beta_k eps^{k+1}) - 1
    FormalSeries one_plus_d = series_exp(beta_series);
    for (int k = 2; k <= m; ++k) cs.delta[k] = one_plus_d[k + 1];
    FormalSeries d_series = one_plus_d;
    d_series[0] = 0;

    // nu = 1/log y = eps / (1 + D(eps)); revert to eps(nu)
    FormalSeries nu_of_eps = series_mul(FormalSeries::variable(order), series_reciprocal(one_plus_d));
    FormalSeries eps_of_nu = series_revert(nu_of_eps);
    if (!(series_compose(nu_of_eps, eps_of_nu) == FormalSeries::variable(order)))
        throw PipelineError("series reversion failed its round-trip check");

    // log z / log y = 1 / (1 + D(eps(nu))) = 1 + sum eta_k nu^{k+1}
    FormalSeries ratio = series_reciprocal(FormalSeries::constant(order, 1) + series_compose(d_series, eps_of_nu));
    if (!ratio[1].is_zero() || !ratio[2].is_zero())
        throw PipelineError("log z / log y has unexpected low-order terms");
    for (int k = 2; k <= m; ++k) cs.eta_chain[k] = ratio[k + 1];

    // z / y = exp(sum eta_k nu^k) = 1 + sum lambda_k nu^k, up to nu^m
    FormalSeries eta_series(m);
    for (int k = 2; k <= m; ++k) eta_series[k] = cs.eta_chain[k];
    FormalSeries z_over_y = series_exp(eta_series);
    for (int k = 2; k <= m; ++k) cs.lambda[k] = z_over_y[k];

    // f(z)/z at the stationary point = -1 + sum (b_k - beta_k) eps^k, re-expanded in nu
    FormalSeries g_eps = FormalSeries::constant(m, -1);
    for (int k = 2; k <= m; ++k) g_eps[k] = cs.b[k] - cs.beta[k];
    FormalSeries g_nu = series_compose(g_eps, eps_of_nu.truncated(m));
    for (int k = 2; k <= m; ++k) cs.mu[k] = g_nu[k];
    if (!cs.mu[2].is_zero()) throw PipelineError("mu_2 must vanish", cs.mu[2].to_text());
    if (!g_nu[1].is_zero()) throw PipelineError("mu_1 must vanish", g_nu[1].to_text());

    // min f / y = (1 + sum lambda_k nu^k)(-1 + sum mu_k nu^k) = -1 + sum c_k nu^k
    FormalSeries product = series_mul(z_over_y, g_nu);
    if (!(product[0] == ZetaExpr(-1)) || !product[1].is_zero())
        throw PipelineError("saddle value has unexpected leading terms", product.to_text("nu"));
    for (int k = 2; k <= m; ++k) {
        cs.c[k] = product[k];
        cs.a[k] = -cs.c[k] * ZetaExpr::egamma(k);
    }
    return cs;
}

// ------------------------------------------------------- serialization

namespace {

nlohmann::json expr_entry(const ZetaExpr& x) {
    return {{"text", x.to_text()}, {"pretty", x.to_pretty()}, {"value", numeric_eval(x)}};
}

template <class Map, class Fn>
nlohmann::json list_json(const Map& list, Fn fn) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [j, v] : list) out[std::to_string(j)] = fn(v);
    return out;
}

template <class Fn>
void for_each_family(const CoefficientSet& cs, Fn fn) {
    fn("theta", cs.theta);
    fn("rho", cs.rho);
    fn("b", cs.b);
    fn("alpha", cs.alpha);
    fn("beta", cs.beta);
    fn("delta", cs.delta);
    fn("eta", cs.eta_chain);
    fn("lambda", cs.lambda);
    fn("mu", cs.mu);
    fn("c", cs.c);
    fn("a", cs.a);
}

}  // namespace

nlohmann::json CoefficientSet::to_json() const {
    nlohmann::json out;
    out["m"] = m;
    out["q"] = list_json(q, [](const RationalFunc& f) { return f.to_string(); });
    out["r"] = list_json(r, [](const RationalFunc& f) { return f.to_string(); });
    for_each_family(*this, [&](const char* name, const ExprList& list) { out[name] = list_json(list, expr_entry); });
    return out;
}

std::string CoefficientSet::to_text() const {
    std::ostringstream os;
    for (const auto& [j, f] : q) os << "q_" << j << "(k) = " << f.to_string() << '\n';
    for (const auto& [j, f] : r) os << "r_" << j << "(k) = " << f.to_string() << '\n';
    for_each_family(*this, [&](const char* name, const ExprList& list) {
        for (const auto& [j, x] : list) os << name << '_' << j << " = " << x.to_pretty() << '\n';
    });
    return os.str();
}

std::uint64_t CoefficientSet::hash() const {
    std::uint64_t h = 1469598103934665603ull;
    auto feed = [&](const std::string& s) {
        for (unsigned char ch : s) {
            h ^= ch;
            h *= 1099511628211ull;
        }
        h ^= '\n';
        h *= 1099511628211ull;
    };
    feed(std::to_string(m));
    for (const auto& [j, f] : q) feed(f.to_string());
    for (const auto& [j, f] : r) feed(f.to_string());
    for_each_family(*this, [&](const char*, const ExprList& list) {
        for (const auto& [j, x] : list) feed(x.to_text());
    });
    return h;
}

}  // namespace tdl
