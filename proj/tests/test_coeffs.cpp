#include <doctest.h>

#include <chrono>
#include <cmath>

#include "tdl/coeffs.hpp"
#include "tdl/errors.hpp"

using namespace tdl;

namespace {

const ZetaExpr P2 = ZetaExpr::pi_pow(2);
const ZetaExpr P4 = ZetaExpr::pi_pow(4);
ZetaExpr r(long n, long d) { return ZetaExpr(make_rational(n, d)); }
ZetaExpr pi2(long n, long d) { return r(n, d) * P2; }
ZetaExpr pi4(long n, long d) { return r(n, d) * P4; }

Poly k_poly(std::vector<long> low_to_high) {
    std::vector<BigRational> c;
    for (long v : low_to_high) c.emplace_back(v);
    return Poly(c);
}
RationalFunc over_k_pow(std::vector<long> num, int n) { return RationalFunc(k_poly(num), Poly::monomial(1, n)); }

// sum_{k=1}^{N} (-1)^{k+1} f(k), averaged over the last two partial sums
double direct_alternating(const RationalFunc& f, long N) {
    long double s = 0, prev = 0;
    for (long k = 1; k <= N + 1; ++k) {
        prev = s;
        s += ((k % 2) ? 1.0L : -1.0L) * f.eval(static_cast<double>(k));
    }
    return static_cast<double>(0.5L * (s + prev));
}

}  // namespace

TEST_CASE("q_j and r_j through j = 4") {
    const auto q = compute_qj(4);
    const auto rr = compute_rj(4);
    CHECK(q.at(2) == over_k_pow({1}, 1));
    CHECK(q.at(3) == over_k_pow({-2, -1}, 2));
    // 1/k^2 + (k+2)(k+3)/k^3
    CHECK(q.at(4) == RationalFunc::monomial(1, -2) + RationalFunc(k_poly({6, 5, 1}), Poly::monomial(1, 3)));
    CHECK(rr.at(2) == over_k_pow({1}, 1));
    CHECK(rr.at(3) == over_k_pow({2, -1}, 2));
    // (2-k)(3-k)/k^3 - 1/k^2
    CHECK(rr.at(4) == RationalFunc(k_poly({6, -5, 1}), Poly::monomial(1, 3)) - RationalFunc::monomial(1, -2));
    CHECK(q.at(3).to_string() == "-(k + 2)/k^2");
}

TEST_CASE("every q_j, r_j decays like 1/k with a pure power denominator") {
    for (const auto& list : {compute_qj(10), compute_rj(10)})
        for (const auto& [j, f] : list) {
            CHECK(f.decays());
            CHECK(f.has_pure_power_denominator());
        }
}

TEST_CASE("b_j against the displayed values and direct summation") {
    const auto b = compute_b(4);
    CHECK(b.at(2) == pi2(1, 6));
    CHECK(b.at(3) == pi2(-1, 6));
    CHECK(b.at(4) == pi2(1, 6) + pi4(7, 60));

    const auto q = compute_qj(6), rr = compute_rj(6);
    const auto b6 = compute_b(6);
    for (int j = 2; j <= 6; ++j) {
        const RationalFunc f = (q.at(j) + rr.at(j)) * RationalFunc::monomial(1, -1);
        CHECK(numeric_eval(b6.at(j)) == doctest::Approx(direct_alternating(f, 1'000'000)).epsilon(1e-10));
        CHECK(numeric_eval(b6.at(j)) == doctest::Approx(alternating_sum_numeric(f)).epsilon(1e-12));
    }
}

TEST_CASE("alternating sums reject shapes outside the eta basis") {
    const RationalFunc bad(Poly::constant(1), k_poly({1, 1}) * Poly::monomial(1, 1));  // 1/(k(k+1))
    try {
        (void)alternating_sum(bad);
        FAIL("expected a pipeline error");
    } catch (const PipelineError& e) {
        CHECK_FALSE(e.offending().empty());
        REQUIRE(e.has_fallback());
        // sum (-1)^{k+1}/(k(k+1)) = 2 log 2 - 1
        CHECK(e.fallback_value() == doctest::Approx(2 * std::log(2.0) - 1).epsilon(1e-12));
    }
    CHECK_THROWS_AS(alternating_sum(RationalFunc::monomial(1, -1)), PipelineError);  // needs power >= 2
}

TEST_CASE("the m = 4 chain matches every displayed intermediate") {
    const auto start = std::chrono::steady_clock::now();
    const CoefficientSet cs = compute_chain(4);
    CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(1));

    CHECK(cs.alpha.at(2) == pi2(1, 6));
    CHECK(cs.alpha.at(3) == pi2(-1, 2));
    CHECK(cs.alpha.at(4) == pi2(2, 3) + pi4(7, 60));
    CHECK(cs.alpha.at(5) == r(-4, 1) * cs.b.at(4));
    for (const ExprList* list : {&cs.beta, &cs.delta}) {
        CHECK(list->at(2) == pi2(1, 6));
        CHECK(list->at(3) == pi2(-2, 3));
        CHECK(list->at(4) == pi2(4, 3) + pi4(7, 60));
    }
    for (int j = 2; j <= 4; ++j) CHECK(cs.eta_chain.at(j) == -cs.delta.at(j));
    CHECK(cs.lambda.at(2) == pi2(-1, 6));
    CHECK(cs.lambda.at(3) == pi2(2, 3));
    CHECK(cs.lambda.at(4) == pi2(-4, 3) - pi4(37, 360));
    CHECK(cs.mu.at(2).is_zero());
    CHECK(cs.mu.at(3) == pi2(1, 2));
    CHECK(cs.mu.at(4) == pi2(-7, 6));
    CHECK(cs.c.at(2) == pi2(1, 6));
    CHECK(cs.c.at(3) == pi2(-1, 6));
    CHECK(cs.c.at(4) == pi2(1, 6) + pi4(37, 360));
    CHECK(cs.a.at(2) == -pi2(1, 6) * ZetaExpr::egamma(2));
    CHECK(cs.a.at(3) == pi2(1, 6) * ZetaExpr::egamma(3));
    CHECK(cs.a.at(4) == -(pi2(1, 6) + pi4(37, 360)) * ZetaExpr::egamma(4));
    for (int j = 2; j <= 4; ++j) {
        CHECK(cs.b.at(j) == cs.theta.at(j) + cs.rho.at(j));
        CHECK(cs.a.at(j).gamma_power() == j);
    }
}

TEST_CASE("higher orders extend lower ones unchanged") {
    const CoefficientSet c4 = compute_chain(4), c5 = compute_chain(5), c8 = compute_chain(8);
    for (int j = 2; j <= 4; ++j) {
        CHECK(c5.c.at(j) == c4.c.at(j));
        CHECK(c5.a.at(j) == c4.a.at(j));
        CHECK(c8.c.at(j) == c4.c.at(j));
        CHECK(c5.lambda.at(j) == c4.lambda.at(j));
    }
    CHECK(c5.a.size() == 4);
    const CoefficientSet c2 = compute_chain(2);
    CHECK(c2.a.size() == 1);
    CHECK(c2.a.at(2) == c4.a.at(2));
    // odd zeta values do not survive into b_j (they cancel between theta and rho)
    for (const auto& [j, b] : c8.b)
        for (const auto& [mono, coef] : b.terms()) CHECK(mono.zetas.empty());
}

TEST_CASE("serialized forms") {
    const CoefficientSet cs = compute_chain(4);
    const std::string text = cs.to_text();
    CHECK(text.find("a_4 = -(pi^2/6 + 37*pi^4/360)*egamma^4") != std::string::npos);
    CHECK(text.find("q_4(k) = (k^2 + 6*k + 6)/k^3") != std::string::npos);
    const auto j = cs.to_json();
    CHECK(j["a"]["2"]["text"] == "-(1/6)*pi^2*egamma^2");
    CHECK(cs.hash() == compute_chain(4).hash());
    CHECK(cs.hash() != compute_chain(5).hash());
}
