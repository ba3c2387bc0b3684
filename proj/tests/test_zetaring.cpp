#include <doctest.h>

#include <cmath>

#include "tdl/errors.hpp"
#include "tdl/numeric.hpp"
#include "tdl/rational.hpp"
#include "tdl/series.hpp"
#include "tdl/zeta_expr.hpp"

using namespace tdl;

namespace {

ZetaExpr q(long n, long d = 1) { return ZetaExpr(make_rational(n, d)); }
const ZetaExpr pi2 = ZetaExpr::pi_pow(2);
const ZetaExpr pi4 = ZetaExpr::pi_pow(4);

FormalSeries series(std::vector<ZetaExpr> c) {
    const int order = static_cast<int>(c.size()) - 1;
    return FormalSeries(order, std::move(c));
}

double eta_numeric(int r) {
    // mean of two consecutive partial sums of the alternating series
    long double s = 0, prev = 0;
    for (long k = 1; k <= 200001; ++k) {
        prev = s;
        s += ((k % 2) ? 1.0L : -1.0L) / std::pow(static_cast<long double>(k), r);
    }
    return static_cast<double>(0.5L * (s + prev));
}

}  // namespace

TEST_CASE("BigRational is kept reduced") {
    const BigRational x = make_rational(6, -4);
    CHECK(x.get_num() == -3);
    CHECK(x.get_den() == 2);
    CHECK(to_string(parse_rational("10/4")) == "5/2");
    CHECK(to_string(parse_rational("-7")) == "-7");
}

TEST_CASE("Bernoulli numbers") {
    CHECK(bernoulli(0) == 1);
    CHECK(bernoulli(1) == make_rational(-1, 2));
    CHECK(bernoulli(2) == make_rational(1, 6));
    CHECK(bernoulli(4) == make_rational(-1, 30));
    CHECK(bernoulli(12) == make_rational(-691, 2730));
    CHECK(bernoulli(7) == 0);
}

TEST_CASE("even zeta values canonicalize to pi powers") {
    CHECK(ZetaExpr::zeta(2) == make_rational(1, 6) * pi2);
    CHECK(ZetaExpr::zeta(4) == make_rational(1, 90) * pi4);
    CHECK(ZetaExpr::zeta(2) * ZetaExpr::zeta(2) == make_rational(1, 36) * pi4);
    CHECK((ZetaExpr::zeta(2) * ZetaExpr::zeta(2)).terms() == (make_rational(1, 36) * pi4).terms());
    CHECK(ZetaExpr::zeta(3).terms().begin()->first.zetas == std::vector<int>{3});
    CHECK_THROWS_AS(ZetaExpr::zeta(1), DomainError);
}

TEST_CASE("eta values") {
    CHECK(eta_value(2) == make_rational(1, 12) * pi2);
    CHECK(eta_value(3) == make_rational(3, 4) * ZetaExpr::zeta(3));
    CHECK(eta_value(4) == make_rational(7, 720) * pi4);
    CHECK_THROWS_AS(eta_value(1), DomainError);
    for (int r : {2, 3, 4, 5, 6})
        CHECK(numeric_eval(eta_value(r)) == doctest::Approx(eta_numeric(r)).epsilon(1e-12));
}

TEST_CASE("numeric evaluation") {
    CHECK(numeric_eval(ZetaExpr::zeta(2)) == doctest::Approx(1.6449340668482264).epsilon(1e-15));
    CHECK(numeric_eval(ZetaExpr()) == 0.0);
    const ZetaExpr a2 = -(make_rational(1, 6) * pi2) * ZetaExpr::egamma(2);
    CHECK(numeric_eval(a2) == doctest::Approx(-1.6449340668482264 * std::exp(2 * kEulerGamma)).epsilon(1e-14));
    CHECK(numeric_eval(a2) == doctest::Approx(-5.2176).epsilon(1e-4));
    CHECK(numeric_string(ZetaExpr::pi_pow(2), 25).substr(0, 20) == "9.869604401089358618");
}

TEST_CASE("canonical text and JSON") {
    const ZetaExpr a2 = -(make_rational(1, 6) * pi2) * ZetaExpr::egamma(2);
    CHECK(a2.to_text() == "-(1/6)*pi^2*egamma^2");
    CHECK(a2.to_pretty() == "-(pi^2/6)*egamma^2");
    const auto j = a2.to_json();
    CHECK(j.dump() == R"({"gamma":2,"terms":[{"coef":"-1/6","pi":2,"zeta":[]}]})");
    CHECK(ZetaExpr::from_json(j) == a2);
    const ZetaExpr c4 = make_rational(1, 6) * pi2 + make_rational(37, 360) * pi4;
    CHECK(c4.to_pretty() == "pi^2/6 + 37*pi^4/360");
    CHECK(ZetaExpr::from_json(c4.to_json()) == c4);
    CHECK((-(c4 * ZetaExpr::egamma(4))).to_pretty() == "-(pi^2/6 + 37*pi^4/360)*egamma^4");
}

TEST_CASE("gamma tags must agree when adding") {
    CHECK_THROWS(pi2 * ZetaExpr::egamma(2) + pi2 * ZetaExpr::egamma(3));
    CHECK((ZetaExpr() + pi2 * ZetaExpr::egamma(3)).gamma_power() == 3);
}

TEST_CASE("polynomials and rational functions") {
    const Poly k = Poly::monomial(1, 1);
    const Poly one = Poly::constant(1);
    const Poly p = (k + Poly::constant(2)) * (k + Poly::constant(3));
    CHECK(p.to_string() == "k^2 + 5*k + 6");
    Poly quot, rem;
    Poly::divmod(p, k + Poly::constant(2), quot, rem);
    CHECK(quot == k + Poly::constant(3));
    CHECK(rem.is_zero());
    CHECK(Poly::gcd(p, k * k - Poly::constant(4)) == k + Poly::constant(2));

    const RationalFunc q3(-(k + Poly::constant(2)), k * k);
    CHECK(q3.to_string() == "-(k + 2)/k^2");
    CHECK(q3.has_pure_power_denominator());
    CHECK(q3.denominator_power() == 2);
    CHECK(q3.decays());
    const RationalFunc reduced(p, (k + Poly::constant(2)) * k);
    CHECK(reduced == RationalFunc(k + Poly::constant(3), k));
    CHECK_FALSE(RationalFunc(one, k + one).has_pure_power_denominator());
    CHECK(RationalFunc::monomial(1, -1).to_string() == "1/k");
    CHECK(q3.eval(2.0) == doctest::Approx(-1.0));
}

TEST_CASE("series exp, product and reversion examples") {
    const FormalSeries eps = FormalSeries::variable(3);
    CHECK(series_exp(eps) == series({q(1), q(1), q(1, 2), q(1, 6)}));
    CHECK(series_mul(series({q(1), q(1), q(0)}), series({q(1), q(-1), q(0)})) == series({q(1), q(0), q(-1)}));
    const FormalSeries a = series({q(0), q(1), q(1), q(0)});
    const FormalSeries inv = series_revert(a);
    CHECK(inv == series({q(0), q(1), q(-1), q(2)}));
    CHECK(series_compose(a, inv) == eps);
    CHECK(series_compose(inv, a) == eps);
    CHECK_THROWS_AS(series_exp(series({q(1), q(1)})), DomainError);
    CHECK_THROWS_AS(series_revert(series({q(0), q(2)})), DomainError);
    CHECK(series_mul(series_reciprocal(series({q(1), pi2, q(3)})), series({q(1), pi2, q(3)})) ==
          FormalSeries::constant(2, q(1)));
}
