#pragma once

// Symbolic coefficient pipeline for the large-t expansion of log B(t).
//
//   q_j, r_j   integration-by-parts recursions for the two integrals that
//              make up log W(s) at the scale s = z log z
//   b_j        = sum_k (-1)^{k+1} (q_j(k) + r_j(k)) / k, as eta values
//   alpha..mu  the saddle-point chain that re-expands in 1/log y
//   c_j, a_j   log min W(s)/t^s = -y + y sum c_j/(log y)^j,  a_j = -c_j e^{j gamma}

#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

#include "tdl/rational.hpp"
#include "tdl/zeta_expr.hpp"

namespace tdl {

using ExprList = std::map<int, ZetaExpr>;
using RationalFuncList = std::map<int, RationalFunc>;

struct CoefficientSet {
    int m = 0;
    RationalFuncList q, r;
    ExprList theta, rho, b;
    ExprList alpha;  // 2..m+1
    ExprList beta, delta, eta_chain, lambda, mu, c, a;

    nlohmann::json to_json() const;
    /// One "name_j = value" line per entry, pretty forms.
    std::string to_text() const;
    /// FNV-1a over the canonical text of every entry.
    std::uint64_t hash() const;
};

/// Which of the two integration-by-parts recursions to run.
enum class Recursion { lower, upper };

/// Coefficients of z/(log z)^j, j = 2..m, from iterating the recursion
/// starting at I_k(k,1) (lower) or J_k(k,1) (upper).
RationalFuncList expand_recursion(Recursion which, int m);

RationalFuncList compute_qj(int m);
RationalFuncList compute_rj(int m);

/// sum_{k>=1} (-1)^{k+1} f(k) for f = N(k)/k^n with every power >= 2,
/// as a combination of eta values. Throws PipelineError (carrying a numeric
/// fallback value) when f has any other shape.
ZetaExpr alternating_sum(const RationalFunc& f);

/// Numeric sum of the same alternating series with Cohen-Villegas-Zagier
/// acceleration. Valid for any f that is smooth and decays in k.
double alternating_sum_numeric(const RationalFunc& f, int terms = 60);

ExprList compute_b(int m);

CoefficientSet compute_chain(int m);

}  // namespace tdl
