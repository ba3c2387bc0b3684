#pragma once

// Integral estimate of log B(t):  -y + min_{s in J} I(y, s),
// J = [y log y - y, y log y + y], with
//   I(y,s) = int_e^y log(1 + x e^{-s/x}) dx/log x
//          + int_y^{y log y} log(1 + e^{s/x}/x) dx/log x.

namespace tdl {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int panels = 0;
};

/// I(y, s) by Gauss-Kronrod (15 point) adaptive quadrature, with panels
/// pre-split at z/4, z/2, z, 2z, 4z where z log z = s.
QuadratureResult integral_I_detail(double y, double s, double tol);
double integral_I(double y, double s, double tol);

struct IntegralEstimate {
    double t = 0.0;
    double y = 0.0;
    double s_min = 0.0;
    double I_min = 0.0;
    double log_value = 0.0;  // -y + I_min
    double quadrature_error = 0.0;
    int panels = 0;
    bool interior = false;   // minimizer strictly inside J
    bool unimodal = true;    // sampled differences fell then rose
    double j_lo = 0.0;
    double j_hi = 0.0;
};

/// Minimizes I(y, .) over J by golden-section search, after a 64-point
/// unimodality audit; falls back to grid search plus local refinement if
/// the audit fails.
IntegralEstimate thm2_estimate(double t, double tol = 1e-10);

}  // namespace tdl
