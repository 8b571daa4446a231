#pragma once

#include "cubicgda/oracle.hpp"
#include "cubicgda/schur.hpp"

namespace cubicgda {

/// Second-order stationarity diagnostics at a point x. mu_measure is
///   max( sqrt(||grad Phi||), -lambda_min(hess Phi) / sqrt(33 L_Phi) ),
/// the termination measure the convergence guarantees are stated in.
struct StationarityReport {
    double grad_phi_norm = 0.0;
    double min_eig = 0.0;
    double mu_measure = 0.0;
    Vec y_star_used;
    double inner_tol_used = 0.0;
};

/// Envelope value Phi(x) = max_y f(x, y) and the maximizer estimate.
/// Uses the closed form when the oracle provides one; otherwise runs
/// gradient ascent at step 2/(L1 + mu) until ||grad_y f|| <= mu * tol,
/// which certifies ||y - y*|| <= tol by strong concavity.
std::pair<double, Vec> phi_eval(const MinimaxOracle& oracle, const Vec& x, double tol);

/// grad Phi(x) = grad_x f(x, y*(x)); error <= L1 * tol certified.
Vec grad_phi(const MinimaxOracle& oracle, const Vec& x, double tol);

/// lambda_min(hess Phi(x)) via the Schur-complement operator at (x, y*).
double hess_phi_min_eig(const MinimaxOracle& oracle, const Vec& x, double tol,
                        double cg_tol = kDefaultCgTol);

StationarityReport stationarity(const MinimaxOracle& oracle, const Vec& x, double tol,
                                double cg_tol = kDefaultCgTol);

/// Potential value Phi(x_t) + (L_Phi + 2 alpha + 3 beta) ||s_t||^3.
double potential(const MinimaxOracle& oracle, const Vec& x, double s_norm, double alpha,
                 double beta, double tol);

enum class FdKind { Grad, Hess };

struct FdReport {
    double max_error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Central-difference check of the analytic first derivatives against eval
/// (Grad) or of the Jacobian-vector products against the gradients (Hess).
FdReport fd_check(const MinimaxOracle& oracle, const Vec& x, const Vec& y, FdKind kind, double h,
                  double tol);

}  // namespace cubicgda
