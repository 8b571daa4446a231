#pragma once

#include "cubicgda/cubic.hpp"
#include "cubicgda/oracle.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace cubicgda {

enum class TerminationReason { ThresholdMet, BudgetExhausted, BoxExit, NumericFailure };

const char* to_string(TerminationReason r);

/// Hyperparameters of a cubic-regularized descent-ascent run. Zero-valued
/// fields are resolved from the problem's smoothness profile:
///   eps_prime = eps / sqrt(33 L_Phi), eta_x = 1/(55 L_Phi),
///   eta_y = 2/(L1 + mu), alpha = beta = L_Phi,
///   cubic_tol = min(1e-8, 0.01 eps_prime^2).
/// Construction-time invariants (unless allow_override):
///   eta_x <= (9 L_Phi + 18 alpha + 28 beta)^{-1},
///   eps_prime <= alpha L1 / (beta L_G).
struct RunConfig {
    double eps = 0.1;
    double eps_prime = 0.0;
    double eta_x = 0.0;
    double eta_y = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    long T = 50000;
    long N_max = 0;  // inner-iteration cap; 0 = derived default
    double cubic_tol = 0.0;
    double cg_tol = 1e-10;
    double diag_tol = 1e-10;
    long diag_cadence = 1;  // diagnostics every k iterations; 0 = final point only
    std::uint64_t seed = 0;
    bool allow_override = false;
    Eigen::Index dense_cap = kDenseCap;  // exact cubic solver when dim_x <= cap
    long cubic_max_iter = 400000;        // iterative cubic solver budget
    bool record_wall_time = false;
    Vec x0, y0;  // empty = zero vectors
};

/// RunConfig with every derived quantity filled in.
struct ResolvedRun {
    RunConfig cfg;
    double eps_prime = 0.0;
    double eta_x = 0.0;
    double eta_y = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double cubic_tol = 0.0;
    long n_max = 0;
    Vec x0, y0;
};

ResolvedRun resolve_run_config(const RunConfig& cfg, const MinimaxOracle& oracle);

/// One row of the iterate trace. Absent values are NaN (doubles) or -1
/// (counts); they serialize as empty CSV fields.
struct IterateRecord {
    long t = 0;
    Vec x, y;
    double s_norm = 0.0;  // ||s_t||, with the ||s_0|| = eps' convention
    long n_t = -1;        // inner ascent/SGA steps run at iteration t
    double h_t = std::numeric_limits<double>::quiet_NaN();
    double phi = std::numeric_limits<double>::quiet_NaN();
    double grad_phi_norm = std::numeric_limits<double>::quiet_NaN();
    double min_eig = std::numeric_limits<double>::quiet_NaN();
    double mu_measure = std::numeric_limits<double>::quiet_NaN();
    long b1 = -1, b11 = -1, b12 = -1, b21 = -1, b22 = -1;
    double kkt_residual = std::numeric_limits<double>::quiet_NaN();
    double wall_ms = std::numeric_limits<double>::quiet_NaN();
};

struct RunResult {
    std::vector<IterateRecord> records;
    long t_prime = -1;  // -1 = no output index (budget exhausted or failure)
    Vec x_out, y_out;
    TerminationReason reason = TerminationReason::BudgetExhausted;
    std::string message;
    bool effectively_deterministic = false;  // stochastic runs with all-exact batches

    bool threshold_met() const { return reason == TerminationReason::ThresholdMet; }
};

/// N gradient ascent steps on y at fixed x: y <- y + eta_y grad_y f(x, y).
Vec inner_ga(const MinimaxOracle& oracle, const Vec& x, const Vec& y0, double eta_y, long N);

/// Inner-iteration schedule. With init_gap present (t = 0):
///   N_0 = ceil(kappa ln(L1 init_gap / (2 beta eps'^2))),
/// otherwise
///   N_t = ceil(kappa ln((2 L1 alpha s_prev + L1 (alpha + L_G kappa) s_curr)
///                        / (L_G beta eps'^2))),
/// clamped to [1, n_max] (clamping absorbs degenerate logs).
long nt_schedule(const SmoothnessProfile& p, double alpha, double beta, double eps_prime,
                 double s_prev_norm, double s_curr_norm, std::optional<double> init_gap,
                 long n_max);

long default_n_max(const SmoothnessProfile& p, double alpha, double beta, double eps_prime);

/// Cubic-regularized gradient descent-ascent. Each iteration runs the
/// scheduled inner ascent, builds g = grad_x f(x_t, y_{t+1}) and the
/// Schur-complement Hessian estimate, solves the cubic subproblem and steps
/// x. Stops at the first t with max(||s_{t-1}||, ||s_t||) <= eps'.
RunResult run_cubic_gda(const MinimaxOracle& oracle, const RunConfig& cfg);

/// Plain simultaneous gradient descent-ascent baseline with the same
/// result shape. stop_tol <= 0 disables early stopping.
RunResult run_gda_baseline(const MinimaxOracle& oracle, double step_x, double step_y, long T,
                           double stop_tol, const Vec& x0 = Vec(), const Vec& y0 = Vec(),
                           long diag_cadence = 0);

}  // namespace cubicgda
