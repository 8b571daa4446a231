#pragma once

#include "cubicgda/driver.hpp"
#include "cubicgda/rng.hpp"
#include "cubicgda/schur.hpp"

namespace cubicgda {

/// Stochastic-run hyperparameters on top of RunConfig. eps is the target
/// accuracy driving the adaptive inexactness pair (eps1(t), eps2(t));
/// delta is the per-iteration failure probability of the concentration
/// bounds (the run-level confidence is weaker by a union bound over the
/// executed iterations, which the summary documents).
struct StochConfig {
    RunConfig base;
    double delta = 0.1;
    double sga_constant = 1.0;  // multiplier on the N_t sample-count formula
    long sga_cap = 200000;      // hard cap on inner SGA steps per iteration
    Eigen::Index batch_cap = 0;  // extra cap on batch sizes; 0 = N
};

struct BatchSizes {
    Eigen::Index b1 = 1, b11 = 1, b12 = 1, b21 = 1, b22 = 1;
    bool b1_exact = false, bj_exact = false;  // caps bound (b1 / the four Jacobian batches)
};

/// N single-sample ascent steps with decaying step 2/(mu (k+1)), returning
/// the weighted average sum_k 2k/(N(N-1)) ytilde_k over k = 0..N-1.
/// Requires N >= 2 (the weight denominator). Samples are drawn from
/// `stream`, one per step.
Vec inner_sga(const MinimaxOracle& oracle, const Vec& x, const Vec& y0, double mu, long N,
              KeyedRng& stream);

/// Adaptive inexactness targets from the previous increment:
///   eps1 = min(L_Phi/2 (s^2 + eps^2/(33 L_Phi)), 2 L0),
///   eps2 = min(L_Phi/(2 (kappa+1)^2) (s + eps/sqrt(33 L_Phi)), 4 L1).
std::pair<double, double> adaptive_inexactness(const SmoothnessProfile& p, double s_t_norm,
                                               double eps);

/// Batch sizes meeting the concentration targets with probability 1-delta:
///   b1     = ceil(32 L0^2 (ln(10 m / delta) + 1/4) / eps1^2),
///   b_{kl} = ceil(16 L1^2 ln(10 max(m,n) / delta) / eps2^2),
/// capped at N (exact flags set when the cap binds).
BatchSizes batch_sizes(const SmoothnessProfile& p, double eps1, double eps2, double delta,
                       Eigen::Index m, Eigen::Index n, Eigen::Index N,
                       Eigen::Index batch_cap = 0);

/// Inner SGA step count
///   N_t = sga_constant (L0 ln(1/delta) + L0^2)
///         / min(kappa^{-2} (L_Phi^2 s^4 + eps^4), L1^2 (s^2 + eps^2/L_Phi)),
/// clamped to [2, cap].
long sga_count(const SmoothnessProfile& p, double s_t_norm, double eps, double delta,
               double sga_constant, long cap);

/// Sub-sampled cubic-regularized descent-ascent on a finite-sum problem:
/// per iteration, adaptive inexactness from the previous increment, batch
/// draws from per-(iteration, block) substreams, weighted-average SGA for
/// y, and the cubic step built from the sub-sampled gradient and
/// Schur-complement estimators. Output rule as in the deterministic run.
RunResult run_stochastic_cubic_gda(const MinimaxOracle& oracle, const StochConfig& cfg);

}  // namespace cubicgda
