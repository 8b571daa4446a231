#pragma once

#include "cubicgda/linalg.hpp"
#include "cubicgda/oracle.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace cubicgda {

/// With-replacement index batches for the five stochastic estimators of one
/// iteration. A requested size >= N is replaced by the exact full index set
/// and flagged, in which case the estimator is the exact quantity.
struct BatchSet {
    std::vector<Eigen::Index> b1, b11, b12, b21, b22;
    bool b1_exact = false, b11_exact = false, b12_exact = false, b21_exact = false,
         b22_exact = false;

    bool all_exact() const { return b1_exact && b11_exact && b12_exact && b21_exact && b22_exact; }
};

/// Batch id used to key the per-(iteration, block) sampling substreams.
enum class BatchBlock : std::uint64_t { B1 = 0, B11 = 1, B12 = 2, B21 = 3, B22 = 4 };

/// Sample one with-replacement batch of `size` indices from [0, N).
/// Draws come from the substream keyed by (seed, iteration, block), so the
/// batch is reproducible regardless of evaluation order. size >= N yields
/// the exact index set with the exact flag.
std::vector<Eigen::Index> sample_batch(Eigen::Index n_samples, Eigen::Index size,
                                       std::uint64_t seed, std::uint64_t iteration,
                                       BatchBlock block, bool* exact);

BatchSet sample_batch_set(Eigen::Index n_samples, const std::array<Eigen::Index, 5>& sizes,
                          std::uint64_t seed, std::uint64_t iteration);

struct GApplyReport {
    Vec result;
    CgReport cg;
};

inline constexpr double kDefaultCgTol = 1e-10;

/// Schur-complement product G(x,y) u with
/// G = d2f/dx2 - d2f/dxdy (d2f/dy2)^{-1} d2f/dydx, computed matrix-free:
///   z1 = B11 u, z2 = B21 u, solve (-B22) z3 = -z2 by CG, z4 = B12 z3,
///   result = z1 - z4.
/// The negated B22 system is positive definite with spectrum in [mu, L1]
/// under strong concavity, which keeps CG's precondition honest.
GApplyReport g_apply(const MinimaxOracle& oracle, const Vec& x, const Vec& y, const Vec& u,
                     double cg_tol = kDefaultCgTol);

/// G as a LinearOperator over u (for eigenvalue queries and dense assembly).
LinearOperator g_operator(const MinimaxOracle& oracle, const Vec& x, const Vec& y,
                          double cg_tol = kDefaultCgTol);

/// Dense assembly of G; verification oracle for g_apply and the input to
/// the exact cubic solver.
Mat g_dense(const MinimaxOracle& oracle, const Vec& x, const Vec& y,
            double cg_tol = kDefaultCgTol, Eigen::Index cap = kDenseCap);

/// Mini-batch gradient estimator: mean of per-sample grad_x over the batch.
Vec stoch_grad_x(const MinimaxOracle& oracle, const Vec& x, const Vec& y,
                 const std::vector<Eigen::Index>& batch);

/// Mini-batch jvp estimator for one block.
Vec stoch_jvp(const MinimaxOracle& oracle, JacobianBlock block, const Vec& x, const Vec& y,
              const Vec& v, const std::vector<Eigen::Index>& batch);

/// Sub-sampled Schur-complement product: same chain as g_apply with every
/// block replaced by the batch mean over its own batch; the inner solve
/// uses the batch-mean B22 operator.
GApplyReport stoch_g_apply(const MinimaxOracle& oracle, const Vec& x, const Vec& y, const Vec& u,
                           const BatchSet& batches, double cg_tol = kDefaultCgTol);

LinearOperator stoch_g_operator(const MinimaxOracle& oracle, const Vec& x, const Vec& y,
                                const BatchSet& batches, double cg_tol = kDefaultCgTol);

}  // namespace cubicgda
