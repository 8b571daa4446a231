#include "cubicgda/schur.hpp"

#include "cubicgda/rng.hpp"

namespace cubicgda {

std::vector<Eigen::Index> sample_batch(Eigen::Index n_samples, Eigen::Index size,
                                       std::uint64_t seed, std::uint64_t iteration,
                                       BatchBlock block, bool* exact) {
    require(n_samples >= 1, "sample_batch: empty sample set");
    require(size >= 1, "sample_batch: batch size must be >= 1");
    std::vector<Eigen::Index> idx;
    if (size >= n_samples) {
        idx.resize(static_cast<size_t>(n_samples));
        for (Eigen::Index i = 0; i < n_samples; ++i) idx[static_cast<size_t>(i)] = i;
        if (exact) *exact = true;
        return idx;
    }
    KeyedRng rng = KeyedRng::from(seed, {0xba7cULL, iteration, static_cast<std::uint64_t>(block)});
    idx.reserve(static_cast<size_t>(size));
    for (Eigen::Index i = 0; i < size; ++i) idx.push_back(rng.next_below(n_samples));
    if (exact) *exact = false;
    return idx;
}

BatchSet sample_batch_set(Eigen::Index n_samples, const std::array<Eigen::Index, 5>& sizes,
                          std::uint64_t seed, std::uint64_t iteration) {
    BatchSet bs;
    bs.b1 = sample_batch(n_samples, sizes[0], seed, iteration, BatchBlock::B1, &bs.b1_exact);
    bs.b11 = sample_batch(n_samples, sizes[1], seed, iteration, BatchBlock::B11, &bs.b11_exact);
    bs.b12 = sample_batch(n_samples, sizes[2], seed, iteration, BatchBlock::B12, &bs.b12_exact);
    bs.b21 = sample_batch(n_samples, sizes[3], seed, iteration, BatchBlock::B21, &bs.b21_exact);
    bs.b22 = sample_batch(n_samples, sizes[4], seed, iteration, BatchBlock::B22, &bs.b22_exact);
    return bs;
}

namespace {

GApplyReport schur_chain(const MinimaxOracle& oracle,
                         const std::function<Vec(JacobianBlock, const Vec&)>& block_apply,
                         const Vec& u, double cg_tol) {
    require(cg_tol > 0.0, "g_apply: cg_tol must be positive");
    GApplyReport rep;
    const Vec z1 = block_apply(JacobianBlock::B11, u);
    const Vec z2 = block_apply(JacobianBlock::B21, u);

    // (-B22) z3 = -z2 is SPD under strong concavity; equivalently B22 z3 = z2.
    LinearOperator neg_b22{oracle.dim_y(),
                           [&](const Vec& v) -> Vec { return -block_apply(JacobianBlock::B22, v); }};
    const int max_iter = static_cast<int>(oracle.dim_y()) + 200;
    rep.cg = cg_solve(neg_b22, -z2, cg_tol, max_iter);
    if (!rep.cg.converged)
        throw NumericError("g_apply: inner CG failed to converge (residual " +
                           std::to_string(rep.cg.residual_norm) + ")");
    const Vec z4 = block_apply(JacobianBlock::B12, rep.cg.solution);
    rep.result = z1 - z4;
    return rep;
}

}  // namespace

GApplyReport g_apply(const MinimaxOracle& oracle, const Vec& x, const Vec& y, const Vec& u,
                     double cg_tol) {
    require(u.size() == oracle.dim_x(), "g_apply: u dimension mismatch");
    auto block_apply = [&](JacobianBlock b, const Vec& v) { return oracle.jvp(b, x, y, v); };
    return schur_chain(oracle, block_apply, u, cg_tol);
}

LinearOperator g_operator(const MinimaxOracle& oracle, const Vec& x, const Vec& y, double cg_tol) {
    return LinearOperator{oracle.dim_x(), [&oracle, x, y, cg_tol](const Vec& u) -> Vec {
                              return g_apply(oracle, x, y, u, cg_tol).result;
                          }};
}

Mat g_dense(const MinimaxOracle& oracle, const Vec& x, const Vec& y, double cg_tol,
            Eigen::Index cap) {
    return assemble_dense(g_operator(oracle, x, y, cg_tol), cap);
}

Vec stoch_grad_x(const MinimaxOracle& oracle, const Vec& x, const Vec& y,
                 const std::vector<Eigen::Index>& batch) {
    require(oracle.is_finite_sum(), "stoch_grad_x: finite-sum oracle required");
    require(!batch.empty(), "stoch_grad_x: empty batch");
    Vec acc = Vec::Zero(oracle.dim_x());
    for (Eigen::Index i : batch) acc += oracle.grad_x_sample(i, x, y);
    return acc / static_cast<double>(batch.size());
}

Vec stoch_jvp(const MinimaxOracle& oracle, JacobianBlock block, const Vec& x, const Vec& y,
              const Vec& v, const std::vector<Eigen::Index>& batch) {
    require(oracle.is_finite_sum(), "stoch_jvp: finite-sum oracle required");
    require(!batch.empty(), "stoch_jvp: empty batch");
    Vec acc = Vec::Zero(jvp_output_dim(oracle, block));
    for (Eigen::Index i : batch) acc += oracle.jvp_sample(i, block, x, y, v);
    return acc / static_cast<double>(batch.size());
}

GApplyReport stoch_g_apply(const MinimaxOracle& oracle, const Vec& x, const Vec& y, const Vec& u,
                           const BatchSet& batches, double cg_tol) {
    require(oracle.is_finite_sum(), "stoch_g_apply: finite-sum oracle required");
    require(u.size() == oracle.dim_x(), "stoch_g_apply: u dimension mismatch");
    auto block_apply = [&](JacobianBlock b, const Vec& v) -> Vec {
        switch (b) {
            case JacobianBlock::B11: return stoch_jvp(oracle, b, x, y, v, batches.b11);
            case JacobianBlock::B12: return stoch_jvp(oracle, b, x, y, v, batches.b12);
            case JacobianBlock::B21: return stoch_jvp(oracle, b, x, y, v, batches.b21);
            default: return stoch_jvp(oracle, b, x, y, v, batches.b22);
        }
    };
    return schur_chain(oracle, block_apply, u, cg_tol);
}

LinearOperator stoch_g_operator(const MinimaxOracle& oracle, const Vec& x, const Vec& y,
                                const BatchSet& batches, double cg_tol) {
    return LinearOperator{oracle.dim_x(),
                          [&oracle, x, y, batches, cg_tol](const Vec& u) -> Vec {
                              return stoch_g_apply(oracle, x, y, u, batches, cg_tol).result;
                          }};
}

}  // namespace cubicgda
