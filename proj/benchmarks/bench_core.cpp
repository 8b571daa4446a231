#include "cubicgda/cubic.hpp"
#include "cubicgda/diagnostics.hpp"
#include "cubicgda/rng.hpp"
#include "cubicgda/schur.hpp"
#include "cubicgda/testbed.hpp"

#include <benchmark/benchmark.h>

using namespace cubicgda;

namespace {

Mat random_symmetric(Eigen::Index n, KeyedRng& rng) {
    Mat M(n, n);
    for (Eigen::Index j = 0; j < n; ++j) M.col(j) = rng.gaussian_vector(n);
    return 0.5 * (M + M.transpose());
}

void BM_CgSolve(benchmark::State& state) {
    const Eigen::Index n = state.range(0);
    KeyedRng rng = KeyedRng::from(1, {static_cast<std::uint64_t>(n)});
    Mat G(n, n);
    for (Eigen::Index j = 0; j < n; ++j) G.col(j) = rng.gaussian_vector(n);
    const Mat M = G * G.transpose() + 0.5 * static_cast<double>(n) * Mat::Identity(n, n);
    const LinearOperator A = LinearOperator::from_matrix(M);
    const Vec rhs = rng.gaussian_vector(n);
    for (auto _ : state) {
        auto rep = cg_solve(A, rhs, 1e-10, static_cast<int>(n) + 20);
        benchmark::DoNotOptimize(rep.solution);
    }
}
BENCHMARK(BM_CgSolve)->Arg(16)->Arg(64)->Arg(256);

void BM_CubicExact(benchmark::State& state) {
    const Eigen::Index n = state.range(0);
    KeyedRng rng = KeyedRng::from(2, {static_cast<std::uint64_t>(n)});
    const Mat H = random_symmetric(n, rng);
    const Vec g = rng.gaussian_vector(n);
    for (auto _ : state) {
        auto step = solve_cubic_exact(g, H, 0.05, 1e-8);
        benchmark::DoNotOptimize(step.s);
    }
}
BENCHMARK(BM_CubicExact)->Arg(4)->Arg(16)->Arg(64);

void BM_GApplyRobust(benchmark::State& state) {
    const auto oracle = make_robust_sum(state.range(0), 10, 7, 1e4);
    KeyedRng rng = KeyedRng::from(3, {});
    const Vec x = 0.3 * rng.gaussian_vector(10);
    const Vec y = oracle->y_star(x);
    const Vec u = rng.gaussian_vector(10);
    for (auto _ : state) {
        auto rep = g_apply(*oracle, x, y, u);
        benchmark::DoNotOptimize(rep.result);
    }
}
BENCHMARK(BM_GApplyRobust)->Arg(100)->Arg(1000);

void BM_PhiEvalStrictSaddle(benchmark::State& state) {
    const auto oracle = make_strict_saddle();
    Vec x(2);
    x << 0.7, 0.4;
    for (auto _ : state) {
        auto [phi, y] = phi_eval(*oracle, x, 1e-10);
        benchmark::DoNotOptimize(phi);
    }
}
BENCHMARK(BM_PhiEvalStrictSaddle);

}  // namespace

BENCHMARK_MAIN();
