#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cubicgda/linalg.hpp"
#include "cubicgda/rng.hpp"

#include <Eigen/Eigenvalues>

using namespace cubicgda;

namespace {

Mat random_symmetric(Eigen::Index n, KeyedRng& rng) {
    Mat M(n, n);
    for (Eigen::Index j = 0; j < n; ++j) M.col(j) = rng.gaussian_vector(n);
    return 0.5 * (M + M.transpose());
}

Mat random_spd(Eigen::Index n, double cond, KeyedRng& rng) {
    Mat G(n, n);
    for (Eigen::Index j = 0; j < n; ++j) G.col(j) = rng.gaussian_vector(n);
    Eigen::HouseholderQR<Mat> qr(G);
    Mat Q = qr.householderQ() * Mat::Identity(n, n);
    Vec d(n);
    for (Eigen::Index i = 0; i < n; ++i)
        d[i] = 1.0 + (cond - 1.0) * (n == 1 ? 0.0 : double(i) / double(n - 1));
    return Q * d.asDiagonal() * Q.transpose();
}

}  // namespace

TEST_CASE("cg on the identity converges in one iteration") {
    const LinearOperator A{3, [](const Vec& v) { return v; }};
    Vec rhs(3);
    rhs << 1, 2, 3;
    const CgReport rep = cg_solve(A, rhs, 1e-12, 10);
    CHECK(rep.converged);
    CHECK(rep.iterations == 1);
    CHECK((rep.solution - rhs).norm() <= 1e-12);
}

TEST_CASE("cg solves a hand-checked diagonal system") {
    Mat D = Mat::Zero(2, 2);
    D(0, 0) = 1.0;
    D(1, 1) = 2.0;
    Vec rhs(2);
    rhs << 1, 2;
    const CgReport rep = cg_solve(LinearOperator::from_matrix(D), rhs, 1e-12, 10);
    CHECK(rep.converged);
    CHECK(std::abs(rep.solution[0] - 1.0) <= 1e-12);
    CHECK(std::abs(rep.solution[1] - 1.0) <= 1e-12);
}

TEST_CASE("cg with zero rhs returns zero immediately") {
    const LinearOperator A{4, [](const Vec& v) { return 2.0 * v; }};
    const CgReport rep = cg_solve(A, Vec::Zero(4), 1e-12, 10);
    CHECK(rep.converged);
    CHECK(rep.iterations == 0);
    CHECK(rep.solution.norm() == 0.0);
    CHECK(rep.residual_norm == 0.0);
}

TEST_CASE("cg reaches 1e-10 within dim+10 iterations on random SPD systems") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        KeyedRng rng = KeyedRng::from(seed, {11});
        const Eigen::Index n = 5 + static_cast<Eigen::Index>(rng.next_below(46));
        const double cond = 1.0 + 9999.0 * rng.next_double();
        const Mat M = random_spd(n, cond, rng);
        const Vec rhs = rng.gaussian_vector(n);
        const CgReport rep =
            cg_solve(LinearOperator::from_matrix(M), rhs, 1e-10, static_cast<int>(n) + 10);
        CHECK(rep.converged);
        CHECK((M * rep.solution - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
    }
}

TEST_CASE("cg reports non-convergence instead of guessing") {
    KeyedRng rng = KeyedRng::from(3, {13});
    const Mat M = random_spd(30, 1e4, rng);
    const Vec rhs = rng.gaussian_vector(30);
    const CgReport rep = cg_solve(LinearOperator::from_matrix(M), rhs, 1e-14, 2);
    CHECK(!rep.converged);
}

TEST_CASE("assemble_dense reproduces a scaled identity") {
    const LinearOperator A{2, [](const Vec& v) { return 2.0 * v; }};
    const Mat M = assemble_dense(A);
    CHECK(M(0, 0) == 2.0);
    CHECK(M(1, 1) == 2.0);
    CHECK(M(0, 1) == 0.0);
    CHECK(M(1, 0) == 0.0);
}

TEST_CASE("assemble_dense applied columns match the operator") {
    KeyedRng rng = KeyedRng::from(17, {1});
    const Mat S = random_symmetric(12, rng);
    const LinearOperator A = LinearOperator::from_matrix(S);
    const Mat M = assemble_dense(A);
    for (int trial = 0; trial < 5; ++trial) {
        const Vec v = rng.gaussian_vector(12);
        CHECK((M * v - A.apply(v)).norm() <= 1e-12 * v.norm());
    }
}

TEST_CASE("assemble_dense rejects a non-symmetric operator") {
    Mat M(2, 2);
    M << 0, 1, 0, 0;
    const LinearOperator A{2, [M](const Vec& v) { return Vec(M * v); }};
    CHECK_THROWS_AS(assemble_dense(A), UsageError);
}

TEST_CASE("assemble_dense enforces the dimension cap") {
    const LinearOperator A{600, [](const Vec& v) { return v; }};
    CHECK_THROWS_AS(assemble_dense(A), UsageError);
}

TEST_CASE("min_eigenvalue on diag(1,-2) is -2") {
    Mat D = Mat::Zero(2, 2);
    D(0, 0) = 1.0;
    D(1, 1) = -2.0;
    CHECK(std::abs(min_eigenvalue(LinearOperator::from_matrix(D), 1e-10, 3.0) + 2.0) <= 1e-10);
}

TEST_CASE("min_eigenvalue of a PSD operator is nonnegative") {
    KeyedRng rng = KeyedRng::from(23, {5});
    const Mat M = random_spd(20, 50.0, rng);
    CHECK(min_eigenvalue(LinearOperator::from_matrix(M), 1e-9, M.norm()) >= -1e-9);
}

TEST_CASE("dense and Lanczos paths agree on random symmetric matrices") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        KeyedRng rng = KeyedRng::from(seed, {29});
        const Eigen::Index n = 8 + static_cast<Eigen::Index>(rng.next_below(57));
        const Mat S = random_symmetric(n, rng);
        const LinearOperator A = LinearOperator::from_matrix(S);
        const double bound = S.cwiseAbs().rowwise().sum().maxCoeff();  // Gershgorin
        const double dense = min_eigenvalue(A, 1e-10, bound);
        const double lanczos = lanczos_min_eigenvalue(A, 1e-8, bound);
        CHECK(std::abs(dense - lanczos) <= 1e-6 * (1.0 + std::abs(dense)));
    }
}

TEST_CASE("operator apply is linear (probabilistic check)") {
    KeyedRng rng = KeyedRng::from(31, {7});
    const Mat S = random_symmetric(15, rng);
    const LinearOperator A = LinearOperator::from_matrix(S);
    for (int trial = 0; trial < 10; ++trial) {
        const Vec u = rng.gaussian_vector(15);
        const Vec v = rng.gaussian_vector(15);
        const double a = rng.next_gaussian();
        const double b = rng.next_gaussian();
        const Vec lhs = A.apply(a * u + b * v);
        const Vec rhs = a * A.apply(u) + b * A.apply(v);
        CHECK((lhs - rhs).norm() <= 1e-10 * (1.0 + lhs.norm()));
    }
}
