#pragma once

#include "cubicgda/types.hpp"

#include <functional>

namespace cubicgda {

/// Matrix-free symmetric operator. `apply` must be linear and symmetric by
/// contract; both are checked probabilistically by the test suite, and
/// assemble_dense() asserts symmetry of the assembled matrix.
struct LinearOperator {
    Eigen::Index dim = 0;
    std::function<Vec(const Vec&)> apply;

    static LinearOperator from_matrix(const Mat& M);
};

struct CgReport {
    Vec solution;
    double residual_norm = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Conjugate gradients for a symmetric positive definite operator.
/// Convergence contract is relative: ||A x - rhs|| <= tol * (1 + ||rhs||).
/// Non-convergence is reported, not thrown; NaN/Inf during the iteration is
/// a NumericError.
CgReport cg_solve(const LinearOperator& A, const Vec& rhs, double tol, int max_iter);

inline constexpr Eigen::Index kDenseCap = 512;

/// Assemble the operator column by column and symmetrize. Asserts the
/// assembled matrix is symmetric to 1e-8 (relative to its max entry).
Mat assemble_dense(const LinearOperator& A, Eigen::Index cap = kDenseCap);

/// Smallest eigenvalue estimate for a symmetric operator.
/// Dense eigensolve when dim <= cap; otherwise Lanczos with full
/// reorthogonalization on the shifted operator c*I - A, where
/// `norm_upper_bound` >= ||A|| supplies the shift c.
double min_eigenvalue(const LinearOperator& A, double tol,
                      double norm_upper_bound = 0.0, Eigen::Index cap = kDenseCap);

/// Lanczos path of min_eigenvalue, exposed so tests can compare it against
/// the dense path on matrices below the cap.
double lanczos_min_eigenvalue(const LinearOperator& A, double tol, double norm_upper_bound,
                              int max_iter = 400);

}  // namespace cubicgda
