#include "cubicgda/linalg.hpp"

#include "cubicgda/rng.hpp"

#include <Eigen/Eigenvalues>

#include <vector>

namespace cubicgda {

LinearOperator LinearOperator::from_matrix(const Mat& M) {
    require(M.rows() == M.cols(), "LinearOperator::from_matrix: matrix must be square");
    return LinearOperator{M.rows(), [M](const Vec& v) -> Vec { return M * v; }};
}

CgReport cg_solve(const LinearOperator& A, const Vec& rhs, double tol, int max_iter) {
    require(A.dim == rhs.size(), "cg_solve: rhs dimension mismatch");
    require(tol > 0.0, "cg_solve: tol must be positive");

    const double target = tol * (1.0 + rhs.norm());
    CgReport rep;
    rep.solution = Vec::Zero(A.dim);

    Vec r = rhs;  // residual of x = 0
    double rr = r.squaredNorm();
    rep.residual_norm = std::sqrt(rr);
    if (rep.residual_norm <= target) {
        rep.converged = true;
        return rep;
    }

    Vec p = r;
    for (int it = 1; it <= max_iter; ++it) {
        const Vec Ap = A.apply(p);
        const double pAp = p.dot(Ap);
        if (!std::isfinite(pAp)) throw NumericError("cg_solve: non-finite curvature p'Ap");
        if (pAp <= 0.0) throw NumericError("cg_solve: operator not positive definite (p'Ap <= 0)");
        const double alpha = rr / pAp;
        rep.solution += alpha * p;
        r -= alpha * Ap;
        const double rr_new = r.squaredNorm();
        if (!std::isfinite(rr_new)) throw NumericError("cg_solve: non-finite residual");
        rep.iterations = it;
        rep.residual_norm = std::sqrt(rr_new);
        if (rep.residual_norm <= target) {
            rep.converged = true;
            return rep;
        }
        p = r + (rr_new / rr) * p;
        rr = rr_new;
    }
    return rep;  // converged = false, caller decides
}

Mat assemble_dense(const LinearOperator& A, Eigen::Index cap) {
    require(A.dim <= cap, "assemble_dense: operator dimension exceeds dense cap");
    const Eigen::Index n = A.dim;
    Mat M(n, n);
    Vec e = Vec::Zero(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        e[j] = 1.0;
        M.col(j) = A.apply(e);
        e[j] = 0.0;
    }
    const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
    const double asym = (M - M.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-8 * scale)
        throw UsageError("assemble_dense: operator is not symmetric (asymmetry " +
                         std::to_string(asym) + ")");
    return 0.5 * (M + M.transpose());
}

double lanczos_min_eigenvalue(const LinearOperator& A, double tol, double norm_upper_bound,
                              int max_iter) {
    require(norm_upper_bound > 0.0,
            "lanczos_min_eigenvalue: a positive norm upper bound is required for the shift");
    const Eigen::Index n = A.dim;
    const double c = norm_upper_bound;
    // B = c I - A is PSD with lambda_max(B) = c - lambda_min(A).
    auto apply_shifted = [&](const Vec& v) -> Vec { return c * v - A.apply(v); };

    std::vector<Vec> basis;
    std::vector<double> alpha, beta;
    Vec v = Vec::Ones(n) / std::sqrt(static_cast<double>(n));
    KeyedRng rng = KeyedRng::from(0x1a2c305u, {static_cast<std::uint64_t>(n)});

    basis.push_back(v);
    const int kmax = std::min<int>(max_iter, static_cast<int>(n));
    double best = 0.0;
    for (int k = 0; k < kmax; ++k) {
        Vec w = apply_shifted(basis[k]);
        if (!w.allFinite()) throw NumericError("lanczos_min_eigenvalue: non-finite operator output");
        const double a = basis[k].dot(w);
        alpha.push_back(a);
        w -= a * basis[k];
        if (k > 0) w -= beta[k - 1] * basis[k - 1];
        // Full reorthogonalization: robustness over speed at desk scale.
        for (const Vec& q : basis) w -= q.dot(w) * q;
        for (const Vec& q : basis) w -= q.dot(w) * q;
        double b = w.norm();

        // Tridiagonal eigensolve of the current T_k.
        const int m = static_cast<int>(alpha.size());
        Mat T = Mat::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            T(i, i) = alpha[i];
            if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta.size() > static_cast<size_t>(i)
                                                            ? beta[i]
                                                            : 0.0;
        }
        Eigen::SelfAdjointEigenSolver<Mat> es(T);
        const int top = m - 1;
        const double theta = es.eigenvalues()[top];  // largest Ritz value of B
        const double resid = b * std::abs(es.eigenvectors()(m - 1, top));
        best = c - theta;
        if (resid <= tol || m == static_cast<int>(n)) return best;

        if (b < 1e-13 * std::max(1.0, c)) {
            // Invariant-subspace breakdown: restart direction from the seeded stream.
            Vec fresh = rng.gaussian_vector(n);
            for (const Vec& q : basis) fresh -= q.dot(fresh) * q;
            b = fresh.norm();
            if (b < 1e-13) return best;  // basis spans the whole space
            w = fresh;
        }
        beta.push_back(b);
        basis.push_back(w / b);
    }
    throw NumericError("lanczos_min_eigenvalue: no convergence within " +
                       std::to_string(max_iter) + " iterations (partial estimate " +
                       std::to_string(best) + ")");
}

double min_eigenvalue(const LinearOperator& A, double tol, double norm_upper_bound,
                      Eigen::Index cap) {
    require(tol > 0.0, "min_eigenvalue: tol must be positive");
    if (A.dim <= cap) {
        Eigen::SelfAdjointEigenSolver<Mat> es(assemble_dense(A, cap));
        return es.eigenvalues()[0];
    }
    return lanczos_min_eigenvalue(A, tol, norm_upper_bound);
}

}  // namespace cubicgda
