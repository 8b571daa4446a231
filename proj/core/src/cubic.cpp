#include "cubicgda/cubic.hpp"

#include "cubicgda/rng.hpp"

#include <Eigen/Eigenvalues>

#include <limits>

namespace cubicgda {

namespace {

// Last-nonzero-coordinate sign, used to break the +- tie in the hard case.
int last_nonzero_sign(const Vec& s) {
    const double thresh = 1e-13 * std::max(1.0, s.cwiseAbs().maxCoeff());
    for (Eigen::Index j = s.size() - 1; j >= 0; --j) {
        if (std::abs(s[j]) > thresh) return s[j] > 0.0 ? 1 : -1;
    }
    return 1;
}

struct Secular {
    const Vec& lam;
    const Vec& ghat;
    double sigma;  // 1/(2 eta_x)

    // ||(Lambda + theta)^{-1} ghat|| over the given component mask.
    double psi(double theta, double lam_skip_below) const {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < lam.size(); ++i) {
            if (lam[i] < lam_skip_below) continue;
            const double d = lam[i] + theta;
            const double t = ghat[i] / d;
            acc += t * t;
        }
        return std::sqrt(acc);
    }

    double psi_derivative(double theta, double lam_skip_below, double psi_val) const {
        if (psi_val == 0.0) return 0.0;
        double acc = 0.0;
        for (Eigen::Index i = 0; i < lam.size(); ++i) {
            if (lam[i] < lam_skip_below) continue;
            const double d = lam[i] + theta;
            acc += ghat[i] * ghat[i] / (d * d * d);
        }
        return -acc / psi_val;
    }
};

}  // namespace

double cubic_model_value(const Vec& g, const LinearOperator& H_apply, double eta_x, const Vec& s) {
    const double r = s.norm();
    return g.dot(s) + 0.5 * s.dot(H_apply.apply(s)) + r * r * r / (6.0 * eta_x);
}

KktReport verify_kkt(const Vec& g, const LinearOperator& H_apply, double eta_x, const Vec& s,
                     double min_eig_tol, double h_norm_bound) {
    require(eta_x > 0.0, "verify_kkt: eta_x must be positive");
    require(g.size() == s.size() && g.size() == H_apply.dim, "verify_kkt: dimension mismatch");
    const double sigma = 1.0 / (2.0 * eta_x);
    const Vec Hs = H_apply.apply(s);
    const double r = s.norm();
    KktReport rep;
    rep.stationarity_residual = (g + Hs + sigma * r * s).norm();
    rep.model_decrease = g.dot(s) + 0.5 * s.dot(Hs);
    rep.curvature_margin = min_eigenvalue(H_apply, min_eig_tol, h_norm_bound) + sigma * r;
    return rep;
}

CubicStep solve_cubic_exact(const Vec& g, const Mat& H, double eta_x, double tol,
                            Eigen::Index cap) {
    require(eta_x > 0.0 && tol > 0.0, "solve_cubic_exact: eta_x and tol must be positive");
    require(H.rows() == H.cols() && H.rows() == g.size(), "solve_cubic_exact: dimension mismatch");
    require(H.rows() <= cap, "solve_cubic_exact: dimension exceeds dense cap");
    require((H - H.transpose()).cwiseAbs().maxCoeff() <=
                1e-8 * std::max(1.0, H.cwiseAbs().maxCoeff()),
            "solve_cubic_exact: H must be symmetric");

    const Eigen::Index n = g.size();
    const double sigma = 1.0 / (2.0 * eta_x);

    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (H + H.transpose()));
    const Vec lam = es.eigenvalues();
    const Mat Q = es.eigenvectors();
    const Vec ghat = Q.transpose() * g;
    const double lam_min = lam[0];
    const double gnorm = g.norm();

    const double theta_lo = std::max(0.0, -lam_min);
    const double eig_tol = 1e-12 * std::max(1.0, lam.cwiseAbs().maxCoeff());
    const double bottom_cut = lam_min + eig_tol;  // bottom eigenspace: lam_i <= bottom_cut

    double bottom_g2 = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        if (lam[i] <= bottom_cut) bottom_g2 += ghat[i] * ghat[i];
    const bool g_orth_bottom = std::sqrt(bottom_g2) <= 1e-10 * gnorm;

    Secular sec{lam, ghat, sigma};
    // Components inside the bottom eigenspace are excluded from the secular
    // function only when g is (numerically) orthogonal to that space.
    const double skip_below = (lam_min < 0.0 && g_orth_bottom) ? bottom_cut + eig_tol
                                                               : -std::numeric_limits<double>::infinity();

    Vec shat = Vec::Zero(n);
    double theta = 0.0;
    bool hard_case = false;

    if (gnorm == 0.0 && lam_min >= 0.0) {
        theta = 0.0;  // s = 0 optimal
    } else {
        const double psi_lo =
            (lam_min < 0.0 && !g_orth_bottom)
                ? std::numeric_limits<double>::infinity()
                : sec.psi(theta_lo, skip_below);
        if (psi_lo < theta_lo / sigma) {
            hard_case = true;
            theta = theta_lo;
        } else if (psi_lo == theta_lo / sigma) {
            theta = theta_lo;  // boundary root, no eigenvector component needed
        } else {
            // Regular case: unique root of psi(theta) = theta / sigma in
            // (theta_lo, theta_bar]. Bracketed bisection with Newton.
            double hi =
                0.5 * (-lam_min + std::sqrt(lam_min * lam_min + 4.0 * sigma * gnorm));
            hi = std::max(hi * (1.0 + 1e-12) + 1e-300, theta_lo + 1e-300);
            double lo = theta_lo;
            int expand = 0;
            while (sec.psi(hi, skip_below) - hi / sigma > 0.0) {
                lo = hi;
                hi = theta_lo + 2.0 * (hi - theta_lo) + 1e-300;
                if (++expand > 200)
                    throw NumericError("solve_cubic_exact: secular bracket expansion failed"
                                       " (lo=" + std::to_string(lo) + ", hi=" + std::to_string(hi) + ")");
            }
            theta = 0.5 * (lo + hi);
            for (int it = 0; it < 200; ++it) {
                const double psi_v = sec.psi(theta, skip_below);
                const double f = psi_v - theta / sigma;
                if (f > 0.0)
                    lo = theta;
                else
                    hi = theta;
                // Stationarity residual of the current candidate: |sigma psi - theta| psi.
                if (std::abs(sigma * psi_v - theta) * psi_v <= 0.25 * tol) break;
                const double fp = sec.psi_derivative(theta, skip_below, psi_v) - 1.0 / sigma;
                double next = fp < 0.0 ? theta - f / fp : lo;
                if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
                if (hi - lo <= 1e-16 * std::max(1.0, hi)) break;
                theta = next;
            }
        }
        for (Eigen::Index i = 0; i < n; ++i) {
            if (lam[i] < skip_below) continue;
            shat[i] = -ghat[i] / (lam[i] + theta);
        }
    }

    Vec s = Q * shat;
    if (hard_case) {
        const double r_needed = theta / sigma;
        const double interior = shat.norm();
        const double tau2 = r_needed * r_needed - interior * interior;
        const double tau = tau2 > 0.0 ? std::sqrt(tau2) : 0.0;
        // Deterministic bottom eigenvector, canonicalized to positive last
        // nonzero coordinate; then break the +- tie on the full step.
        Vec v = Q.col(0);
        if (last_nonzero_sign(v) < 0) v = -v;
        const Vec s_plus = s + tau * v;
        const Vec s_minus = s - tau * v;
        s = (last_nonzero_sign(s_plus) < 0 && last_nonzero_sign(s_minus) > 0) ? s_minus : s_plus;
    }

    CubicStep step;
    step.s = s;
    const double r = s.norm();
    const Vec Hs = H * s;
    step.kkt.stationarity_residual = (g + Hs + sigma * r * s).norm();
    step.kkt.model_decrease = g.dot(s) + 0.5 * s.dot(Hs);
    step.kkt.curvature_margin = lam_min + sigma * r;
    step.model_value = step.kkt.model_decrease + sigma * r * r * r / 3.0;

    if (!step.kkt.passes(eta_x, r, tol))
        throw NumericError(
            "solve_cubic_exact: KKT verification failed (stationarity " +
            std::to_string(step.kkt.stationarity_residual) + ", curvature margin " +
            std::to_string(step.kkt.curvature_margin) + ")");
    return step;
}

CubicStep solve_cubic_iterative(const Vec& g, const LinearOperator& H_apply, double eta_x,
                                double h_norm_bound, double tol, int max_iter,
                                std::uint64_t perturbation_seed) {
    require(eta_x > 0.0 && tol > 0.0, "solve_cubic_iterative: eta_x and tol must be positive");
    require(h_norm_bound > 0.0, "solve_cubic_iterative: a bound on ||H|| is required");
    require(g.size() == H_apply.dim, "solve_cubic_iterative: dimension mismatch");

    const Eigen::Index n = g.size();
    const double sigma = 1.0 / (2.0 * eta_x);
    const double gnorm = g.norm();
    const double step = 1.0 / (8.0 * (h_norm_bound + std::sqrt(gnorm / eta_x)));

    // Cauchy point along -g.
    Vec s = Vec::Zero(n);
    double cauchy_t = 0.0;
    if (gnorm > 0.0) {
        const Vec dir = g / gnorm;
        const double h = dir.dot(H_apply.apply(dir));
        cauchy_t = (-h + std::sqrt(h * h + 4.0 * sigma * gnorm)) / (2.0 * sigma);
        s = -cauchy_t * dir;
    }
    KeyedRng rng = KeyedRng::from(perturbation_seed, {0xcb1cULL});
    Vec xi = rng.gaussian_vector(n);
    s += (1e-6 * (1.0 + cauchy_t) / xi.norm()) * xi;

    const double target = tol * (1.0 + gnorm);
    bool converged = false;
    for (int it = 0; it < max_iter; ++it) {
        const Vec grad_m = g + H_apply.apply(s) + sigma * s.norm() * s;
        if (!grad_m.allFinite())
            throw NumericError("solve_cubic_iterative: non-finite model gradient");
        if (grad_m.norm() <= target) {
            converged = true;
            break;
        }
        s -= step * grad_m;
    }
    if (!converged) {
        const double res = (g + H_apply.apply(s) + sigma * s.norm() * s).norm();
        throw NumericError("solve_cubic_iterative: no convergence within " +
                           std::to_string(max_iter) + " iterations (gradient norm " +
                           std::to_string(res) + ", target " + std::to_string(target) + ")");
    }

    CubicStep out;
    out.s = s;
    out.model_value = cubic_model_value(g, H_apply, eta_x, s);
    out.kkt = verify_kkt(g, H_apply, eta_x, s, /*min_eig_tol=*/1e-9, h_norm_bound);
    return out;
}

}  // namespace cubicgda
