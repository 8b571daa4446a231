#include "cubicgda/diagnostics.hpp"

#include "cubicgda/linalg.hpp"

namespace cubicgda {

namespace {
constexpr long kAscentCap = 1000000;
}

std::pair<double, Vec> phi_eval(const MinimaxOracle& oracle, const Vec& x, double tol) {
    require(tol > 0.0, "phi_eval: tol must be positive");
    require(x.size() == oracle.dim_x(), "phi_eval: x dimension mismatch");
    if (oracle.has_closed_forms()) {
        const Vec ys = oracle.y_star(x);
        return {oracle.eval(x, ys), ys};
    }
    const SmoothnessProfile& p = oracle.profile();
    const double step = 2.0 / (p.L1 + p.mu);
    Vec y = Vec::Zero(oracle.dim_y());
    for (long it = 0; it < kAscentCap; ++it) {
        const Vec gy = oracle.grad_y(x, y);
        if (!gy.allFinite()) throw NumericError("phi_eval: non-finite ascent gradient");
        if (gy.norm() <= p.mu * tol) return {oracle.eval(x, y), y};
        y += step * gy;
    }
    throw NumericError("phi_eval: inner maximization exceeded iteration cap");
}

Vec grad_phi(const MinimaxOracle& oracle, const Vec& x, double tol) {
    if (oracle.has_closed_forms()) return oracle.grad_phi(x);
    const Vec y = phi_eval(oracle, x, tol).second;
    return oracle.grad_x(x, y);
}

double hess_phi_min_eig(const MinimaxOracle& oracle, const Vec& x, double tol, double cg_tol) {
    const Vec y = oracle.has_closed_forms() ? oracle.y_star(x) : phi_eval(oracle, x, tol).second;
    const SmoothnessProfile& p = oracle.profile();
    const LinearOperator G = g_operator(oracle, x, y, cg_tol);
    return min_eigenvalue(G, tol, p.L1 * (1.0 + p.kappa));
}

StationarityReport stationarity(const MinimaxOracle& oracle, const Vec& x, double tol,
                                double cg_tol) {
    StationarityReport rep;
    rep.inner_tol_used = tol;
    Vec y;
    if (oracle.has_closed_forms()) {
        y = oracle.y_star(x);
        rep.grad_phi_norm = oracle.grad_phi(x).norm();
    } else {
        y = phi_eval(oracle, x, tol).second;
        rep.grad_phi_norm = oracle.grad_x(x, y).norm();
    }
    rep.y_star_used = y;
    const SmoothnessProfile& p = oracle.profile();
    const LinearOperator G = g_operator(oracle, x, y, cg_tol);
    rep.min_eig = min_eigenvalue(G, tol, p.L1 * (1.0 + p.kappa));
    rep.mu_measure =
        std::max(std::sqrt(rep.grad_phi_norm), -rep.min_eig / std::sqrt(33.0 * p.L_Phi));
    return rep;
}

double potential(const MinimaxOracle& oracle, const Vec& x, double s_norm, double alpha,
                 double beta, double tol) {
    require(s_norm >= 0.0, "potential: s_norm must be nonnegative");
    const double phi = phi_eval(oracle, x, tol).first;
    const double coeff = oracle.profile().L_Phi + 2.0 * alpha + 3.0 * beta;
    return phi + coeff * s_norm * s_norm * s_norm;
}

FdReport fd_check(const MinimaxOracle& oracle, const Vec& x, const Vec& y, FdKind kind, double h,
                  double tol) {
    require(h > 0.0, "fd_check: h must be positive");
    FdReport rep;
    rep.tolerance = tol;
    double err = 0.0;

    if (kind == FdKind::Grad) {
        const Vec gx = oracle.grad_x(x, y);
        const Vec gy = oracle.grad_y(x, y);
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            Vec xp = x, xm = x;
            xp[i] += h;
            xm[i] -= h;
            const double fd = (oracle.eval(xp, y) - oracle.eval(xm, y)) / (2.0 * h);
            err = std::max(err, std::abs(fd - gx[i]));
        }
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            Vec yp = y, ym = y;
            yp[i] += h;
            ym[i] -= h;
            const double fd = (oracle.eval(x, yp) - oracle.eval(x, ym)) / (2.0 * h);
            err = std::max(err, std::abs(fd - gy[i]));
        }
    } else {
        // Each block column j: central difference of the matching gradient
        // vs the analytic jvp on the basis vector e_j.
        auto check_block = [&](JacobianBlock block) {
            const Eigen::Index in_dim = jvp_input_dim(oracle, block);
            const bool perturb_x =
                (block == JacobianBlock::B11 || block == JacobianBlock::B21);
            const bool grad_in_x =
                (block == JacobianBlock::B11 || block == JacobianBlock::B12);
            for (Eigen::Index j = 0; j < in_dim; ++j) {
                Vec xp = x, xm = x, yp = y, ym = y;
                if (perturb_x) {
                    xp[j] += h;
                    xm[j] -= h;
                } else {
                    yp[j] += h;
                    ym[j] -= h;
                }
                const Vec gp = grad_in_x ? oracle.grad_x(xp, yp) : oracle.grad_y(xp, yp);
                const Vec gm = grad_in_x ? oracle.grad_x(xm, ym) : oracle.grad_y(xm, ym);
                Vec e = Vec::Zero(in_dim);
                e[j] = 1.0;
                const Vec analytic = oracle.jvp(block, x, y, e);
                err = std::max(err, ((gp - gm) / (2.0 * h) - analytic).cwiseAbs().maxCoeff());
            }
        };
        check_block(JacobianBlock::B11);
        check_block(JacobianBlock::B12);
        check_block(JacobianBlock::B21);
        check_block(JacobianBlock::B22);
    }

    rep.max_error = err;
    rep.pass = err <= tol;
    return rep;
}

}  // namespace cubicgda
