#include "cubicgda/oracle.hpp"

namespace cubicgda {

Eigen::Index jvp_input_dim(const MinimaxOracle& o, JacobianBlock block) {
    switch (block) {
        case JacobianBlock::B11:
        case JacobianBlock::B21:
            return o.dim_x();
        default:
            return o.dim_y();
    }
}

Eigen::Index jvp_output_dim(const MinimaxOracle& o, JacobianBlock block) {
    switch (block) {
        case JacobianBlock::B11:
        case JacobianBlock::B12:
            return o.dim_x();
        default:
            return o.dim_y();
    }
}

Vec MinimaxOracle::jvp(JacobianBlock block, const Vec& x, const Vec& y, const Vec& v) const {
    check_point(x, y);
    require(v.size() == jvp_input_dim(*this, block), "jvp: direction dimension mismatch");
    const double vnorm = v.norm();
    if (vnorm == 0.0) return Vec::Zero(jvp_output_dim(*this, block));

    // Central difference of the matching gradient along the unit direction.
    const Vec dir = v / vnorm;
    const double h = 1e-6 * (1.0 + vnorm);
    const bool perturb_x = (block == JacobianBlock::B11 || block == JacobianBlock::B21);
    const bool grad_in_x = (block == JacobianBlock::B11 || block == JacobianBlock::B12);

    Vec xp = x, xm = x, yp = y, ym = y;
    if (perturb_x) {
        xp += h * dir;
        xm -= h * dir;
    } else {
        yp += h * dir;
        ym -= h * dir;
    }
    const Vec gp = grad_in_x ? grad_x(xp, yp) : grad_y(xp, yp);
    const Vec gm = grad_in_x ? grad_x(xm, ym) : grad_y(xm, ym);
    return (vnorm / (2.0 * h)) * (gp - gm);
}

Vec MinimaxOracle::y_star(const Vec&) const {
    throw UsageError("oracle: closed-form y* not available");
}
double MinimaxOracle::phi(const Vec&) const {
    throw UsageError("oracle: closed-form Phi not available");
}
Vec MinimaxOracle::grad_phi(const Vec&) const {
    throw UsageError("oracle: closed-form grad Phi not available");
}
Mat MinimaxOracle::hess_phi(const Vec&) const {
    throw UsageError("oracle: closed-form hess Phi not available");
}

double MinimaxOracle::eval_sample(Eigen::Index, const Vec&, const Vec&) const {
    throw UsageError("oracle: per-sample access not available");
}
Vec MinimaxOracle::grad_x_sample(Eigen::Index, const Vec&, const Vec&) const {
    throw UsageError("oracle: per-sample access not available");
}
Vec MinimaxOracle::grad_y_sample(Eigen::Index, const Vec&, const Vec&) const {
    throw UsageError("oracle: per-sample access not available");
}
Vec MinimaxOracle::jvp_sample(Eigen::Index, JacobianBlock, const Vec&, const Vec&,
                              const Vec&) const {
    throw UsageError("oracle: per-sample access not available");
}

SampleOracleView::SampleOracleView(const MinimaxOracle& parent, Eigen::Index index)
    : parent_(&parent), index_(index) {
    require(parent.is_finite_sum(), "per_sample_oracle: not a finite-sum problem");
    require(index >= 0 && index < parent.num_samples(), "per_sample_oracle: index out of range");
}

double SampleOracleView::eval(const Vec& x, const Vec& y) const {
    return parent_->eval_sample(index_, x, y);
}
Vec SampleOracleView::grad_x(const Vec& x, const Vec& y) const {
    return parent_->grad_x_sample(index_, x, y);
}
Vec SampleOracleView::grad_y(const Vec& x, const Vec& y) const {
    return parent_->grad_y_sample(index_, x, y);
}
Vec SampleOracleView::jvp(JacobianBlock block, const Vec& x, const Vec& y, const Vec& v) const {
    return parent_->jvp_sample(index_, block, x, y, v);
}

}  // namespace cubicgda
