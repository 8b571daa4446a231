#pragma once

#include "cubicgda/types.hpp"

#include <memory>

namespace cubicgda {

/// Second-derivative block of f(x, y): B11 = d2f/dx2, B12 = d2f/dxdy,
/// B21 = d2f/dydx, B22 = d2f/dy2. B12 maps R^n -> R^m, B21 maps R^m -> R^n.
enum class JacobianBlock { B11, B12, B21, B22 };

/// Problem oracle consumed by every algorithm: function value, partial
/// gradients, Jacobian-vector products, optional closed-form ground truth
/// and finite-sum sample access. Oracles are immutable after construction
/// and all calls are pure, so concurrent read-only use is safe.
///
/// Smoothness constants are declared on a documented operating box; runs
/// assert iterates stay inside it (in_box) and abort otherwise.
class MinimaxOracle {
public:
    virtual ~MinimaxOracle() = default;

    virtual Eigen::Index dim_x() const = 0;
    virtual Eigen::Index dim_y() const = 0;
    virtual const SmoothnessProfile& profile() const = 0;

    virtual double eval(const Vec& x, const Vec& y) const = 0;
    virtual Vec grad_x(const Vec& x, const Vec& y) const = 0;
    virtual Vec grad_y(const Vec& x, const Vec& y) const = 0;

    /// Jacobian-block product: returns the selected block applied to v.
    /// The default implementation is a central finite difference of the
    /// corresponding gradient along v; test problems override with the
    /// analytic product.
    virtual Vec jvp(JacobianBlock block, const Vec& x, const Vec& y, const Vec& v) const;

    virtual bool in_box(const Vec& x, const Vec& y) const {
        (void)x;
        (void)y;
        return true;
    }

    // --- closed-form ground truth (test problems) ---
    virtual bool has_closed_forms() const { return false; }
    virtual Vec y_star(const Vec& x) const;
    virtual double phi(const Vec& x) const;
    virtual Vec grad_phi(const Vec& x) const;
    virtual Mat hess_phi(const Vec& x) const;

    // --- finite-sum access ---
    virtual bool is_finite_sum() const { return false; }
    virtual Eigen::Index num_samples() const { return 1; }
    virtual double eval_sample(Eigen::Index i, const Vec& x, const Vec& y) const;
    virtual Vec grad_x_sample(Eigen::Index i, const Vec& x, const Vec& y) const;
    virtual Vec grad_y_sample(Eigen::Index i, const Vec& x, const Vec& y) const;
    virtual Vec jvp_sample(Eigen::Index i, JacobianBlock block, const Vec& x, const Vec& y,
                           const Vec& v) const;

protected:
    void check_point(const Vec& x, const Vec& y) const {
        require(x.size() == dim_x() && y.size() == dim_y(),
                "oracle: (x, y) dimension mismatch");
    }
    void check_sample(Eigen::Index i) const {
        require(is_finite_sum(), "oracle: not a finite-sum problem");
        require(i >= 0 && i < num_samples(), "oracle: sample index out of range");
    }
};

Eigen::Index jvp_input_dim(const MinimaxOracle& o, JacobianBlock block);
Eigen::Index jvp_output_dim(const MinimaxOracle& o, JacobianBlock block);

/// View of one summand f_i as a standalone oracle with the same dimensions.
class SampleOracleView final : public MinimaxOracle {
public:
    SampleOracleView(const MinimaxOracle& parent, Eigen::Index index);

    Eigen::Index dim_x() const override { return parent_->dim_x(); }
    Eigen::Index dim_y() const override { return parent_->dim_y(); }
    const SmoothnessProfile& profile() const override { return parent_->profile(); }
    double eval(const Vec& x, const Vec& y) const override;
    Vec grad_x(const Vec& x, const Vec& y) const override;
    Vec grad_y(const Vec& x, const Vec& y) const override;
    Vec jvp(JacobianBlock block, const Vec& x, const Vec& y, const Vec& v) const override;
    bool in_box(const Vec& x, const Vec& y) const override { return parent_->in_box(x, y); }

private:
    const MinimaxOracle* parent_;
    Eigen::Index index_;
};

inline SampleOracleView per_sample_oracle(const MinimaxOracle& o, Eigen::Index i) {
    return SampleOracleView(o, i);
}

}  // namespace cubicgda
