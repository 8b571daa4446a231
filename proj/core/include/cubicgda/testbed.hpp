#pragma once

#include "cubicgda/oracle.hpp"

#include <cstdint>
#include <memory>

namespace cubicgda {

/// f(x, y) = 1/2 x'Ax + b'x + x'By - 1/2 y'Cy + c'y with C positive
/// definite. All constants are global, so the operating box is all of
/// R^m x R^n. Closed forms: y*(x) = C^{-1}(B'x + c) and
/// hess Phi = A + B C^{-1} B' (constant).
class QuadraticOracle final : public MinimaxOracle {
public:
    QuadraticOracle(Mat A, Vec b, Mat B, Mat C, Vec c);

    Eigen::Index dim_x() const override { return A_.rows(); }
    Eigen::Index dim_y() const override { return C_.rows(); }
    const SmoothnessProfile& profile() const override { return profile_; }

    double eval(const Vec& x, const Vec& y) const override;
    Vec grad_x(const Vec& x, const Vec& y) const override;
    Vec grad_y(const Vec& x, const Vec& y) const override;
    Vec jvp(JacobianBlock block, const Vec& x, const Vec& y, const Vec& v) const override;

    bool has_closed_forms() const override { return true; }
    Vec y_star(const Vec& x) const override;
    double phi(const Vec& x) const override;
    Vec grad_phi(const Vec& x) const override;
    Mat hess_phi(const Vec& x) const override;

    const Mat& A() const { return A_; }
    const Mat& B() const { return B_; }
    const Mat& C() const { return C_; }

private:
    Mat A_, B_, C_;
    Vec b_, c_;
    Mat schur_;        // A + B C^{-1} B'
    Mat c_inv_bt_;     // C^{-1} B'
    Vec c_inv_c_;      // C^{-1} c
    SmoothnessProfile profile_;
};

enum class QuadraticVariant { Convex, Saddle };

/// Random well-conditioned quadratic problem with the envelope Hessian
/// prescribed: spectrum in [1, conditioning] for the convex variant, one
/// negative eigenvalue for the saddle variant.
std::shared_ptr<QuadraticOracle> make_quadratic(Eigen::Index m, Eigen::Index n,
                                                std::uint64_t seed, double conditioning,
                                                QuadraticVariant variant = QuadraticVariant::Convex);

/// Fixed 2-D primal / 1-D dual problem
///   f(x, y) = 1/4 x2^4 - x2^2 + 1/2 x1^2 + x2 y - 1/2 y^2
/// on the box |x_i| <= 2, |y| <= 3. y*(x) = x2,
/// Phi(x) = 1/4 x2^4 - 1/2 x2^2 + 1/2 x1^2, hess Phi = diag(1, 3 x2^2 - 1):
/// a strict saddle at the origin and local minimax points at x = (0, +-1).
class StrictSaddleOracle final : public MinimaxOracle {
public:
    StrictSaddleOracle();

    Eigen::Index dim_x() const override { return 2; }
    Eigen::Index dim_y() const override { return 1; }
    const SmoothnessProfile& profile() const override { return profile_; }

    double eval(const Vec& x, const Vec& y) const override;
    Vec grad_x(const Vec& x, const Vec& y) const override;
    Vec grad_y(const Vec& x, const Vec& y) const override;
    Vec jvp(JacobianBlock block, const Vec& x, const Vec& y, const Vec& v) const override;
    bool in_box(const Vec& x, const Vec& y) const override;

    bool has_closed_forms() const override { return true; }
    Vec y_star(const Vec& x) const override;
    double phi(const Vec& x) const override;
    Vec grad_phi(const Vec& x) const override;
    Mat hess_phi(const Vec& x) const override;

private:
    SmoothnessProfile profile_;
};

std::shared_ptr<StrictSaddleOracle> make_strict_saddle();

struct RobustSumOptions {
    double a_scale = 1.0;        // feature scale; a_i ~ (a_scale/sqrt(d)) * N(0, I)
    double b_scale = 0.3;        // target scale
    double box_x_radius = 3.0;   // ||x|| <= box_x_radius
    double box_y_radius = 0.0;   // ||y - u|| bound; 0 = derive from data and lambda
    double saddle_coeff = 0.0;   // adds saddle_coeff * (1/4 x1^4 - 1/2 x1^2) to every f_i
};

/// Sample-weighted least squares, the finite-sum benchmark:
///   f_i(x, y) = N y_i l_i(x) - lambda/2 ||y - u||^2 + p(x),
///   l_i(x) = 1/2 (a_i'x - b_i)^2,  u = (1/N, ..., 1/N),
/// so f = sum_i y_i l_i - lambda/2 ||y - u||^2 + p(x). Every f_i is
/// lambda-strongly concave in y, and y*(x) = u + l(x)/lambda is exact,
/// which keeps all diagnostics closed-form. p is the optional x-saddle
/// penalty from RobustSumOptions.
class RobustSumOracle final : public MinimaxOracle {
public:
    RobustSumOracle(Mat features, Vec targets, double lambda, RobustSumOptions opts);

    Eigen::Index dim_x() const override { return features_.rows(); }
    Eigen::Index dim_y() const override { return features_.cols(); }
    const SmoothnessProfile& profile() const override { return profile_; }

    double eval(const Vec& x, const Vec& y) const override;
    Vec grad_x(const Vec& x, const Vec& y) const override;
    Vec grad_y(const Vec& x, const Vec& y) const override;
    Vec jvp(JacobianBlock block, const Vec& x, const Vec& y, const Vec& v) const override;
    bool in_box(const Vec& x, const Vec& y) const override;

    bool has_closed_forms() const override { return true; }
    Vec y_star(const Vec& x) const override;
    double phi(const Vec& x) const override;
    Vec grad_phi(const Vec& x) const override;
    Mat hess_phi(const Vec& x) const override;

    bool is_finite_sum() const override { return true; }
    Eigen::Index num_samples() const override { return features_.cols(); }
    double eval_sample(Eigen::Index i, const Vec& x, const Vec& y) const override;
    Vec grad_x_sample(Eigen::Index i, const Vec& x, const Vec& y) const override;
    Vec grad_y_sample(Eigen::Index i, const Vec& x, const Vec& y) const override;
    Vec jvp_sample(Eigen::Index i, JacobianBlock block, const Vec& x, const Vec& y,
                   const Vec& v) const override;

    double lambda() const { return lambda_; }
    const RobustSumOptions& options() const { return opts_; }

private:
    Vec residuals(const Vec& x) const { return features_.transpose() * x - targets_; }
    double penalty(double x1) const;
    double penalty_d1(double x1) const;
    double penalty_d2(double x1) const;

    Mat features_;  // d x N, column i = a_i
    Vec targets_;   // N
    double lambda_;
    RobustSumOptions opts_;
    Vec uniform_;   // u
    SmoothnessProfile profile_;
};

std::shared_ptr<RobustSumOracle> make_robust_sum(Eigen::Index n_samples, Eigen::Index d,
                                                 std::uint64_t seed, double lambda,
                                                 RobustSumOptions opts = {});

}  // namespace cubicgda
