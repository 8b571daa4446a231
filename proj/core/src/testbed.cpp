#include "cubicgda/testbed.hpp"

#include "cubicgda/rng.hpp"

#include <Eigen/Eigenvalues>

namespace cubicgda {

namespace {

Mat random_orthogonal(Eigen::Index n, KeyedRng& rng) {
    Mat G(n, n);
    for (Eigen::Index j = 0; j < n; ++j) G.col(j) = rng.gaussian_vector(n);
    Eigen::HouseholderQR<Mat> qr(G);
    Mat Q = qr.householderQ() * Mat::Identity(n, n);
    return Q;
}

Mat spd_with_spectrum(const Vec& spectrum, KeyedRng& rng) {
    const Eigen::Index n = spectrum.size();
    const Mat Q = random_orthogonal(n, rng);
    return Q * spectrum.asDiagonal() * Q.transpose();
}

double spectral_norm(const Mat& M) {
    if (M.rows() == M.cols() && M.isApprox(M.transpose(), 1e-12)) {
        Eigen::SelfAdjointEigenSolver<Mat> es(M);
        return es.eigenvalues().cwiseAbs().maxCoeff();
    }
    Eigen::JacobiSVD<Mat> svd(M);
    return svd.singularValues()[0];
}

}  // namespace

// ---------------------------------------------------------------------------
// QuadraticOracle

QuadraticOracle::QuadraticOracle(Mat A, Vec b, Mat B, Mat C, Vec c)
    : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)), b_(std::move(b)), c_(std::move(c)) {
    require(A_.rows() == A_.cols() && C_.rows() == C_.cols(), "quadratic: A and C must be square");
    require(B_.rows() == A_.rows() && B_.cols() == C_.rows(), "quadratic: B shape mismatch");
    require(b_.size() == A_.rows() && c_.size() == C_.rows(), "quadratic: b or c shape mismatch");
    require((A_ - A_.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + A_.cwiseAbs().maxCoeff()),
            "quadratic: A must be symmetric");
    require((C_ - C_.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + C_.cwiseAbs().maxCoeff()),
            "quadratic: C must be symmetric");

    Eigen::SelfAdjointEigenSolver<Mat> esC(C_);
    const double mu = esC.eigenvalues()[0];
    require(mu > 0.0, "quadratic: C must be positive definite");

    Eigen::LLT<Mat> llt(C_);
    c_inv_bt_ = llt.solve(B_.transpose());
    c_inv_c_ = llt.solve(c_);
    schur_ = A_ + B_ * c_inv_bt_;
    schur_ = 0.5 * (schur_ + schur_.transpose());

    // L1 is the norm of the full (constant) Hessian of f.
    const Eigen::Index m = A_.rows(), n = C_.rows();
    Mat H(m + n, m + n);
    H.topLeftCorner(m, m) = A_;
    H.topRightCorner(m, n) = B_;
    H.bottomLeftCorner(n, m) = B_.transpose();
    H.bottomRightCorner(n, n) = -C_;
    const double L1 = std::max(spectral_norm(H), mu);
    profile_ = SmoothnessProfile::make(/*L0=*/0.0, L1, /*L2=*/0.0, mu);
}

double QuadraticOracle::eval(const Vec& x, const Vec& y) const {
    check_point(x, y);
    return 0.5 * x.dot(A_ * x) + b_.dot(x) + x.dot(B_ * y) - 0.5 * y.dot(C_ * y) + c_.dot(y);
}

Vec QuadraticOracle::grad_x(const Vec& x, const Vec& y) const {
    check_point(x, y);
    return A_ * x + b_ + B_ * y;
}

Vec QuadraticOracle::grad_y(const Vec& x, const Vec& y) const {
    check_point(x, y);
    return B_.transpose() * x - C_ * y + c_;
}

Vec QuadraticOracle::jvp(JacobianBlock block, const Vec& x, const Vec& y, const Vec& v) const {
    check_point(x, y);
    require(v.size() == jvp_input_dim(*this, block), "jvp: direction dimension mismatch");
    switch (block) {
        case JacobianBlock::B11: return A_ * v;
        case JacobianBlock::B12: return B_ * v;
        case JacobianBlock::B21: return B_.transpose() * v;
        default: return -(C_ * v);
    }
}

Vec QuadraticOracle::y_star(const Vec& x) const { return c_inv_bt_ * x + c_inv_c_; }

double QuadraticOracle::phi(const Vec& x) const {
    return 0.5 * x.dot(schur_ * x) + (b_ + B_ * c_inv_c_).dot(x) + 0.5 * c_.dot(c_inv_c_);
}

Vec QuadraticOracle::grad_phi(const Vec& x) const { return schur_ * x + b_ + B_ * c_inv_c_; }

Mat QuadraticOracle::hess_phi(const Vec&) const { return schur_; }

std::shared_ptr<QuadraticOracle> make_quadratic(Eigen::Index m, Eigen::Index n,
                                                std::uint64_t seed, double conditioning,
                                                QuadraticVariant variant) {
    require(m >= 1 && n >= 1, "make_quadratic: dimensions must be >= 1");
    require(conditioning >= 1.0, "make_quadratic: conditioning must be >= 1");
    KeyedRng rng = KeyedRng::from(seed, {0x71adu});

    Vec spec_c(n);
    for (Eigen::Index i = 0; i < n; ++i)
        spec_c[i] = 1.0 + (conditioning - 1.0) * (n == 1 ? 0.0 : double(i) / double(n - 1));
    const Mat C = spd_with_spectrum(spec_c, rng);

    Mat B(m, n);
    for (Eigen::Index j = 0; j < n; ++j) B.col(j) = rng.gaussian_vector(m);
    B *= 1.0 / std::sqrt(static_cast<double>(std::max(m, n)));

    // Prescribe the envelope Hessian and back out A.
    Vec spec_g(m);
    for (Eigen::Index i = 0; i < m; ++i)
        spec_g[i] = 1.0 + (conditioning - 1.0) * (m == 1 ? 0.0 : double(i) / double(m - 1));
    if (variant == QuadraticVariant::Saddle) spec_g[0] = -1.0;
    const Mat G = spd_with_spectrum(spec_g, rng);

    Eigen::LLT<Mat> llt(C);
    Mat A = G - B * llt.solve(B.transpose());
    A = 0.5 * (A + A.transpose());

    const Vec b = 0.5 * rng.gaussian_vector(m);
    const Vec c = 0.5 * rng.gaussian_vector(n);
    return std::make_shared<QuadraticOracle>(A, b, B, C, c);
}

// ---------------------------------------------------------------------------
// StrictSaddleOracle

StrictSaddleOracle::StrictSaddleOracle() {
    // Hessian of f is [[1,0,0],[0,a,1],[0,1,-1]] with a = 3 x2^2 - 2 in
    // [-2, 10] on the box; its norm is maximal at a = 10.
    auto block_norm = [](double a) {
        const double disc = std::sqrt((a + 1.0) * (a + 1.0) + 4.0);
        return std::max(std::abs((a - 1.0) + disc), std::abs((a - 1.0) - disc)) / 2.0;
    };
    const double L1 = std::max({1.0, block_norm(10.0), block_norm(-2.0)});
    // Only d/dx2 (3 x2^2 - 2) = 6 x2 varies, bounded by 12 on the box.
    profile_ = SmoothnessProfile::make(/*L0=*/0.0, L1, /*L2=*/12.0, /*mu=*/1.0);
}

double StrictSaddleOracle::eval(const Vec& x, const Vec& y) const {
    check_point(x, y);
    const double x2 = x[1];
    return 0.25 * x2 * x2 * x2 * x2 - x2 * x2 + 0.5 * x[0] * x[0] + x2 * y[0] - 0.5 * y[0] * y[0];
}

Vec StrictSaddleOracle::grad_x(const Vec& x, const Vec& y) const {
    check_point(x, y);
    Vec g(2);
    g[0] = x[0];
    g[1] = x[1] * x[1] * x[1] - 2.0 * x[1] + y[0];
    return g;
}

Vec StrictSaddleOracle::grad_y(const Vec& x, const Vec& y) const {
    check_point(x, y);
    Vec g(1);
    g[0] = x[1] - y[0];
    return g;
}

Vec StrictSaddleOracle::jvp(JacobianBlock block, const Vec& x, const Vec& y, const Vec& v) const {
    check_point(x, y);
    require(v.size() == jvp_input_dim(*this, block), "jvp: direction dimension mismatch");
    switch (block) {
        case JacobianBlock::B11: {
            Vec out(2);
            out[0] = v[0];
            out[1] = (3.0 * x[1] * x[1] - 2.0) * v[1];
            return out;
        }
        case JacobianBlock::B12: {
            Vec out(2);
            out[0] = 0.0;
            out[1] = v[0];
            return out;
        }
        case JacobianBlock::B21: {
            Vec out(1);
            out[0] = v[1];
            return out;
        }
        default: return -v;
    }
}

bool StrictSaddleOracle::in_box(const Vec& x, const Vec& y) const {
    return std::abs(x[0]) <= 2.0 && std::abs(x[1]) <= 2.0 && std::abs(y[0]) <= 3.0;
}

Vec StrictSaddleOracle::y_star(const Vec& x) const {
    Vec y(1);
    y[0] = x[1];
    return y;
}

double StrictSaddleOracle::phi(const Vec& x) const {
    const double x2 = x[1];
    return 0.25 * x2 * x2 * x2 * x2 - 0.5 * x2 * x2 + 0.5 * x[0] * x[0];
}

Vec StrictSaddleOracle::grad_phi(const Vec& x) const {
    Vec g(2);
    g[0] = x[0];
    g[1] = x[1] * x[1] * x[1] - x[1];
    return g;
}

Mat StrictSaddleOracle::hess_phi(const Vec& x) const {
    Mat H = Mat::Zero(2, 2);
    H(0, 0) = 1.0;
    H(1, 1) = 3.0 * x[1] * x[1] - 1.0;
    return H;
}

std::shared_ptr<StrictSaddleOracle> make_strict_saddle() {
    return std::make_shared<StrictSaddleOracle>();
}

// ---------------------------------------------------------------------------
// RobustSumOracle

RobustSumOracle::RobustSumOracle(Mat features, Vec targets, double lambda, RobustSumOptions opts)
    : features_(std::move(features)), targets_(std::move(targets)), lambda_(lambda), opts_(opts) {
    const Eigen::Index N = features_.cols();
    require(N >= 1 && features_.rows() >= 1, "robust_sum: empty data");
    require(targets_.size() == N, "robust_sum: feature/target count mismatch");
    require(lambda_ > 0.0, "robust_sum: lambda must be positive");
    uniform_ = Vec::Constant(N, 1.0 / static_cast<double>(N));

    const double Rx = opts_.box_x_radius;
    const double n_d = static_cast<double>(N);
    double amax = 0.0, rbar = 0.0, lbar = 0.0, b12 = 0.0, l0_data = 0.0;
    for (Eigen::Index i = 0; i < N; ++i) {
        const double an = features_.col(i).norm();
        const double ri = an * Rx + std::abs(targets_[i]);
        amax = std::max(amax, an);
        rbar = std::max(rbar, ri);
        lbar = std::max(lbar, 0.5 * ri * ri);
        b12 = std::max(b12, n_d * ri * an);
        l0_data = std::max(l0_data, ri * an);
    }
    if (opts_.box_y_radius <= 0.0) opts_.box_y_radius = 3.0 * n_d * lbar / lambda_;
    const double ymax = 1.0 / n_d + opts_.box_y_radius;

    const double c = opts_.saddle_coeff;
    const double pen_d1 = c * (Rx * Rx * Rx + Rx);
    const double pen_d2 = c * (3.0 * Rx * Rx + 1.0);
    const double pen_d3 = c * 6.0 * Rx;

    const double L0 = n_d * ymax * l0_data + pen_d1;
    const double b11 = n_d * ymax * amax * amax + pen_d2;
    const double L1 = std::max(b11 + b12, lambda_ + b12);
    const double L2 = n_d * amax * amax + pen_d3;
    profile_ = SmoothnessProfile::make(L0, L1, L2, lambda_);
}

double RobustSumOracle::penalty(double x1) const {
    const double c = opts_.saddle_coeff;
    return c == 0.0 ? 0.0 : c * (0.25 * x1 * x1 * x1 * x1 - 0.5 * x1 * x1);
}
double RobustSumOracle::penalty_d1(double x1) const {
    const double c = opts_.saddle_coeff;
    return c == 0.0 ? 0.0 : c * (x1 * x1 * x1 - x1);
}
double RobustSumOracle::penalty_d2(double x1) const {
    const double c = opts_.saddle_coeff;
    return c == 0.0 ? 0.0 : c * (3.0 * x1 * x1 - 1.0);
}

double RobustSumOracle::eval(const Vec& x, const Vec& y) const {
    check_point(x, y);
    const Vec r = residuals(x);
    const Vec l = 0.5 * r.cwiseProduct(r);
    const Vec dy = y - uniform_;
    return y.dot(l) - 0.5 * lambda_ * dy.squaredNorm() + penalty(x[0]);
}

Vec RobustSumOracle::grad_x(const Vec& x, const Vec& y) const {
    check_point(x, y);
    const Vec r = residuals(x);
    Vec g = features_ * y.cwiseProduct(r);
    g[0] += penalty_d1(x[0]);
    return g;
}

Vec RobustSumOracle::grad_y(const Vec& x, const Vec& y) const {
    check_point(x, y);
    const Vec r = residuals(x);
    return 0.5 * r.cwiseProduct(r) - lambda_ * (y - uniform_);
}

Vec RobustSumOracle::jvp(JacobianBlock block, const Vec& x, const Vec& y, const Vec& v) const {
    check_point(x, y);
    require(v.size() == jvp_input_dim(*this, block), "jvp: direction dimension mismatch");
    switch (block) {
        case JacobianBlock::B11: {
            const Vec atv = features_.transpose() * v;
            Vec out = features_ * y.cwiseProduct(atv);
            out[0] += penalty_d2(x[0]) * v[0];
            return out;
        }
        case JacobianBlock::B12: {
            const Vec r = residuals(x);
            return features_ * r.cwiseProduct(v);
        }
        case JacobianBlock::B21: {
            const Vec r = residuals(x);
            return r.cwiseProduct(features_.transpose() * v);
        }
        default: return -lambda_ * v;
    }
}

bool RobustSumOracle::in_box(const Vec& x, const Vec& y) const {
    return x.norm() <= opts_.box_x_radius && (y - uniform_).norm() <= opts_.box_y_radius;
}

Vec RobustSumOracle::y_star(const Vec& x) const {
    const Vec r = residuals(x);
    return uniform_ + (0.5 / lambda_) * r.cwiseProduct(r);
}

double RobustSumOracle::phi(const Vec& x) const {
    const Vec r = residuals(x);
    const Vec l = 0.5 * r.cwiseProduct(r);
    return l.sum() / static_cast<double>(num_samples()) + l.squaredNorm() / (2.0 * lambda_) +
           penalty(x[0]);
}

Vec RobustSumOracle::grad_phi(const Vec& x) const {
    const Vec r = residuals(x);
    const Vec ys = uniform_ + (0.5 / lambda_) * r.cwiseProduct(r);
    Vec g = features_ * ys.cwiseProduct(r);
    g[0] += penalty_d1(x[0]);
    return g;
}

Mat RobustSumOracle::hess_phi(const Vec& x) const {
    const Vec r = residuals(x);
    const Vec ys = uniform_ + (0.5 / lambda_) * r.cwiseProduct(r);
    const Vec w = ys + (1.0 / lambda_) * r.cwiseProduct(r);  // y*_i + r_i^2 / lambda
    Mat H = features_ * w.asDiagonal() * features_.transpose();
    H(0, 0) += penalty_d2(x[0]);
    return 0.5 * (H + H.transpose());
}

double RobustSumOracle::eval_sample(Eigen::Index i, const Vec& x, const Vec& y) const {
    check_sample(i);
    check_point(x, y);
    const double r = features_.col(i).dot(x) - targets_[i];
    const Vec dy = y - uniform_;
    return static_cast<double>(num_samples()) * y[i] * 0.5 * r * r -
           0.5 * lambda_ * dy.squaredNorm() + penalty(x[0]);
}

Vec RobustSumOracle::grad_x_sample(Eigen::Index i, const Vec& x, const Vec& y) const {
    check_sample(i);
    check_point(x, y);
    const double r = features_.col(i).dot(x) - targets_[i];
    Vec g = static_cast<double>(num_samples()) * y[i] * r * features_.col(i);
    g[0] += penalty_d1(x[0]);
    return g;
}

Vec RobustSumOracle::grad_y_sample(Eigen::Index i, const Vec& x, const Vec& y) const {
    check_sample(i);
    check_point(x, y);
    const double r = features_.col(i).dot(x) - targets_[i];
    Vec g = -lambda_ * (y - uniform_);
    g[i] += static_cast<double>(num_samples()) * 0.5 * r * r;
    return g;
}

Vec RobustSumOracle::jvp_sample(Eigen::Index i, JacobianBlock block, const Vec& x, const Vec& y,
                                const Vec& v) const {
    check_sample(i);
    check_point(x, y);
    require(v.size() == jvp_input_dim(*this, block), "jvp: direction dimension mismatch");
    const double n_d = static_cast<double>(num_samples());
    const double r = features_.col(i).dot(x) - targets_[i];
    switch (block) {
        case JacobianBlock::B11: {
            Vec out = n_d * y[i] * features_.col(i).dot(v) * features_.col(i);
            out[0] += penalty_d2(x[0]) * v[0];
            return out;
        }
        case JacobianBlock::B12: return n_d * r * v[i] * features_.col(i);
        case JacobianBlock::B21: {
            Vec out = Vec::Zero(num_samples());
            out[i] = n_d * r * features_.col(i).dot(v);
            return out;
        }
        default: return -lambda_ * v;
    }
}

std::shared_ptr<RobustSumOracle> make_robust_sum(Eigen::Index n_samples, Eigen::Index d,
                                                 std::uint64_t seed, double lambda,
                                                 RobustSumOptions opts) {
    require(n_samples >= 2 && d >= 1, "make_robust_sum: need N >= 2, d >= 1");
    KeyedRng rng = KeyedRng::from(seed, {0xda7au});
    Mat A(d, n_samples);
    const double col_scale = opts.a_scale / std::sqrt(static_cast<double>(d));
    for (Eigen::Index i = 0; i < n_samples; ++i) A.col(i) = col_scale * rng.gaussian_vector(d);
    Vec b(n_samples);
    for (Eigen::Index i = 0; i < n_samples; ++i) b[i] = opts.b_scale * rng.next_gaussian();
    return std::make_shared<RobustSumOracle>(std::move(A), std::move(b), lambda, opts);
}

}  // namespace cubicgda
