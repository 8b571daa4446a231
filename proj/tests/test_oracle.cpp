#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cubicgda/diagnostics.hpp"
#include "cubicgda/rng.hpp"
#include "cubicgda/testbed.hpp"

using namespace cubicgda;

namespace {

// f(x, y) = x^2 + x y - 1/2 y^2 as a quadratic spec: A = 2, B = 1, C = 1.
std::shared_ptr<QuadraticOracle> scalar_problem() {
    Mat A(1, 1), B(1, 1), C(1, 1);
    A << 2.0;
    B << 1.0;
    C << 1.0;
    return std::make_shared<QuadraticOracle>(A, Vec::Zero(1), B, C, Vec::Zero(1));
}

Vec scalar(double v) {
    Vec x(1);
    x[0] = v;
    return x;
}

// Wrapper that hides the analytic jvp so the finite-difference fallback runs.
class FdFallbackOracle final : public MinimaxOracle {
public:
    explicit FdFallbackOracle(std::shared_ptr<MinimaxOracle> inner) : inner_(std::move(inner)) {}
    Eigen::Index dim_x() const override { return inner_->dim_x(); }
    Eigen::Index dim_y() const override { return inner_->dim_y(); }
    const SmoothnessProfile& profile() const override { return inner_->profile(); }
    double eval(const Vec& x, const Vec& y) const override { return inner_->eval(x, y); }
    Vec grad_x(const Vec& x, const Vec& y) const override { return inner_->grad_x(x, y); }
    Vec grad_y(const Vec& x, const Vec& y) const override { return inner_->grad_y(x, y); }

private:
    std::shared_ptr<MinimaxOracle> inner_;
};

}  // namespace

TEST_CASE("hand-evaluated scalar problem: value and gradients") {
    const auto o = scalar_problem();
    CHECK(o->eval(scalar(1), scalar(1)) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(o->grad_x(scalar(1), scalar(1))[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(o->grad_y(scalar(1), scalar(1))[0] == doctest::Approx(0.0).epsilon(1e-14));
    // zero point with zero linear terms
    CHECK(o->eval(scalar(0), scalar(0)) == 0.0);
}

TEST_CASE("hand-evaluated scalar problem: jacobian blocks") {
    const auto o = scalar_problem();
    CHECK(o->jvp(JacobianBlock::B22, scalar(0), scalar(0), scalar(1))[0] == -1.0);
    CHECK(o->jvp(JacobianBlock::B12, scalar(0), scalar(0), scalar(1))[0] == 1.0);
}

TEST_CASE("grad_y vanishes at the inner maximizer") {
    const auto o = make_quadratic(3, 4, 11, 8.0);
    KeyedRng rng = KeyedRng::from(1, {});
    const Vec x = rng.gaussian_vector(3);
    CHECK(o->grad_y(x, o->y_star(x)).norm() <= 1e-10);
}

TEST_CASE("jvp of the zero vector is zero, and dimension mismatches throw") {
    const auto o = make_quadratic(3, 4, 11, 8.0);
    const Vec x = Vec::Zero(3), y = Vec::Zero(4);
    CHECK(o->jvp(JacobianBlock::B12, x, y, Vec::Zero(4)).norm() == 0.0);
    CHECK_THROWS_AS(o->jvp(JacobianBlock::B12, x, y, Vec::Zero(3)), UsageError);
    CHECK_THROWS_AS(o->eval(Vec::Zero(4), y), UsageError);
}

TEST_CASE("mixed partials are adjoint: <B12 v, u> = <B21 u, v>") {
    const auto saddle = make_strict_saddle();
    const auto quad = make_quadratic(4, 3, 5, 10.0);
    KeyedRng rng = KeyedRng::from(7, {3});
    for (int trial = 0; trial < 20; ++trial) {
        {
            const Vec x = rng.gaussian_vector(2), y = rng.gaussian_vector(1);
            const Vec u = rng.gaussian_vector(2), v = rng.gaussian_vector(1);
            const double lhs = saddle->jvp(JacobianBlock::B12, x, y, v).dot(u);
            const double rhs = saddle->jvp(JacobianBlock::B21, x, y, u).dot(v);
            CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(lhs)));
        }
        {
            const Vec x = rng.gaussian_vector(4), y = rng.gaussian_vector(3);
            const Vec u = rng.gaussian_vector(4), v = rng.gaussian_vector(3);
            const double lhs = quad->jvp(JacobianBlock::B12, x, y, v).dot(u);
            const double rhs = quad->jvp(JacobianBlock::B21, x, y, u).dot(v);
            CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(lhs)));
        }
    }
}

TEST_CASE("finite-difference consistency of gradients and jvp blocks") {
    KeyedRng rng = KeyedRng::from(13, {});
    const auto saddle = make_strict_saddle();
    const Vec xs = 0.8 * rng.gaussian_vector(2);
    const Vec ys = 0.8 * rng.gaussian_vector(1);
    CHECK(fd_check(*saddle, xs, ys, FdKind::Grad, 1e-5, 1e-6).pass);
    CHECK(fd_check(*saddle, xs, ys, FdKind::Hess, 1e-5, 1e-6).pass);

    const auto quad = make_quadratic(3, 2, 21, 6.0);
    const Vec xq = rng.gaussian_vector(3);
    const Vec yq = rng.gaussian_vector(2);
    CHECK(fd_check(*quad, xq, yq, FdKind::Grad, 1e-5, 1e-6).pass);
    CHECK(fd_check(*quad, xq, yq, FdKind::Hess, 1e-5, 1e-6).pass);
}

TEST_CASE("finite-difference fallback jvp matches the analytic blocks") {
    const auto quad = make_quadratic(3, 2, 33, 4.0);
    const FdFallbackOracle fallback(quad);
    KeyedRng rng = KeyedRng::from(4, {});
    const Vec x = rng.gaussian_vector(3), y = rng.gaussian_vector(2);
    for (JacobianBlock b : {JacobianBlock::B11, JacobianBlock::B12, JacobianBlock::B21,
                            JacobianBlock::B22}) {
        const Vec v = rng.gaussian_vector(jvp_input_dim(*quad, b));
        const Vec exact = quad->jvp(b, x, y, v);
        const Vec fd = fallback.jvp(b, x, y, v);
        CHECK((exact - fd).norm() <= 1e-6 * (1.0 + exact.norm()));
    }
}

TEST_CASE("purity: repeated oracle calls return bit-identical outputs") {
    const auto o = make_robust_sum(50, 4, 3, 500.0);
    KeyedRng rng = KeyedRng::from(2, {});
    const Vec x = 0.5 * rng.gaussian_vector(4);
    const Vec y = o->y_star(x);
    const Vec g1 = o->grad_x(x, y);
    const Vec g2 = o->grad_x(x, y);
    CHECK((g1.array() == g2.array()).all());
    CHECK(o->eval(x, y) == o->eval(x, y));
}

TEST_CASE("finite-sum oracle equals the mean of its samples") {
    const auto o = make_robust_sum(37, 3, 9, 300.0);
    KeyedRng rng = KeyedRng::from(8, {});
    const Vec x = 0.4 * rng.gaussian_vector(3);
    const Vec y = o->y_star(x) + 1e-4 * rng.gaussian_vector(37);

    double mean_eval = 0.0;
    Vec mean_gx = Vec::Zero(3);
    const Vec v = rng.gaussian_vector(37);
    Vec mean_jvp = Vec::Zero(37);
    for (Eigen::Index i = 0; i < 37; ++i) {
        mean_eval += o->eval_sample(i, x, y);
        mean_gx += o->grad_x_sample(i, x, y);
        mean_jvp += o->jvp_sample(i, JacobianBlock::B22, x, y, v);
    }
    mean_eval /= 37.0;
    mean_gx /= 37.0;
    mean_jvp /= 37.0;
    CHECK(std::abs(mean_eval - o->eval(x, y)) <= 1e-12 * (1.0 + std::abs(mean_eval)));
    CHECK((mean_gx - o->grad_x(x, y)).norm() <= 1e-12 * (1.0 + mean_gx.norm()));
    CHECK((mean_jvp - o->jvp(JacobianBlock::B22, x, y, v)).norm() <=
          1e-12 * (1.0 + mean_jvp.norm()));
}

TEST_CASE("per-sample view delegates and range-checks") {
    const auto o = make_robust_sum(10, 2, 5, 100.0);
    const auto view = per_sample_oracle(*o, 3);
    KeyedRng rng = KeyedRng::from(6, {});
    const Vec x = 0.3 * rng.gaussian_vector(2);
    const Vec y = o->y_star(x);
    CHECK(view.eval(x, y) == o->eval_sample(3, x, y));
    CHECK((view.grad_x(x, y) - o->grad_x_sample(3, x, y)).norm() == 0.0);
    CHECK_THROWS_AS(per_sample_oracle(*o, 10), UsageError);
    CHECK_THROWS_AS(per_sample_oracle(*o, -1), UsageError);
}

TEST_CASE("single-sample problem: the per-sample oracle is the full oracle") {
    // N = 1 constructed directly (the generator requires N >= 2).
    Mat features(2, 1);
    features << 0.3, -0.2;
    Vec targets(1);
    targets << 0.1;
    RobustSumOracle o(features, targets, 50.0, {});
    const auto view = per_sample_oracle(o, 0);
    Vec x(2), y(1);
    x << 0.4, -0.1;
    y = o.y_star(x);
    CHECK(view.eval(x, y) == doctest::Approx(o.eval(x, y)).epsilon(1e-15));
    CHECK((view.grad_x(x, y) - o.grad_x(x, y)).norm() <= 1e-15);
    CHECK((view.grad_y(x, y) - o.grad_y(x, y)).norm() <= 1e-15);
}
