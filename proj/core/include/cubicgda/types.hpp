#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace cubicgda {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Thrown when an iteration produces non-finite values, an inner solver
/// fails to converge, or an iterate leaves the declared operating box.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown on contract violations: dimension mismatches, invalid
/// configuration, out-of-range indices.
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw UsageError(msg);
}

/// Smoothness constants declared by a problem on its operating box,
/// together with the derived quantities used by the step-size and
/// inner-iteration schedules.
///
/// L0 is the per-sample Lipschitz constant of f_i(.,y) and is only
/// meaningful for finite-sum problems (0 otherwise). Purely quadratic
/// problems have L2 = 0; a configurable floor is substituted before
/// deriving L_G and L_Phi so that the cubic step scale stays finite.
struct SmoothnessProfile {
    double L0 = 0.0;
    double L1 = 0.0;
    double L2 = 0.0;
    double mu = 0.0;

    double kappa = 0.0;  // L1 / mu
    double L_G = 0.0;    // L2_eff * (1 + kappa)^2
    double L_Phi = 0.0;  // L2_eff * (1 + kappa)^3

    static constexpr double kDefaultL2Floor = 1e-6;

    static SmoothnessProfile make(double L0, double L1, double L2, double mu,
                                  double l2_floor = kDefaultL2Floor) {
        require(mu > 0.0, "SmoothnessProfile: mu must be positive");
        require(L1 >= mu, "SmoothnessProfile: L1 must be >= mu");
        require(L2 >= 0.0 && L0 >= 0.0, "SmoothnessProfile: constants must be nonnegative");
        SmoothnessProfile p;
        p.L0 = L0;
        p.L1 = L1;
        p.L2 = L2;
        p.mu = mu;
        p.kappa = L1 / mu;
        const double l2_eff = std::max(L2, l2_floor);
        const double k1 = 1.0 + p.kappa;
        p.L_G = l2_eff * k1 * k1;
        p.L_Phi = l2_eff * k1 * k1 * k1;
        return p;
    }
};

inline bool all_finite(const Vec& v) { return v.allFinite(); }

}  // namespace cubicgda
