#include "cubicgda/driver.hpp"

#include "cubicgda/diagnostics.hpp"
#include "cubicgda/schur.hpp"

#include <chrono>

namespace cubicgda {

const char* to_string(TerminationReason r) {
    switch (r) {
        case TerminationReason::ThresholdMet: return "threshold_met";
        case TerminationReason::BudgetExhausted: return "budget_exhausted";
        case TerminationReason::BoxExit: return "box_exit";
        default: return "numeric_failure";
    }
}

long default_n_max(const SmoothnessProfile& p, double alpha, double beta, double eps_prime) {
    const double a = std::max(1.0, 1.0 / (eps_prime * eps_prime));
    const double b = std::max(1.0, 10.0 * p.L1 * (alpha + p.L_G * p.kappa) / (p.L_G * beta));
    return 10 * static_cast<long>(std::ceil(p.kappa * std::log(a) + p.kappa * std::log(b)));
}

ResolvedRun resolve_run_config(const RunConfig& cfg, const MinimaxOracle& oracle) {
    const SmoothnessProfile& p = oracle.profile();
    ResolvedRun r;
    r.cfg = cfg;
    r.alpha = cfg.alpha > 0.0 ? cfg.alpha : p.L_Phi;
    r.beta = cfg.beta > 0.0 ? cfg.beta : p.L_Phi;
    r.eps_prime = cfg.eps_prime > 0.0 ? cfg.eps_prime : cfg.eps / std::sqrt(33.0 * p.L_Phi);
    r.eta_x = cfg.eta_x > 0.0 ? cfg.eta_x : 1.0 / (55.0 * p.L_Phi);
    r.eta_y = cfg.eta_y > 0.0 ? cfg.eta_y : 2.0 / (p.L1 + p.mu);
    r.cubic_tol = cfg.cubic_tol > 0.0
                      ? cfg.cubic_tol
                      : std::min(1e-8, 0.01 * r.eps_prime * r.eps_prime);
    r.n_max = cfg.N_max > 0 ? cfg.N_max : default_n_max(p, r.alpha, r.beta, r.eps_prime);

    require(cfg.T >= 1, "run config: T must be >= 1");
    require(r.eps_prime > 0.0, "run config: eps or eps_prime must be positive");
    if (!cfg.allow_override) {
        const double eta_cap = 1.0 / (9.0 * p.L_Phi + 18.0 * r.alpha + 28.0 * r.beta);
        require(r.eta_x <= eta_cap * (1.0 + 1e-12),
                "run config: eta_x exceeds (9 L_Phi + 18 alpha + 28 beta)^{-1}; "
                "set allow_override to run anyway");
        require(r.eps_prime <= r.alpha * p.L1 / (r.beta * p.L_G) * (1.0 + 1e-12),
                "run config: eps_prime exceeds alpha L1 / (beta L_G); "
                "set allow_override to run anyway");
    }

    r.x0 = cfg.x0.size() > 0 ? cfg.x0 : Vec::Zero(oracle.dim_x());
    r.y0 = cfg.y0.size() > 0 ? cfg.y0 : Vec::Zero(oracle.dim_y());
    require(r.x0.size() == oracle.dim_x() && r.y0.size() == oracle.dim_y(),
            "run config: x0 or y0 dimension mismatch");
    return r;
}

Vec inner_ga(const MinimaxOracle& oracle, const Vec& x, const Vec& y0, double eta_y, long N) {
    require(N >= 0, "inner_ga: N must be nonnegative");
    Vec y = y0;
    for (long k = 0; k < N; ++k) {
        const Vec gy = oracle.grad_y(x, y);
        if (!gy.allFinite()) throw NumericError("inner_ga: non-finite ascent gradient");
        y += eta_y * gy;
    }
    return y;
}

long nt_schedule(const SmoothnessProfile& p, double alpha, double beta, double eps_prime,
                 double s_prev_norm, double s_curr_norm, std::optional<double> init_gap,
                 long n_max) {
    require(eps_prime > 0.0, "nt_schedule: eps_prime must be positive");
    require(n_max >= 1, "nt_schedule: n_max must be >= 1");
    double arg;
    if (init_gap.has_value()) {
        arg = p.L1 * (*init_gap) / (2.0 * beta * eps_prime * eps_prime);
    } else {
        arg = (2.0 * p.L1 * alpha * s_prev_norm + p.L1 * (alpha + p.L_G * p.kappa) * s_curr_norm) /
              (p.L_G * beta * eps_prime * eps_prime);
    }
    if (!(arg > 1.0)) return 1;  // clamp absorbs degenerate logs (arg <= 1, 0 or NaN)
    const double n = std::ceil(p.kappa * std::log(arg));
    if (n >= static_cast<double>(n_max)) return n_max;
    return std::max<long>(1, static_cast<long>(n));
}

namespace {

struct DiagSnapshot {
    double phi = std::numeric_limits<double>::quiet_NaN();
    double h_t = std::numeric_limits<double>::quiet_NaN();
    double grad_norm = std::numeric_limits<double>::quiet_NaN();
    double min_eig = std::numeric_limits<double>::quiet_NaN();
    double mu = std::numeric_limits<double>::quiet_NaN();
};

// Diagnostics use their own certified inner maximization and never feed
// back into the algorithm.
DiagSnapshot diag_snapshot(const MinimaxOracle& oracle, const Vec& x, double s_norm, double alpha,
                           double beta, double diag_tol, double cg_tol) {
    DiagSnapshot d;
    const SmoothnessProfile& p = oracle.profile();
    const auto [phi, ys] = phi_eval(oracle, x, diag_tol);
    d.phi = phi;
    d.h_t = phi + (p.L_Phi + 2.0 * alpha + 3.0 * beta) * s_norm * s_norm * s_norm;
    const Vec gphi =
        oracle.has_closed_forms() ? oracle.grad_phi(x) : oracle.grad_x(x, ys);
    d.grad_norm = gphi.norm();
    d.min_eig = min_eigenvalue(g_operator(oracle, x, ys, cg_tol), diag_tol,
                               p.L1 * (1.0 + p.kappa));
    d.mu = std::max(std::sqrt(d.grad_norm), -d.min_eig / std::sqrt(33.0 * p.L_Phi));
    return d;
}

double init_gap_estimate(const MinimaxOracle& oracle, const Vec& x0, const Vec& y0) {
    if (oracle.has_closed_forms()) return (y0 - oracle.y_star(x0)).norm();
    // Certified bound from strong concavity: ||y0 - y*|| <= ||grad_y f|| / mu.
    return oracle.grad_y(x0, y0).norm() / oracle.profile().mu;
}

}  // namespace

RunResult run_cubic_gda(const MinimaxOracle& oracle, const RunConfig& cfg) {
    const ResolvedRun rr = resolve_run_config(cfg, oracle);
    const SmoothnessProfile& p = oracle.profile();
    RunResult res;

    Vec x = rr.x0;
    Vec y = rr.y0;
    double s_prev = 0.0;             // ||s_{t-1}||, valid from t >= 1
    double s_curr = rr.eps_prime;    // ||s_t||, with ||s_0|| = eps'
    res.reason = TerminationReason::BudgetExhausted;

    const bool want_diag = cfg.diag_cadence > 0;
    auto clock_now = [] { return std::chrono::steady_clock::now(); };

    long t = 0;
    try {
        for (t = 0; t < cfg.T; ++t) {
            const auto t_start = clock_now();
            IterateRecord rec;
            rec.t = t;
            rec.x = x;
            rec.y = y;
            rec.s_norm = s_curr;
            if (want_diag && t % cfg.diag_cadence == 0) {
                const DiagSnapshot d =
                    diag_snapshot(oracle, x, s_curr, rr.alpha, rr.beta, cfg.diag_tol, cfg.cg_tol);
                rec.phi = d.phi;
                rec.h_t = d.h_t;
                rec.grad_phi_norm = d.grad_norm;
                rec.min_eig = d.min_eig;
                rec.mu_measure = d.mu;
            }

            const long n_t =
                t == 0 ? nt_schedule(p, rr.alpha, rr.beta, rr.eps_prime, 0.0, 0.0,
                                     init_gap_estimate(oracle, x, y), rr.n_max)
                       : nt_schedule(p, rr.alpha, rr.beta, rr.eps_prime, s_prev, s_curr,
                                     std::nullopt, rr.n_max);
            rec.n_t = n_t;
            y = inner_ga(oracle, x, y, rr.eta_y, n_t);
            if (!oracle.in_box(x, y)) {
                res.records.push_back(rec);
                res.reason = TerminationReason::BoxExit;
                res.message = "inner ascent left the operating box at t=" + std::to_string(t);
                break;
            }

            const Vec g = oracle.grad_x(x, y);
            CubicStep step;
            if (oracle.dim_x() <= cfg.dense_cap) {
                const Mat H = g_dense(oracle, x, y, cfg.cg_tol, cfg.dense_cap);
                step = solve_cubic_exact(g, H, rr.eta_x, rr.cubic_tol);
            } else {
                step = solve_cubic_iterative(g, g_operator(oracle, x, y, cfg.cg_tol), rr.eta_x,
                                             p.L1 * (1.0 + p.kappa), rr.cubic_tol,
                                             cfg.cubic_max_iter,
                                             cfg.seed ^ static_cast<std::uint64_t>(t));
            }
            rec.kkt_residual = step.kkt.stationarity_residual;
            if (cfg.record_wall_time)
                rec.wall_ms = std::chrono::duration<double, std::milli>(clock_now() - t_start).count();
            res.records.push_back(rec);

            x = x + step.s;
            if (!all_finite(x)) throw NumericError("run_cubic_gda: non-finite iterate");
            if (!oracle.in_box(x, y)) {
                res.reason = TerminationReason::BoxExit;
                res.message = "cubic step left the operating box at t=" + std::to_string(t);
                break;
            }
            s_prev = s_curr;
            s_curr = step.s.norm();
            if (std::max(s_prev, s_curr) <= rr.eps_prime) {
                res.t_prime = t + 1;
                res.reason = TerminationReason::ThresholdMet;
                break;
            }
        }
    } catch (const NumericError& e) {
        res.reason = TerminationReason::NumericFailure;
        res.message = e.what();
    }

    // Final record for the output iterate.
    IterateRecord last;
    last.t = res.records.empty() ? 0 : res.records.back().t + 1;
    last.x = x;
    last.y = y;
    last.s_norm = s_curr;
    if (want_diag && res.reason != TerminationReason::NumericFailure) {
        const DiagSnapshot d =
            diag_snapshot(oracle, x, s_curr, rr.alpha, rr.beta, cfg.diag_tol, cfg.cg_tol);
        last.phi = d.phi;
        last.h_t = d.h_t;
        last.grad_phi_norm = d.grad_norm;
        last.min_eig = d.min_eig;
        last.mu_measure = d.mu;
    }
    res.records.push_back(last);
    res.x_out = x;
    res.y_out = y;
    return res;
}

RunResult run_gda_baseline(const MinimaxOracle& oracle, double step_x, double step_y, long T,
                           double stop_tol, const Vec& x0, const Vec& y0, long diag_cadence) {
    require(step_x > 0.0 && step_y > 0.0, "run_gda_baseline: steps must be positive");
    require(T >= 1, "run_gda_baseline: T must be >= 1");
    Vec x = x0.size() > 0 ? x0 : Vec::Zero(oracle.dim_x());
    Vec y = y0.size() > 0 ? y0 : Vec::Zero(oracle.dim_y());
    require(x.size() == oracle.dim_x() && y.size() == oracle.dim_y(),
            "run_gda_baseline: x0 or y0 dimension mismatch");

    RunResult res;
    res.reason = TerminationReason::BudgetExhausted;
    const double init_scale = 1.0 + x.norm() + y.norm();
    double s_norm = 0.0;
    try {
        for (long t = 0; t < T; ++t) {
            IterateRecord rec;
            rec.t = t;
            rec.x = x;
            rec.y = y;
            rec.s_norm = s_norm;
            if (diag_cadence > 0 && t % diag_cadence == 0) {
                const auto [phi, ys] = phi_eval(oracle, x, 1e-10);
                rec.phi = phi;
                rec.grad_phi_norm =
                    (oracle.has_closed_forms() ? oracle.grad_phi(x) : oracle.grad_x(x, ys)).norm();
            }
            res.records.push_back(rec);

            const Vec gx = oracle.grad_x(x, y);
            const Vec gy = oracle.grad_y(x, y);
            if (stop_tol > 0.0 && std::max(gx.norm(), gy.norm()) <= stop_tol) {
                res.t_prime = t;
                res.reason = TerminationReason::ThresholdMet;
                break;
            }
            const Vec x_next = x - step_x * gx;
            const Vec y_next = y + step_y * gy;
            if (!all_finite(x_next) || !all_finite(y_next) ||
                x_next.norm() + y_next.norm() > 1e8 * init_scale)
                throw NumericError("run_gda_baseline: divergence detected at t=" +
                                   std::to_string(t));
            s_norm = (x_next - x).norm();
            x = x_next;
            y = y_next;
            if (!oracle.in_box(x, y)) {
                res.reason = TerminationReason::BoxExit;
                res.message = "gda left the operating box at t=" + std::to_string(t);
                break;
            }
        }
    } catch (const NumericError& e) {
        res.reason = TerminationReason::NumericFailure;
        res.message = e.what();
    }
    IterateRecord last;
    last.t = res.records.empty() ? 0 : res.records.back().t + 1;
    last.x = x;
    last.y = y;
    last.s_norm = s_norm;
    res.records.push_back(last);
    res.x_out = x;
    res.y_out = y;
    return res;
}

}  // namespace cubicgda
