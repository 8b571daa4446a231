#include "cubicgda/stochastic.hpp"

#include "cubicgda/diagnostics.hpp"

#include <chrono>

namespace cubicgda {

Vec inner_sga(const MinimaxOracle& oracle, const Vec& x, const Vec& y0, double mu, long N,
              KeyedRng& stream) {
    require(N >= 2, "inner_sga: N must be >= 2 (weighted average needs N(N-1) > 0)");
    require(oracle.is_finite_sum(), "inner_sga: finite-sum oracle required");
    const Eigen::Index n_samples = oracle.num_samples();
    const double weight_scale = 2.0 / (static_cast<double>(N) * static_cast<double>(N - 1));

    Vec y = y0;
    Vec avg = Vec::Zero(y0.size());  // k = 0 term has weight 0
    for (long k = 0; k < N; ++k) {
        if (k > 0) avg += (weight_scale * static_cast<double>(k)) * y;
        const Eigen::Index xi = stream.next_below(n_samples);
        const Vec g = oracle.grad_y_sample(xi, x, y);
        if (!g.allFinite()) throw NumericError("inner_sga: non-finite sample gradient");
        y += (2.0 / (mu * static_cast<double>(k + 1))) * g;
    }
    return avg;
}

std::pair<double, double> adaptive_inexactness(const SmoothnessProfile& p, double s_t_norm,
                                               double eps) {
    require(s_t_norm >= 0.0, "adaptive_inexactness: s_t_norm must be nonnegative");
    const double s2 = s_t_norm * s_t_norm;
    const double eps1 =
        std::min(0.5 * p.L_Phi * (s2 + eps * eps / (33.0 * p.L_Phi)), 2.0 * p.L0);
    const double k1 = p.kappa + 1.0;
    const double eps2 = std::min(
        p.L_Phi / (2.0 * k1 * k1) * (s_t_norm + eps / std::sqrt(33.0 * p.L_Phi)), 4.0 * p.L1);
    return {eps1, eps2};
}

BatchSizes batch_sizes(const SmoothnessProfile& p, double eps1, double eps2, double delta,
                       Eigen::Index m, Eigen::Index n, Eigen::Index N, Eigen::Index batch_cap) {
    require(eps1 > 0.0 && eps2 > 0.0, "batch_sizes: eps1 and eps2 must be positive");
    require(delta > 0.0 && delta < 1.0, "batch_sizes: delta must be in (0, 1)");
    const Eigen::Index cap = batch_cap > 0 ? std::min(batch_cap, N) : N;

    auto ceil_capped = [cap](double v) -> std::pair<Eigen::Index, bool> {
        if (!(v < static_cast<double>(cap)))  // catches overflow and NaN
            return {cap, true};
        return {std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::ceil(v))), false};
    };

    const double md = static_cast<double>(m);
    const double mn = static_cast<double>(std::max(m, n));
    const double v1 = 32.0 * p.L0 * p.L0 * (std::log(10.0 * md / delta) + 0.25) / (eps1 * eps1);
    const double vj = 16.0 * p.L1 * p.L1 * std::log(10.0 * mn / delta) / (eps2 * eps2);

    BatchSizes bs;
    std::tie(bs.b1, bs.b1_exact) = ceil_capped(v1);
    const auto [bj, bj_exact] = ceil_capped(vj);
    bs.b11 = bs.b12 = bs.b21 = bs.b22 = bj;
    bs.bj_exact = bj_exact;
    // The "exact" flags as sampled depend on N, not the extra cap.
    if (cap < N) bs.b1_exact = bs.bj_exact = false;
    return bs;
}

long sga_count(const SmoothnessProfile& p, double s_t_norm, double eps, double delta,
               double sga_constant, long cap) {
    require(s_t_norm >= 0.0 && eps >= 0.0, "sga_count: inputs must be nonnegative");
    require(delta > 0.0 && delta < 1.0, "sga_count: delta must be in (0, 1)");
    require(cap >= 2, "sga_count: cap must be >= 2");
    const double s2 = s_t_norm * s_t_norm;
    const double e2 = eps * eps;
    const double denom = std::min(
        (p.L_Phi * p.L_Phi * s2 * s2 + e2 * e2) / (p.kappa * p.kappa),
        p.L1 * p.L1 * (s2 + e2 / p.L_Phi));
    const double numer = sga_constant * (p.L0 * std::log(1.0 / delta) + p.L0 * p.L0);
    if (denom <= 0.0 || !(numer / denom < static_cast<double>(cap))) return numer > 0.0 ? cap : 2;
    return std::max<long>(2, static_cast<long>(std::ceil(numer / denom)));
}

RunResult run_stochastic_cubic_gda(const MinimaxOracle& oracle, const StochConfig& cfg) {
    require(oracle.is_finite_sum(), "run_stochastic_cubic_gda: finite-sum oracle required");
    require(cfg.delta > 0.0 && cfg.delta < 1.0, "stoch config: delta must be in (0, 1)");
    const ResolvedRun rr = resolve_run_config(cfg.base, oracle);
    const SmoothnessProfile& p = oracle.profile();
    if (!cfg.base.allow_override) {
        require(cfg.base.eps <= p.L1 * std::sqrt(33.0 * p.L_Phi) / p.L_G * (1.0 + 1e-12),
                "stoch config: eps exceeds L1 sqrt(33 L_Phi) / L_G; "
                "set allow_override to run anyway");
    }

    const Eigen::Index N = oracle.num_samples();
    const Eigen::Index m = oracle.dim_x();
    const Eigen::Index n = oracle.dim_y();
    RunResult res;
    res.reason = TerminationReason::BudgetExhausted;
    res.effectively_deterministic = true;

    Vec x = rr.x0;
    Vec y = rr.y0;
    double s_prev = 0.0;
    double s_curr = rr.eps_prime;  // ||s_0|| = eps'
    const bool want_diag = cfg.base.diag_cadence > 0;
    auto clock_now = [] { return std::chrono::steady_clock::now(); };

    try {
        for (long t = 0; t < cfg.base.T; ++t) {
            const auto t_start = clock_now();
            IterateRecord rec;
            rec.t = t;
            rec.x = x;
            rec.y = y;
            rec.s_norm = s_curr;
            if (want_diag && t % cfg.base.diag_cadence == 0) {
                const StationarityReport sr =
                    stationarity(oracle, x, cfg.base.diag_tol, cfg.base.cg_tol);
                const auto [phi, ys] = phi_eval(oracle, x, cfg.base.diag_tol);
                rec.phi = phi;
                rec.h_t = phi + (p.L_Phi + 2.0 * rr.alpha + 3.0 * rr.beta) * s_curr * s_curr * s_curr;
                rec.grad_phi_norm = sr.grad_phi_norm;
                rec.min_eig = sr.min_eig;
                rec.mu_measure = sr.mu_measure;
            }

            // Inexactness targets and batch sizes from the previous increment.
            const auto [eps1, eps2] = adaptive_inexactness(p, s_curr, cfg.base.eps);
            const BatchSizes sizes =
                batch_sizes(p, eps1, eps2, cfg.delta, m, n, N, cfg.batch_cap);
            rec.b1 = sizes.b1;
            rec.b11 = sizes.b11;
            rec.b12 = sizes.b12;
            rec.b21 = sizes.b21;
            rec.b22 = sizes.b22;
            const BatchSet batches = sample_batch_set(
                N, {sizes.b1, sizes.b11, sizes.b12, sizes.b21, sizes.b22}, cfg.base.seed,
                static_cast<std::uint64_t>(t));
            if (!batches.all_exact()) res.effectively_deterministic = false;

            const long n_t =
                sga_count(p, s_curr, cfg.base.eps, cfg.delta, cfg.sga_constant, cfg.sga_cap);
            rec.n_t = n_t;
            KeyedRng sga_stream =
                KeyedRng::from(cfg.base.seed, {0x5a9aULL, static_cast<std::uint64_t>(t)});
            y = inner_sga(oracle, x, y, p.mu, n_t, sga_stream);
            if (!oracle.in_box(x, y)) {
                res.records.push_back(rec);
                res.reason = TerminationReason::BoxExit;
                res.message = "inner SGA left the operating box at t=" + std::to_string(t);
                break;
            }

            const Vec g = stoch_grad_x(oracle, x, y, batches.b1);
            CubicStep step;
            if (m <= cfg.base.dense_cap) {
                const Mat H = assemble_dense(
                    stoch_g_operator(oracle, x, y, batches, cfg.base.cg_tol), cfg.base.dense_cap);
                step = solve_cubic_exact(g, H, rr.eta_x, rr.cubic_tol);
            } else {
                step = solve_cubic_iterative(
                    g, stoch_g_operator(oracle, x, y, batches, cfg.base.cg_tol), rr.eta_x,
                    p.L1 * (1.0 + p.kappa), rr.cubic_tol, cfg.base.cubic_max_iter,
                    cfg.base.seed ^ static_cast<std::uint64_t>(t));
            }
            rec.kkt_residual = step.kkt.stationarity_residual;
            if (cfg.base.record_wall_time)
                rec.wall_ms =
                    std::chrono::duration<double, std::milli>(clock_now() - t_start).count();
            res.records.push_back(rec);

            x = x + step.s;
            if (!all_finite(x)) throw NumericError("run_stochastic_cubic_gda: non-finite iterate");
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

    IterateRecord last;
    last.t = res.records.empty() ? 0 : res.records.back().t + 1;
    last.x = x;
    last.y = y;
    last.s_norm = s_curr;
    if (want_diag && res.reason != TerminationReason::NumericFailure) {
        const StationarityReport sr = stationarity(oracle, x, cfg.base.diag_tol, cfg.base.cg_tol);
        const auto [phi, ys] = phi_eval(oracle, x, cfg.base.diag_tol);
        last.phi = phi;
        last.h_t = phi + (p.L_Phi + 2.0 * rr.alpha + 3.0 * rr.beta) * s_curr * s_curr * s_curr;
        last.grad_phi_norm = sr.grad_phi_norm;
        last.min_eig = sr.min_eig;
        last.mu_measure = sr.mu_measure;
    }
    res.records.push_back(last);
    res.x_out = x;
    res.y_out = y;
    return res;
}

}  // namespace cubicgda
