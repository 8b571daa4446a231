#include "cubicgda/experiment.hpp"

#include "cubicgda/diagnostics.hpp"

#include <json.hpp>

#include <Eigen/Eigenvalues>

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace cubicgda {

using nlohmann::json;

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::shared_ptr<MinimaxOracle> build_problem(const ProblemSpec& spec) {
    if (spec.name == "strict_saddle") return make_strict_saddle();
    if (spec.name == "quadratic") {
        QuadraticVariant v;
        if (spec.variant == "convex")
            v = QuadraticVariant::Convex;
        else if (spec.variant == "saddle")
            v = QuadraticVariant::Saddle;
        else
            throw UsageError("unknown quadratic variant: " + spec.variant);
        return make_quadratic(spec.m, spec.n, spec.seed, spec.conditioning, v);
    }
    if (spec.name == "robust_sum") {
        const double lambda = spec.lambda > 0.0 ? spec.lambda : 4.0e5;
        return make_robust_sum(spec.n_samples, spec.d, spec.seed, lambda, spec.robust_opts);
    }
    throw UsageError("unknown problem: " + spec.name);
}

double closed_form_phi_star(const MinimaxOracle& oracle) {
    if (const auto* saddle = dynamic_cast<const StrictSaddleOracle*>(&oracle)) {
        (void)saddle;
        return -0.25;
    }
    if (const auto* quad = dynamic_cast<const QuadraticOracle*>(&oracle)) {
        const Mat S = quad->hess_phi(Vec::Zero(quad->dim_x()));
        Eigen::SelfAdjointEigenSolver<Mat> es(S);
        require(es.eigenvalues()[0] > 0.0,
                "closed_form_phi_star: quadratic envelope is not convex");
        const Vec g0 = quad->grad_phi(Vec::Zero(quad->dim_x()));
        const Vec x_star = -es.eigenvectors() *
                           (es.eigenvectors().transpose() * g0).cwiseQuotient(es.eigenvalues());
        return quad->phi(x_star);
    }
    throw UsageError("closed_form_phi_star: no closed form for this problem");
}

// ---------------------------------------------------------------------------
// Config parsing

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> known,
                    const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k) ok = true;
        if (!ok) throw UsageError("config: unknown key '" + it.key() + "' in " + where);
    }
}

Vec vec_from_json(const json& j) {
    Vec v(j.size());
    Eigen::Index i = 0;
    for (const auto& x : j) v[i++] = x.get<double>();
    return v;
}

ProblemSpec parse_problem(const json& j) {
    ProblemSpec s;
    reject_unknown(j,
                   {"name", "m", "n", "seed", "conditioning", "variant", "n_samples", "d",
                    "lambda", "a_scale", "b_scale", "box_x_radius", "box_y_radius",
                    "saddle_coeff"},
                   "problem");
    if (j.contains("name")) s.name = j["name"].get<std::string>();
    if (j.contains("m")) s.m = j["m"].get<Eigen::Index>();
    if (j.contains("n")) s.n = j["n"].get<Eigen::Index>();
    if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("conditioning")) s.conditioning = j["conditioning"].get<double>();
    if (j.contains("variant")) s.variant = j["variant"].get<std::string>();
    if (j.contains("n_samples")) s.n_samples = j["n_samples"].get<Eigen::Index>();
    if (j.contains("d")) s.d = j["d"].get<Eigen::Index>();
    if (j.contains("lambda")) s.lambda = j["lambda"].get<double>();
    if (j.contains("a_scale")) s.robust_opts.a_scale = j["a_scale"].get<double>();
    if (j.contains("b_scale")) s.robust_opts.b_scale = j["b_scale"].get<double>();
    if (j.contains("box_x_radius")) s.robust_opts.box_x_radius = j["box_x_radius"].get<double>();
    if (j.contains("box_y_radius")) s.robust_opts.box_y_radius = j["box_y_radius"].get<double>();
    if (j.contains("saddle_coeff")) s.robust_opts.saddle_coeff = j["saddle_coeff"].get<double>();
    return s;
}

RunConfig parse_run(const json& j) {
    RunConfig r;
    reject_unknown(j,
                   {"eps", "eps_prime", "eta_x", "eta_y", "alpha", "beta", "T", "N_max",
                    "cubic_tol", "cg_tol", "diag_tol", "diag_cadence", "seed", "allow_override",
                    "dense_cap", "cubic_max_iter", "record_wall_time", "x0", "y0"},
                   "run");
    if (j.contains("eps")) r.eps = j["eps"].get<double>();
    if (j.contains("eps_prime")) r.eps_prime = j["eps_prime"].get<double>();
    if (j.contains("eta_x")) r.eta_x = j["eta_x"].get<double>();
    if (j.contains("eta_y")) r.eta_y = j["eta_y"].get<double>();
    if (j.contains("alpha")) r.alpha = j["alpha"].get<double>();
    if (j.contains("beta")) r.beta = j["beta"].get<double>();
    if (j.contains("T")) r.T = j["T"].get<long>();
    if (j.contains("N_max")) r.N_max = j["N_max"].get<long>();
    if (j.contains("cubic_tol")) r.cubic_tol = j["cubic_tol"].get<double>();
    if (j.contains("cg_tol")) r.cg_tol = j["cg_tol"].get<double>();
    if (j.contains("diag_tol")) r.diag_tol = j["diag_tol"].get<double>();
    if (j.contains("diag_cadence")) r.diag_cadence = j["diag_cadence"].get<long>();
    if (j.contains("seed")) r.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("allow_override")) r.allow_override = j["allow_override"].get<bool>();
    if (j.contains("dense_cap")) r.dense_cap = j["dense_cap"].get<Eigen::Index>();
    if (j.contains("cubic_max_iter")) r.cubic_max_iter = j["cubic_max_iter"].get<long>();
    if (j.contains("record_wall_time")) r.record_wall_time = j["record_wall_time"].get<bool>();
    if (j.contains("x0")) r.x0 = vec_from_json(j["x0"]);
    if (j.contains("y0")) r.y0 = vec_from_json(j["y0"]);
    return r;
}

json problem_to_json(const ProblemSpec& s) {
    json j{{"name", s.name}};
    if (s.name == "quadratic") {
        j["m"] = s.m;
        j["n"] = s.n;
        j["seed"] = s.seed;
        j["conditioning"] = s.conditioning;
        j["variant"] = s.variant;
    } else if (s.name == "robust_sum") {
        j["n_samples"] = s.n_samples;
        j["d"] = s.d;
        j["seed"] = s.seed;
        j["lambda"] = s.lambda;
        j["a_scale"] = s.robust_opts.a_scale;
        j["b_scale"] = s.robust_opts.b_scale;
        j["box_x_radius"] = s.robust_opts.box_x_radius;
        j["box_y_radius"] = s.robust_opts.box_y_radius;
        j["saddle_coeff"] = s.robust_opts.saddle_coeff;
    }
    return j;
}

json run_to_json(const RunConfig& r) {
    json j;
    j["eps"] = r.eps;
    j["eps_prime"] = r.eps_prime;
    j["eta_x"] = r.eta_x;
    j["eta_y"] = r.eta_y;
    j["alpha"] = r.alpha;
    j["beta"] = r.beta;
    j["T"] = r.T;
    j["N_max"] = r.N_max;
    j["cubic_tol"] = r.cubic_tol;
    j["cg_tol"] = r.cg_tol;
    j["diag_tol"] = r.diag_tol;
    j["diag_cadence"] = r.diag_cadence;
    j["seed"] = r.seed;
    j["allow_override"] = r.allow_override;
    j["dense_cap"] = r.dense_cap;
    j["cubic_max_iter"] = r.cubic_max_iter;
    j["record_wall_time"] = r.record_wall_time;
    if (r.x0.size() > 0) j["x0"] = std::vector<double>(r.x0.begin(), r.x0.end());
    if (r.y0.size() > 0) j["y0"] = std::vector<double>(r.y0.begin(), r.y0.end());
    return j;
}

}  // namespace

ExperimentConfig parse_config_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw UsageError(std::string("config: JSON parse error: ") + e.what());
    }
    ExperimentConfig cfg;
    try {
        reject_unknown(j,
                       {"problem", "algorithm", "run", "stochastic", "gda", "eps_grid", "out_dir"},
                       "top level");
        if (j.contains("problem")) cfg.problem = parse_problem(j["problem"]);
        if (j.contains("algorithm")) cfg.algorithm = j["algorithm"].get<std::string>();
        if (j.contains("run")) cfg.run = parse_run(j["run"]);
        if (j.contains("stochastic")) {
            const json& s = j["stochastic"];
            reject_unknown(s, {"delta", "sga_constant", "sga_cap", "batch_cap"}, "stochastic");
            if (s.contains("delta")) cfg.delta = s["delta"].get<double>();
            if (s.contains("sga_constant")) cfg.sga_constant = s["sga_constant"].get<double>();
            if (s.contains("sga_cap")) cfg.sga_cap = s["sga_cap"].get<long>();
            if (s.contains("batch_cap")) cfg.batch_cap = s["batch_cap"].get<Eigen::Index>();
        }
        if (j.contains("gda")) {
            const json& g = j["gda"];
            reject_unknown(g, {"step_x", "step_y", "stop_tol"}, "gda");
            if (g.contains("step_x")) cfg.gda_step_x = g["step_x"].get<double>();
            if (g.contains("step_y")) cfg.gda_step_y = g["step_y"].get<double>();
            if (g.contains("stop_tol")) cfg.gda_stop_tol = g["stop_tol"].get<double>();
        }
        if (j.contains("eps_grid"))
            for (const auto& e : j["eps_grid"]) cfg.eps_grid.push_back(e.get<double>());
        if (j.contains("out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();
    } catch (const json::exception& e) {
        throw UsageError(std::string("config: invalid value: ") + e.what());
    }
    if (cfg.algorithm != "cubic_gda" && cfg.algorithm != "stochastic_cubic_gda" &&
        cfg.algorithm != "gda_baseline")
        throw UsageError("config: unknown algorithm '" + cfg.algorithm + "'");
    return cfg;
}

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("config: cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_json(ss.str());
}

// ---------------------------------------------------------------------------
// Artifacts

namespace {

std::string csv_field_double(double v) {
    return std::isnan(v) ? std::string() : format_g17(v);
}
std::string csv_field_count(long v) { return v < 0 ? std::string() : std::to_string(v); }

}  // namespace

void write_trace_csv(const std::filesystem::path& path,
                     const std::vector<IterateRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot open " + path.string() + " for writing");
    out << "t,s_norm,N_t,H_t,phi,grad_phi_norm,min_eig,mu_measure,"
           "b1,b11,b12,b21,b22,kkt_residual,wall_ms\n";
    for (const IterateRecord& r : records) {
        out << r.t << ',' << format_g17(r.s_norm) << ',' << csv_field_count(r.n_t) << ','
            << csv_field_double(r.h_t) << ',' << csv_field_double(r.phi) << ','
            << csv_field_double(r.grad_phi_norm) << ',' << csv_field_double(r.min_eig) << ','
            << csv_field_double(r.mu_measure) << ',' << csv_field_count(r.b1) << ','
            << csv_field_count(r.b11) << ',' << csv_field_count(r.b12) << ','
            << csv_field_count(r.b21) << ',' << csv_field_count(r.b22) << ','
            << csv_field_double(r.kkt_residual) << ',' << csv_field_double(r.wall_ms) << '\n';
    }
}

namespace {

struct Series {
    std::string label;
    std::string color;
    std::vector<std::pair<double, double>> points;  // (t, value), value > 0
};

// Minimal self-contained SVG: log-y polylines over iteration count.
void write_log_svg(const std::filesystem::path& path, const std::string& title,
                   const std::vector<Series>& series, bool log_x) {
    const double W = 760, H = 480, ml = 70, mr = 160, mt = 40, mb = 50;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (auto [t, v] : s.points) {
            const double xv = log_x ? std::log10(t) : t;
            xmin = std::min(xmin, xv);
            xmax = std::max(xmax, xv);
            ymin = std::min(ymin, std::log10(v));
            ymax = std::max(ymax, std::log10(v));
        }
    if (xmin > xmax) {
        xmin = 0;
        xmax = 1;
        ymin = 0;
        ymax = 1;
    }
    if (xmax - xmin < 1e-12) xmax = xmin + 1;
    if (ymax - ymin < 1e-12) ymax = ymin + 1;
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot open " + path.string() + " for writing");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\""
        << " font-size=\"15\">" << title << "</text>\n";
    // axes
    out << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
        << H - mb << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
        << "\" stroke=\"black\"/>\n";
    for (int k = static_cast<int>(std::ceil(ymin)); k <= static_cast<int>(std::floor(ymax)); ++k) {
        out << "<line x1=\"" << ml - 4 << "\" y1=\"" << py(k) << "\" x2=\"" << W - mr
            << "\" y2=\"" << py(k) << "\" stroke=\"#dddddd\"/>\n"
            << "<text x=\"" << ml - 8 << "\" y=\"" << py(k) + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1e" << k
            << "</text>\n";
    }
    const int xticks = 6;
    for (int k = 0; k <= xticks; ++k) {
        const double xv = xmin + (xmax - xmin) * k / xticks;
        const double shown = log_x ? std::pow(10.0, xv) : xv;
        char lab[32];
        std::snprintf(lab, sizeof(lab), log_x ? "%.3g" : "%.0f", shown);
        out << "<text x=\"" << px(xv) << "\" y=\"" << H - mb + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << lab
            << "</text>\n";
    }
    double legend_y = mt + 10;
    for (const auto& s : series) {
        if (s.points.empty()) continue;
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
        for (auto [t, v] : s.points)
            out << px(log_x ? std::log10(t) : t) << ',' << py(std::log10(v)) << ' ';
        out << "\"/>\n";
        out << "<line x1=\"" << W - mr + 10 << "\" y1=\"" << legend_y << "\" x2=\"" << W - mr + 34
            << "\" y2=\"" << legend_y << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << W - mr + 40 << "\" y=\"" << legend_y + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label << "</text>\n";
        legend_y += 20;
    }
    out << "</svg>\n";
}

}  // namespace

void write_convergence_svg(const std::filesystem::path& path,
                           const std::vector<IterateRecord>& records) {
    double h_final = std::numeric_limits<double>::quiet_NaN();
    for (auto it = records.rbegin(); it != records.rend(); ++it)
        if (!std::isnan(it->h_t)) {
            h_final = it->h_t;
            break;
        }
    Series sh{"H_t - H_final", "#1f77b4", {}};
    Series ss{"||s_t||", "#d62728", {}};
    Series sm{"mu(x_t)", "#2ca02c", {}};
    for (const IterateRecord& r : records) {
        const double t = static_cast<double>(r.t);
        if (!std::isnan(r.h_t) && r.h_t - h_final > 0.0) sh.points.push_back({t, r.h_t - h_final});
        if (r.s_norm > 0.0) ss.points.push_back({t, r.s_norm});
        if (!std::isnan(r.mu_measure) && r.mu_measure > 0.0)
            sm.points.push_back({t, r.mu_measure});
    }
    write_log_svg(path, "convergence", {sh, ss, sm}, /*log_x=*/false);
}

namespace {

json summary_json(const ExperimentConfig& cfg, const RunResult& res,
                  const MinimaxOracle& oracle) {
    json j;
    j["code_version"] = kVersion;
    j["algorithm"] = cfg.algorithm;
    j["termination_reason"] = to_string(res.reason);
    if (!res.message.empty()) j["message"] = res.message;
    if (res.t_prime >= 0)
        j["T_prime"] = res.t_prime;
    else
        j["T_prime"] = nullptr;
    j["iterations_recorded"] = res.records.size();
    j["x_out"] = std::vector<double>(res.x_out.begin(), res.x_out.end());
    if (res.y_out.size() <= 64)
        j["y_out"] = std::vector<double>(res.y_out.begin(), res.y_out.end());
    if (cfg.algorithm == "stochastic_cubic_gda") {
        j["effectively_deterministic"] = res.effectively_deterministic;
        j["confidence_note"] =
            "delta is applied per iteration; run-level confidence is weaker by a union bound";
    }

    if (res.reason != TerminationReason::NumericFailure) {
        const StationarityReport sr = stationarity(oracle, res.x_out, cfg.run.diag_tol);
        j["final"] = {{"grad_phi_norm", sr.grad_phi_norm},
                      {"min_eig", sr.min_eig},
                      {"mu_measure", sr.mu_measure}};
    }

    const SmoothnessProfile& p = oracle.profile();
    j["profile"] = {{"L0", p.L0},   {"L1", p.L1},     {"L2", p.L2},      {"mu", p.mu},
                    {"kappa", p.kappa}, {"L_G", p.L_G}, {"L_Phi", p.L_Phi}};
    j["config"] = {{"problem", problem_to_json(cfg.problem)},
                   {"algorithm", cfg.algorithm},
                   {"run", run_to_json(cfg.run)},
                   {"stochastic",
                    {{"delta", cfg.delta},
                     {"sga_constant", cfg.sga_constant},
                     {"sga_cap", cfg.sga_cap},
                     {"batch_cap", cfg.batch_cap}}},
                   {"gda",
                    {{"step_x", cfg.gda_step_x},
                     {"step_y", cfg.gda_step_y},
                     {"stop_tol", cfg.gda_stop_tol}}},
                   {"out_dir", cfg.out_dir}};
    return j;
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg, std::ostream* log) {
    const auto oracle = build_problem(cfg.problem);
    std::filesystem::create_directories(cfg.out_dir);
    const std::filesystem::path dir(cfg.out_dir);

    RunResult res;
    if (cfg.algorithm == "cubic_gda") {
        res = run_cubic_gda(*oracle, cfg.run);
    } else if (cfg.algorithm == "stochastic_cubic_gda") {
        StochConfig sc;
        sc.base = cfg.run;
        sc.delta = cfg.delta;
        sc.sga_constant = cfg.sga_constant;
        sc.sga_cap = cfg.sga_cap;
        sc.batch_cap = cfg.batch_cap;
        res = run_stochastic_cubic_gda(*oracle, sc);
    } else if (cfg.algorithm == "gda_baseline") {
        const SmoothnessProfile& p = oracle->profile();
        const double sx =
            cfg.gda_step_x > 0.0 ? cfg.gda_step_x : 1.0 / (2.0 * p.L1 * (1.0 + p.kappa));
        const double sy = cfg.gda_step_y > 0.0 ? cfg.gda_step_y : 2.0 / (p.L1 + p.mu);
        res = run_gda_baseline(*oracle, sx, sy, cfg.run.T, cfg.gda_stop_tol, cfg.run.x0,
                               cfg.run.y0, cfg.run.diag_cadence);
    } else {
        throw UsageError("unknown algorithm '" + cfg.algorithm + "'");
    }

    write_trace_csv(dir / "trace.csv", res.records);
    write_convergence_svg(dir / "convergence.svg", res.records);
    {
        std::ofstream out(dir / "summary.json", std::ios::binary);
        if (!out) throw UsageError("cannot open summary.json for writing");
        out << summary_json(cfg, res, *oracle).dump(2) << '\n';
    }
    if (log)
        *log << "termination: " << to_string(res.reason) << ", T' = "
             << (res.t_prime >= 0 ? std::to_string(res.t_prime) : std::string("-"))
             << ", records: " << res.records.size() << '\n';
    return res;
}

std::vector<ScalingRow> run_scaling_study(const ExperimentConfig& cfg, std::ostream* log) {
    require(cfg.eps_grid.size() >= 3, "scaling study: eps grid needs at least 3 values");
    const auto oracle = build_problem(cfg.problem);
    const SmoothnessProfile& p = oracle->profile();
    const double phi_star = closed_form_phi_star(*oracle);
    std::filesystem::create_directories(cfg.out_dir);
    const std::filesystem::path dir(cfg.out_dir);

    const Vec x0 = cfg.run.x0.size() > 0 ? cfg.run.x0 : Vec::Zero(oracle->dim_x());
    const double phi0 = phi_eval(*oracle, x0, cfg.run.diag_tol).first;

    std::vector<ScalingRow> rows;
    for (double eps : cfg.eps_grid) {
        ExperimentConfig one = cfg;
        one.run.eps = eps;
        one.run.eps_prime = 0.0;  // re-derive from eps
        RunResult res;
        if (cfg.algorithm == "stochastic_cubic_gda") {
            StochConfig sc;
            sc.base = one.run;
            sc.delta = cfg.delta;
            sc.sga_constant = cfg.sga_constant;
            sc.sga_cap = cfg.sga_cap;
            sc.batch_cap = cfg.batch_cap;
            res = run_stochastic_cubic_gda(*oracle, sc);
        } else {
            res = run_cubic_gda(*oracle, one.run);
        }
        ScalingRow row;
        row.eps = eps;
        row.eps_prime = eps / std::sqrt(33.0 * p.L_Phi);
        row.t_prime = res.t_prime;
        row.budget_bound = std::ceil(std::sqrt(33.0 * p.L_Phi) *
                                     (33.0 * (phi0 - phi_star) + 8.0 * eps * eps) /
                                     (3.0 * eps * eps * eps));
        row.phi0 = phi0;
        row.phi_star = phi_star;
        row.termination = to_string(res.reason);
        rows.push_back(row);
        if (log)
            *log << "eps " << eps << ": T' = " << row.t_prime << ", bound "
                 << row.budget_bound << ", " << row.termination << '\n';
    }

    {
        std::ofstream out(dir / "scaling.csv", std::ios::binary);
        if (!out) throw UsageError("cannot open scaling.csv for writing");
        out << "eps,eps_prime,T_prime,budget_bound,phi0,phi_star,termination\n";
        for (const ScalingRow& r : rows)
            out << format_g17(r.eps) << ',' << format_g17(r.eps_prime) << ',' << r.t_prime << ','
                << format_g17(r.budget_bound) << ',' << format_g17(r.phi0) << ','
                << format_g17(r.phi_star) << ',' << r.termination << '\n';
    }
    Series actual{"T' (measured)", "#1f77b4", {}};
    Series bound{"budget bound", "#d62728", {}};
    for (const ScalingRow& r : rows) {
        if (r.t_prime > 0) actual.points.push_back({r.eps, static_cast<double>(r.t_prime)});
        bound.points.push_back({r.eps, r.budget_bound});
    }
    write_log_svg(dir / "scaling.svg", "cubic iterations vs eps", {actual, bound},
                  /*log_x=*/true);
    return rows;
}

}  // namespace cubicgda
