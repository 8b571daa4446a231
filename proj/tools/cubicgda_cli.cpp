// Command-line front end: run experiments, scaling studies, and the
// acceptance suite. Exit codes: 0 success, 1 numeric failure, 2 usage error.

#include "cubicgda/experiment.hpp"
#include "cubicgda/verify.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    std::string problem;
    std::string algo;
    double eps = 0.0;
    long long seed = -1;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "JSON experiment config");
    cmd->add_option("--out", f.out_dir, "output directory");
    cmd->add_option("--problem", f.problem, "problem name (strict_saddle | quadratic | robust_sum)");
    cmd->add_option("--algo", f.algo,
                    "algorithm (cubic_gda | stochastic_cubic_gda | gda_baseline)");
    cmd->add_option("--eps", f.eps, "target accuracy eps");
    cmd->add_option("--seed", f.seed, "seed override");
}

cubicgda::ExperimentConfig load_config(const CommonFlags& f) {
    cubicgda::ExperimentConfig cfg;
    if (!f.config_path.empty()) cfg = cubicgda::parse_config_file(f.config_path);
    if (!f.problem.empty()) cfg.problem.name = f.problem;
    if (!f.algo.empty()) cfg.algorithm = f.algo;
    if (f.eps > 0.0) cfg.run.eps = f.eps;
    if (f.seed >= 0) cfg.run.seed = static_cast<std::uint64_t>(f.seed);
    if (!f.out_dir.empty()) cfg.out_dir = f.out_dir;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cubic-regularized descent-ascent benchmark harness"};
    app.require_subcommand(1);

    CommonFlags run_flags, scale_flags;
    CLI::App* run_cmd = app.add_subcommand("run", "run one experiment, write trace/summary/plot");
    add_common(run_cmd, run_flags);
    CLI::App* scale_cmd =
        app.add_subcommand("scale", "run an eps grid and tabulate T' against the budget bound");
    add_common(scale_cmd, scale_flags);
    app.add_subcommand("verify", "run the acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run_cmd->parsed()) {
            const auto cfg = load_config(run_flags);
            const auto res = cubicgda::run_experiment(cfg, &std::cout);
            return res.reason == cubicgda::TerminationReason::NumericFailure ? 1 : 0;
        }
        if (scale_cmd->parsed()) {
            const auto cfg = load_config(scale_flags);
            cubicgda::run_scaling_study(cfg, &std::cout);
            return 0;
        }
        const auto results = cubicgda::verify::run_acceptance(std::cout);
        return cubicgda::verify::all_passed(results) ? 0 : 1;
    } catch (const cubicgda::UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const cubicgda::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
