#pragma once

#include "cubicgda/stochastic.hpp"
#include "cubicgda/testbed.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace cubicgda {

inline constexpr const char* kVersion = "0.1.0";

/// Problem selector plus constructor parameters; see build_problem.
struct ProblemSpec {
    std::string name = "strict_saddle";  // strict_saddle | quadratic | robust_sum
    // quadratic
    Eigen::Index m = 4, n = 4;
    std::uint64_t seed = 1;
    double conditioning = 10.0;
    std::string variant = "convex";  // convex | saddle
    // robust_sum
    Eigen::Index n_samples = 1000, d = 10;
    double lambda = 0.0;  // 0 = problem default
    RobustSumOptions robust_opts;
};

std::shared_ptr<MinimaxOracle> build_problem(const ProblemSpec& spec);

struct ExperimentConfig {
    ProblemSpec problem;
    std::string algorithm = "cubic_gda";  // cubic_gda | stochastic_cubic_gda | gda_baseline
    RunConfig run;
    // stochastic extras
    double delta = 0.1;
    double sga_constant = 1.0;
    long sga_cap = 20000;
    Eigen::Index batch_cap = 0;
    // gda baseline
    double gda_step_x = 0.0;  // 0 = 1/(2 L1 (1 + kappa))
    double gda_step_y = 0.0;  // 0 = 2/(L1 + mu)
    double gda_stop_tol = 0.0;
    std::vector<double> eps_grid;
    std::string out_dir = "out";
};

/// Parse a JSON config file. Unknown keys are rejected; missing sections
/// keep their defaults. Throws UsageError on malformed input.
ExperimentConfig parse_config_file(const std::filesystem::path& path);
ExperimentConfig parse_config_json(const std::string& text);

/// 17-significant-digit representation, round-trip exact for doubles.
std::string format_g17(double v);

void write_trace_csv(const std::filesystem::path& path, const std::vector<IterateRecord>& records);
void write_convergence_svg(const std::filesystem::path& path,
                           const std::vector<IterateRecord>& records);

/// Execute one experiment: construct the problem, run the selected
/// algorithm, and write trace.csv, summary.json and convergence.svg into
/// out_dir. Returns the RunResult. NumericFailure results still flush a
/// partial trace.
RunResult run_experiment(const ExperimentConfig& cfg, std::ostream* log = nullptr);

struct ScalingRow {
    double eps = 0.0;
    double eps_prime = 0.0;
    long t_prime = -1;
    double budget_bound = 0.0;  // ceil(sqrt(33 L_Phi) (33 (Phi(x0) - Phi*) + 8 eps^2) / (3 eps^3))
    double phi0 = 0.0;
    double phi_star = 0.0;
    std::string termination;
};

/// Run the eps grid (>= 3 values), tabulate T' against the iteration-budget
/// bound, and write scaling.csv plus a log-log scaling.svg.
std::vector<ScalingRow> run_scaling_study(const ExperimentConfig& cfg, std::ostream* log = nullptr);

/// Closed-form minimum of Phi where available (strict saddle, convex
/// quadratic); UsageError otherwise.
double closed_form_phi_star(const MinimaxOracle& oracle);

}  // namespace cubicgda
