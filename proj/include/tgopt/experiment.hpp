#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "tgopt/model_problems.hpp"
#include "tgopt/report.hpp"
#include "tgopt/smoothers.hpp"

namespace tgopt::cli {

enum class Mode { Analyze, Optimize, Compare, Verify, Solve };

struct VerifyOptions {
    int instances = 20;
    Index min_size = 4;
    Index max_size = 40;
};

struct SolveOptions {
    double tol = 1e-10;
    int max_iter = 1000;
};

struct ExperimentConfig {
    Mode mode = Mode::Analyze;
    problems::ProblemSpec problem;
    smoothers::SmootherSpec smoother;
    Index coarse_rank = 1;
    std::string interpolation = "optimal_tg";  // analyze / solve
    std::vector<std::string> candidates;       // compare
    VerifyOptions verify;
    SolveOptions solve;
    double tolerance = 1e-8;
    std::uint64_t seed = 1;
    std::string output_path;
    std::string format = "json";
};

Mode parse_mode(const std::string& name);
const char* mode_name(Mode mode);

/// Parses a single-experiment JSON document; throws ConfigError naming the
/// offending field.
ExperimentConfig parse_config(const nlohmann::json& doc);

/// Loads a config file. A non-empty mode_override (the CLI subcommand)
/// replaces the document's "mode" field, which may then be omitted.
ExperimentConfig load_config(const std::string& path,
                             const std::string& mode_override = "");

/// Resolves an interpolation source name ("optimal_tg", "optimal_stg",
/// "optimal_nonsym", "geometric", or "file:<path>") to an n x r matrix.
Matrix resolve_interpolation(const std::string& name, const Matrix& a,
                             const smoothers::SmootherOperator& m, Index r);

/// Runs the configured experiment and writes the report to the configured
/// output path, if any.
Report run_experiment(const ExperimentConfig& config);

/// Exit status for scripting: 0 when every check passed, 1 otherwise.
int report_exit_code(const Report& report);

} // namespace tgopt::cli
