#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tgopt/experiment.hpp"

namespace {

// Exit codes: 0 all checks passed, 1 check failure, 2 configuration error,
// 3 numerical hypothesis violation.
constexpr int kExitConfigError = 2;
constexpr int kExitHypothesisError = 3;

void print_summary(const tgopt::cli::Report& report) {
    for (const auto& check : report.checks)
        std::cout << (check.passed ? "[PASS] " : "[FAIL] ") << check.name
                  << "  residual=" << check.residual << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-grid optimal interpolation laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string format;
    std::uint64_t seed = 0;
    bool seed_given = false;
    double tol = 0.0;
    bool tol_given = false;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "Experiment config (JSON)")->required();
        sub->add_option("--out", out_path, "Report output path (overrides config)");
        sub->add_option("--format", format, "Report format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--seed", seed, "Seed override")->each([&](const std::string&) {
            seed_given = true;
        });
        sub->add_option("--tol", tol, "Tolerance override")->each([&](const std::string&) {
            tol_given = true;
        });
    };

    for (const char* name : {"analyze", "optimize", "compare", "verify", "solve"})
        add_common(app.add_subcommand(name));

    CLI11_PARSE(app, argc, argv);

    try {
        auto config = tgopt::cli::load_config(config_path,
                                              app.get_subcommands().front()->get_name());
        if (!out_path.empty())
            config.output_path = out_path;
        if (!format.empty())
            config.format = format;
        if (seed_given)
            config.seed = seed;
        if (tol_given) {
            if (!(tol > 0.0)) {
                std::cerr << "error: --tol must be positive\n";
                return kExitConfigError;
            }
            config.tolerance = tol;
        }

        const auto report = tgopt::cli::run_experiment(config);
        if (config.output_path.empty())
            std::cout << report.to_json().dump(2) << "\n";
        else
            print_summary(report);
        return tgopt::cli::report_exit_code(report);
    } catch (const tgopt::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const tgopt::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const tgopt::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const tgopt::Error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitHypothesisError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
}
