#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "tgopt/experiment.hpp"
#include "tgopt/matrix_market.hpp"

using namespace tgopt;
using namespace tgtest;
using nlohmann::json;

namespace {

json base_config() {
    return json{{"mode", "analyze"},
                {"problem", {{"kind", "laplacian_1d"}, {"n", 3}}},
                {"smoother", {{"kind", "weighted_jacobi"}, {"omega", 0.5}}},
                {"coarse_rank", 1},
                {"interpolation", "optimal_tg"},
                {"seed", 7}};
}

} // namespace

TEST_CASE("config parsing and field errors") {
    const auto config = cli::parse_config(base_config());
    CHECK(config.mode == cli::Mode::Analyze);
    CHECK(config.problem.n == 3);
    CHECK(config.smoother.omega == 0.5);
    CHECK(config.coarse_rank == 1);

    auto missing = base_config();
    missing.erase("problem");
    try {
        cli::parse_config(missing);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("problem") != std::string::npos);
    }

    auto bad_kind = base_config();
    bad_kind["problem"]["kind"] = "banded";
    CHECK_THROWS_AS(cli::parse_config(bad_kind), ConfigError);

    auto bad_mode = base_config();
    bad_mode["mode"] = "explore";
    CHECK_THROWS_AS(cli::parse_config(bad_mode), ConfigError);
}

TEST_CASE("coarse_rank out of range is a config error naming the field") {
    auto doc = base_config();
    doc["coarse_rank"] = 3;  // equals n
    const auto config = cli::parse_config(doc);
    try {
        cli::run_experiment(config);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("coarse_rank") != std::string::npos);
    }
}

TEST_CASE("analyze mode reproduces the model-problem objectives") {
    const auto config = cli::parse_config(base_config());
    const auto report = cli::run_experiment(config);

    CHECK(report.objectives.at("rho_e_tg") == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(report.objectives.at("kappa_b_tg_a") ==
          doctest::Approx(1.7071067811865475).epsilon(1e-8));
    CHECK(report.objectives.at("a_norm_e_stg") == doctest::Approx(0.25).epsilon(1e-8));
    CHECK(report.objectives.at("k_vc") == doctest::Approx(4.0 / 3.0).epsilon(1e-8));
    CHECK(report.all_passed());

    // Every reported value is finite.
    for (const auto& [name, value] : report.objectives)
        CHECK(std::isfinite(value));
}

TEST_CASE("reports are deterministic up to wall time") {
    const auto config = cli::parse_config(base_config());
    auto first = cli::run_experiment(config).to_json();
    auto second = cli::run_experiment(config).to_json();
    first["wall_time_seconds"] = 0.0;
    second["wall_time_seconds"] = 0.0;
    CHECK(first.dump() == second.dump());
}

TEST_CASE("optimize mode checks prediction against measurement") {
    auto doc = base_config();
    doc["mode"] = "optimize";
    const auto report = cli::run_experiment(cli::parse_config(doc));
    CHECK(report.all_passed());
    CHECK(report.objectives.at("stg_a_norm_predicted") == doctest::Approx(0.25).epsilon(1e-8));
    CHECK(report.objectives.at("tg_rho_predicted") == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(report.objectives.at("tg_kappa_predicted") ==
          doctest::Approx(1.7071067811865475).epsilon(1e-8));
    CHECK(report.objectives.at("nonsym_bound") == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("compare mode ranks the optimal candidate first in its column") {
    json doc{{"mode", "compare"},
             {"problem", {{"kind", "laplacian_1d"}, {"n", 7}}},
             {"smoother", {{"kind", "weighted_jacobi"}, {"omega", 0.5}}},
             {"coarse_rank", 3},
             {"candidates", {"optimal_tg", "optimal_stg", "geometric"}}};
    const auto report = cli::run_experiment(cli::parse_config(doc));
    CHECK(report.rows.size() == 3);
    CHECK(report.all_passed());

    double optimal_rho = 0.0, geometric_rho = 0.0;
    for (const auto& row : report.rows) {
        if (row.name == "optimal_tg")
            optimal_rho = row.values.at("rho_e_tg");
        if (row.name == "geometric")
            geometric_rho = row.values.at("rho_e_tg");
    }
    CHECK(optimal_rho <= geometric_rho + 1e-12);

    json empty = doc;
    empty["candidates"] = json::array();
    CHECK_THROWS_AS(cli::run_experiment(cli::parse_config(empty)), ConfigError);
}

TEST_CASE("verify mode passes on seeded random instances") {
    json doc{{"mode", "verify"},
             {"verify", {{"instances", 6}, {"min_size", 4}, {"max_size", 12}}},
             {"seed", 99}};
    const auto report = cli::run_experiment(cli::parse_config(doc));
    CHECK(report.checks.size() == 6);
    CHECK(report.all_passed());
    CHECK(report.objectives.at("max_matching_distance") < 1e-8);
}

TEST_CASE("solve mode ties the observed factor to the spectral radius") {
    json doc{{"mode", "solve"},
             {"problem", {{"kind", "laplacian_1d"}, {"n", 31}}},
             {"smoother", {{"kind", "weighted_jacobi"}, {"omega", 0.5}}},
             {"coarse_rank", 8},
             {"interpolation", "optimal_tg"},
             {"solve", {{"tol", 1e-10}, {"max_iter", 1000}}},
             {"seed", 5}};
    const auto report = cli::run_experiment(cli::parse_config(doc));
    CHECK(report.all_passed());
    CHECK(report.objectives.at("final_relative_residual") <= 1e-10);
}

TEST_CASE("failed checks mark the report but never abort it") {
    json doc{{"mode", "solve"},
             {"problem", {{"kind", "laplacian_1d"}, {"n", 31}}},
             {"smoother", {{"kind", "weighted_jacobi"}, {"omega", 0.5}}},
             {"coarse_rank", 2},
             {"interpolation", "optimal_tg"},
             {"solve", {{"tol", 1e-10}, {"max_iter", 3}}},
             {"seed", 5}};
    const auto report = cli::run_experiment(cli::parse_config(doc));
    CHECK_FALSE(report.all_passed());
    CHECK(cli::report_exit_code(report) == 1);
    CHECK(report.objectives.count("observed_factor") == 1);
    for (const auto& [name, value] : report.objectives)
        CHECK(std::isfinite(value));
}

TEST_CASE("csv output flattens rows") {
    json doc{{"mode", "compare"},
             {"problem", {{"kind", "laplacian_1d"}, {"n", 7}}},
             {"smoother", {{"kind", "weighted_jacobi"}, {"omega", 0.5}}},
             {"coarse_rank", 3},
             {"candidates", {"optimal_tg", "geometric"}}};
    const auto report = cli::run_experiment(cli::parse_config(doc));
    const std::string csv = report.to_csv();

    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header.find("name") == 0);
    CHECK(header.find("rho_e_tg") != std::string::npos);
    int data_lines = 0;
    for (std::string line; std::getline(lines, line);)
        if (!line.empty())
            ++data_lines;
    CHECK(data_lines == 2);
}

TEST_CASE("report files are written in the configured format") {
    const std::string path = "/tmp/tgopt_test_report.json";
    auto doc = base_config();
    doc["output"] = {{"path", path}, {"format", "json"}};
    cli::run_experiment(cli::parse_config(doc));

    std::ifstream file(path);
    REQUIRE(file.good());
    const auto parsed = json::parse(file);
    CHECK(parsed.contains("objectives"));
    CHECK(parsed["inputs"]["mode"] == "analyze");
    std::remove(path.c_str());
}

TEST_CASE("interpolation sources resolve and validate shapes") {
    const Matrix a = problems::laplacian_1d(7);
    const auto m = explicit_smoother(4.0 * Matrix::identity(7), a);

    const Matrix geo = cli::resolve_interpolation("geometric", a, m, 3);
    CHECK(geo.cols() == 3);
    CHECK_THROWS_AS(cli::resolve_interpolation("geometric", a, m, 2), IncompatibleShape);
    CHECK_THROWS_AS(cli::resolve_interpolation("mystery", a, m, 2), ConfigError);

    const std::string path = "/tmp/tgopt_test_interp.mtx";
    mm::save_matrix_market(geo, path);
    const Matrix loaded = cli::resolve_interpolation("file:" + path, a, m, 3);
    CHECK(max_abs_diff(loaded, geo) == 0.0);
    CHECK_THROWS_AS(cli::resolve_interpolation("file:" + path, a, m, 2), IncompatibleShape);
    std::remove(path.c_str());
}
