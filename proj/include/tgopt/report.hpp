#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "tgopt/matrix.hpp"

namespace tgopt::cli {

/// A verified identity or property; the measured residual always travels
/// with the pass/fail flag.
struct Check {
    std::string name;
    bool passed = false;
    double residual = 0.0;
};

/// One flat line of named values (a compare candidate, a verify instance).
struct Row {
    std::string name;
    std::map<std::string, double> values;
};

/// Machine-readable experiment result. JSON field names are stable:
/// inputs, spectra, objectives, checks, rows, wall_time_seconds.
struct Report {
    nlohmann::ordered_json inputs;
    std::map<std::string, std::vector<double>> real_spectra;
    std::map<std::string, std::vector<Complex>> complex_spectra;
    std::map<std::string, double> objectives;
    std::vector<Check> checks;
    std::vector<Row> rows;
    double wall_time_seconds = 0.0;

    bool all_passed() const;

    nlohmann::ordered_json to_json() const;

    /// One row per entry of `rows` (falling back to a single objectives row),
    /// with columns sorted by name.
    std::string to_csv() const;

    /// Serializes in the requested format ("json" or "csv") to the file.
    void write(const std::string& path, const std::string& format) const;
};

} // namespace tgopt::cli
