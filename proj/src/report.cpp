#include "tgopt/report.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "tgopt/errors.hpp"

namespace tgopt::cli {

namespace {

std::string format_number(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

bool Report::all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const Check& c) { return c.passed; });
}

nlohmann::ordered_json Report::to_json() const {
    nlohmann::ordered_json doc;
    doc["inputs"] = inputs;

    nlohmann::ordered_json spectra = nlohmann::ordered_json::object();
    for (const auto& [name, values] : real_spectra)
        spectra[name] = values;
    for (const auto& [name, values] : complex_spectra) {
        nlohmann::ordered_json list = nlohmann::ordered_json::array();
        for (const Complex z : values)
            list.push_back({z.real(), z.imag()});
        spectra[name] = std::move(list);
    }
    doc["spectra"] = std::move(spectra);

    doc["objectives"] = objectives;

    nlohmann::ordered_json check_list = nlohmann::ordered_json::array();
    for (const Check& c : checks) {
        nlohmann::ordered_json item;
        item["name"] = c.name;
        item["passed"] = c.passed;
        item["residual"] = c.residual;
        check_list.push_back(std::move(item));
    }
    doc["checks"] = std::move(check_list);

    nlohmann::ordered_json row_list = nlohmann::ordered_json::array();
    for (const Row& row : rows) {
        nlohmann::ordered_json item;
        item["name"] = row.name;
        for (const auto& [key, value] : row.values)
            item[key] = value;
        row_list.push_back(std::move(item));
    }
    doc["rows"] = std::move(row_list);

    doc["wall_time_seconds"] = wall_time_seconds;
    return doc;
}

std::string Report::to_csv() const {
    std::ostringstream os;
    if (rows.empty()) {
        os << "name";
        for (const auto& [key, value] : objectives)
            os << "," << key;
        os << "\n" << "objectives";
        for (const auto& [key, value] : objectives)
            os << "," << format_number(value);
        os << "\n";
        return os.str();
    }

    std::set<std::string> columns;
    for (const Row& row : rows)
        for (const auto& [key, value] : row.values)
            columns.insert(key);

    os << "name";
    for (const auto& column : columns)
        os << "," << column;
    os << "\n";
    for (const Row& row : rows) {
        os << row.name;
        for (const auto& column : columns) {
            os << ",";
            const auto it = row.values.find(column);
            if (it != row.values.end())
                os << format_number(it->second);
        }
        os << "\n";
    }
    return os.str();
}

void Report::write(const std::string& path, const std::string& format) const {
    std::ofstream file(path);
    if (!file)
        throw IoError("report: cannot open '" + path + "' for writing");
    if (format == "csv")
        file << to_csv();
    else
        file << to_json().dump(2) << "\n";
    if (!file)
        throw IoError("report: write to '" + path + "' failed");
}

} // namespace tgopt::cli
