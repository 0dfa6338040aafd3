#include "chenflow/output.hpp"

#include <cstdio>
#include <fstream>

#include "chenflow/errors.hpp"

#ifndef CHENFLOW_VERSION
#define CHENFLOW_VERSION "0.1.0"
#endif
#ifndef CHENFLOW_GIT_REV
#define CHENFLOW_GIT_REV "nogit"
#endif

namespace chenflow {

std::string version_string() { return std::string(CHENFLOW_VERSION) + "+" + CHENFLOW_GIT_REV; }

nlohmann::ordered_json config_json(const std::string& subcommand, const ConfigEcho& config) {
    nlohmann::ordered_json j;
    j["version"] = version_string();
    j["subcommand"] = subcommand;
    nlohmann::ordered_json c;
    for (const auto& [key, value] : config) c[key] = value;
    j["config"] = c;
    return j;
}

std::string csv_artifact(const std::string& subcommand, const ConfigEcho& config,
                         const std::vector<std::string>& columns,
                         const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    out += "# version=" + version_string() + "\n";
    out += "# subcommand=" + subcommand + "\n";
    for (const auto& [key, value] : config) out += "# " + key + "=" + value + "\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
        out += (i ? "," : "") + columns[i];
    out += "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + row[i];
        out += "\n";
    }
    return out;
}

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot open output file '" + path + "'");
    out << contents;
}

}  // namespace chenflow
