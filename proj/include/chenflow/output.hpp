#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace chenflow {

std::string version_string();

// Flags echoed into every artifact so a run is reproducible from its output.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

nlohmann::ordered_json config_json(const std::string& subcommand, const ConfigEcho& config);

// CSV with "# key=value" comment headers carrying the config echo.
std::string csv_artifact(const std::string& subcommand, const ConfigEcho& config,
                         const std::vector<std::string>& columns,
                         const std::vector<std::vector<std::string>>& rows);

std::string format_double(double value);

void write_file(const std::string& path, const std::string& contents);

}  // namespace chenflow
