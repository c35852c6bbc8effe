#ifndef CAMSIM_CONFIG_HPP
#define CAMSIM_CONFIG_HPP

#include "camsim/lattice.hpp"
#include "camsim/protocols.hpp"
#include "camsim/system_model.hpp"
#include "camsim/thermal.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace camsim::io {

using nlohmann::json;

// Raised on malformed or missing configuration; carries the field path.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& path, const std::string& what)
        : std::runtime_error("config error at " + path + ": " + what) {}
};

json load_json_file(const std::filesystem::path& file);

// FNV-1a over the canonical (key-sorted) serialization; stable under key
// reordering of the input document.
std::uint64_t config_digest(const json& doc);

struct RunManifest {
    std::string command;
    std::string digest;
    std::string version;
    std::string timestamp;
    std::vector<std::string> outputs;
};

json to_json(const RunManifest& m);
void write_manifest(const std::filesystem::path& dir, const std::string& command,
                    const json& config, const std::vector<std::string>& outputs);

// Typed field access with path-qualified errors.
double require_number(const json& obj, const std::string& key, const std::string& base);
double number_or(const json& obj, const std::string& key, double fallback, const std::string& base);
int int_or(const json& obj, const std::string& key, int fallback, const std::string& base);
std::string string_or(const json& obj, const std::string& key, const std::string& fallback,
                      const std::string& base);

PhysicalParams physical_params_from_json(const json& obj, const std::string& base);
LatticeGeometry lattice_from_json(const json& obj, const std::string& base);
HeatConfig heat_config_from_json(const json& obj, const std::string& base);
ScenarioConfig scenario_from_json(const json& obj, const std::string& base);

json to_json(const ConditionReport& report);
json to_json(const DerivedRates& rates);
json to_json(const CoolingComparison& c);

std::string format_double(double v);  // 17 significant digits, round-trip safe

void write_csv(const std::filesystem::path& file, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

// trajectory.csv: time, named metric series, then mean entries and the upper
// covariance triangle in row-major order
void write_scenario_csv(const std::filesystem::path& file, const ScenarioResult& result);

}  // namespace camsim::io

namespace camsim::cli {

inline constexpr const char* version = "0.1.0";

// Entry point used by both the binary and the tests. Returns the process
// exit code: 0 success, 2 configuration error, 1 numeric failure.
int dispatch(const std::vector<std::string>& args);

}  // namespace camsim::cli

#endif
