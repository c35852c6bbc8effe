#include "camsim/config.hpp"

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <fstream>

namespace camsim::io {

json load_json_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError(file.string(), "cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(file.string(), e.what());
    }
}

std::uint64_t config_digest(const json& doc) {
    const std::string canonical = doc.dump();  // object keys are sorted
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

std::string hex64(std::uint64_t v) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
    return buf;
}

}  // namespace

json to_json(const RunManifest& m) {
    json j;
    j["command"] = m.command;
    j["config_digest"] = m.digest;
    j["tool_version"] = m.version;
    j["timestamp"] = m.timestamp;
    j["outputs"] = m.outputs;
    return j;
}

void write_manifest(const std::filesystem::path& dir, const std::string& command,
                    const json& config, const std::vector<std::string>& outputs) {
    RunManifest m;
    m.command = command;
    m.digest = hex64(config_digest(config));
    m.version = camsim::cli::version;
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
    m.timestamp = buf;
    m.outputs = outputs;
    std::ofstream out(dir / "manifest.json");
    out << to_json(m).dump(2) << "\n";
}

double require_number(const json& obj, const std::string& key, const std::string& base) {
    if (!obj.contains(key)) throw ConfigError(base + "/" + key, "missing required value");
    if (!obj[key].is_number()) throw ConfigError(base + "/" + key, "expected a number");
    return obj[key].get<double>();
}

double number_or(const json& obj, const std::string& key, double fallback, const std::string& base) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) throw ConfigError(base + "/" + key, "expected a number");
    return obj[key].get<double>();
}

int int_or(const json& obj, const std::string& key, int fallback, const std::string& base) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number_integer()) throw ConfigError(base + "/" + key, "expected an integer");
    return obj[key].get<int>();
}

std::string string_or(const json& obj, const std::string& key, const std::string& fallback,
                      const std::string& base) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_string()) throw ConfigError(base + "/" + key, "expected a string");
    return obj[key].get<std::string>();
}

PhysicalParams physical_params_from_json(const json& obj, const std::string& base) {
    PhysicalParams p;
    p.cavity_length = require_number(obj, "cavity_length", base);
    p.finesse = number_or(obj, "finesse", 0.0, base);
    p.kappa = number_or(obj, "kappa", 0.0, base);
    p.omega_c = number_or(obj, "omega_c", 0.0, base);
    p.wavelength_1 = number_or(obj, "wavelength_1", 0.0, base);
    p.membrane_reflectivity = require_number(obj, "membrane_reflectivity", base);
    p.membrane_mass = require_number(obj, "membrane_mass", base);
    p.omega_m = require_number(obj, "omega_m", base);
    p.quality_m = require_number(obj, "quality_m", base);
    p.n_bar_m = number_or(obj, "n_bar_m", -1.0, base);
    p.temperature = number_or(obj, "temperature", 0.0, base);
    p.atom_mass = require_number(obj, "atom_mass", base);
    p.atom_linewidth = require_number(obj, "atom_linewidth", base);
    p.vacuum_rabi = require_number(obj, "vacuum_rabi", base);
    p.atomic_detuning = require_number(obj, "atomic_detuning", base);
    p.drive_power = number_or(obj, "drive_power", 0.0, base);
    p.alpha = number_or(obj, "alpha", 0.0, base);
    p.cavity_detuning = require_number(obj, "cavity_detuning", base);
    p.lattice_slope = number_or(obj, "lattice_slope", 1.0, base);
    p.lattice_intensity = number_or(obj, "lattice_intensity", 1.0, base);
    p.lattice_curvature = number_or(obj, "lattice_curvature", 0.5, base);
    if (obj.contains("membrane_position"))
        p.membrane_position = require_number(obj, "membrane_position", base);
    p.raman_rate = number_or(obj, "raman_rate", 0.0, base);
    p.geometry_factor = number_or(obj, "geometry_factor", 0.8, base);
    return p;
}

LatticeGeometry lattice_from_json(const json& obj, const std::string& base) {
    LatticeGeometry g;
    if (obj.contains("k1")) {
        g.k1 = require_number(obj, "k1", base);
        g.k2 = require_number(obj, "k2", base);
    } else {
        const double l1 = require_number(obj, "wavelength_1", base);
        const double l2 = require_number(obj, "wavelength_2", base);
        if (l1 <= 0.0 || l2 <= 0.0) throw ConfigError(base, "wavelengths must be > 0");
        g.k1 = 2.0 * M_PI / std::min(l1, l2);
        g.k2 = 2.0 * M_PI / std::max(l1, l2);
    }
    g.q = int_or(obj, "q", 0, base);
    if (obj.contains("length")) {
        g.length = require_number(obj, "length", base);
    } else if (g.q > 0) {
        g.length = g.q * M_PI / (g.k1 - g.k2);  // place q beat nodes inside the cavity
    } else {
        throw ConfigError(base + "/length", "missing required value (or give q)");
    }
    return g;
}

HeatConfig heat_config_from_json(const json& obj, const std::string& base) {
    HeatConfig c;
    c.circulating_power = number_or(obj, "circulating_power", c.circulating_power, base);
    c.finesse = number_or(obj, "finesse", c.finesse, base);
    c.thermal_link = number_or(obj, "thermal_link", c.thermal_link, base);
    c.frame_temperature = number_or(obj, "frame_temperature", c.frame_temperature, base);
    c.conductivity = number_or(obj, "conductivity", c.conductivity, base);
    c.side = number_or(obj, "side", c.side, base);
    c.thickness = number_or(obj, "thickness", c.thickness, base);
    c.beam_waist = number_or(obj, "beam_waist", c.beam_waist, base);
    c.grid_n = int_or(obj, "grid_n", c.grid_n, base);
    c.tolerance = number_or(obj, "tolerance", c.tolerance, base);
    return c;
}

ScenarioConfig scenario_from_json(const json& obj, const std::string& base) {
    ScenarioConfig c;
    const std::string state = string_or(obj, "state", "coherent", base);
    if (state == "coherent")
        c.scenario = Scenario::swap_coherent;
    else if (state == "squeezed")
        c.scenario = Scenario::swap_squeezed;
    else if (state == "fock")
        c.scenario = Scenario::swap_fock;
    else
        throw ConfigError(base + "/state", "expected coherent|squeezed|fock");
    c.f = number_or(obj, "f", c.f, base);
    if (obj.contains("f_cavity")) c.f_cavity = require_number(obj, "f_cavity", base);
    if (obj.contains("f_membrane")) c.f_membrane = require_number(obj, "f_membrane", base);
    if (obj.contains("f_atom")) c.f_atom = require_number(obj, "f_atom", base);
    c.g_over_omega = number_or(obj, "g_over_omega", c.g_over_omega, base);
    c.omega_at_ratio = number_or(obj, "omega_at_ratio", c.omega_at_ratio, base);
    c.beta = {number_or(obj, "beta_re", 1.0, base), number_or(obj, "beta_im", 0.0, base)};
    c.s0 = number_or(obj, "s0", c.s0, base);
    c.duration = number_or(obj, "duration", c.duration, base);
    c.samples = int_or(obj, "samples", c.samples, base);
    const std::string model = string_or(obj, "model", "effective", base);
    if (model == "effective")
        c.model = ModelKind::effective;
    else if (model == "full")
        c.model = ModelKind::full;
    else
        throw ConfigError(base + "/model", "expected effective|full");
    c.g_over_delta = number_or(obj, "g_over_delta", c.g_over_delta, base);
    c.kappa_over_omega = number_or(obj, "kappa_over_omega", c.kappa_over_omega, base);
    c.n_bar_m = number_or(obj, "n_bar_m", c.n_bar_m, base);
    if (c.f < 0.0) throw ConfigError(base + "/f", "must be >= 0");
    if (c.g_over_omega <= 0.0) throw ConfigError(base + "/g_over_omega", "must be > 0");
    if (c.duration <= 0.0) throw ConfigError(base + "/duration", "must be > 0");
    return c;
}

json to_json(const ConditionReport& r) {
    json j;
    j["margin_1"] = r.margin_1;
    j["balance_2"] = r.balance_2;
    j["margin_3"] = r.margin_3;
    j["margin_4"] = r.margin_4;
    j["resonance_alpha"] = r.resonance_alpha;
    j["condition_1"] = r.pass_1;
    j["condition_2"] = r.pass_2;
    j["condition_3"] = r.pass_3;
    j["condition_4"] = r.pass_4;
    return j;
}

json to_json(const DerivedRates& r) {
    json j;
    j["g_m"] = r.g_m;
    j["g_at"] = r.g_at;
    j["g"] = r.g;
    j["coupling_exact"] = r.coupling_exact;
    j["coupling_dispersive"] = r.coupling_dispersive;
    j["epsilon"] = r.epsilon;
    j["gamma_c_plus"] = r.gamma_c_plus;
    j["gamma_c_minus"] = r.gamma_c_minus;
    j["gamma_c_dispersive"] = r.gamma_c_dispersive;
    j["gamma_at"] = r.gamma_at;
    j["gamma_m"] = r.gamma_m;
    j["omega_at"] = r.omega_at;
    j["alpha"] = r.alpha;
    j["f_c"] = r.f_c;
    j["f_at"] = r.f_at;
    j["f_m"] = r.f_m;
    return j;
}

json to_json(const CoolingComparison& c) {
    json j;
    j["n_swap"] = c.n_swap;
    j["n_cool"] = c.n_cool;
    j["n_cavity"] = c.n_cavity;
    j["coupling_opt"] = c.coupling_opt;
    j["swap_beats_cavity"] = c.swap_beats_cavity;
    return j;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(const std::filesystem::path& file, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("write_csv: cannot open " + file.string());
    for (size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
    out << "\n";
    const size_t rows = columns.empty() ? 0 : columns.front().size();
    for (size_t r = 0; r < rows; ++r) {
        for (size_t c = 0; c < columns.size(); ++c)
            out << (c ? "," : "") << format_double(columns[c][r]);
        out << "\n";
    }
}

void write_scenario_csv(const std::filesystem::path& file, const ScenarioResult& result) {
    std::vector<std::string> header{"t"};
    std::vector<std::vector<double>> cols{result.time};
    for (const auto& [name, col] : result.series) {
        header.push_back(name);
        cols.push_back(col);
    }
    if (!result.trajectory.states.empty()) {
        const int dim = static_cast<int>(result.trajectory.states.front().cov.rows());
        const size_t rows = result.trajectory.states.size();
        for (int i = 0; i < dim; ++i) {
            header.push_back("d_" + std::to_string(i));
            std::vector<double> col(rows);
            for (size_t r = 0; r < rows; ++r) col[r] = result.trajectory.states[r].mean(i);
            cols.push_back(std::move(col));
        }
        for (int i = 0; i < dim; ++i)
            for (int j = i; j < dim; ++j) {
                header.push_back("cov_" + std::to_string(i) + "_" + std::to_string(j));
                std::vector<double> col(rows);
                for (size_t r = 0; r < rows; ++r) col[r] = result.trajectory.states[r].cov(i, j);
                cols.push_back(std::move(col));
            }
    }
    write_csv(file, header, cols);
}

}  // namespace camsim::io
