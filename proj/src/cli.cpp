#include "camsim/config.hpp"
#include "camsim/oracle.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#ifdef CAMSIM_HAVE_OPENMP
#include <omp.h>
#endif

namespace camsim::cli {

namespace fs = std::filesystem;
using io::ConfigError;
using io::json;

namespace {

json section(const json& root, const std::string& name) {
    if (root.contains(name)) return root[name];
    return json::object();
}

json load_config_or_empty(const std::string& file) {
    if (file.empty()) return json::object();
    return io::load_json_file(file);
}

void set_jobs(int jobs) {
#ifdef CAMSIM_HAVE_OPENMP
    if (jobs > 0) omp_set_num_threads(jobs);
#else
    (void)jobs;
#endif
}

int run_design_check(const std::string& config_file, const std::string& out_file,
                     double kappa_th_flag) {
    const json root = load_config_or_empty(config_file);
    if (!root.contains("design")) throw ConfigError("/design", "missing section");
    const PhysicalParams params = io::physical_params_from_json(root["design"], "/design");
    const json cond = section(root, "conditions");
    ConditionThresholds thr;
    thr.large_ratio = io::number_or(cond, "large_ratio", thr.large_ratio, "/conditions");
    thr.balance_window = io::number_or(cond, "balance_window", thr.balance_window, "/conditions");
    double kappa_th = io::number_or(cond, "kappa_th", kappa_th_flag, "/conditions");
    if (kappa_th_flag > 0.0) kappa_th = kappa_th_flag;
    if (kappa_th <= 0.0) throw ConfigError("/conditions/kappa_th", "missing required value");

    const DerivedRates rates = derive_rates(params);
    const ConditionReport report = check_strong_coupling(params, rates, kappa_th, thr);
    json out;
    out["conditions"] = io::to_json(report);
    out["rates"] = io::to_json(rates);
    const std::string text = out.dump(2) + "\n";
    if (out_file.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_file);
        f << text;
    }
    return 0;
}

int run_lattice_scan(const std::string& config_file, const std::string& out_file) {
    const json root = load_config_or_empty(config_file);
    if (!root.contains("lattice")) throw ConfigError("/lattice", "missing section");
    const json sec = root["lattice"];
    const LatticeGeometry geom = io::lattice_from_json(sec, "/lattice");
    const double gf = io::number_or(sec, "geometry_factor", 0.8, "/lattice");
    const int ppp = io::int_or(sec, "points_per_period", 32, "/lattice");
    const auto wells = find_wells(geom, gf, ppp);

    std::vector<std::vector<double>> cols(6);
    for (const auto& w : wells) {
        cols[0].push_back(w.x);
        cols[1].push_back(w.u);
        cols[2].push_back(w.theta);
        cols[3].push_back(w.zeta);
        cols[4].push_back(w.xi);
        cols[5].push_back(w.is_intensity_max ? 1.0 : 0.0);
    }
    io::write_csv(out_file, {"x", "u", "theta", "zeta", "xi", "is_max"}, cols);

    const fs::path dir = fs::path(out_file).parent_path();
    if (!dir.empty()) io::write_manifest(dir, "lattice-scan", root, {out_file});
    return 0;
}

json scenario_echo(const ScenarioConfig& cfg) {
    json j;
    j["state"] = cfg.scenario == Scenario::swap_coherent   ? "coherent"
                 : cfg.scenario == Scenario::swap_squeezed ? "squeezed"
                 : cfg.scenario == Scenario::swap_fock     ? "fock"
                                                           : "entangle";
    j["f"] = cfg.f;
    j["g_over_omega"] = cfg.g_over_omega;
    j["omega_at_ratio"] = cfg.omega_at_ratio;
    j["beta_re"] = cfg.beta.real();
    j["beta_im"] = cfg.beta.imag();
    j["s0"] = cfg.s0;
    j["duration"] = cfg.duration;
    j["samples"] = cfg.samples;
    j["model"] = cfg.model == ModelKind::full ? "full" : "effective";
    j["g_over_delta"] = cfg.g_over_delta;
    j["kappa_over_omega"] = cfg.kappa_over_omega;
    j["n_bar_m"] = cfg.n_bar_m;
    return j;
}

void write_scenario_outputs(const fs::path& dir, const std::string& command,
                            const ScenarioConfig& cfg, const ScenarioResult& result) {
    fs::create_directories(dir);
    const fs::path csv = dir / "trajectory.csv";
    io::write_scenario_csv(csv, result);
    json summary;
    summary["config"] = scenario_echo(cfg);
    for (const auto& [k, v] : result.summary) summary["summary"][k] = v;
    const fs::path sj = dir / "summary.json";
    std::ofstream(sj) << summary.dump(2) << "\n";
    io::write_manifest(dir, command, scenario_echo(cfg), {csv.string(), sj.string()});
}

int run_swap_cmd(ScenarioConfig cfg, const std::vector<double>& fs, const std::string& out_dir,
                 int jobs) {
    set_jobs(jobs);
    if (fs.size() <= 1) {
        if (fs.size() == 1) cfg.f = fs.front();
        const ScenarioResult result = run_swap(cfg);
        write_scenario_outputs(out_dir, "swap", cfg, result);
        return 0;
    }
    // sweep over noise ratios, one subdirectory per point
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic) if (jobs != 1)
    for (int i = 0; i < static_cast<int>(fs.size()); ++i) {
        try {
            ScenarioConfig point = cfg;
            point.f = fs[i];
            const ScenarioResult result = run_swap(point);
            write_scenario_outputs(fs::path(out_dir) / ("f_" + std::to_string(i)), "swap", point,
                                   result);
        } catch (...) {
#pragma omp critical
            err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return 0;
}

int run_entangle_cmd(ScenarioConfig cfg, const std::string& out_dir) {
    cfg.scenario = Scenario::entangle;
    const ScenarioResult result = run_entangle(cfg);
    write_scenario_outputs(out_dir, "entangle", cfg, result);
    return 0;
}

int run_cool(const std::string& config_file, const std::string& out_file) {
    const json root = load_config_or_empty(config_file);
    const json sec = section(root, "cool");
    const double f = io::number_or(sec, "f", 0.1, "/cool");
    const double coupling = io::number_or(sec, "g_over_omega", 0.034, "/cool");
    const double raman = io::number_or(sec, "raman_over_omega", 0.0, "/cool");
    const double g_m = io::number_or(sec, "g_m_over_omega", 0.5, "/cool");
    const double kappa = io::number_or(sec, "kappa_over_omega", 1.0, "/cool");
    const double gamma_m = io::number_or(sec, "gamma_m_over_omega", f * coupling, "/cool");
    const CoolingComparison cmp = cooling_comparison(f, coupling, 1.0, raman, g_m, kappa, gamma_m);
    const std::string text = io::to_json(cmp).dump(2) + "\n";
    if (out_file.empty()) {
        std::cout << text;
    } else {
        std::ofstream(out_file) << text;
    }
    return 0;
}

int run_heat(const std::string& config_file, const std::string& out_dir) {
    const json root = load_config_or_empty(config_file);
    const HeatConfig cfg = io::heat_config_from_json(section(root, "heat"), "/heat");
    const HeatMapResult result = steady_state_heat_map(cfg);

    fs::create_directories(out_dir);
    const fs::path field_csv = fs::path(out_dir) / "temperature_field.csv";
    {
        std::ofstream out(field_csv);
        for (int i = 0; i < result.n; ++i) {
            for (int j = 0; j < result.n; ++j)
                out << (j ? "," : "")
                    << io::format_double(result.temperature[static_cast<size_t>(i) * result.n + j]);
            out << "\n";
        }
    }
    json summary;
    summary["t_peak"] = result.t_peak;
    summary["t_avg"] = result.t_avg;
    summary["absorbed_power"] = result.absorbed_power;
    summary["delta_t_lumped"] =
        lumped_temperature_rise(cfg.circulating_power, cfg.finesse, cfg.thermal_link);
    summary["sweeps"] = result.sweeps;
    summary["residual"] = result.residual;
    const fs::path sj = fs::path(out_dir) / "summary.json";
    std::ofstream(sj) << summary.dump(2) << "\n";
    io::write_manifest(out_dir, "heat", section(root, "heat"), {field_csv.string(), sj.string()});
    return 0;
}

int run_validate(const std::string& suite, int n_tr, double step) {
    if (suite == "gaussian") {
        // closed-form vs stepped propagation on the standard swap point
        EffectiveModel m;
        m.coupling = 0.034;
        m.gamma_c_plus = m.gamma_c_minus = m.gamma_m = m.gamma_at = 0.05 * m.coupling;
        const GeneratorMatrices gen = assemble_generator_matrices(effective_generator(m));
        const GaussianState init = make_state({Coherent{1, {1.0, 0.0}}}, 2);
        const double t = 10.0;
        const GaussianState exact = propagate_const(init, gen, t);
        TimeGrid grid{t, 200, std::max(m.omega_m, m.omega_at), 400.0};
        const Trajectory stepped = propagate_timedep(
            init, [&](double) { return gen; }, grid);
        const double d_mean = (stepped.states.back().mean - exact.mean).cwiseAbs().maxCoeff();
        const double d_cov = (stepped.states.back().cov - exact.cov).cwiseAbs().maxCoeff();
        double nu_min = 1e300;
        for (const auto& st : stepped.states)
            nu_min = std::min(nu_min, symplectic_eigenvalues(st.cov).front());
        std::cout << "gaussian: |mean| delta " << d_mean << " (tol 1e-8), |cov| delta " << d_cov
                  << " (tol 1e-8), min symplectic eigenvalue " << nu_min << " (floor "
                  << 0.5 - 1e-7 << ")\n";
        return (d_mean < 1e-8 && d_cov < 1e-8 && nu_min >= 0.5 - 1e-7) ? 0 : 1;
    }
    if (suite == "oracle") {
        const auto deltas = cross_engine_swap_check(0.05, {1.0, 0.0}, 0.034, n_tr, step,
                                                     ExecutionPolicy::parallel, 2.0 * step);
        std::cout << "oracle: mean delta " << deltas.mean_abs << " (tol 1e-5), cov delta "
                  << deltas.cov_abs << " (tol 1e-5), wigner delta " << deltas.wigner_abs
                  << " (tol 1e-3)\n";
        return (deltas.mean_abs < 1e-5 && deltas.cov_abs < 1e-5 && deltas.wigner_abs < 1e-3) ? 0
                                                                                             : 1;
    }
    throw ConfigError("/suite", "expected gaussian|oracle");
}

}  // namespace

int dispatch(const std::vector<std::string>& args) {
    CLI::App app{"cavity-mediated atom-membrane coupling simulator"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_file, out_path;
    int jobs = 1;
    app.add_option("--jobs", jobs, "threads for sweeps and kernels");

    auto* design = app.add_subcommand("design-check", "evaluate strong-coupling conditions");
    double kappa_th = 0.0;
    design->add_option("--config", config_file, "JSON parameter file")->required();
    design->add_option("--out", out_path, "report file (default stdout)");
    design->add_option("--kappa-th", kappa_th, "thermal link in Hz");

    auto* lattice = app.add_subcommand("lattice-scan", "locate trapping wells and site factors");
    lattice->add_option("--config", config_file, "JSON parameter file")->required();
    lattice->add_option("--out", out_path, "CSV output file")->required();

    ScenarioConfig scen;
    std::string state = "coherent", model = "effective";
    std::vector<double> f_values;
    double beta_re = 1.0, beta_im = 0.0;
    bool have_scfg = false;
    std::string scen_config;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", scen_config, "JSON parameter file (section swap/entangle)");
        cmd->add_option("--f", f_values, "noise ratio Gamma/G (repeatable for sweeps)");
        cmd->add_option("--g-over-omega", scen.g_over_omega, "G in units of omega_m");
        cmd->add_option("--omega-ratio", scen.omega_at_ratio, "omega_at/omega_m");
        cmd->add_option("--duration", scen.duration, "run length (t_s units; Gt for entangle)");
        cmd->add_option("--samples", scen.samples, "output grid size");
        cmd->add_option("--out", out_path, "output directory")->required();
    };

    auto* swap = app.add_subcommand("swap", "state transfer from atom to membrane");
    swap->add_option("--state", state, "coherent|squeezed|fock");
    swap->add_option("--model", model, "effective|full");
    swap->add_option("--beta-re", beta_re, "coherent amplitude, real part");
    swap->add_option("--beta-im", beta_im, "coherent amplitude, imaginary part");
    swap->add_option("--s0", scen.s0, "initial minimal variance (x2)");
    swap->add_option("--g-over-delta", scen.g_over_delta, "full model g/Delta");
    swap->add_option("--kappa-over-omega", scen.kappa_over_omega, "full model kappa");
    add_common(swap);

    auto* entangle = app.add_subcommand("entangle", "two-mode squeezing by modulated coupling");
    add_common(entangle);

    auto* cool = app.add_subcommand("cool", "swap cooling versus cavity cooling");
    cool->add_option("--config", config_file, "JSON parameter file");
    cool->add_option("--out", out_path, "summary file (default stdout)");

    auto* heat = app.add_subcommand("heat", "membrane absorption heating");
    heat->add_option("--config", config_file, "JSON parameter file");
    heat->add_option("--out", out_path, "output directory")->required();

    auto* validate = app.add_subcommand("validate", "cross-engine consistency checks");
    std::string suite = "gaussian";
    int n_tr = 25;
    double step = 0.02;
    validate->add_option("--suite", suite, "gaussian|oracle")->required();
    validate->add_option("--ntr", n_tr, "Fock truncation per mode");
    validate->add_option("--step", step, "integrator step (units 1/omega_m)");

    std::vector<std::string> argv(args);
    std::vector<char*> raw;
    raw.push_back(const_cast<char*>("camsim"));
    for (auto& a : argv) raw.push_back(a.data());

    try {
        app.parse(static_cast<int>(raw.size()), raw.data());

        if (design->parsed()) return run_design_check(config_file, out_path, kappa_th);
        if (lattice->parsed()) return run_lattice_scan(config_file, out_path);
        if (swap->parsed() || entangle->parsed()) {
            CLI::App* cmd = swap->parsed() ? swap : entangle;
            ScenarioConfig cfg;
            if (!scen_config.empty()) {
                const json root = io::load_json_file(scen_config);
                const char* sect = swap->parsed() ? "swap" : "entangle";
                if (root.contains(sect)) {
                    cfg = io::scenario_from_json(root[sect], std::string("/") + sect);
                    have_scfg = true;
                }
            }
            // explicit flags override file values
            if (!have_scfg || cmd->count("--g-over-omega")) cfg.g_over_omega = scen.g_over_omega;
            if (!have_scfg || cmd->count("--omega-ratio")) cfg.omega_at_ratio = scen.omega_at_ratio;
            if (!have_scfg || cmd->count("--duration")) cfg.duration = scen.duration;
            if (!have_scfg || cmd->count("--samples")) cfg.samples = scen.samples;
            if (swap->parsed()) {
                if (!have_scfg || swap->count("--s0")) cfg.s0 = scen.s0;
                if (!have_scfg || swap->count("--g-over-delta")) cfg.g_over_delta = scen.g_over_delta;
                if (!have_scfg || swap->count("--kappa-over-omega"))
                    cfg.kappa_over_omega = scen.kappa_over_omega;
                if (!have_scfg || swap->count("--beta-re") || swap->count("--beta-im"))
                    cfg.beta = {beta_re, beta_im};
                if (!have_scfg || swap->count("--state")) {
                    if (state == "coherent")
                        cfg.scenario = Scenario::swap_coherent;
                    else if (state == "squeezed")
                        cfg.scenario = Scenario::swap_squeezed;
                    else if (state == "fock")
                        cfg.scenario = Scenario::swap_fock;
                    else
                        throw ConfigError("/state", "expected coherent|squeezed|fock");
                }
                if (!have_scfg || swap->count("--model")) {
                    if (model == "effective")
                        cfg.model = ModelKind::effective;
                    else if (model == "full")
                        cfg.model = ModelKind::full;
                    else
                        throw ConfigError("/model", "expected effective|full");
                }
                return run_swap_cmd(cfg, f_values, out_path, jobs);
            }
            if (!entangle->count("--duration") && !have_scfg) cfg.duration = 3.0;
            if (!f_values.empty()) cfg.f = f_values.front();
            return run_entangle_cmd(cfg, out_path);
        }
        if (cool->parsed()) return run_cool(config_file, out_path);
        if (heat->parsed()) return run_heat(config_file, out_path);
        if (validate->parsed()) return run_validate(suite, n_tr, step);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace camsim::cli
