#include "camsim/protocols.hpp"

#include <cmath>
#include <stdexcept>

namespace camsim {

namespace {

struct RateSet {
    double gamma_c, gamma_m, gamma_at;
};

RateSet rates_from_config(const ScenarioConfig& cfg, double coupling) {
    RateSet r;
    r.gamma_c = cfg.f_cavity.value_or(cfg.f) * coupling;
    r.gamma_m = cfg.f_membrane.value_or(cfg.f) * coupling;
    r.gamma_at = cfg.f_atom.value_or(cfg.f) * coupling;
    return r;
}

EffectiveModel effective_from_config(const ScenarioConfig& cfg) {
    EffectiveModel m;
    m.omega_m = 1.0;
    m.omega_at = cfg.omega_at_ratio;
    m.coupling = cfg.g_over_omega;
    const RateSet r = rates_from_config(cfg, m.coupling);
    m.gamma_c_plus = m.gamma_c_minus = r.gamma_c;
    m.gamma_m = r.gamma_m;
    m.gamma_at = r.gamma_at;
    m.n_bar_m = cfg.n_bar_m;
    m.g_m = m.g_at = 1.0;
    return m;
}

GaussianState initial_state(const ScenarioConfig& cfg, int n_modes) {
    std::vector<ModeSpec> specs;
    switch (cfg.scenario) {
        case Scenario::swap_coherent:
            specs.push_back(Coherent{1, cfg.beta});
            break;
        case Scenario::swap_squeezed:
            specs.push_back(Squeezed{1, cfg.s0});
            break;
        case Scenario::swap_fock:
        case Scenario::entangle:
            break;  // vacuum moments; the Fock content enters through the metric
        default:
            throw std::invalid_argument("initial_state: scenario has no state preparation");
    }
    return make_state(specs, n_modes);
}

double min_symplectic_eigenvalue(const Trajectory& traj) {
    double lo = 1e300;
    for (const auto& st : traj.states) lo = std::min(lo, symplectic_eigenvalues(st.cov).front());
    return lo;
}

void add_series(ScenarioResult& res, const std::string& name, std::vector<double> values) {
    res.series.emplace_back(name, std::move(values));
}

}  // namespace

FullModel matched_full_model(double coupling, double g_over_delta, double kappa_over_omega,
                             double omega_at_ratio, double /*f*/, double n_bar_m) {
    if (g_over_delta <= 0.0) throw std::invalid_argument("matched_full_model: g_over_delta must be > 0");
    FullModel fm;
    fm.omega_m = 1.0;
    fm.omega_at = omega_at_ratio;
    // symmetric couplings with the dispersive-limit value matching `coupling`
    fm.g_m = fm.g_at = coupling / (2.0 * std::sqrt(2.0) * g_over_delta);
    const double g = std::hypot(fm.g_m, fm.g_at);
    fm.delta_1 = g / g_over_delta;
    fm.delta_2 = -fm.delta_1;
    fm.kappa = kappa_over_omega;
    fm.n_bar_m = n_bar_m;
    return fm;
}

EffectiveModel reduced_model_of(const FullModel& full) {
    EffectiveModel m;
    m.omega_m = full.omega_m;
    m.omega_at = full.omega_at;
    m.g_m = full.g_m;
    m.g_at = full.g_at;
    m.n_bar_m = full.n_bar_m;
    m.gamma_m = full.gamma_m;
    m.gamma_at = full.gamma_at;
    const double om = full.omega_m, kap = full.kappa, del = full.delta_1;
    const double dp = kap * kap + (del + om) * (del + om);
    const double dm = kap * kap + (del - om) * (del - om);
    m.coupling = 2.0 * full.g_m * full.g_at * ((del - om) / dm + (del + om) / dp);
    m.epsilon = 2.0 * kap * om / (del * del + kap * kap - om * om);
    const double g2 = full.g_m * full.g_m + full.g_at * full.g_at;
    m.gamma_c_plus = 2.0 * kap * g2 / dp;
    m.gamma_c_minus = 2.0 * kap * g2 / dm;
    m.delta = del;
    m.kappa = kap;
    return m;
}

ScenarioResult run_swap(const ScenarioConfig& cfg) {
    if (cfg.scenario != Scenario::swap_coherent && cfg.scenario != Scenario::swap_squeezed &&
        cfg.scenario != Scenario::swap_fock)
        throw std::invalid_argument("run_swap: not a swap scenario");
    if (cfg.g_over_omega <= 0.0 || cfg.duration <= 0.0 || cfg.samples < 2)
        throw std::invalid_argument("run_swap: invalid configuration");

    // build the generator; for the full model, derive the reduced coupling
    // from the shared physical parameters so both models describe one system
    EffectiveModel eff = effective_from_config(cfg);
    GeneratorMatrices gen;
    int n_modes = 2;
    if (cfg.model == ModelKind::full) {
        FullModel fm = matched_full_model(cfg.g_over_omega, cfg.g_over_delta, cfg.kappa_over_omega,
                                          cfg.omega_at_ratio, cfg.f, cfg.n_bar_m);
        eff = reduced_model_of(fm);
        const RateSet r = rates_from_config(cfg, eff.coupling);
        fm.gamma_m = eff.gamma_m = r.gamma_m;
        fm.gamma_at = eff.gamma_at = r.gamma_at;
        gen = assemble_generator_matrices(full_generator(fm));
        n_modes = 4;
    } else {
        gen = assemble_generator_matrices(effective_generator(eff));
    }

    const double coupling = eff.coupling;
    const double t_swap = M_PI / (2.0 * coupling);
    const double t_end = cfg.duration * t_swap;
    const GaussianState init = initial_state(cfg, n_modes);
    const bool need_transfer = cfg.scenario == Scenario::swap_fock;
    const Trajectory traj = propagate_const_sampled(init, gen, t_end, cfg.samples, need_transfer);

    const Eigen::Matrix2d source_cov0 = init.cov.block<2, 2>(2, 2);
    const RateSet rr{eff.gamma_c_plus, eff.gamma_m, eff.gamma_at};
    auto n_bar_rwa = [&](double t) {
        return 0.5 * (2.0 * rr.gamma_c + rr.gamma_m + rr.gamma_at) * t;
    };

    ScenarioResult res;
    res.time = traj.times;
    res.trajectory = traj;
    const size_t n = traj.times.size();
    std::vector<double> col_gt(n), col_nm(n), col_nat(n), col_main(n), col_rwa(n), col_fid_disp;
    if (cfg.scenario == Scenario::swap_coherent) col_fid_disp.resize(n);
    for (size_t k = 0; k < n; ++k) {
        const double t = traj.times[k];
        const GaussianState& st = traj.states[k];
        col_gt[k] = coupling * t;
        col_nm[k] = occupation(st, 0);
        col_nat[k] = occupation(st, 1);
        const Eigen::Matrix2d cov_m = st.cov.block<2, 2>(0, 0);
        switch (cfg.scenario) {
            case Scenario::swap_coherent: {
                col_main[k] = transfer_fidelity(cov_m, source_cov0);
                col_rwa[k] = 1.0 / (1.0 + n_bar_rwa(t));
                // rotation-frame fidelity including the displacement magnitude
                const Eigen::Vector2d dm = st.mean.segment<2>(0);
                const double amp = dm.norm();
                Eigen::Matrix2d rot = Eigen::Matrix2d::Identity();
                if (amp > 1e-300) {
                    const double c = dm(0) / amp, s = dm(1) / amp;
                    rot << c, s, -s, c;
                }
                const Eigen::Vector2d target(std::sqrt(2.0) * std::abs(cfg.beta), 0.0);
                col_fid_disp[k] = gaussian_fidelity(Eigen::Vector2d(amp, 0.0),
                                                    rot * cov_m * rot.transpose(), target,
                                                    0.5 * Eigen::Matrix2d::Identity());
                break;
            }
            case Scenario::swap_squeezed:
                col_main[k] = min_variance(cov_m).s;
                col_rwa[k] = cfg.s0 + 2.0 * n_bar_rwa(t);
                break;
            case Scenario::swap_fock:
                col_main[k] = fock_negativity(traj.transfers[k], traj.states[k].cov);
                col_rwa[k] = fock_negativity_rwa(t, coupling, rr.gamma_c, rr.gamma_m, rr.gamma_at);
                break;
            default:
                break;
        }
    }
    add_series(res, "Gt", std::move(col_gt));
    const char* main_name = cfg.scenario == Scenario::swap_coherent  ? "fidelity"
                            : cfg.scenario == Scenario::swap_squeezed ? "min_variance_s"
                                                                      : "wigner_negativity";
    add_series(res, main_name, std::move(col_main));
    add_series(res, std::string(main_name) + "_rwa", std::move(col_rwa));
    if (cfg.scenario == Scenario::swap_coherent)
        add_series(res, "fidelity_displaced", std::move(col_fid_disp));
    if (cfg.scenario == Scenario::swap_squeezed) {
        std::vector<double> db(n);
        for (size_t k = 0; k < n; ++k)
            db[k] = 10.0 * std::log10(res.series[1].second[k]);
        add_series(res, "squeezing_db", std::move(db));
    }
    add_series(res, "n_m", std::move(col_nm));
    add_series(res, "n_at", std::move(col_nat));

    // endpoint values from an exact propagation to t_s
    const GaussianState at_swap = propagate_const(init, gen, t_swap);
    const Eigen::Matrix2d cov_m_ts = at_swap.cov.block<2, 2>(0, 0);
    res.summary["t_swap"] = t_swap;
    res.summary["coupling"] = coupling;
    res.summary["min_symplectic_eigenvalue"] = min_symplectic_eigenvalue(traj);
    const RwaPrediction pred = rwa_predictions(cfg.f, coupling);
    switch (cfg.scenario) {
        case Scenario::swap_coherent:
            res.summary["fidelity_at_ts"] = transfer_fidelity(cov_m_ts, source_cov0);
            res.summary["fidelity_rwa"] = pred.fidelity_swap;
            break;
        case Scenario::swap_squeezed:
            res.summary["s_at_ts"] = min_variance(cov_m_ts).s;
            res.summary["s_rwa"] = cfg.s0 + pred.squeezing_offset;
            res.summary["squeezing_db_at_ts"] = min_variance(cov_m_ts).db;
            break;
        case Scenario::swap_fock: {
            const MomentMap map = moment_map(gen, t_swap);
            GaussianState vac = vacuum_state(n_modes);
            map.apply(vac);
            res.summary["wigner_negativity_at_ts"] = fock_negativity(map.transfer, vac.cov);
            res.summary["wigner_negativity_rwa"] = pred.fock_negativity_swap;
            break;
        }
        default:
            break;
    }
    res.summary["n_bar_swap_rwa"] = pred.n_bar_swap;
    return res;
}

ScenarioResult run_entangle(const ScenarioConfig& cfg) {
    if (cfg.scenario != Scenario::entangle)
        throw std::invalid_argument("run_entangle: wrong scenario");
    if (cfg.model != ModelKind::effective)
        throw std::invalid_argument("run_entangle: only the reduced model supports modulation");
    const EffectiveModel base = effective_from_config(cfg);
    const double coupling = base.coupling;
    const double omega_bar = 0.5 * (base.omega_m + base.omega_at);

    GeneratorFn gen_fn = [base, coupling, omega_bar](double t) {
        EffectiveModel m = base;
        const double c = std::cos(omega_bar * t);
        m.coupling = coupling * c * c;
        return assemble_generator_matrices(effective_generator(m));
    };

    TimeGrid grid;
    grid.t_end = cfg.duration / coupling;
    grid.n_samples = cfg.samples;
    grid.max_frequency = std::max({base.omega_m, base.omega_at, 2.0 * omega_bar});
    grid.steps_per_period = cfg.steps_per_period;

    const GaussianState init = vacuum_state(2);  // membrane ground state, atom ground state
    const Trajectory traj = propagate_timedep(init, gen_fn, grid);

    ScenarioResult res;
    res.time = traj.times;
    res.trajectory = traj;
    const size_t n = traj.times.size();
    std::vector<double> col_gt(n), col_en(n), col_nat(n), col_nm(n);
    for (size_t k = 0; k < n; ++k) {
        col_gt[k] = coupling * traj.times[k];
        col_en[k] = log_negativity(traj.states[k]);
        col_nm[k] = occupation(traj.states[k], 0);
        col_nat[k] = occupation(traj.states[k], 1);
    }
    double en_final = col_en.back();
    double en_max = 0.0, nat_max = 0.0;
    for (size_t k = 0; k < n; ++k) {
        en_max = std::max(en_max, col_en[k]);
        nat_max = std::max(nat_max, col_nat[k]);
    }
    add_series(res, "Gt", std::move(col_gt));
    add_series(res, "log_negativity", std::move(col_en));
    add_series(res, "n_at", std::move(col_nat));
    add_series(res, "n_m", std::move(col_nm));
    res.summary["coupling"] = coupling;
    res.summary["log_negativity_final"] = en_final;
    res.summary["log_negativity_max"] = en_max;
    res.summary["n_at_max"] = nat_max;
    res.summary["min_symplectic_eigenvalue"] = min_symplectic_eigenvalue(traj);
    return res;
}

double swap_final_occupation(double gamma_c, double omega_m, double coupling) {
    if (coupling <= 0.0 || omega_m <= 0.0)
        throw std::invalid_argument("swap_final_occupation: inputs must be > 0");
    const double half = coupling / (2.0 * omega_m);
    return M_PI * gamma_c / coupling + half * half;
}

CoolingComparison cooling_comparison(double f, double coupling, double omega_m, double raman_rate,
                                     double g_m, double kappa, double gamma_m) {
    if (coupling <= 0.0 || omega_m <= 0.0 || g_m <= 0.0 || kappa <= 0.0)
        throw std::invalid_argument("cooling_comparison: inputs must be > 0");
    CoolingComparison out;
    const double half_g = coupling / (2.0 * omega_m);
    out.n_swap = M_PI * f + half_g * half_g;
    if (raman_rate > 0.0) {
        const double half_r = raman_rate / (2.0 * omega_m);
        out.n_cool = f * raman_rate / coupling + half_r * half_r;
    }
    const double half_k = kappa / (2.0 * omega_m);
    out.n_cavity = gamma_m * kappa / (g_m * g_m) + half_k * half_k;
    out.coupling_opt = std::cbrt(2.0 * M_PI * (f * coupling) * omega_m * omega_m);
    out.swap_beats_cavity = coupling / M_PI > g_m * g_m / kappa;
    return out;
}

}  // namespace camsim
