#ifndef CAMSIM_PROTOCOLS_HPP
#define CAMSIM_PROTOCOLS_HPP

#include "camsim/dynamics.hpp"
#include "camsim/metrics.hpp"

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace camsim {

enum class Scenario { swap_coherent, swap_squeezed, swap_fock, entangle, cool_compare };
enum class ModelKind { effective, full };

struct ScenarioConfig {
    Scenario scenario = Scenario::swap_coherent;
    double f = 0.0;  // common noise ratio Gamma/G
    std::optional<double> f_cavity;    // per-rate overrides
    std::optional<double> f_membrane;
    std::optional<double> f_atom;
    double g_over_omega = 0.034;       // G / omega_m
    double omega_at_ratio = 1.0;       // omega_at / omega_m
    std::complex<double> beta{1.0, 0.0};
    double s0 = 0.1353352832366127;    // e^-2
    double duration = 2.0;             // swaps: units of t_s; entangle: units of 1/G
    int samples = 400;
    ModelKind model = ModelKind::effective;
    double g_over_delta = 0.02;        // full model: sets Delta from g
    double kappa_over_omega = 1.0;     // full model cavity linewidth
    double n_bar_m = 50.0;
    double steps_per_period = 40.0;
};

struct ScenarioResult {
    std::vector<double> time;  // units 1/omega_m
    std::vector<std::pair<std::string, std::vector<double>>> series;
    std::map<std::string, double> summary;
    Trajectory trajectory;  // full moment history for export
};

ScenarioResult run_swap(const ScenarioConfig& config);
ScenarioResult run_entangle(const ScenarioConfig& config);

struct CoolingComparison {
    double n_swap = 0.0;    // pi f + (G/2 omega_m)^2
    double n_cool = 0.0;    // f Gamma_R/G + (Gamma_R/2 omega_m)^2
    double n_cavity = 0.0;  // Gamma_m kappa/g_m^2 + (kappa/2 omega_m)^2
    double coupling_opt = 0.0;
    bool swap_beats_cavity = false;  // G/pi > g_m^2/kappa
};

CoolingComparison cooling_comparison(double f, double coupling, double omega_m, double raman_rate,
                                     double g_m, double kappa, double gamma_m);

// Residual swap occupation pi Gamma_c/G + (G/2 omega_m)^2 as a function of G.
double swap_final_occupation(double gamma_c, double omega_m, double coupling);

// Helpers shared with the model-consistency checks: the four-mode model whose
// dispersive coupling equals `coupling`, with g_m = g_at and Delta_1 = -Delta_2.
FullModel matched_full_model(double coupling, double g_over_delta, double kappa_over_omega,
                             double omega_at_ratio, double f, double n_bar_m);
EffectiveModel reduced_model_of(const FullModel& full);

}  // namespace camsim

#endif
