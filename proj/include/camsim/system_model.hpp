#ifndef CAMSIM_SYSTEM_MODEL_HPP
#define CAMSIM_SYSTEM_MODEL_HPP

#include <optional>

namespace camsim {

namespace constants {
inline constexpr double hbar = 1.054571817e-34;  // J s
inline constexpr double k_boltzmann = 1.380649e-23;  // J/K
inline constexpr double c_light = 299792458.0;  // m/s
}  // namespace constants

// Raw experimental inputs, SI units throughout. Either kappa or finesse must
// be given (the other is derived), likewise alpha or drive_power.
struct PhysicalParams {
    double cavity_length = 0.0;   // L (m)
    double finesse = 0.0;         // dimensionless; 0 = derive from kappa
    double kappa = 0.0;           // amplitude decay (rad/s); 0 = derive from finesse
    double omega_c = 0.0;         // cavity frequency (rad/s); 0 = derive from wavelength_1
    double wavelength_1 = 0.0;    // m, drives k_1
    double membrane_reflectivity = 0.0;  // r in [0,1)
    double membrane_mass = 0.0;   // M (kg)
    double omega_m = 0.0;         // rad/s
    double quality_m = 0.0;       // Q_m
    double n_bar_m = -1.0;        // <0 = derive from temperature
    double temperature = 0.0;     // K
    double atom_mass = 0.0;       // m (kg)
    double atom_linewidth = 0.0;  // gamma (rad/s)
    double vacuum_rabi = 0.0;     // Omega_0 (rad/s)
    double atomic_detuning = 0.0; // delta (rad/s), sign free
    double drive_power = 0.0;     // P (W)
    double alpha = 0.0;           // intracavity amplitude; 0 = derive from power
    double cavity_detuning = 0.0; // Delta (rad/s)
    double lattice_slope = 1.0;   // theta(x_at)
    double lattice_intensity = 1.0;  // u(x_at) in [0,2]
    double lattice_curvature = 0.5;  // |zeta(x_at)|
    std::optional<double> membrane_position;  // x_m (m); unset = optimal f_i = 2r
    double raman_rate = 0.0;      // Gamma_R (rad/s), optional
    double geometry_factor = 0.8; // transition-dependent factor in the diffusion rate
};

// All derived couplings and decoherence rates, SI (rad/s) unless noted.
struct DerivedRates {
    double g_m = 0.0;
    double g_at = 0.0;
    double g = 0.0;  // sqrt(g_m^2 + g_at^2)
    double coupling_exact = 0.0;       // G from the two-sideband expression
    double coupling_dispersive = 0.0;  // 4 g_m g_at / Delta
    double epsilon = 0.0;
    double gamma_c_plus = 0.0;
    double gamma_c_minus = 0.0;
    double gamma_c_dispersive = 0.0;  // G kappa / Delta
    double gamma_at = 0.0;
    double gamma_m = 0.0;  // heating rate gamma_bath * n_bar
    double omega_at = 0.0;
    double alpha = 0.0;
    double kappa = 0.0;
    double delta = 0.0;  // cavity detuning actually used
    double f_c = 0.0;    // noise ratios Gamma/G
    double f_at = 0.0;
    double f_m = 0.0;
};

struct ConditionThresholds {
    double large_ratio = 10.0;     // reading of ">>"
    double balance_window = 0.2;   // reading of "approximately 1"
};

struct ConditionReport {
    double margin_1 = 0.0;    // |Delta| / max(kappa, omega_m)
    double balance_2 = 0.0;   // (4 r F/pi) / ((gamma/delta) C) * sqrt(m/M)
    double margin_3 = 0.0;    // C / (Delta / 4 kappa)
    double margin_4 = 0.0;    // fabrication-side ratio over Delta/kappa
    double resonance_alpha = 0.0;  // amplitude bringing the trap on resonance
    bool pass_1 = false, pass_2 = false, pass_3 = false, pass_4 = false;
};

// Steady drive response |alpha| = E / sqrt(Delta^2 + kappa^2), E = sqrt(2 P kappa / (hbar omega_c)).
double intracavity_amplitude(double power, double kappa, double delta, double omega_c);

DerivedRates derive_rates(const PhysicalParams& params);

// Coupling mediated by a single driven mode: 2 g_m g_at / Delta.
double single_mode_coupling(double g_m, double g_at, double delta);

ConditionReport check_strong_coupling(const PhysicalParams& params, const DerivedRates& rates,
                                      double kappa_th, const ConditionThresholds& thr = {});

// Swap-cooling optimum (2 pi Gamma_c omega_m^2)^(1/3).
double optimal_swap_coupling(double gamma_c, double omega_m);

}  // namespace camsim

#endif
