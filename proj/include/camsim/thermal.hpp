#ifndef CAMSIM_THERMAL_HPP
#define CAMSIM_THERMAL_HPP

#include "camsim/parallel.hpp"

#include <vector>

namespace camsim {

// Membrane absorption heating. The membrane is a square sheet of side
// `side`, clamped to the frame temperature on its edge; the absorbed power
// is deposited uniformly over the central disk of radius `beam_waist`.
struct HeatConfig {
    double circulating_power = 850e-6;  // P_c (W)
    double finesse = 2e5;
    double thermal_link = 10e-9;        // k_B * kappa_th (W/K)
    double frame_temperature = 2.0;     // T0 (K)
    double conductivity = 0.05;         // k_th (W/m K)
    double side = 1e-3;                 // m
    double thickness = 50e-9;           // m
    double beam_waist = 10e-6;          // w0 (m)
    int grid_n = 257;                   // nodes per side, >= 64
    double tolerance = 1e-10;           // relative residual target
    long max_sweeps = 2000000;
};

// Absorbed fraction 2*pi/finesse of the circulating power over the thermal link.
double lumped_temperature_rise(double circulating_power, double finesse, double thermal_link);

struct HeatMapResult {
    int n = 0;
    std::vector<double> temperature;  // row-major n x n field (K)
    double t_peak = 0.0;
    double t_avg = 0.0;
    double absorbed_power = 0.0;  // W
    long sweeps = 0;
    double residual = 0.0;  // relative, at exit
};

// Steady sheet-conduction solve of the five-point Poisson problem by
// red-black successive over-relaxation.
HeatMapResult steady_state_heat_map(const HeatConfig& config,
                                    ExecutionPolicy policy = ExecutionPolicy::parallel);

}  // namespace camsim

#endif
