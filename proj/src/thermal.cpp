#include "camsim/thermal.hpp"

#include <cmath>
#include <stdexcept>

namespace camsim {

double lumped_temperature_rise(double circulating_power, double finesse, double thermal_link) {
    if (circulating_power < 0.0 || finesse <= 0.0 || thermal_link <= 0.0)
        throw std::invalid_argument("lumped_temperature_rise: nonpositive input");
    const double absorbed = (2.0 * M_PI / finesse) * circulating_power;
    return absorbed / thermal_link;
}

namespace {

// one red-black SOR half sweep over cells with (i+j) % 2 == color
void sor_sweep(std::vector<double>& t, const std::vector<double>& rhs, int n, double omega,
               int color, ExecutionPolicy policy) {
    const int last = n - 1;
    if (policy == ExecutionPolicy::parallel) {
#pragma omp parallel for schedule(static)
        for (int i = 1; i < last; ++i) {
            for (int j = 1 + ((i + 1 + color) % 2); j < last; j += 2) {
                const int k = i * n + j;
                const double gs =
                    0.25 * (t[k - 1] + t[k + 1] + t[k - n] + t[k + n] + rhs[k]);
                t[k] += omega * (gs - t[k]);
            }
        }
    } else {
        for (int i = 1; i < last; ++i) {
            for (int j = 1 + ((i + 1 + color) % 2); j < last; j += 2) {
                const int k = i * n + j;
                const double gs =
                    0.25 * (t[k - 1] + t[k + 1] + t[k - n] + t[k + n] + rhs[k]);
                t[k] += omega * (gs - t[k]);
            }
        }
    }
}

// residual of the five-point system, reduced row by row in a fixed order so
// serial and parallel runs agree bit for bit
double residual_norm(const std::vector<double>& t, const std::vector<double>& rhs, int n,
                     std::vector<double>& row_sums, ExecutionPolicy policy) {
    const int last = n - 1;
    if (policy == ExecutionPolicy::parallel) {
#pragma omp parallel for schedule(static)
        for (int i = 1; i < last; ++i) {
            double acc = 0.0;
            for (int j = 1; j < last; ++j) {
                const int k = i * n + j;
                const double r = t[k - 1] + t[k + 1] + t[k - n] + t[k + n] - 4.0 * t[k] + rhs[k];
                acc += r * r;
            }
            row_sums[i] = acc;
        }
    } else {
        for (int i = 1; i < last; ++i) {
            double acc = 0.0;
            for (int j = 1; j < last; ++j) {
                const int k = i * n + j;
                const double r = t[k - 1] + t[k + 1] + t[k - n] + t[k + n] - 4.0 * t[k] + rhs[k];
                acc += r * r;
            }
            row_sums[i] = acc;
        }
    }
    double total = 0.0;
    for (int i = 1; i < last; ++i) total += row_sums[i];
    return std::sqrt(total);
}

}  // namespace

HeatMapResult steady_state_heat_map(const HeatConfig& cfg, ExecutionPolicy policy) {
    if (cfg.grid_n < 64) throw std::invalid_argument("steady_state_heat_map: grid_n must be >= 64");
    if (cfg.beam_waist <= 0.0 || cfg.beam_waist >= 0.5 * cfg.side)
        throw std::invalid_argument("steady_state_heat_map: need 0 < w0 < side/2");
    if (cfg.conductivity <= 0.0 || cfg.thickness <= 0.0)
        throw std::invalid_argument("steady_state_heat_map: conductivity and thickness must be > 0");

    const int n = cfg.grid_n;
    const double h = cfg.side / (n - 1);
    const double sheet = cfg.conductivity * cfg.thickness;  // W/K
    const double absorbed = (2.0 * M_PI / cfg.finesse) * cfg.circulating_power;

    // source: uniform over the central disk, normalized to integrate to P_a
    std::vector<double> rhs(static_cast<size_t>(n) * n, 0.0);
    long inside = 0;
    for (int i = 1; i < n - 1; ++i)
        for (int j = 1; j < n - 1; ++j) {
            const double x = i * h - 0.5 * cfg.side;
            const double y = j * h - 0.5 * cfg.side;
            if (x * x + y * y <= cfg.beam_waist * cfg.beam_waist) {
                rhs[static_cast<size_t>(i) * n + j] = 1.0;
                ++inside;
            }
        }
    if (inside == 0) throw std::invalid_argument("steady_state_heat_map: grid too coarse for beam waist");
    const double q_cell = absorbed / (inside * h * h);  // W/m^2
    const double rhs_value = q_cell * h * h / sheet;    // K
    for (auto& v : rhs) v *= rhs_value;

    // solve for the temperature rise; frame temperature added at the end
    std::vector<double> t(static_cast<size_t>(n) * n, 0.0);
    std::vector<double> row_sums(n, 0.0);
    const double omega = 2.0 / (1.0 + std::sin(M_PI / (n - 1)));
    const double norm_rhs = residual_norm(std::vector<double>(n * n, 0.0), rhs, n, row_sums, policy);

    HeatMapResult res;
    res.n = n;
    res.absorbed_power = absorbed;
    double rel = 1.0;
    long sweeps = 0;
    while (sweeps < cfg.max_sweeps) {
        sor_sweep(t, rhs, n, omega, 0, policy);
        sor_sweep(t, rhs, n, omega, 1, policy);
        ++sweeps;
        if (sweeps % 32 == 0 || sweeps == cfg.max_sweeps) {
            rel = residual_norm(t, rhs, n, row_sums, policy) / norm_rhs;
            if (rel < cfg.tolerance) break;
        }
    }
    if (rel >= cfg.tolerance)
        throw std::runtime_error("steady_state_heat_map: no convergence, residual " +
                                 std::to_string(rel));

    res.sweeps = sweeps;
    res.residual = rel;
    res.temperature.resize(t.size());
    double total = 0.0, peak = -1.0;
    for (size_t k = 0; k < t.size(); ++k) {
        res.temperature[k] = cfg.frame_temperature + t[k];
        total += res.temperature[k];
        peak = std::max(peak, res.temperature[k]);
    }
    res.t_peak = peak;
    res.t_avg = total / static_cast<double>(t.size());
    return res;
}

}  // namespace camsim
