#include "camsim/system_model.hpp"

#include <cmath>
#include <stdexcept>

namespace camsim {

using constants::c_light;
using constants::hbar;
using constants::k_boltzmann;

double intracavity_amplitude(double power, double kappa, double delta, double omega_c) {
    if (kappa <= 0.0) throw std::invalid_argument("intracavity_amplitude: kappa must be > 0");
    if (power < 0.0) throw std::invalid_argument("intracavity_amplitude: power must be >= 0");
    if (omega_c <= 0.0) throw std::invalid_argument("intracavity_amplitude: omega_c must be > 0");
    const double drive = std::sqrt(2.0 * power * kappa / (hbar * omega_c));
    return drive / std::sqrt(delta * delta + kappa * kappa);
}

namespace {

double resolve_kappa(const PhysicalParams& p) {
    if (p.kappa > 0.0) return p.kappa;
    if (p.finesse > 0.0 && p.cavity_length > 0.0)
        return M_PI * c_light / (2.0 * p.finesse * p.cavity_length);
    throw std::invalid_argument("params: need kappa, or finesse with cavity_length");
}

double resolve_finesse(const PhysicalParams& p, double kappa) {
    if (p.finesse > 0.0) return p.finesse;
    return M_PI * c_light / (2.0 * kappa * p.cavity_length);
}

double resolve_omega_c(const PhysicalParams& p) {
    if (p.omega_c > 0.0) return p.omega_c;
    if (p.wavelength_1 > 0.0) return 2.0 * M_PI * c_light / p.wavelength_1;
    throw std::invalid_argument("params: need omega_c or wavelength_1");
}

double resolve_n_bar_m(const PhysicalParams& p) {
    if (p.n_bar_m >= 0.0) return p.n_bar_m;
    if (p.temperature > 0.0 && p.omega_m > 0.0)
        return 1.0 / std::expm1(hbar * p.omega_m / (k_boltzmann * p.temperature));
    throw std::invalid_argument("params: need n_bar_m or temperature");
}

double membrane_coupling_factor(const PhysicalParams& p, double k1) {
    const double r = p.membrane_reflectivity;
    if (!p.membrane_position) return 2.0 * r;
    const double phase = 2.0 * k1 * (*p.membrane_position);
    return 2.0 * r * std::sin(phase) / std::sqrt(1.0 - r * r * std::cos(phase) * std::cos(phase));
}

}  // namespace

DerivedRates derive_rates(const PhysicalParams& p) {
    if (p.omega_m <= 0.0) throw std::invalid_argument("derive_rates: omega_m must be > 0");
    if (p.membrane_mass <= 0.0 || p.atom_mass <= 0.0)
        throw std::invalid_argument("derive_rates: masses must be > 0");
    if (p.membrane_reflectivity < 0.0 || p.membrane_reflectivity >= 1.0)
        throw std::invalid_argument("derive_rates: reflectivity must be in [0,1)");
    if (p.atomic_detuning == 0.0) throw std::invalid_argument("derive_rates: atomic detuning must be nonzero");
    if (p.cavity_length <= 0.0) throw std::invalid_argument("derive_rates: cavity_length must be > 0");

    DerivedRates out;
    out.kappa = resolve_kappa(p);
    out.delta = p.cavity_detuning;
    const double omega_c = resolve_omega_c(p);
    const double k1 = omega_c / c_light;

    out.alpha = (p.alpha > 0.0)
                    ? p.alpha
                    : intracavity_amplitude(p.drive_power, out.kappa, out.delta, omega_c);

    const double u0 = std::abs(p.vacuum_rabi * p.vacuum_rabi / p.atomic_detuning);

    // optical trap frequency and the atomic length scales that follow from it
    const double zeta = std::abs(p.lattice_curvature);
    if (zeta <= 0.0) throw std::invalid_argument("derive_rates: lattice curvature must be nonzero");
    out.omega_at = out.alpha * k1 * std::sqrt(hbar * u0 * zeta / p.atom_mass);
    if (out.omega_at <= 0.0) throw std::invalid_argument("derive_rates: trap frequency came out zero");
    const double l_at = std::sqrt(hbar / (2.0 * p.atom_mass * out.omega_at));
    const double eta = k1 * l_at;

    const double l_m = std::sqrt(hbar / (2.0 * p.membrane_mass * p.omega_m));
    const double g0 = membrane_coupling_factor(p, k1) * (l_m / p.cavity_length) * omega_c;

    out.g_m = g0 * out.alpha;
    out.g_at = u0 * out.alpha * eta * std::abs(p.lattice_slope);
    out.g = std::hypot(out.g_m, out.g_at);

    const double kap = out.kappa, del = out.delta, om = p.omega_m;
    const double dp = kap * kap + (del + om) * (del + om);
    const double dm = kap * kap + (del - om) * (del - om);
    if (dp == 0.0 || dm == 0.0)
        throw std::invalid_argument("derive_rates: resonant divergence Delta = +-omega_m at kappa = 0");
    out.coupling_exact = 2.0 * out.g_m * out.g_at * ((del - om) / dm + (del + om) / dp);
    if (del == 0.0) throw std::invalid_argument("derive_rates: dispersive coupling needs Delta != 0");
    out.coupling_dispersive = 4.0 * out.g_m * out.g_at / del;
    out.epsilon = 2.0 * kap * om / (del * del + kap * kap - om * om);
    out.gamma_c_plus = 2.0 * kap * (out.g_m * out.g_m + out.g_at * out.g_at) / dp;
    out.gamma_c_minus = 2.0 * kap * (out.g_m * out.g_m + out.g_at * out.g_at) / dm;
    out.gamma_c_dispersive = out.coupling_dispersive * kap / del;

    const double s_e = (out.alpha * p.vacuum_rabi / p.atomic_detuning) *
                       (out.alpha * p.vacuum_rabi / p.atomic_detuning);
    out.gamma_at = eta * eta * s_e * p.atom_linewidth *
                   (2.0 - p.geometry_factor * p.lattice_intensity);

    if (p.quality_m <= 0.0) throw std::invalid_argument("derive_rates: quality_m must be > 0");
    out.gamma_m = (p.omega_m / p.quality_m) * resolve_n_bar_m(p);

    const double g_ref = std::abs(out.coupling_exact);
    if (g_ref > 0.0) {
        out.f_c = 0.5 * (out.gamma_c_plus + out.gamma_c_minus) / g_ref;
        out.f_at = out.gamma_at / g_ref;
        out.f_m = out.gamma_m / g_ref;
    }
    return out;
}

double single_mode_coupling(double g_m, double g_at, double delta) {
    if (delta == 0.0) throw std::invalid_argument("single_mode_coupling: Delta must be nonzero");
    return 2.0 * g_m * g_at / delta;
}

ConditionReport check_strong_coupling(const PhysicalParams& p, const DerivedRates& r,
                                      double kappa_th, const ConditionThresholds& thr) {
    ConditionReport rep;
    const double omega_c = resolve_omega_c(p);
    const double finesse = resolve_finesse(p, r.kappa);
    const double cooperativity = p.vacuum_rabi * p.vacuum_rabi / (r.kappa * p.atom_linewidth);
    const double refl = p.membrane_reflectivity;

    rep.margin_1 = std::abs(r.delta) / std::max(r.kappa, p.omega_m);
    rep.balance_2 = (4.0 * refl * finesse / M_PI) /
                    ((p.atom_linewidth / std::abs(p.atomic_detuning)) * cooperativity) *
                    std::sqrt(p.atom_mass / p.membrane_mass);
    rep.margin_3 = cooperativity / (std::abs(r.delta) / (4.0 * r.kappa));
    const double gamma_bath = p.omega_m / p.quality_m;
    rep.margin_4 = (8.0 * refl * refl * finesse * finesse / (M_PI * M_PI)) *
                   (kappa_th / gamma_bath) *
                   (hbar * omega_c / (p.membrane_mass * c_light * c_light)) /
                   (std::abs(r.delta) / r.kappa);

    // trap-resonance amplitude from omega_m = eta^2 alpha^2 Omega_0^2 / |delta|,
    // with eta evaluated at the resonant trap frequency
    const double k1 = omega_c / c_light;
    const double eta2 = hbar * k1 * k1 / (2.0 * p.atom_mass * p.omega_m);
    const double u0 = p.vacuum_rabi * p.vacuum_rabi / std::abs(p.atomic_detuning);
    rep.resonance_alpha = std::sqrt(p.omega_m / (eta2 * u0));

    rep.pass_1 = rep.margin_1 >= thr.large_ratio;
    rep.pass_2 = std::abs(rep.balance_2 - 1.0) <= thr.balance_window;
    rep.pass_3 = rep.margin_3 >= thr.large_ratio;
    rep.pass_4 = rep.margin_4 >= thr.large_ratio;
    return rep;
}

double optimal_swap_coupling(double gamma_c, double omega_m) {
    if (gamma_c <= 0.0 || omega_m <= 0.0)
        throw std::invalid_argument("optimal_swap_coupling: inputs must be > 0");
    return std::cbrt(2.0 * M_PI * gamma_c * omega_m * omega_m);
}

}  // namespace camsim
