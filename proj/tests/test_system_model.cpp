#include "camsim/system_model.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

using namespace camsim;

namespace {

// parameter set in the strong-coupling regime, loosely a cesium atom in a
// short high-finesse cavity with a SiN membrane
PhysicalParams reference_params() {
    PhysicalParams p;
    p.cavity_length = 50e-6;
    p.finesse = 2e5;
    p.wavelength_1 = 852e-9;
    p.membrane_reflectivity = 0.4;
    p.membrane_mass = 1e-12;        // kg
    p.omega_m = 2.0 * M_PI * 1e6;   // rad/s
    p.quality_m = 1e7;
    p.temperature = 2.0;
    p.atom_mass = 2.21e-25;         // kg
    p.atom_linewidth = 2.0 * M_PI * 5.2e6;
    p.vacuum_rabi = 2.0 * M_PI * 1.5e8;
    p.atomic_detuning = -2.0 * M_PI * 3e12;
    p.alpha = 50.0;
    p.cavity_detuning = 2.0 * M_PI * 3e7;
    return p;
}

// dimensionless evaluation helper: the coupling formulas with omega_m = 1
double coupling_exact(double g_m, double g_at, double delta, double kappa, double om) {
    const double dp = kappa * kappa + (delta + om) * (delta + om);
    const double dm = kappa * kappa + (delta - om) * (delta - om);
    return 2.0 * g_m * g_at * ((delta - om) / dm + (delta + om) / dp);
}

}  // namespace

TEST_SUITE("system_model") {

TEST_CASE("intracavity amplitude limits") {
    const double omega_c = 2.0 * M_PI * constants::c_light / 852e-9;
    const double kappa = 2.0 * M_PI * 1e6;
    const double power = 1e-6;
    const double drive = std::sqrt(2.0 * power * kappa / (constants::hbar * omega_c));

    CHECK(intracavity_amplitude(power, kappa, 0.0, omega_c) ==
          doctest::Approx(drive / kappa).epsilon(1e-12));
    CHECK(intracavity_amplitude(0.0, kappa, 1e7, omega_c) == 0.0);

    const double delta = 100.0 * kappa;
    const double far = intracavity_amplitude(power, kappa, delta, omega_c);
    CHECK(far * far == doctest::Approx((kappa / delta) * (kappa / delta) * 2.0 * power /
                                       (kappa * constants::hbar * omega_c))
                           .epsilon(1e-3));
    CHECK_THROWS_AS(intracavity_amplitude(1.0, 0.0, 0.0, omega_c), std::invalid_argument);
}

TEST_CASE("two-sideband coupling against the dispersive form") {
    // g_m = g_at = 1, Delta = 10, kappa = 0 in units of omega_m
    const double exact = coupling_exact(1.0, 1.0, 10.0, 0.0, 1.0);
    CHECK(exact == doctest::Approx(2.0 * (9.0 / 81.0 + 11.0 / 121.0)).epsilon(1e-12));
    CHECK(exact == doctest::Approx(0.404040).epsilon(1e-5));
    CHECK(4.0 * 1.0 * 1.0 / 10.0 == doctest::Approx(0.4));
    // relative gap approximately (omega_m/Delta)^2
    CHECK(std::abs(exact / 0.4 - 1.0) == doctest::Approx(0.01).epsilon(0.05));
}

TEST_CASE("epsilon correction value") {
    // kappa/Delta = omega/Delta = 0.1
    const double delta = 10.0, kappa = 1.0, om = 1.0;
    const double eps = 2.0 * kappa * om / (delta * delta + kappa * kappa - om * om);
    CHECK(eps == doctest::Approx(0.0200).epsilon(1e-10));
}

TEST_CASE("derived rates are mutually consistent") {
    const PhysicalParams p = reference_params();
    const DerivedRates r = derive_rates(p);
    CHECK(r.g == doctest::Approx(std::hypot(r.g_m, r.g_at)).epsilon(1e-12));
    CHECK(r.g_m > 0.0);
    CHECK(r.g_at > 0.0);
    CHECK(r.gamma_at > 0.0);
    CHECK(r.gamma_m > 0.0);
    CHECK(r.omega_at > 0.0);
    CHECK(r.gamma_c_minus > r.gamma_c_plus);  // Delta > 0
    // dispersive shortcut within the expansion error
    const double u = p.omega_m / r.delta, k = r.kappa / r.delta;
    CHECK(std::abs(r.coupling_exact / r.coupling_dispersive - 1.0) <=
          2.0 * (u * u + k * k) + 1e-12);
}

TEST_CASE("cavity decoherence to coupling ratio follows kappa over Delta") {
    // g_m = g_at, kappa/Delta = 0.1, far-detuned
    const double om = 1.0, kappa = 40.0, delta = 400.0, g = 1.0;
    const double coupling = coupling_exact(g, g, delta, kappa, om);
    const double gamma_disp = (4.0 * g * g / delta) * kappa / delta;
    CHECK(gamma_disp / coupling == doctest::Approx(0.1).epsilon(1e-3));
}

TEST_CASE("single-mode coupling is half the dispersive two-mode value") {
    CHECK(single_mode_coupling(1.0, 1.0, 10.0) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(single_mode_coupling(0.3, 0.0, 5.0) == 0.0);
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> gdist(0.1, 2.0), ddist(5.0, 50.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double gm = gdist(rng), gat = gdist(rng), delta = ddist(rng);
        CHECK(single_mode_coupling(gm, gat, delta) ==
              doctest::Approx(0.5 * 4.0 * gm * gat / delta).epsilon(1e-12));
    }
    CHECK_THROWS_AS(single_mode_coupling(1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("dispersive convergence over an admissible grid") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> gdist(0.1, 1.0), kdist(0.0, 2.0), scale(10.0, 100.0);
    std::bernoulli_distribution sign(0.5);
    for (int trial = 0; trial < 100; ++trial) {
        const double gm = gdist(rng), gat = gdist(rng), kappa = kdist(rng);
        const double om = 1.0;
        double delta = scale(rng) * std::max(om, kappa);
        if (sign(rng)) delta = -delta;
        const double u = om / delta, k = kappa / delta;
        const double bound = 2.0 * (u * u + k * k);
        const double exact = coupling_exact(gm, gat, delta, kappa, om);
        const double disp = 4.0 * gm * gat / delta;
        CHECK(std::abs(exact / disp - 1.0) <= bound + 1e-12);
        if (kappa > 0.0) {
            // sideband rates: the dispersive identity holds for their geometric mean
            const double g2 = gm * gm + gat * gat;
            const double gp = 2.0 * kappa * g2 / (kappa * kappa + (delta + om) * (delta + om));
            const double gmn = 2.0 * kappa * g2 / (kappa * kappa + (delta - om) * (delta - om));
            const double target = (4.0 * gm * gat / delta) * (kappa / delta) * g2 / (2.0 * gm * gat);
            CHECK(std::abs(std::sqrt(gp * gmn) / target - 1.0) <= bound + 1e-12);
        }
    }
}

TEST_CASE("sideband rates are balanced only to leading order") {
    const double om = 1.0, kappa = 1.0, g = 0.7;
    for (double delta : {15.0, 40.0}) {
        const double g2 = 2.0 * g * g;
        const double gp = 2.0 * kappa * g2 / (kappa * kappa + (delta + om) * (delta + om));
        const double gmn = 2.0 * kappa * g2 / (kappa * kappa + (delta - om) * (delta - om));
        CHECK(gmn > gp);
        CHECK(std::abs(gmn / gp - 1.0) < 5.0 * om / delta);
    }
}

TEST_CASE("decoherence-to-coupling ratio is minimized at balanced couplings") {
    const double om = 1.0, kappa = 1.0, delta = 30.0, product = 0.36;
    double best_ratio = 1e300, best_gm = 0.0;
    for (double gm = 0.2; gm <= 1.8001; gm += 0.01) {
        const double gat = product / gm;
        const double coupling = coupling_exact(gm, gat, delta, kappa, om);
        const double g2 = gm * gm + gat * gat;
        const double gp = 2.0 * kappa * g2 / (kappa * kappa + (delta + om) * (delta + om));
        const double ratio = gp / coupling;
        if (ratio < best_ratio) {
            best_ratio = ratio;
            best_gm = gm;
        }
    }
    CHECK(best_gm == doctest::Approx(std::sqrt(product)).epsilon(0.02));
}

TEST_CASE("strong-coupling report") {
    const PhysicalParams p = reference_params();
    const DerivedRates r = derive_rates(p);
    const double kappa_th = 1e4;
    const ConditionReport rep = check_strong_coupling(p, r, kappa_th);
    CHECK(rep.margin_1 > 0.0);
    CHECK(rep.margin_3 > 0.0);
    CHECK(rep.resonance_alpha > 0.0);

    SUBCASE("margin 3 matches its definition") {
        const double coop = p.vacuum_rabi * p.vacuum_rabi / (r.kappa * p.atom_linewidth);
        CHECK(rep.margin_3 == doctest::Approx(coop / (std::abs(r.delta) / (4.0 * r.kappa)))
                                  .epsilon(1e-12));
    }
    SUBCASE("finesse-to-cooperativity ratio is invariant under length changes") {
        PhysicalParams longer = p;
        longer.cavity_length *= 2.0;
        longer.finesse = 0.0;
        longer.kappa = r.kappa;  // fixed linewidth
        // fixed beam cross-section: the mode volume doubles with the length
        longer.vacuum_rabi = p.vacuum_rabi / std::sqrt(2.0);
        const DerivedRates r2 = derive_rates(longer);
        const ConditionReport rep2 = check_strong_coupling(longer, r2, kappa_th);
        CHECK(rep2.balance_2 == doctest::Approx(rep.balance_2).epsilon(1e-10));
    }
    SUBCASE("drive power drops out of all margins") {
        PhysicalParams hot = p;
        hot.alpha *= 3.7;
        const DerivedRates rh = derive_rates(hot);
        const ConditionReport rep_hot = check_strong_coupling(hot, rh, kappa_th);
        CHECK(rep_hot.margin_1 == doctest::Approx(rep.margin_1).epsilon(1e-12));
        CHECK(rep_hot.balance_2 == doctest::Approx(rep.balance_2).epsilon(1e-12));
        CHECK(rep_hot.margin_3 == doctest::Approx(rep.margin_3).epsilon(1e-12));
        CHECK(rep_hot.margin_4 == doctest::Approx(rep.margin_4).epsilon(1e-12));
        CHECK(rep_hot.resonance_alpha == doctest::Approx(rep.resonance_alpha).epsilon(1e-12));
    }
    SUBCASE("balance point constructed to equal one") {
        PhysicalParams tuned = p;
        tuned.membrane_reflectivity = p.membrane_reflectivity / rep.balance_2;
        if (tuned.membrane_reflectivity < 1.0) {
            const DerivedRates rt = derive_rates(tuned);
            const ConditionReport rb = check_strong_coupling(tuned, rt, kappa_th);
            CHECK(rb.balance_2 == doctest::Approx(1.0).epsilon(1e-10));
            CHECK(rb.pass_2);
        }
    }
}

TEST_CASE("swap-cooling optimum") {
    CHECK(optimal_swap_coupling(1e-3, 1.0) == doctest::Approx(0.18446).epsilon(1e-4));
    CHECK(optimal_swap_coupling(8e-3, 1.0) ==
          doctest::Approx(2.0 * optimal_swap_coupling(1e-3, 1.0)).epsilon(1e-12));
    CHECK_THROWS_AS(optimal_swap_coupling(0.0, 1.0), std::invalid_argument);

    // interior minimum of pi Gamma_c/G + (G/2 omega)^2
    const double gamma_c = 4e-4, om = 1.0;
    const double g_opt = optimal_swap_coupling(gamma_c, om);
    auto n_final = [&](double g) { return M_PI * gamma_c / g + std::pow(g / (2.0 * om), 2); };
    CHECK(n_final(g_opt) < n_final(g_opt * 1.01));
    CHECK(n_final(g_opt) < n_final(g_opt * 0.99));
}

TEST_CASE("input validation") {
    PhysicalParams p = reference_params();
    p.atomic_detuning = 0.0;
    CHECK_THROWS_AS(derive_rates(p), std::invalid_argument);
    p = reference_params();
    p.kappa = 0.0;
    p.finesse = 0.0;
    CHECK_THROWS_AS(derive_rates(p), std::invalid_argument);
    p = reference_params();
    p.membrane_reflectivity = 1.0;
    CHECK_THROWS_AS(derive_rates(p), std::invalid_argument);
    p = reference_params();
    p.cavity_detuning = 0.0;
    CHECK_THROWS_AS(derive_rates(p), std::invalid_argument);
}

}  // TEST_SUITE
