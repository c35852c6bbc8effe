// Timing comparison of the serial reference kernels against the OpenMP ones:
// the truncated-space Liouvillian application and the heat-map relaxation.
#include "camsim/dynamics.hpp"
#include "camsim/oracle.hpp"
#include "camsim/thermal.hpp"

#include <chrono>
#include <cstdio>

#ifdef CAMSIM_HAVE_OPENMP
#include <omp.h>
#endif

using namespace camsim;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double time_liouvillian(int n_tr, ExecutionPolicy policy, int reps) {
    EffectiveModel m;
    m.coupling = 0.034;
    m.gamma_c_plus = m.gamma_c_minus = m.gamma_m = m.gamma_at = 0.05 * m.coupling;
    const Generator gen = effective_generator(m);
    const TwoModeLindblad liouv(1.0, 1.0, m.coupling, gen.channels, n_tr);
    auto rho = TwoModeLindblad::product_density(TwoModeLindblad::fock_vector(0, n_tr),
                                                TwoModeLindblad::coherent_vector({1.0, 0.0}, n_tr));
    Eigen::MatrixXcd out;
    liouv.apply(rho, out, policy);  // warm up
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) liouv.apply(rho, out, policy);
    return seconds_since(t0) / reps;
}

double time_heat(int grid_n, ExecutionPolicy policy) {
    HeatConfig cfg;
    cfg.grid_n = grid_n;
    const auto t0 = std::chrono::steady_clock::now();
    const auto result = steady_state_heat_map(cfg, policy);
    const double dt = seconds_since(t0);
    std::printf("    (converged in %ld sweeps, T_peak = %.3f K)\n", result.sweeps, result.t_peak);
    return dt;
}

}  // namespace

int main() {
#ifdef CAMSIM_HAVE_OPENMP
    std::printf("OpenMP enabled, max threads = %d\n\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run the serial kernel\n\n");
#endif

    std::printf("Liouvillian application (seconds per call)\n");
    std::printf("%8s %12s %12s %8s\n", "n_tr", "serial", "parallel", "speedup");
    for (int n_tr : {16, 20, 25}) {
        const int reps = n_tr >= 25 ? 20 : 50;
        const double ts = time_liouvillian(n_tr, ExecutionPolicy::serial, reps);
        const double tp = time_liouvillian(n_tr, ExecutionPolicy::parallel, reps);
        std::printf("%8d %12.3e %12.3e %8.2f\n", n_tr, ts, tp, ts / tp);
    }

    std::printf("\nHeat-map relaxation (seconds per solve)\n");
    std::printf("%8s %12s %12s %8s\n", "grid", "serial", "parallel", "speedup");
    for (int n : {129, 257}) {
        const double ts = time_heat(n, ExecutionPolicy::serial);
        const double tp = time_heat(n, ExecutionPolicy::parallel);
        std::printf("%8d %12.3e %12.3e %8.2f\n", n, ts, tp, ts / tp);
    }
    return 0;
}
