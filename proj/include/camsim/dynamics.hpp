#ifndef CAMSIM_DYNAMICS_HPP
#define CAMSIM_DYNAMICS_HPP

#include "camsim/gaussian.hpp"

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace camsim {

// Coefficient matrix of a quadratic Hamiltonian R^T H R in the fixed
// quadrature ordering; always real symmetric.
struct QuadraticHamiltonian {
    Eigen::MatrixXd mat;
};

// Jump operator L = vec . R with decay rate entering as (rate/2) D[L].
struct LindbladChannel {
    Eigen::VectorXcd vec;
    double rate = 0.0;
    std::string label;
};

// Drift and diffusion of the first/second moment equations
//   d' = Q d,   cov' = Q cov + cov Q^T + N.
struct GeneratorMatrices {
    Eigen::MatrixXd drift;      // Q
    Eigen::MatrixXd diffusion;  // N, symmetric PSD
};

struct Generator {
    QuadraticHamiltonian hamiltonian;
    std::vector<LindbladChannel> channels;
};

// Reduced two-mode model (membrane = mode 0, atom = mode 1), all rates in
// units of omega_m. gamma_m is the membrane heating rate gamma_bath*n_bar;
// it splits into a cooling/heating pair through n_bar_m.
struct EffectiveModel {
    double omega_m = 1.0;
    double omega_at = 1.0;
    double coupling = 0.0;  // G
    double epsilon = 0.0;
    double gamma_c_plus = 0.0;
    double gamma_c_minus = 0.0;
    double gamma_m = 0.0;
    double gamma_at = 0.0;
    double n_bar_m = 50.0;
    double g_m = 1.0;  // only the ratio g_m : g_at enters the force vectors
    double g_at = 1.0;
    bool include_epsilon = false;
    // when rwa_cavity_decay is false the exact correlated-decay channels are
    // used instead of the sideband-resolved pairs; requires delta and kappa
    bool rwa_cavity_decay = true;
    double delta = 0.0;
    double kappa = 0.0;
};

// Four-mode model (membrane, atom, cavity 1, cavity 2), units of omega_m.
struct FullModel {
    double omega_m = 1.0;
    double omega_at = 1.0;
    double g_m = 0.0;
    double g_at = 0.0;
    double delta_1 = 0.0;
    double delta_2 = 0.0;
    double kappa = 0.0;
    double gamma_m = 0.0;
    double gamma_at = 0.0;
    double n_bar_m = 50.0;
};

enum class DecayMode { exact, rwa };

Generator effective_generator(const EffectiveModel& model);
Generator full_generator(const FullModel& model);

// Cavity-mediated decay channels over (membrane, atom) for the given set of
// drive detunings. In exact mode each detuning contributes the two jump
// processes obtained by diagonalizing its 2x2 rate matrix over (F, F^dag);
// in rwa mode the diagonal D[F], D[F^dag] pair is returned.
std::vector<LindbladChannel> correlated_decay_channels(double g_m, double g_at,
                                                       const std::vector<double>& deltas,
                                                       double kappa, double omega_m,
                                                       DecayMode mode);

// Cavity-mediated coherent coupling (and frequency corrections) over
// (membrane, atom), reduced to a real symmetric quadrature form.
QuadraticHamiltonian cavity_mediated_hamiltonian(double g_m, double g_at,
                                                 const std::vector<double>& deltas,
                                                 double kappa, double omega_m);

GeneratorMatrices assemble_generator_matrices(const QuadraticHamiltonian& h,
                                              const std::vector<LindbladChannel>& channels);
inline GeneratorMatrices assemble_generator_matrices(const Generator& g) {
    return assemble_generator_matrices(g.hamiltonian, g.channels);
}

// Exact one-step moment map for a constant generator:
//   d -> transfer d,   cov -> transfer cov transfer^T + noise.
struct MomentMap {
    Eigen::MatrixXd transfer;
    Eigen::MatrixXd noise;
    MomentMap then(const MomentMap& later) const;
    void apply(GaussianState& state) const;
};

MomentMap moment_map(const GeneratorMatrices& gen, double dt);

// Closed-form propagation under a constant generator.
GaussianState propagate_const(const GaussianState& state, const GeneratorMatrices& gen, double t);

struct Trajectory {
    std::vector<double> times;
    std::vector<GaussianState> states;
    // accumulated transfer matrices e^{Qt} per sample (only when requested)
    std::vector<Eigen::MatrixXd> transfers;
};

struct TimeGrid {
    double t_end = 0.0;
    int n_samples = 200;
    // largest angular frequency present in the generator; the integrator step
    // must satisfy h <= (2*pi/max_frequency)/steps_per_period
    double max_frequency = 1.0;
    double steps_per_period = 40.0;
};

Trajectory propagate_const_sampled(const GaussianState& state, const GeneratorMatrices& gen,
                                   double t_end, int n_samples, bool track_transfer = false);

using GeneratorFn = std::function<GeneratorMatrices(double)>;

// Fixed-step classical RK4 on the moment equations with per-step covariance
// symmetrization; sampled on the uniform grid.
Trajectory propagate_timedep(const GaussianState& state, const GeneratorFn& gen_fn,
                             const TimeGrid& grid, bool track_transfer = false);

}  // namespace camsim

#endif
