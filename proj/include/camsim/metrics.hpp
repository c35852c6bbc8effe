#ifndef CAMSIM_METRICS_HPP
#define CAMSIM_METRICS_HPP

#include "camsim/gaussian.hpp"

#include <Eigen/Dense>

namespace camsim {

// Covariance-only transfer fidelity 1/sqrt(det(cov_target_mode(t) + cov_source(0))).
// Insensitive to the coherent rotation of the displacement.
double transfer_fidelity(const Eigen::Matrix2d& cov_m_t, const Eigen::Matrix2d& cov_at_0);

// Displacement-aware Gaussian fidelity between two single-mode states.
double gaussian_fidelity(const Eigen::Vector2d& d1, const Eigen::Matrix2d& cov1,
                         const Eigen::Vector2d& d2, const Eigen::Matrix2d& cov2);

struct MinVariance {
    double s = 1.0;       // twice the smallest eigenvalue of the block
    double angle = 0.0;   // orientation of the minimal quadrature
    double db = 0.0;      // 10*log10(s)
};
MinVariance min_variance(const Eigen::Matrix2d& cov_block);

double occupation(const GaussianState& state, int mode);

// Logarithmic negativity of a two-mode Gaussian state (base-2 logarithm).
double log_negativity(const GaussianState& state);

// Relative Wigner-function value at the phase-space origin of the target mode
// when the source mode starts in the one-phonon Fock state and every other
// mode starts in vacuum. `transfer` is the accumulated moment transfer matrix
// and `cov` the covariance evolved from the all-vacuum initial condition.
double fock_negativity(const Eigen::MatrixXd& transfer, const Eigen::MatrixXd& cov,
                       int target_mode = 0, int source_mode = 1);

// Rotating-wave closed form for the same quantity under equal-sideband decay.
double fock_negativity_rwa(double t, double coupling, double gamma_c, double gamma_m,
                           double gamma_at);

struct RwaPrediction {
    double t_swap = 0.0;             // pi/(2G)
    double fidelity_swap = 1.0;      // 1/(1+pi f)
    double n_bar_swap = 0.0;         // pi f
    double squeezing_offset = 0.0;   // additive broadening 2 pi f of s(t)
    double fock_negativity_swap = 0.0;
};
RwaPrediction rwa_predictions(double f, double coupling);

}  // namespace camsim

#endif
