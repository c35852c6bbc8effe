#ifndef CAMSIM_GAUSSIAN_HPP
#define CAMSIM_GAUSSIAN_HPP

#include <Eigen/Dense>

#include <complex>
#include <variant>
#include <vector>

namespace camsim {

// Gaussian state of n bosonic modes in dimensionless quadratures.
// Ordering is (X1,P1,X2,P2,...); the vacuum covariance is (1/2)*identity.
struct GaussianState {
    int n_modes = 0;
    Eigen::VectorXd mean;  // length 2n
    Eigen::MatrixXd cov;   // 2n x 2n, symmetric
};

// Single-mode state specifications, composable per mode via make_state().
struct Vacuum {};
struct Coherent {
    int mode = 0;
    std::complex<double> alpha{0.0, 0.0};
};
struct Squeezed {
    int mode = 0;
    double s = 1.0;  // minimal variance is s/2; s < 1 squeezes X
};
struct Thermal {
    int mode = 0;
    double n_bar = 0.0;
};
using ModeSpec = std::variant<Vacuum, Coherent, Squeezed, Thermal>;

// Block-diagonal symplectic form with 2x2 blocks [[0,1],[-1,0]].
Eigen::MatrixXd symplectic_form(int n_modes);

GaussianState vacuum_state(int n_modes);

// Starts from vacuum and applies each spec to its mode.
GaussianState make_state(const std::vector<ModeSpec>& specs, int n_modes);

// Moduli of the (purely imaginary) eigenvalue pairs of sigma*cov,
// one per mode, ascending. Throws if cov is not symmetric or the
// eigenvalues have a real residue beyond 1e-8.
std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& cov);

// Momentum-sign flip of one mode in a two-mode state.
GaussianState partial_transpose(const GaussianState& state, int mode);

// Symmetry and uncertainty checks; throws std::runtime_error on violation.
void validate(const GaussianState& state);

}  // namespace camsim

#endif
