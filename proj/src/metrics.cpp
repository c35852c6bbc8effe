#include "camsim/metrics.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace camsim {

double transfer_fidelity(const Eigen::Matrix2d& cov_m_t, const Eigen::Matrix2d& cov_at_0) {
    const Eigen::Matrix2d sum = cov_m_t + cov_at_0;
    const double det = sum.determinant();
    if (det <= 0.0 || sum(0, 0) <= 0.0)
        throw std::runtime_error("transfer_fidelity: covariance sum not positive definite");
    return 1.0 / std::sqrt(det);
}

double gaussian_fidelity(const Eigen::Vector2d& d1, const Eigen::Matrix2d& cov1,
                         const Eigen::Vector2d& d2, const Eigen::Matrix2d& cov2) {
    const Eigen::Matrix2d sum = cov1 + cov2;
    const double det = sum.determinant();
    if (det <= 0.0 || sum(0, 0) <= 0.0)
        throw std::runtime_error("gaussian_fidelity: covariance sum not positive definite");
    const Eigen::Vector2d delta = d1 - d2;
    return std::exp(-0.5 * delta.dot(sum.inverse() * delta)) / std::sqrt(det);
}

MinVariance min_variance(const Eigen::Matrix2d& cov_block) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(cov_block);
    MinVariance out;
    out.s = 2.0 * es.eigenvalues()(0);
    const Eigen::Vector2d v = es.eigenvectors().col(0);
    out.angle = std::atan2(v(1), v(0));
    out.db = 10.0 * std::log10(out.s);
    return out;
}

double occupation(const GaussianState& state, int mode) {
    if (mode < 0 || mode >= state.n_modes) throw std::invalid_argument("occupation: bad mode index");
    const int i = 2 * mode;
    return 0.5 * (state.cov(i, i) + state.cov(i + 1, i + 1) - 1.0) +
           0.5 * (state.mean(i) * state.mean(i) + state.mean(i + 1) * state.mean(i + 1));
}

double log_negativity(const GaussianState& state) {
    const GaussianState pt = partial_transpose(state, 1);
    const auto nus = symplectic_eigenvalues(pt.cov);
    const double nu_min = nus.front();
    if (nu_min <= 0.0) throw std::runtime_error("log_negativity: invalid covariance");
    if (2.0 * nu_min >= 1.0 - 1e-10) return 0.0;  // separable up to eigensolver rounding
    return -std::log2(2.0 * nu_min);
}

double fock_negativity(const Eigen::MatrixXd& transfer, const Eigen::MatrixXd& cov,
                       int target_mode, int source_mode) {
    const int dim = static_cast<int>(transfer.rows());
    // coherent-family displacement of the source mode: d(0;a) = a*w + conj(a)*conj(w)
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(dim);
    w(2 * source_mode) = std::complex<double>(1.0 / std::sqrt(2.0), 0.0);
    w(2 * source_mode + 1) = std::complex<double>(0.0, -1.0 / std::sqrt(2.0));
    const Eigen::VectorXcd u = std::complex<double>(0.0, 1.0) * (transfer * w);

    const int i = 2 * target_mode;
    const double gxx = cov(i, i), gxp = cov(i, i + 1), gpp = cov(i + 1, i + 1);
    // characteristic-function exponent restricted to the target mode, in the
    // real/imaginary parts (a,b) of the phase-space variable
    Eigen::Matrix2d m;
    m << gpp, -gxp, -gxp, gxx;
    const double det = m.determinant();
    if (det <= 0.0) throw std::runtime_error("fock_negativity: Gaussian integral does not converge");

    const std::complex<double> u0 = u(i), u1 = u(i + 1);
    Eigen::Matrix2d p;  // |u0*b - u1*a|^2 as a quadratic form in (a,b)
    p << std::norm(u1), -(u0 * std::conj(u1)).real(), -(u0 * std::conj(u1)).real(), std::norm(u0);
    const double corr = (p * m.inverse()).trace();
    return (1.0 - corr) / (2.0 * std::sqrt(det));
}

double fock_negativity_rwa(double t, double coupling, double gamma_c, double gamma_m,
                           double gamma_at) {
    if (coupling <= 0.0 && gamma_m != gamma_at)
        throw std::invalid_argument("fock_negativity_rwa: G = 0 with unequal rates");
    const double n_bar = 0.5 * (2.0 * gamma_c + gamma_m + gamma_at) * t;
    const double osc = (coupling > 0.0)
                           ? std::sin(2.0 * coupling * t) * (gamma_m - gamma_at) / (2.0 * coupling)
                           : 0.0;
    const double cosv = std::cos(2.0 * coupling * t);
    const double den = 1.0 + 2.0 * n_bar + osc;
    return (2.0 * n_bar + cosv + osc) / (den * den);
}

RwaPrediction rwa_predictions(double f, double coupling) {
    if (f < 0.0 || coupling <= 0.0) throw std::invalid_argument("rwa_predictions: need f >= 0, G > 0");
    RwaPrediction p;
    p.t_swap = M_PI / (2.0 * coupling);
    p.fidelity_swap = 1.0 / (1.0 + M_PI * f);
    p.n_bar_swap = M_PI * f;
    p.squeezing_offset = 2.0 * M_PI * f;
    const double g = f * coupling;
    p.fock_negativity_swap = fock_negativity_rwa(p.t_swap, coupling, g, g, g);
    return p;
}

}  // namespace camsim
