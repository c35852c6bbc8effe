#include "camsim/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace camsim {

Eigen::MatrixXd symplectic_form(int n_modes) {
    if (n_modes < 1) throw std::invalid_argument("symplectic_form: n_modes must be >= 1");
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        s(2 * k, 2 * k + 1) = 1.0;
        s(2 * k + 1, 2 * k) = -1.0;
    }
    return s;
}

GaussianState vacuum_state(int n_modes) {
    if (n_modes < 1) throw std::invalid_argument("vacuum_state: n_modes must be >= 1");
    GaussianState st;
    st.n_modes = n_modes;
    st.mean = Eigen::VectorXd::Zero(2 * n_modes);
    st.cov = 0.5 * Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
    return st;
}

namespace {

void check_mode(int mode, int n_modes, const char* what) {
    if (mode < 0 || mode >= n_modes)
        throw std::invalid_argument(std::string(what) + ": mode index out of range");
}

}  // namespace

GaussianState make_state(const std::vector<ModeSpec>& specs, int n_modes) {
    GaussianState st = vacuum_state(n_modes);
    for (const auto& spec : specs) {
        if (std::holds_alternative<Vacuum>(spec)) continue;
        if (const auto* c = std::get_if<Coherent>(&spec)) {
            check_mode(c->mode, n_modes, "make_state(coherent)");
            st.mean(2 * c->mode) = std::sqrt(2.0) * c->alpha.real();
            st.mean(2 * c->mode + 1) = std::sqrt(2.0) * c->alpha.imag();
        } else if (const auto* s = std::get_if<Squeezed>(&spec)) {
            check_mode(s->mode, n_modes, "make_state(squeezed)");
            if (s->s <= 0.0) throw std::invalid_argument("make_state: squeezing s must be > 0");
            st.cov(2 * s->mode, 2 * s->mode) = 0.5 * s->s;
            st.cov(2 * s->mode + 1, 2 * s->mode + 1) = 0.5 / s->s;
        } else if (const auto* t = std::get_if<Thermal>(&spec)) {
            check_mode(t->mode, n_modes, "make_state(thermal)");
            if (t->n_bar < 0.0) throw std::invalid_argument("make_state: n_bar must be >= 0");
            st.cov(2 * t->mode, 2 * t->mode) = t->n_bar + 0.5;
            st.cov(2 * t->mode + 1, 2 * t->mode + 1) = t->n_bar + 0.5;
        }
    }
    return st;
}

std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& cov) {
    const int dim = static_cast<int>(cov.rows());
    if (dim % 2 != 0 || cov.cols() != dim)
        throw std::invalid_argument("symplectic_eigenvalues: covariance must be square of even dimension");
    const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("symplectic_eigenvalues: covariance not symmetric");

    const Eigen::MatrixXd m = symplectic_form(dim / 2) * cov;
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, /*computeEigenvectors=*/false);
    std::vector<double> mods(dim);
    for (int i = 0; i < dim; ++i) {
        const std::complex<double> ev = es.eigenvalues()(i);
        if (std::abs(ev.real()) > 1e-8 * std::max(1.0, std::abs(ev)))
            throw std::runtime_error("symplectic_eigenvalues: eigenvalues of sigma*cov not purely imaginary");
        mods[i] = std::abs(ev);
    }
    std::sort(mods.begin(), mods.end());
    // eigenvalues come in +-i*nu pairs; keep one per pair
    std::vector<double> nus(dim / 2);
    for (int k = 0; k < dim / 2; ++k) nus[k] = 0.5 * (mods[2 * k] + mods[2 * k + 1]);
    return nus;
}

GaussianState partial_transpose(const GaussianState& state, int mode) {
    if (state.n_modes != 2)
        throw std::invalid_argument("partial_transpose: only two-mode states supported");
    check_mode(mode, state.n_modes, "partial_transpose");
    Eigen::VectorXd flip = Eigen::VectorXd::Ones(4);
    flip(2 * mode + 1) = -1.0;
    GaussianState out = state;
    out.mean = flip.asDiagonal() * state.mean;
    out.cov = flip.asDiagonal() * state.cov * flip.asDiagonal();
    return out;
}

void validate(const GaussianState& state) {
    if (state.n_modes < 1 || state.mean.size() != 2 * state.n_modes ||
        state.cov.rows() != 2 * state.n_modes || state.cov.cols() != 2 * state.n_modes)
        throw std::runtime_error("validate: inconsistent state dimensions");
    const double scale = std::max(1.0, state.cov.cwiseAbs().maxCoeff());
    if ((state.cov - state.cov.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::runtime_error("validate: covariance not symmetric");
    const auto nus = symplectic_eigenvalues(state.cov);
    if (nus.front() < 0.5 - 1e-9)
        throw std::runtime_error("validate: uncertainty principle violated (symplectic eigenvalue < 1/2)");
}

}  // namespace camsim
