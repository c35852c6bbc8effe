#include "camsim/dynamics.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace camsim {

namespace {

using Cd = std::complex<double>;

Eigen::VectorXcd annihilation_vec(int mode, int n_modes, bool dagger = false) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * n_modes);
    v(2 * mode) = Cd(1.0 / std::sqrt(2.0), 0.0);
    v(2 * mode + 1) = Cd(0.0, (dagger ? -1.0 : 1.0) / std::sqrt(2.0));
    return v;
}

// force vectors F1,F2 = (-g_m a_m +- g_at a_at)/g over (membrane, atom)
std::pair<Eigen::VectorXcd, Eigen::VectorXcd> force_vectors(double g_m, double g_at) {
    const double g = std::hypot(g_m, g_at);
    if (g <= 0.0) throw std::invalid_argument("force_vectors: g_m = g_at = 0");
    const Eigen::VectorXcd am = annihilation_vec(0, 2);
    const Eigen::VectorXcd aat = annihilation_vec(1, 2);
    return {-(g_m / g) * am + (g_at / g) * aat, -(g_m / g) * am - (g_at / g) * aat};
}

void append_membrane_bath(std::vector<LindbladChannel>& ch, int n_modes, double gamma_m,
                          double n_bar_m) {
    if (gamma_m <= 0.0) return;
    if (n_bar_m <= 0.0) throw std::invalid_argument("membrane bath: n_bar_m must be > 0");
    const double gamma_bath = gamma_m / n_bar_m;
    ch.push_back({annihilation_vec(0, n_modes), gamma_bath * (n_bar_m + 1.0), "a_m"});
    ch.push_back({annihilation_vec(0, n_modes, true), gamma_bath * n_bar_m, "a_m_dag"});
}

void append_atom_diffusion(std::vector<LindbladChannel>& ch, int n_modes, double gamma_at) {
    if (gamma_at <= 0.0) return;
    Eigen::VectorXcd x_at = Eigen::VectorXcd::Zero(2 * n_modes);
    x_at(2) = std::sqrt(2.0);  // a_at + a_at^dag
    ch.push_back({x_at, gamma_at, "X_at"});
}

}  // namespace

Generator effective_generator(const EffectiveModel& m) {
    Generator gen;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(4, 4);
    h(0, 0) = h(1, 1) = 0.5 * m.omega_m;
    h(2, 2) = h(3, 3) = 0.5 * m.omega_at;
    h(0, 2) = h(2, 0) = -m.coupling;
    if (m.include_epsilon) {
        // -G*i*eps*(a_m a_at - h.c.) = G*eps*(X_m P_at + P_m X_at)
        h(0, 3) = h(3, 0) = 0.5 * m.coupling * m.epsilon;
        h(1, 2) = h(2, 1) = 0.5 * m.coupling * m.epsilon;
    }
    gen.hamiltonian.mat = h;

    append_membrane_bath(gen.channels, 2, m.gamma_m, m.n_bar_m);
    append_atom_diffusion(gen.channels, 2, m.gamma_at);

    if (m.rwa_cavity_decay) {
        if (m.gamma_c_plus > 0.0 || m.gamma_c_minus > 0.0) {
            auto [f1, f2] = force_vectors(m.g_m, m.g_at);
            gen.channels.push_back({f1, m.gamma_c_plus, "F1"});
            gen.channels.push_back({f2.conjugate(), m.gamma_c_plus, "F2_dag"});
            gen.channels.push_back({f1.conjugate(), m.gamma_c_minus, "F1_dag"});
            gen.channels.push_back({f2, m.gamma_c_minus, "F2"});
        }
    } else {
        auto exact = correlated_decay_channels(m.g_m, m.g_at, {m.delta, -m.delta}, m.kappa,
                                               m.omega_m, DecayMode::exact);
        for (auto& c : exact) gen.channels.push_back(std::move(c));
    }
    return gen;
}

Generator full_generator(const FullModel& m) {
    Generator gen;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(8, 8);
    h(0, 0) = h(1, 1) = 0.5 * m.omega_m;
    h(2, 2) = h(3, 3) = 0.5 * m.omega_at;
    h(4, 4) = h(5, 5) = -0.5 * m.delta_1;
    h(6, 6) = h(7, 7) = -0.5 * m.delta_2;
    // g_m (a_m+a_m^dag)[(a_1+a_1^dag)+(a_2+a_2^dag)] = 2 g_m X_m (X_c1+X_c2)
    h(0, 4) = h(4, 0) = m.g_m;
    h(0, 6) = h(6, 0) = m.g_m;
    h(2, 4) = h(4, 2) = m.g_at;
    h(2, 6) = h(6, 2) = -m.g_at;
    gen.hamiltonian.mat = h;

    if (m.kappa > 0.0) {
        gen.channels.push_back({annihilation_vec(2, 4), 2.0 * m.kappa, "a_c1"});
        gen.channels.push_back({annihilation_vec(3, 4), 2.0 * m.kappa, "a_c2"});
    }
    append_membrane_bath(gen.channels, 4, m.gamma_m, m.n_bar_m);
    append_atom_diffusion(gen.channels, 4, m.gamma_at);
    return gen;
}

std::vector<LindbladChannel> correlated_decay_channels(double g_m, double g_at,
                                                       const std::vector<double>& deltas,
                                                       double kappa, double omega_m,
                                                       DecayMode mode) {
    const double g2 = g_m * g_m + g_at * g_at;
    auto [f1, f2] = force_vectors(g_m, g_at);
    std::vector<LindbladChannel> out;
    int idx = 0;
    for (double delta : deltas) {
        if (kappa <= 0.0 && (std::abs(delta - omega_m) < 1e-12 * std::max(1.0, std::abs(omega_m)) ||
                             std::abs(delta + omega_m) < 1e-12 * std::max(1.0, std::abs(omega_m))))
            throw std::invalid_argument("correlated_decay_channels: resonant divergence at kappa = 0");
        const Cd h_plus = g2 / Cd(kappa, delta + omega_m);
        const Cd h_minus = g2 / Cd(kappa, delta - omega_m);
        const Eigen::VectorXcd f = (idx == 0) ? f1 : f2;
        const std::string tag = (idx == 0) ? "1" : "2";
        if (mode == DecayMode::rwa) {
            out.push_back({f, 2.0 * h_plus.real(), "F" + tag});
            out.push_back({f.conjugate(), 2.0 * h_minus.real(), "F" + tag + "_dag"});
        } else {
            Eigen::Matrix2cd rate_mat;
            rate_mat(0, 0) = 2.0 * h_plus.real();
            rate_mat(1, 1) = 2.0 * h_minus.real();
            rate_mat(0, 1) = h_minus + std::conj(h_plus);
            rate_mat(1, 0) = std::conj(rate_mat(0, 1));
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rate_mat);
            const double trace = rate_mat.trace().real();
            // one eigenvalue is always slightly negative (non-secular content);
            // it only grows comparable to the trace outside the fast-cavity
            // regime, where the eliminated description is invalid
            const double lowest = es.eigenvalues()(0);
            if (lowest < -1e-12 && -lowest > 0.5 * trace)
                throw std::runtime_error(
                    "correlated_decay_channels: dominant negative decay weight, "
                    "eliminated description invalid here");
            for (int k = 0; k < 2; ++k) {
                const double rate = es.eigenvalues()(k);
                const Eigen::Vector2cd w = es.eigenvectors().col(k);
                Eigen::VectorXcd jump = w(0) * f + w(1) * f.conjugate();
                out.push_back({jump, rate, "J" + tag + "_" + std::to_string(k)});
            }
        }
        ++idx;
    }
    return out;
}

QuadraticHamiltonian cavity_mediated_hamiltonian(double g_m, double g_at,
                                                 const std::vector<double>& deltas,
                                                 double kappa, double omega_m) {
    const double g2 = g_m * g_m + g_at * g_at;
    auto [f1, f2] = force_vectors(g_m, g_at);
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(4, 4);
    int idx = 0;
    for (double delta : deltas) {
        if (kappa <= 0.0 && (std::abs(delta - omega_m) < 1e-12 * std::max(1.0, std::abs(omega_m)) ||
                             std::abs(delta + omega_m) < 1e-12 * std::max(1.0, std::abs(omega_m))))
            throw std::invalid_argument("cavity_mediated_hamiltonian: resonant divergence at kappa = 0");
        const Cd h_plus = g2 / Cd(kappa, delta + omega_m);
        const Cd h_minus = g2 / Cd(kappa, delta - omega_m);
        const Eigen::VectorXcd f = (idx++ == 0) ? f1 : f2;
        const Eigen::VectorXcd a = h_minus * f + h_plus * f.conjugate();
        const Eigen::VectorXcd b = f + f.conjugate();  // real
        acc += Cd(0.0, 0.5) * (a * b.transpose() - b * a.adjoint());
    }
    // the anti-Hermitian remainder only shifts the energy by a constant
    QuadraticHamiltonian h;
    h.mat = 0.5 * (acc.real() + acc.real().transpose());
    return h;
}

GeneratorMatrices assemble_generator_matrices(const QuadraticHamiltonian& h,
                                              const std::vector<LindbladChannel>& channels) {
    const int dim = static_cast<int>(h.mat.rows());
    if (h.mat.cols() != dim || dim % 2 != 0)
        throw std::invalid_argument("assemble_generator_matrices: bad Hamiltonian dimensions");
    Eigen::MatrixXcd gamma = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& ch : channels) {
        if (ch.vec.size() != dim)
            throw std::invalid_argument("assemble_generator_matrices: channel dimension mismatch");
        gamma += (0.5 * ch.rate) * (ch.vec.conjugate() * ch.vec.transpose());
    }
    const Eigen::MatrixXd sig = symplectic_form(dim / 2);
    GeneratorMatrices gen;
    gen.drift = 2.0 * sig * (h.mat + gamma.imag());
    gen.diffusion = 2.0 * sig * gamma.real() * sig.transpose();
    gen.diffusion = 0.5 * (gen.diffusion + gen.diffusion.transpose()).eval();
    return gen;
}

MomentMap MomentMap::then(const MomentMap& later) const {
    MomentMap out;
    out.transfer = later.transfer * transfer;
    out.noise = later.transfer * noise * later.transfer.transpose() + later.noise;
    out.noise = 0.5 * (out.noise + out.noise.transpose()).eval();
    return out;
}

void MomentMap::apply(GaussianState& state) const {
    state.mean = transfer * state.mean;
    state.cov = transfer * state.cov * transfer.transpose() + noise;
    state.cov = 0.5 * (state.cov + state.cov.transpose()).eval();
}

MomentMap moment_map(const GeneratorMatrices& gen, double dt) {
    const int dim = static_cast<int>(gen.drift.rows());
    if (dt < 0.0) throw std::invalid_argument("moment_map: dt must be >= 0");
    // keep |Q|*h moderate so the e^{+Q^T h} block of the auxiliary
    // exponential cannot swamp the noise integral
    const double norm = gen.drift.cwiseAbs().rowwise().sum().maxCoeff();
    int doublings = 0;
    double h = dt;
    while (norm * h > 8.0 && doublings < 60) {
        h *= 0.5;
        ++doublings;
    }
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(2 * dim, 2 * dim);
    block.topLeftCorner(dim, dim) = gen.drift * h;
    block.topRightCorner(dim, dim) = gen.diffusion * h;
    block.bottomRightCorner(dim, dim) = -gen.drift.transpose() * h;
    const Eigen::MatrixXd e = block.exp();
    MomentMap map;
    map.transfer = e.topLeftCorner(dim, dim);
    map.noise = e.topRightCorner(dim, dim) * map.transfer.transpose();
    map.noise = 0.5 * (map.noise + map.noise.transpose()).eval();
    for (int k = 0; k < doublings; ++k) map = map.then(map);
    return map;
}

GaussianState propagate_const(const GaussianState& state, const GeneratorMatrices& gen, double t) {
    if (t < 0.0) throw std::invalid_argument("propagate_const: t must be >= 0");
    GaussianState out = state;
    moment_map(gen, t).apply(out);
    return out;
}

Trajectory propagate_const_sampled(const GaussianState& state, const GeneratorMatrices& gen,
                                   double t_end, int n_samples, bool track_transfer) {
    if (n_samples < 1) throw std::invalid_argument("propagate_const_sampled: n_samples must be >= 1");
    const double dt = t_end / n_samples;
    const MomentMap step = moment_map(gen, dt);
    Trajectory traj;
    traj.times.reserve(n_samples + 1);
    traj.states.reserve(n_samples + 1);
    GaussianState cur = state;
    Eigen::MatrixXd transfer = Eigen::MatrixXd::Identity(state.cov.rows(), state.cov.cols());
    traj.times.push_back(0.0);
    traj.states.push_back(cur);
    if (track_transfer) traj.transfers.push_back(transfer);
    for (int k = 1; k <= n_samples; ++k) {
        step.apply(cur);
        traj.times.push_back(k * dt);
        traj.states.push_back(cur);
        if (track_transfer) {
            transfer = step.transfer * transfer;
            traj.transfers.push_back(transfer);
        }
    }
    return traj;
}

Trajectory propagate_timedep(const GaussianState& state, const GeneratorFn& gen_fn,
                             const TimeGrid& grid, bool track_transfer) {
    if (grid.n_samples < 1 || grid.t_end <= 0.0)
        throw std::invalid_argument("propagate_timedep: bad time grid");
    const double sample_dt = grid.t_end / grid.n_samples;
    const double h_max = (2.0 * M_PI / grid.max_frequency) / grid.steps_per_period;
    const int substeps = static_cast<int>(std::ceil(sample_dt / h_max));
    if (substeps < 1)
        throw std::invalid_argument("propagate_timedep: step-size constraint unsatisfiable");
    const double h = sample_dt / substeps;

    const int dim = static_cast<int>(state.cov.rows());
    Eigen::VectorXd d = state.mean;
    Eigen::MatrixXd cov = state.cov;
    Eigen::MatrixXd transfer = Eigen::MatrixXd::Identity(dim, dim);

    Trajectory traj;
    traj.times.push_back(0.0);
    traj.states.push_back(state);
    if (track_transfer) traj.transfers.push_back(transfer);

    auto cov_rhs = [](const GeneratorMatrices& g, const Eigen::MatrixXd& c) -> Eigen::MatrixXd {
        return g.drift * c + c * g.drift.transpose() + g.diffusion;
    };

    double t = 0.0;
    for (int s = 1; s <= grid.n_samples; ++s) {
        for (int i = 0; i < substeps; ++i) {
            const GeneratorMatrices g1 = gen_fn(t);
            const GeneratorMatrices g2 = gen_fn(t + 0.5 * h);
            const GeneratorMatrices g4 = gen_fn(t + h);

            const Eigen::VectorXd kd1 = g1.drift * d;
            const Eigen::VectorXd kd2 = g2.drift * (d + 0.5 * h * kd1);
            const Eigen::VectorXd kd3 = g2.drift * (d + 0.5 * h * kd2);
            const Eigen::VectorXd kd4 = g4.drift * (d + h * kd3);
            d += (h / 6.0) * (kd1 + 2.0 * kd2 + 2.0 * kd3 + kd4);

            const Eigen::MatrixXd kc1 = cov_rhs(g1, cov);
            const Eigen::MatrixXd kc2 = cov_rhs(g2, cov + 0.5 * h * kc1);
            const Eigen::MatrixXd kc3 = cov_rhs(g2, cov + 0.5 * h * kc2);
            const Eigen::MatrixXd kc4 = cov_rhs(g4, cov + h * kc3);
            cov += (h / 6.0) * (kc1 + 2.0 * kc2 + 2.0 * kc3 + kc4);
            cov = 0.5 * (cov + cov.transpose()).eval();

            if (track_transfer) {
                const Eigen::MatrixXd kt1 = g1.drift * transfer;
                const Eigen::MatrixXd kt2 = g2.drift * (transfer + 0.5 * h * kt1);
                const Eigen::MatrixXd kt3 = g2.drift * (transfer + 0.5 * h * kt2);
                const Eigen::MatrixXd kt4 = g4.drift * (transfer + h * kt3);
                transfer += (h / 6.0) * (kt1 + 2.0 * kt2 + 2.0 * kt3 + kt4);
            }
            t += h;
        }
        t = s * sample_dt;  // avoid step-count drift
        GaussianState snap;
        snap.n_modes = dim / 2;
        snap.mean = d;
        snap.cov = cov;
        traj.times.push_back(t);
        traj.states.push_back(snap);
        if (track_transfer) traj.transfers.push_back(transfer);
    }
    return traj;
}

}  // namespace camsim
