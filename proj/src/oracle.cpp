#include "camsim/oracle.hpp"

#include "camsim/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace camsim {

namespace {

using Cd = std::complex<double>;
using Triplet = Eigen::Triplet<Cd>;

Eigen::SparseMatrix<Cd> single_mode_annihilation(int n_tr) {
    std::vector<Triplet> trips;
    trips.reserve(n_tr);
    for (int n = 1; n < n_tr; ++n) trips.emplace_back(n - 1, n, Cd(std::sqrt(double(n)), 0.0));
    Eigen::SparseMatrix<Cd> a(n_tr, n_tr);
    a.setFromTriplets(trips.begin(), trips.end());
    return a;
}

Eigen::SparseMatrix<Cd> kron(const Eigen::SparseMatrix<Cd>& a, const Eigen::SparseMatrix<Cd>& b) {
    std::vector<Triplet> trips;
    trips.reserve(static_cast<size_t>(a.nonZeros()) * b.nonZeros());
    for (int ka = 0; ka < a.outerSize(); ++ka)
        for (Eigen::SparseMatrix<Cd>::InnerIterator ia(a, ka); ia; ++ia)
            for (int kb = 0; kb < b.outerSize(); ++kb)
                for (Eigen::SparseMatrix<Cd>::InnerIterator ib(b, kb); ib; ++ib)
                    trips.emplace_back(ia.row() * b.rows() + ib.row(),
                                       ia.col() * b.cols() + ib.col(), ia.value() * ib.value());
    Eigen::SparseMatrix<Cd> out(a.rows() * b.rows(), a.cols() * b.cols());
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

double trace_real(const Eigen::MatrixXcd& rho) {
    double tr = 0.0;
    for (int i = 0; i < rho.rows(); ++i) tr += rho(i, i).real();
    return tr;
}

// Re Tr(S rho) for sparse S
double trace_product_real(const TwoModeLindblad::SparseRM& s, const Eigen::MatrixXcd& rho) {
    Cd tr(0.0, 0.0);
    for (int k = 0; k < s.outerSize(); ++k)
        for (TwoModeLindblad::SparseRM::InnerIterator it(s, k); it; ++it)
            tr += it.value() * rho(it.col(), it.row());
    return tr.real();
}

}  // namespace

void sparse_left_multiply(const TwoModeLindblad::SparseRM& a, const Eigen::MatrixXcd& rho,
                          Eigen::MatrixXcd& out, ExecutionPolicy policy) {
    const int n = static_cast<int>(rho.cols());
    out.resize(a.rows(), n);
    if (policy == ExecutionPolicy::parallel) {
#pragma omp parallel for schedule(static)
        for (int c = 0; c < n; ++c) {
            for (int i = 0; i < a.outerSize(); ++i) {
                Cd acc(0.0, 0.0);
                for (TwoModeLindblad::SparseRM::InnerIterator it(a, i); it; ++it)
                    acc += it.value() * rho(it.col(), c);
                out(i, c) = acc;
            }
        }
    } else {
        for (int c = 0; c < n; ++c) {
            for (int i = 0; i < a.outerSize(); ++i) {
                Cd acc(0.0, 0.0);
                for (TwoModeLindblad::SparseRM::InnerIterator it(a, i); it; ++it)
                    acc += it.value() * rho(it.col(), c);
                out(i, c) = acc;
            }
        }
    }
}

void sparse_right_multiply(const Eigen::MatrixXcd& rho, const TwoModeLindblad::SparseCM& b,
                           Eigen::MatrixXcd& out, ExecutionPolicy policy) {
    const int rows = static_cast<int>(rho.rows());
    out.resize(rows, b.cols());
    if (policy == ExecutionPolicy::parallel) {
#pragma omp parallel for schedule(static)
        for (int j = 0; j < b.outerSize(); ++j) {
            out.col(j).setZero();
            for (TwoModeLindblad::SparseCM::InnerIterator it(b, j); it; ++it)
                out.col(j) += it.value() * rho.col(it.row());
        }
    } else {
        for (int j = 0; j < b.outerSize(); ++j) {
            out.col(j).setZero();
            for (TwoModeLindblad::SparseCM::InnerIterator it(b, j); it; ++it)
                out.col(j) += it.value() * rho.col(it.row());
        }
    }
}

TwoModeLindblad::TwoModeLindblad(double omega_m, double omega_at, double coupling,
                                 const std::vector<LindbladChannel>& channels, int n_tr)
    : n_tr_(n_tr), dim_(n_tr * n_tr) {
    if (n_tr < 3) throw std::invalid_argument("TwoModeLindblad: n_tr too small");
    const auto a = single_mode_annihilation(n_tr);
    Eigen::SparseMatrix<Cd> eye(n_tr, n_tr);
    eye.setIdentity();
    const Eigen::SparseMatrix<Cd> a_m = kron(a, eye);
    const Eigen::SparseMatrix<Cd> a_at = kron(eye, a);
    const auto adj = [](const Eigen::SparseMatrix<Cd>& s) {
        return Eigen::SparseMatrix<Cd>(s.adjoint());
    };

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<Eigen::SparseMatrix<Cd>> quad(4);
    quad[0] = inv_sqrt2 * (a_m + adj(a_m));
    quad[1] = Cd(0.0, -inv_sqrt2) * (a_m - adj(a_m));
    quad[2] = inv_sqrt2 * (a_at + adj(a_at));
    quad[3] = Cd(0.0, -inv_sqrt2) * (a_at - adj(a_at));

    Eigen::SparseMatrix<Cd> ham =
        (omega_m * (adj(a_m) * a_m) + omega_at * (adj(a_at) * a_at) -
         coupling * ((a_m + adj(a_m)) * (a_at + adj(a_at))))
            .pruned();

    Eigen::SparseMatrix<Cd> drift = (Cd(0.0, -1.0) * ham).eval();
    for (const auto& ch : channels) {
        if (ch.vec.size() != 4)
            throw std::invalid_argument("TwoModeLindblad: channels must act on two modes");
        if (ch.rate < 0.0)
            throw std::invalid_argument("TwoModeLindblad: jump rates must be nonnegative");
        Eigen::SparseMatrix<Cd> op(dim_, dim_);
        for (int j = 0; j < 4; ++j)
            if (ch.vec(j) != Cd(0.0, 0.0)) op += ch.vec(j) * quad[j];
        op.prune(Cd(0.0, 0.0));
        drift -= (0.5 * ch.rate) * (adj(op) * op);
        Eigen::SparseMatrix<Cd> scaled = std::sqrt(ch.rate) * op;
        jump_.emplace_back(scaled);
        jump_adj_.emplace_back(adj(scaled));
    }
    drift_ = drift;
    drift_adj_ = adj(drift);

    for (auto& q : quad) quad_.emplace_back(q);
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j)
            quad_pair_.emplace_back((0.5 * (quad[i] * quad[j] + quad[j] * quad[i])).eval());
}

void TwoModeLindblad::apply(const Dense& rho, Dense& out, ExecutionPolicy policy) const {
    static thread_local Dense tmp1, tmp2;
    sparse_left_multiply(drift_, rho, out, policy);
    sparse_right_multiply(rho, drift_adj_, tmp1, policy);
    out += tmp1;
    for (size_t k = 0; k < jump_.size(); ++k) {
        sparse_left_multiply(jump_[k], rho, tmp1, policy);
        sparse_right_multiply(tmp1, jump_adj_[k], tmp2, policy);
        out += tmp2;
    }
}

TwoModeLindblad::Dense TwoModeLindblad::propagate(Dense rho, double t, double h,
                                                  ExecutionPolicy policy, double leak_tol) const {
    if (t < 0.0 || h <= 0.0) throw std::invalid_argument("TwoModeLindblad::propagate: bad times");
    const int steps = std::max(1, static_cast<int>(std::lround(t / h)));
    const double dt = t / steps;
    Dense k1, k2, k3, k4, work;
    for (int s = 0; s < steps; ++s) {
        apply(rho, k1, policy);
        work = rho + (0.5 * dt) * k1;
        apply(work, k2, policy);
        work = rho + (0.5 * dt) * k2;
        apply(work, k3, policy);
        work = rho + dt * k3;
        apply(work, k4, policy);
        rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        const double tr = trace_real(rho);
        if (std::abs(tr - 1.0) > 1e-6)
            throw std::runtime_error("TwoModeLindblad: trace drift beyond tolerance, step too large");
        rho /= tr;
        if (truncation_edge_population(rho) > leak_tol)
            throw std::runtime_error("TwoModeLindblad: truncation leak, increase n_tr");
    }
    return rho;
}

TwoModeLindblad::Moments TwoModeLindblad::moments(const Dense& rho) const {
    Moments m;
    for (int i = 0; i < 4; ++i) m.mean(i) = trace_product_real(quad_[i], rho);
    int idx = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            const double second = trace_product_real(quad_pair_[idx++], rho);
            m.cov(i, j) = m.cov(j, i) = second - m.mean(i) * m.mean(j);
        }
    return m;
}

double TwoModeLindblad::wigner_origin(const Dense& rho) const {
    double parity = 0.0;
    for (int nm = 0; nm < n_tr_; ++nm) {
        double popul = 0.0;
        for (int na = 0; na < n_tr_; ++na) popul += rho(nm * n_tr_ + na, nm * n_tr_ + na).real();
        parity += (nm % 2 == 0 ? popul : -popul);
    }
    return parity;
}

double TwoModeLindblad::truncation_edge_population(const Dense& rho) const {
    double edge = 0.0;
    const int top = n_tr_ - 1;
    for (int k = 0; k < n_tr_; ++k) {
        edge = std::max(edge, std::abs(rho(top * n_tr_ + k, top * n_tr_ + k).real()));
        edge = std::max(edge, std::abs(rho(k * n_tr_ + top, k * n_tr_ + top).real()));
    }
    return edge;
}

Eigen::VectorXcd TwoModeLindblad::coherent_vector(std::complex<double> beta, int n_tr) {
    Eigen::VectorXcd psi(n_tr);
    psi(0) = std::exp(-0.5 * std::norm(beta));
    for (int n = 1; n < n_tr; ++n) psi(n) = psi(n - 1) * beta / std::sqrt(double(n));
    return psi;
}

Eigen::VectorXcd TwoModeLindblad::fock_vector(int n, int n_tr) {
    if (n < 0 || n >= n_tr) throw std::invalid_argument("fock_vector: n out of range");
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(n_tr);
    psi(n) = Cd(1.0, 0.0);
    return psi;
}

TwoModeLindblad::Dense TwoModeLindblad::product_density(const Eigen::VectorXcd& psi_m,
                                                        const Eigen::VectorXcd& psi_at) {
    const int nm = static_cast<int>(psi_m.size()), na = static_cast<int>(psi_at.size());
    Eigen::VectorXcd joint(nm * na);
    for (int i = 0; i < nm; ++i)
        for (int j = 0; j < na; ++j) joint(i * na + j) = psi_m(i) * psi_at(j);
    return joint * joint.adjoint();
}

CrossEngineDeltas cross_engine_swap_check(double f, std::complex<double> beta,
                                          double g_over_omega, int n_tr, double step,
                                          ExecutionPolicy policy, double step_fock) {
    if (step_fock <= 0.0) step_fock = step;
    EffectiveModel model;
    model.coupling = g_over_omega;
    model.gamma_c_plus = model.gamma_c_minus = f * g_over_omega;
    model.gamma_m = f * g_over_omega;
    model.gamma_at = f * g_over_omega;
    const Generator gen = effective_generator(model);
    const GeneratorMatrices qn = assemble_generator_matrices(gen);
    const double t_swap = M_PI / (2.0 * model.coupling);
    const MomentMap map = moment_map(qn, t_swap);

    const TwoModeLindblad oracle(model.omega_m, model.omega_at, model.coupling, gen.channels, n_tr);
    CrossEngineDeltas deltas;

    {  // coherent start: first and second moments
        GaussianState st = make_state({Coherent{1, beta}}, 2);
        map.apply(st);
        auto rho = TwoModeLindblad::product_density(
            TwoModeLindblad::fock_vector(0, n_tr), TwoModeLindblad::coherent_vector(beta, n_tr));
        rho = oracle.propagate(std::move(rho), t_swap, step, policy);
        const auto m = oracle.moments(rho);
        deltas.mean_abs = (m.mean - st.mean).cwiseAbs().maxCoeff();
        deltas.cov_abs = (m.cov - st.cov).cwiseAbs().maxCoeff();
    }
    {  // one-phonon start: Wigner value at the membrane origin
        GaussianState vac = vacuum_state(2);
        map.apply(vac);
        const double closed_form = fock_negativity(map.transfer, vac.cov);
        auto rho = TwoModeLindblad::product_density(TwoModeLindblad::fock_vector(0, n_tr),
                                                    TwoModeLindblad::fock_vector(1, n_tr));
        rho = oracle.propagate(std::move(rho), t_swap, step_fock, policy);
        deltas.wigner_abs = std::abs(oracle.wigner_origin(rho) - closed_form);
    }
    return deltas;
}

double TwoModeLindblad::membrane_overlap(const Dense& rho, const Eigen::VectorXcd& psi_target) const {
    if (psi_target.size() != n_tr_) throw std::invalid_argument("membrane_overlap: dimension mismatch");
    // <psi| rho_m |psi> with rho_m the partial trace over the atom
    Cd val(0.0, 0.0);
    for (int i = 0; i < n_tr_; ++i)
        for (int j = 0; j < n_tr_; ++j) {
            Cd elem(0.0, 0.0);
            for (int k = 0; k < n_tr_; ++k) elem += rho(i * n_tr_ + k, j * n_tr_ + k);
            val += std::conj(psi_target(i)) * elem * psi_target(j);
        }
    return val.real();
}

}  // namespace camsim
