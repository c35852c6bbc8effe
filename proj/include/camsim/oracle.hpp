#ifndef CAMSIM_ORACLE_HPP
#define CAMSIM_ORACLE_HPP

#include "camsim/dynamics.hpp"
#include "camsim/parallel.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <vector>

namespace camsim {

// Brute-force two-mode Lindblad integrator on a truncated Fock space,
// used by tests to certify the Gaussian moment engine. Mode 0 is the
// membrane (slow index), mode 1 the atom.
class TwoModeLindblad {
  public:
    using Dense = Eigen::MatrixXcd;
    using SparseRM = Eigen::SparseMatrix<std::complex<double>, Eigen::RowMajor>;
    using SparseCM = Eigen::SparseMatrix<std::complex<double>, Eigen::ColMajor>;

    // Builds -i[H, .] + sum_k (rate_k/2) D[L_k . R] with truncated ladder
    // operators; the channel vectors are the same objects the Gaussian
    // generator consumes, the Fock-space realization is independent.
    TwoModeLindblad(double omega_m, double omega_at, double coupling,
                    const std::vector<LindbladChannel>& channels, int n_tr);

    int n_tr() const { return n_tr_; }
    int dim() const { return dim_; }

    // One application of the Liouvillian.
    void apply(const Dense& rho, Dense& out, ExecutionPolicy policy) const;

    // Fixed-step RK4 with per-step trace renormalization. Throws when the
    // population of the truncation edge exceeds leak_tol.
    Dense propagate(Dense rho, double t, double h,
                    ExecutionPolicy policy = ExecutionPolicy::parallel,
                    double leak_tol = 1e-6) const;

    struct Moments {
        Eigen::Vector4d mean;
        Eigen::Matrix4d cov;
    };
    Moments moments(const Dense& rho) const;

    // Parity of the membrane mode; equals the Wigner-origin value in the
    // convention normalized to the one-phonon Fock state.
    double wigner_origin(const Dense& rho) const;

    double truncation_edge_population(const Dense& rho) const;

    static Eigen::VectorXcd coherent_vector(std::complex<double> beta, int n_tr);
    static Eigen::VectorXcd fock_vector(int n, int n_tr);
    // rho = |psi_m x psi_at><...|
    static Dense product_density(const Eigen::VectorXcd& psi_m, const Eigen::VectorXcd& psi_at);

    // overlap <psi_target| rho_m |psi_target> with the membrane reduced state
    double membrane_overlap(const Dense& rho, const Eigen::VectorXcd& psi_target) const;

  private:
    int n_tr_;
    int dim_;
    SparseRM drift_;       // -iH - sum (rate/2) L^dag L
    SparseCM drift_adj_;
    std::vector<SparseRM> jump_;       // sqrt(rate)-scaled jump operators
    std::vector<SparseCM> jump_adj_;
    std::vector<SparseRM> quad_;       // X_m, P_m, X_at, P_at
    std::vector<SparseRM> quad_pair_;  // symmetrized products, row-major packed
};

// Swap runs at noise ratio f compared between the truncated-space integrator
// and the Gaussian moment engine at t = pi/(2G): largest moment deviations for
// a coherent start and the Wigner-origin deviation for a one-phonon start.
struct CrossEngineDeltas {
    double mean_abs = 0.0;
    double cov_abs = 0.0;
    double wigner_abs = 0.0;
};
// step_fock = 0 reuses `step`; the parity metric converges in h much faster
// than the second moments, so the one-phonon run tolerates a coarser step.
CrossEngineDeltas cross_engine_swap_check(double f, std::complex<double> beta,
                                          double g_over_omega, int n_tr, double step,
                                          ExecutionPolicy policy = ExecutionPolicy::parallel,
                                          double step_fock = 0.0);

// Kernels shared by the Liouvillian application; exposed for the benchmark
// and the serial/parallel equivalence tests.
void sparse_left_multiply(const TwoModeLindblad::SparseRM& a, const Eigen::MatrixXcd& rho,
                          Eigen::MatrixXcd& out, ExecutionPolicy policy);
void sparse_right_multiply(const Eigen::MatrixXcd& rho, const TwoModeLindblad::SparseCM& b,
                           Eigen::MatrixXcd& out, ExecutionPolicy policy);

}  // namespace camsim

#endif
