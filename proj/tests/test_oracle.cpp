#include "camsim/oracle.hpp"

#include "camsim/metrics.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace camsim;

namespace {

std::vector<LindbladChannel> single_decay_channel(double rate) {
    LindbladChannel a;
    a.vec = Eigen::Vector4cd::Zero();
    a.vec(0) = 1.0 / std::sqrt(2.0);
    a.vec(1) = std::complex<double>(0.0, 1.0 / std::sqrt(2.0));
    a.rate = rate;
    a.label = "a_m";
    return {a};
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("decoupled vacuum is stationary") {
    const TwoModeLindblad liouv(1.0, 1.0, 0.0, {}, 6);
    auto rho = TwoModeLindblad::product_density(TwoModeLindblad::fock_vector(0, 6),
                                                TwoModeLindblad::fock_vector(0, 6));
    const auto out = liouv.propagate(rho, 3.0, 0.01);
    CHECK((out - rho).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("single decay channel fixes the rate convention") {
    const double gamma = 0.3;
    const TwoModeLindblad liouv(1.0, 1.0, 0.0, single_decay_channel(gamma), 6);
    auto rho = TwoModeLindblad::product_density(TwoModeLindblad::fock_vector(1, 6),
                                                TwoModeLindblad::fock_vector(0, 6));
    for (double t : {0.5, 2.0}) {
        const auto out = liouv.propagate(rho, t, 0.002);
        const double p1 = out(1 * 6 + 0, 1 * 6 + 0).real();
        CHECK(p1 == doctest::Approx(std::exp(-gamma * t)).epsilon(1e-7));
    }
}

TEST_CASE("trace and hermiticity survive long runs") {
    EffectiveModel m;
    m.coupling = 0.05;
    m.gamma_c_plus = m.gamma_c_minus = m.gamma_m = m.gamma_at = 0.002;
    const Generator gen = effective_generator(m);
    const TwoModeLindblad liouv(1.0, 1.0, m.coupling, gen.channels, 8);
    auto rho = TwoModeLindblad::product_density(
        TwoModeLindblad::fock_vector(0, 8), TwoModeLindblad::coherent_vector({0.3, 0.1}, 8));
    const auto out = liouv.propagate(rho, 100.0, 0.01, ExecutionPolicy::parallel, 1e-3);
    double trace = 0.0;
    for (int i = 0; i < out.rows(); ++i) trace += out(i, i).real();
    CHECK(trace == doctest::Approx(1.0).epsilon(1e-8));
    CHECK((out - out.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("lossless coherent swap reaches the target state") {
    const int n_tr = 20;
    EffectiveModel m;
    m.coupling = 0.034;
    const Generator gen = effective_generator(m);
    const TwoModeLindblad liouv(1.0, 1.0, m.coupling, gen.channels, n_tr);
    const std::complex<double> beta{1.0, 0.0};
    auto rho = TwoModeLindblad::product_density(TwoModeLindblad::fock_vector(0, n_tr),
                                                TwoModeLindblad::coherent_vector(beta, n_tr));
    const double t_swap = M_PI / (2.0 * m.coupling);
    const auto out = liouv.propagate(rho, t_swap, 0.05);
    // the transferred amplitude picks up a free-rotation phase; scan it out
    double best = 0.0;
    for (int k = 0; k < 720; ++k) {
        const double phi = k * (2.0 * M_PI / 720.0);
        const auto target = TwoModeLindblad::coherent_vector(
            beta * std::exp(std::complex<double>(0.0, phi)), n_tr);
        best = std::max(best, liouv.membrane_overlap(out, target));
    }
    CHECK(best >= 0.999);
}

TEST_CASE("moments track the gaussian engine") {
    const auto deltas = cross_engine_swap_check(0.05, {1.0, 0.0}, 0.2, 16, 0.01);
    CHECK(deltas.mean_abs < 1e-6);
    CHECK(deltas.cov_abs < 1e-6);
    CHECK(deltas.wigner_abs < 1e-6);
}

TEST_CASE("step halving converges at fourth order") {
    EffectiveModel m;
    m.coupling = 0.2;
    m.gamma_m = m.gamma_at = 0.01;
    const Generator gen = effective_generator(m);
    const TwoModeLindblad liouv(1.0, 1.0, m.coupling, gen.channels, 12);
    auto rho0 = TwoModeLindblad::product_density(TwoModeLindblad::fock_vector(0, 12),
                                                 TwoModeLindblad::coherent_vector({0.8, 0.0}, 12));
    const double t = 5.0;
    const auto fine = liouv.propagate(rho0, t, 0.005);
    const auto mid = liouv.propagate(rho0, t, 0.04);
    const auto coarse = liouv.propagate(rho0, t, 0.08);
    const double e_mid = (mid - fine).cwiseAbs().maxCoeff();
    const double e_coarse = (coarse - fine).cwiseAbs().maxCoeff();
    CHECK(e_coarse / e_mid > 8.0);
    CHECK(e_mid < 1e-8);
}

TEST_CASE("truncation convergence") {
    auto run = [](int n_tr) {
        EffectiveModel m;
        m.coupling = 0.2;
        m.gamma_m = m.gamma_at = m.gamma_c_plus = m.gamma_c_minus = 0.005;
        const Generator gen = effective_generator(m);
        const TwoModeLindblad liouv(1.0, 1.0, m.coupling, gen.channels, n_tr);
        auto rho = TwoModeLindblad::product_density(
            TwoModeLindblad::fock_vector(0, n_tr),
            TwoModeLindblad::coherent_vector({0.6, 0.0}, n_tr));
        const auto out = liouv.propagate(rho, 4.0, 0.02);
        return liouv.wigner_origin(out);
    };
    CHECK(std::abs(run(12) - run(16)) < 1e-7);
}

TEST_CASE("truncation leak raises") {
    const TwoModeLindblad liouv(1.0, 1.0, 0.3, {}, 4);
    auto rho = TwoModeLindblad::product_density(TwoModeLindblad::fock_vector(0, 4),
                                                TwoModeLindblad::coherent_vector({1.5, 0.0}, 4));
    CHECK_THROWS_AS(liouv.propagate(rho, 10.0, 0.02), std::runtime_error);
}

TEST_CASE("negative channel rates are rejected") {
    LindbladChannel bad;
    bad.vec = Eigen::Vector4cd::Ones();
    bad.rate = -0.1;
    CHECK_THROWS_AS(TwoModeLindblad(1.0, 1.0, 0.0, {bad}, 5), std::invalid_argument);
}

TEST_CASE("serial and parallel kernels agree bitwise") {
    EffectiveModel m;
    m.coupling = 0.1;
    m.gamma_c_plus = m.gamma_c_minus = m.gamma_m = m.gamma_at = 0.01;
    const Generator gen = effective_generator(m);
    const TwoModeLindblad liouv(1.0, 1.0, m.coupling, gen.channels, 12);
    auto rho = TwoModeLindblad::product_density(TwoModeLindblad::fock_vector(0, 12),
                                                TwoModeLindblad::coherent_vector({0.9, 0.4}, 12));
    Eigen::MatrixXcd out_serial, out_parallel;
    liouv.apply(rho, out_serial, ExecutionPolicy::serial);
    liouv.apply(rho, out_parallel, ExecutionPolicy::parallel);
    CHECK((out_serial - out_parallel).cwiseAbs().maxCoeff() == 0.0);

    const auto prop_serial = liouv.propagate(rho, 2.0, 0.05, ExecutionPolicy::serial);
    const auto prop_parallel = liouv.propagate(rho, 2.0, 0.05, ExecutionPolicy::parallel);
    CHECK((prop_serial - prop_parallel).cwiseAbs().maxCoeff() == 0.0);
}

}  // TEST_SUITE
