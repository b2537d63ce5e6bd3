#include <doctest.h>

#include <cmath>

#include "cqed/error.hpp"
#include "cqed/lindblad.hpp"
#include "cqed/profile.hpp"
#include "cqed/units.hpp"
#include "support.hpp"

using namespace cqed;
using units::hz_to_rad;

namespace {

Matrix d_term(const Matrix& a, const Matrix& rho) {
    const Matrix ada = a.adjoint() * a;
    return a * rho * a.adjoint() - 0.5 * (ada * rho + rho * ada);
}

// Master-equation right-hand side written out with plain matrix products.
Matrix rhs_oracle(const SystemParams& p, const DriveSpec& drive, const SpaceConfig& space,
                  const Matrix& rho) {
    const Matrix h = h_total_rotating(p, drive, space).matrix();
    const Matrix a = on_resonator(annihilation(space.n_fock), space).matrix();
    const QubitOps q = qubit_ops();
    const Matrix sm = on_qubit(q.sigma_minus, space).matrix();
    const Matrix sz = on_qubit(q.sigma_z, space).matrix();
    const Complex i(0, 1);
    return -i * (h * rho - rho * h) + p.rates.kappa_minus * d_term(a, rho) +
           p.rates.kappa_plus * d_term(a.adjoint(), rho) + p.rates.gamma_minus * d_term(sm, rho) +
           p.rates.gamma_plus * d_term(sm.adjoint(), rho) + p.rates.gamma_phi / 2 * d_term(sz, rho);
}

SystemParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    SystemParams p = paper_device_params();
    p.rates.kappa_minus = 1e6 * (0.5 + u(rng));
    p.rates.kappa_plus = p.rates.kappa_minus * 0.3 * u(rng);
    p.rates.gamma_minus = 1e6 * (0.2 + u(rng));
    p.rates.gamma_plus = p.rates.gamma_minus * 0.3 * u(rng);
    p.rates.gamma_phi = 1e6 * u(rng);
    return p;
}

DriveSpec random_drive(const SystemParams& p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return DriveSpec::from_detunings(p.dressed(), hz_to_rad(10e6) * u(rng), hz_to_rad(10e6) * u(rng),
                                     hz_to_rad(0.5e6) * (1 + u(rng)), hz_to_rad(1e6) * (1 + u(rng)));
}

}  // namespace

TEST_CASE("vectorization stacks columns") {
    Matrix rho(2, 2);
    rho << 1.0, 2.0, 3.0, 4.0;
    const Vector v = vectorize(rho);
    CHECK(v(0).real() == 1.0);
    CHECK(v(1).real() == 3.0);
    CHECK(v(2).real() == 2.0);
    CHECK(v(3).real() == 4.0);
    CHECK(test::max_abs(unvectorize(v, 2) - rho) == 0.0);
}

TEST_CASE("vec(A rho B) = (B^T kron A) vec(rho)") {
    std::mt19937_64 rng(3);
    const Matrix a = test::random_matrix(3, 3, rng);
    const Matrix b = test::random_matrix(3, 3, rng);
    const Matrix rho = test::random_matrix(3, 3, rng);
    const Operator ba({1, 3}, b.transpose());
    const Operator aa({3, 1}, a);
    const Vector lhs = vectorize(a * rho * b);
    const Vector rhs = tensor(ba, aa).matrix() * vectorize(rho);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("dissipator matches its definition") {
    std::mt19937_64 rng(7);
    const Operator a({2, 2}, test::random_matrix(4, 4, rng));
    const Matrix rho = test::random_density(4, rng);
    const Vector got = dissipator(a) * vectorize(rho);
    CHECK((got - vectorize(d_term(a.matrix(), rho))).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Liouvillian action equals the master equation") {
    std::mt19937_64 rng(17);
    const SpaceConfig space{5, 2};
    for (int trial = 0; trial < 5; ++trial) {
        const SystemParams p = random_params(rng);
        const DriveSpec drive = random_drive(p, rng);
        const Liouvillian L = build_liouvillian(p, drive, space);
        const Matrix rho = test::random_density(space.dim(), rng);
        const Matrix expected = rhs_oracle(p, drive, space, rho);
        CHECK(test::max_abs(L.apply(rho) - expected) < 1e-12 * test::max_abs(expected) * 1e3);
    }
}

TEST_CASE("trace functional annihilates L and L preserves Hermiticity") {
    std::mt19937_64 rng(23);
    const SpaceConfig space{6, 2};
    for (int trial = 0; trial < 10; ++trial) {
        const SystemParams p = random_params(rng);
        const Liouvillian L = build_liouvillian(p, random_drive(p, rng), space);
        const Matrix dense = L.dense();
        const int d = space.dim();
        Eigen::RowVectorXcd tr = Eigen::RowVectorXcd::Zero(d * d);
        for (int k = 0; k < d; ++k) tr(k + d * k) = 1.0;
        CHECK((tr * dense).cwiseAbs().maxCoeff() / dense.cwiseAbs().maxCoeff() < 1e-12);

        const Matrix rho = test::random_density(d, rng);
        const Matrix out = L.apply(rho);
        CHECK(test::max_abs(out - out.adjoint()) < 1e-12 * test::max_abs(out));
    }
}

TEST_CASE("builder reuse gives the same Liouvillian as a fresh build") {
    std::mt19937_64 rng(29);
    const SpaceConfig space{4, 2};
    const SystemParams p = random_params(rng);
    const LiouvillianBuilder builder(p, space);
    for (int trial = 0; trial < 3; ++trial) {
        const DriveSpec drive = random_drive(p, rng);
        CHECK(test::max_abs(builder.build(drive).dense() - build_liouvillian(p, drive, space).dense()) == 0.0);
    }
}

TEST_CASE("detailed balance of the undriven steady state") {
    std::mt19937_64 rng(31);
    const SpaceConfig space{10, 2};
    for (int trial = 0; trial < 10; ++trial) {
        SystemParams p = random_params(rng);
        const DriveSpec off = DriveSpec::from_detunings(p.dressed(), 0, 0, 0, 0);
        const SteadyState ss = steady_state(build_liouvillian(p, off, space));
        const std::vector<double> pn = ss.fock_populations(space);
        const double r = p.rates.kappa_plus / p.rates.kappa_minus;
        for (int n = 0; n <= 6; ++n) CHECK(std::abs(pn[n + 1] / pn[n] - r) < 1e-8);
        // Geometric closed form on the truncated ladder.
        double z = 0;
        for (int n = 0; n < space.n_fock; ++n) z += std::pow(r, n);
        CHECK(std::abs(pn[0] - 1.0 / z) < 1e-10);
        const double pe = ss.excited_population(space);
        CHECK(std::abs(pe / (1 - pe) - p.rates.gamma_plus / p.rates.gamma_minus) < 1e-8);
    }
}

TEST_CASE("driven qubit matches the Bloch-equation steady state") {
    SystemParams p = paper_device_params();
    p.rates.kappa_plus = 0;
    p.rates.gamma_plus = 0;
    const SpaceConfig space{4, 2};
    const double g1 = p.rates.gamma_minus;
    const double g2 = g1 / 2 + p.rates.gamma_phi;
    const double omega = hz_to_rad(0.4e6);
    for (double det_hz : {0.0, 0.2e6, -0.7e6}) {
        const double det = hz_to_rad(det_hz);
        const DriveSpec drive = DriveSpec::from_detunings(p.dressed(), det, 0, omega, 0);
        const SteadyState ss = steady_state(build_liouvillian(p, drive, space));
        const double s = omega * omega * g2 / (g1 * (g2 * g2 + det * det));
        CHECK(ss.sigma_z() == doctest::Approx(-1.0 / (1.0 + s)).epsilon(1e-9));
    }
}

TEST_CASE("driven resonator reaches the coherent-state occupation") {
    SystemParams p = paper_device_params();
    p.zeta = p.zeta_prime = 0;
    p.rates.kappa_plus = p.rates.gamma_plus = 0;
    const SpaceConfig space{16, 2};
    const double kappa = p.rates.kappa_minus;
    const double omega = 0.5 * kappa;
    for (double det : {0.0, 0.7 * kappa}) {
        // The qubit stays in |g>, where the resonator sits at omega_r~ - chi.
        const DriveSpec drive = DriveSpec::from_detunings(p.dressed(), 0, det + p.chi, 0, omega);
        const SteadyState ss = steady_state(build_liouvillian(p, drive, space));
        const std::vector<double> pn = ss.fock_populations(space);
        double nbar = 0;
        for (int n = 0; n < space.n_fock; ++n) nbar += n * pn[n];
        const double expected = (omega * omega / 4) / (kappa * kappa / 4 + det * det);
        CHECK(nbar == doctest::Approx(expected).epsilon(1e-8));
    }
}

TEST_CASE("qubit-only damping relaxes to the ground state") {
    SystemParams p = paper_device_params();
    p.rates = {1e6, 0, 5e5, 0, 0};
    const SpaceConfig space{5, 2};
    const SteadyState ss = steady_state(build_liouvillian(p, DriveSpec::from_detunings(p.dressed(), 1e6, 1e6, 0, 0), space));
    CHECK(ss.sigma_z() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::abs(ss.rho(0, 0) - 1.0) < 1e-12);
}

TEST_CASE("no dissipation has no unique steady state") {
    SystemParams p = paper_device_params();
    p.rates = {};
    const Liouvillian L = build_liouvillian(p, DriveSpec::from_detunings(p.dressed(), 0, 0, 1e6, 1e6), {4, 2});
    CHECK_FALSE(L.dissipative);
    CHECK_THROWS_AS(steady_state(L), DegenerateSteadyStateError);
    CHECK_THROWS_AS(steady_state(L, SolverKind::DenseLU), DegenerateSteadyStateError);
}

TEST_CASE("sparse and dense solvers agree and respect the state invariants") {
    std::mt19937_64 rng(41);
    const SpaceConfig space{8, 2};
    for (int trial = 0; trial < 5; ++trial) {
        const SystemParams p = random_params(rng);
        const Liouvillian L = build_liouvillian(p, random_drive(p, rng), space);
        const SteadyState a = steady_state(L, SolverKind::SparseLU);
        const SteadyState b = steady_state(L, SolverKind::DenseLU);
        CHECK(test::max_abs(a.rho - b.rho) < 1e-8);
        CHECK(test::max_abs(a.rho - a.rho.adjoint()) < kHermiticityTolerance);
        CHECK(std::abs(a.rho.trace() - 1.0) < kTraceTolerance);
        Eigen::SelfAdjointEigenSolver<Matrix> es(a.rho);
        CHECK(es.eigenvalues().minCoeff() > -kPositivityTolerance);
        CHECK(test::max_abs(L.apply(a.rho)) < 1e-9 * L.dense().cwiseAbs().maxCoeff());
    }
}

TEST_CASE("steady state is deterministic") {
    const SystemParams p = paper_device_params();
    const DriveSpec drive = DriveSpec::from_detunings(p.dressed(), 1e6, -2e6, 2e6, 3e6);
    const Liouvillian L = build_liouvillian(p, drive, {10, 2});
    const SteadyState a = steady_state(L);
    const SteadyState b = steady_state(L);
    CHECK(test::max_abs(a.rho - b.rho) == 0.0);
}

TEST_CASE("effective temperature of a rate ratio") {
    const double omega = hz_to_rad(5.474e9);
    const double t = effective_temperature(omega, 0.1, 1.0);
    CHECK(std::exp(-units::hbar * omega / (units::k_boltzmann * t)) == doctest::Approx(0.1));
    CHECK(effective_temperature(omega, 0.0, 1.0) == 0.0);
}
