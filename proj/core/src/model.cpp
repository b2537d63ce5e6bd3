#include "cqed/model.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "cqed/error.hpp"
#include "cqed/units.hpp"

namespace cqed {

void SystemParams::validate() const {
    const Rates& r = rates;
    if (r.kappa_minus < 0 || r.kappa_plus < 0 || r.gamma_minus < 0 || r.gamma_plus < 0 ||
        r.gamma_phi < 0) {
        throw ParameterError("dissipation rates must be non-negative");
    }
    if (r.kappa_plus > r.kappa_minus) {
        throw ParameterError("kappa_plus exceeds kappa_minus (resonator would be above infinite temperature)");
    }
    if (r.gamma_plus > r.gamma_minus) {
        throw ParameterError("gamma_plus exceeds gamma_minus (qubit would be above infinite temperature)");
    }
}

void check_dispersive_validity(SystemParams& params) {
    auto check = [&](const char* name, double lambda) {
        if (std::abs(lambda) >= kDispersiveLambdaLimit) {
            std::ostringstream os;
            os << "dispersive validity: |" << name << "| = " << std::abs(lambda)
               << " >= " << kDispersiveLambdaLimit;
            params.warnings.push_back(os.str());
        }
    };
    check("lambda_ge", params.lambda_ge);
    check("lambda_ef", params.lambda_ef);
}

SystemParams derive_params(const BareDevice& device, const Rates& rates) {
    const double delta_ge = device.omega_ge - device.omega_r;
    const double delta_ef = device.omega_ef - device.omega_r;
    if (delta_ge == 0.0) {
        throw SingularityError("zero g-e detuning: dispersive expansion undefined");
    }
    if (delta_ef == 0.0) {
        throw SingularityError("zero e-f detuning: dispersive expansion undefined");
    }

    SystemParams p;
    p.omega_r = device.omega_r;
    p.omega_ge = device.omega_ge;
    p.omega_ef = device.omega_ef;
    p.g_ge = device.g_ge;
    p.g_ef = device.g_ef;
    p.rates = rates;

    p.lambda_ge = device.g_ge / delta_ge;
    p.lambda_ef = device.g_ef / delta_ef;
    p.chi_ge = device.g_ge * device.g_ge / delta_ge;
    p.chi_ef = device.g_ef * device.g_ef / delta_ef;
    p.chi = p.chi_ge - p.chi_ef / 2.0;

    const double lge2 = p.lambda_ge * p.lambda_ge;
    const double lef2 = p.lambda_ef * p.lambda_ef;
    p.zeta = p.chi_ef * lef2 - 2.0 * p.chi_ge * lge2 + 1.75 * p.chi_ef * lge2 -
             1.25 * p.chi_ge * lef2;
    p.zeta_prime = (p.chi_ge - p.chi_ef) * (lge2 + lef2);

    check_dispersive_validity(p);
    return p;
}

void DriveSpec::validate() const {
    if (Omega_s < 0 || Omega_d < 0) {
        throw ParameterError("drive amplitudes must be non-negative");
    }
}

Operator h_jc_exact(const SystemParams& params, const SpaceConfig& space) {
    space.validate();
    if (space.n_qubit != 3) {
        throw DimensionError("h_jc_exact needs a three-level transmon (n_qubit = 3)");
    }
    const int dim = space.dim();
    Matrix h = Matrix::Zero(dim, dim);
    const double level[3] = {0.0, params.omega_ge, params.omega_ge + params.omega_ef};
    for (int n = 0; n < space.n_fock; ++n) {
        for (int j = 0; j < 3; ++j) {
            h(space.index(n, j), space.index(n, j)) = params.omega_r * n + level[j];
        }
    }
    // g_{j,j+1} (a^dag |j><j+1| + a |j+1><j|): |j+1, n> <-> |j, n+1>.
    const double coupling[2] = {params.g_ge, params.g_ef};
    for (int n = 0; n + 1 < space.n_fock; ++n) {
        const double root = std::sqrt(static_cast<double>(n + 1));
        for (int j = 0; j < 2; ++j) {
            const int upper = space.index(n, j + 1);
            const int lower = space.index(n + 1, j);
            h(lower, upper) = coupling[j] * root;
            h(upper, lower) = coupling[j] * root;
        }
    }
    return Operator(space, std::move(h));
}

Operator h_total_rotating(const SystemParams& params, const DriveSpec& drive,
                          const SpaceConfig& space) {
    space.validate();
    if (space.n_qubit != 2) {
        throw DimensionError("h_total_rotating needs a two-level qubit (n_qubit = 2)");
    }
    const DressedFrequencies f = params.dressed();
    const double delta_d = drive.delta_d(f);
    const double delta_s = drive.delta_s(f);

    // Diagonal part written entry by entry; a^dag a and sigma_z commute and
    // are both diagonal in the product basis.
    const int dim = space.dim();
    Matrix h = Matrix::Zero(dim, dim);
    for (int n = 0; n < space.n_fock; ++n) {
        const double nn = static_cast<double>(n);
        for (int q = 0; q < 2; ++q) {
            const double sz = q == 0 ? -1.0 : 1.0;
            h(space.index(n, q), space.index(n, q)) =
                delta_d * nn + 0.5 * delta_s * sz + params.chi * nn * sz +
                params.zeta * nn * nn * sz + params.zeta_prime * nn * nn;
        }
    }
    // (Omega_d / 2)(a + a^dag)
    for (int n = 0; n + 1 < space.n_fock; ++n) {
        const double amp = 0.5 * drive.Omega_d * std::sqrt(static_cast<double>(n + 1));
        for (int q = 0; q < 2; ++q) {
            h(space.index(n, q), space.index(n + 1, q)) = amp;
            h(space.index(n + 1, q), space.index(n, q)) = amp;
        }
    }
    // (Omega_s / 2)(sigma_+ + sigma_-)
    for (int n = 0; n < space.n_fock; ++n) {
        h(space.index(n, 0), space.index(n, 1)) = 0.5 * drive.Omega_s;
        h(space.index(n, 1), space.index(n, 0)) = 0.5 * drive.Omega_s;
    }
    return Operator(space, std::move(h));
}

namespace {

struct ExactLadder {
    Eigen::VectorXd energies;
    Eigen::MatrixXcd vectors;
};

ExactLadder solve_exact(const SystemParams& params, int n_fock) {
    const SpaceConfig space{n_fock, 3};
    const Operator h = h_jc_exact(params, space);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("exact Jaynes-Cummings eigensolve failed");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

double dressed_energy(const ExactLadder& ladder, const SpaceConfig& space, int n, int j) {
    Eigen::Index best = 0;
    ladder.vectors.row(space.index(n, j)).cwiseAbs2().maxCoeff(&best);
    return ladder.energies(best);
}

void require_ladder_range(int n_fock, int n_max) {
    if (n_max < 0 || n_max + 1 >= n_fock) {
        throw DimensionError("photon range must stay below the truncation (n_max + 1 < n_fock)");
    }
}

}  // namespace

std::vector<double> exact_qubit_frequencies(const SystemParams& params, int n_fock, int n_max) {
    require_ladder_range(n_fock, n_max);
    const SpaceConfig space{n_fock, 3};
    const ExactLadder ladder = solve_exact(params, n_fock);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        out.push_back(dressed_energy(ladder, space, n, 1) - dressed_energy(ladder, space, n, 0));
    }
    return out;
}

std::vector<double> exact_level_shifts(const SystemParams& params, int n_fock, int n_max) {
    require_ladder_range(n_fock, n_max);
    const SpaceConfig space{n_fock, 3};
    const ExactLadder ladder = solve_exact(params, n_fock);
    const double level[2] = {0.0, params.omega_ge};
    std::vector<double> out;
    for (int n = 0; n <= n_max; ++n) {
        for (int j = 0; j < 2; ++j) {
            out.push_back(dressed_energy(ladder, space, n, j) - (params.omega_r * n + level[j]));
        }
    }
    return out;
}

std::vector<double> dispersive_level_shifts(const SystemParams& params, int n_max) {
    std::vector<double> out;
    for (int n = 0; n <= n_max; ++n) {
        out.push_back(-params.chi_ge * n);
        out.push_back(params.chi_ge * (n + 1) - params.chi_ef * n);
    }
    return out;
}

}  // namespace cqed
