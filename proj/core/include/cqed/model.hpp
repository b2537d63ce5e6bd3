#pragma once

#include <string>
#include <vector>

#include "cqed/operators.hpp"

namespace cqed {

// Dissipation rates of the master equation, all in 1/s.
struct Rates {
    double kappa_minus = 0.0;  // resonator photon loss
    double kappa_plus = 0.0;   // resonator thermal excitation
    double gamma_minus = 0.0;  // qubit relaxation
    double gamma_plus = 0.0;   // qubit thermal excitation
    double gamma_phi = 0.0;    // qubit pure dephasing
};

struct DressedFrequencies {
    double omega_r_tilde = 0.0;
    double omega_ge_tilde = 0.0;
};

// Device constants. Frequencies and couplings are angular (rad/s) and signed;
// chi is negative for a qubit below the resonator.
struct SystemParams {
    double omega_r = 0.0;   // bare resonator
    double omega_ge = 0.0;  // bare qubit g-e transition
    double omega_ef = 0.0;  // qubit e-f transition
    double g_ge = 0.0;
    double g_ef = 0.0;
    double chi_ge = 0.0;
    double chi_ef = 0.0;
    double chi = 0.0;
    double lambda_ge = 0.0;
    double lambda_ef = 0.0;
    double zeta = 0.0;        // resonator-qubit cross-Kerr
    double zeta_prime = 0.0;  // resonator self-Kerr
    Rates rates;

    // Non-fatal diagnostics (e.g. dispersive validity) attached at construction.
    std::vector<std::string> warnings;

    DressedFrequencies dressed() const noexcept {
        return {omega_r - chi_ef / 2.0, omega_ge + chi_ge};
    }

    // Throws ParameterError on negative rates or excitation exceeding decay.
    void validate() const;
};

// |lambda| at or above this bound is reported as outside the dispersive regime.
inline constexpr double kDispersiveLambdaLimit = 0.3;

struct BareDevice {
    double omega_r = 0.0;
    double omega_ge = 0.0;
    double omega_ef = 0.0;
    double g_ge = 0.0;
    double g_ef = 0.0;
};

// Second- and fourth-order dispersive quantities from bare frequencies and
// couplings: lambda = g/Delta, chi_jk = g^2/Delta, chi = chi_ge - chi_ef/2 and
// the two Kerr coefficients. Throws SingularityError on zero detuning.
SystemParams derive_params(const BareDevice& device, const Rates& rates);

// Append a dispersive-validity warning for every |lambda| >= 0.3.
void check_dispersive_validity(SystemParams& params);

struct DriveSpec {
    double omega_s = 0.0;  // probe (spectroscopy) tone
    double omega_d = 0.0;  // coupler tone
    double Omega_s = 0.0;  // probe Rabi amplitude
    double Omega_d = 0.0;  // coupler Rabi amplitude

    double delta_s(const DressedFrequencies& f) const noexcept { return f.omega_ge_tilde - omega_s; }
    double delta_d(const DressedFrequencies& f) const noexcept { return f.omega_r_tilde - omega_d; }

    static DriveSpec from_detunings(const DressedFrequencies& f, double delta_s, double delta_d,
                                    double Omega_s, double Omega_d) {
        return {f.omega_ge_tilde - delta_s, f.omega_r_tilde - delta_d, Omega_s, Omega_d};
    }

    void validate() const;
};

// Lab-frame multi-level Jaynes-Cummings Hamiltonian for a three-level
// transmon (g, e, f) coupled on its g-e and e-f transitions. Requires
// space.n_qubit == 3.
Operator h_jc_exact(const SystemParams& params, const SpaceConfig& space);

// Time-independent Hamiltonian in the frame rotating with both drives,
// including the cross- and self-Kerr terms. Requires space.n_qubit == 2.
Operator h_total_rotating(const SystemParams& params, const DriveSpec& drive,
                          const SpaceConfig& space);

// Dressed transition frequencies read off the exact eigenvectors: entry n is
// E(e~,n) - E(g~,n), where each dressed state is the eigenvector with the
// largest overlap on the bare state |j,n>.
std::vector<double> exact_qubit_frequencies(const SystemParams& params, int n_fock, int n_max);

// Dressed level shifts E(j~,n) - E_bare(j,n) for j in {g,e}, n = 0..n_max, in
// the order (g,0), (e,0), (g,1), (e,1), ...
std::vector<double> exact_level_shifts(const SystemParams& params, int n_fock, int n_max);

// The same shifts predicted at second order: -chi_ge n for |g,n>, and
// chi_ge (n+1) - chi_ef n for |e,n>.
std::vector<double> dispersive_level_shifts(const SystemParams& params, int n_max);

}  // namespace cqed
