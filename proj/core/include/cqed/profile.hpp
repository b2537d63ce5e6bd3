#pragma once

#include "cqed/model.hpp"

namespace cqed {

// Published constants of the measured device, in the units they were quoted
// (Hz, seconds, dimensionless). Signs follow the library convention: the qubit
// sits below the resonator so the dispersive shifts are negative.
struct PaperDeviceConstants {
    double omega_r_hz = 5.464e9;         // bare resonator
    double omega_ge_tilde_hz = 4.982e9;  // dressed qubit
    double charging_energy_hz = 250e6;   // E_c / h; anharmonicity ~ -E_c
    double josephson_energy_max_hz = 25e9;
    double g_ge_hz = 70e6;
    double g_ef_hz = 89e6;
    double chi_hz = -4.65e6;
    double chi_ge_hz = -10e6;
    double chi_ef_hz = -10.7e6;
    double zeta_hz = 23e3;
    double zeta_prime_hz = 85e3;
    double q_loaded = 18000.0;
    double q_internal = 190000.0;
    double t1_s = 1.6e-6;         // 1 / (Gamma_- + Gamma_+)
    double gamma_phi_per_s = 2e5;
    double thermal_ratio = 0.1;   // kappa_+/kappa_- = Gamma_+/Gamma_-
    double probe_rabi_hz = 0.3e6; // Omega_s / 2 pi
    double attenuation_db = 65.0;
};

inline constexpr PaperDeviceConstants kPaperDevice{};

// Coupling quality factor from the parallel combination 1/Q_L = 1/Q_I + 1/Q_C.
double coupling_quality_factor(double q_loaded, double q_internal);

// Rates from T1, the thermal ratio, Q_L and the bare resonator frequency:
// kappa_- = omega_r / Q_L, Gamma_- + Gamma_+ = 1/T1, both up/down ratios equal.
Rates rates_from_coherence(double omega_r, double q_loaded, double t1_s, double gamma_phi,
                           double thermal_ratio);

// SystemParams populated directly from the quoted dispersive shifts and Kerr
// coefficients (not re-derived). The bare qubit frequency is recovered as
// omega_ge_tilde - chi_ge and omega_ef = omega_ge - E_c.
SystemParams paper_device_params(const PaperDeviceConstants& c = kPaperDevice);

// Bare frequencies and couplings of the same device, for derive_params and
// the exact Jaynes-Cummings oracle.
BareDevice paper_bare_device(const PaperDeviceConstants& c = kPaperDevice);

}  // namespace cqed
