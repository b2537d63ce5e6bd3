#include "cqed/profile.hpp"

#include "cqed/error.hpp"
#include "cqed/units.hpp"

namespace cqed {

using units::hz_to_rad;

double coupling_quality_factor(double q_loaded, double q_internal) {
    if (q_loaded <= 0 || q_internal <= 0) {
        throw ParameterError("quality factors must be positive");
    }
    if (q_internal <= q_loaded) {
        throw ParameterError("internal Q must exceed loaded Q");
    }
    return 1.0 / (1.0 / q_loaded - 1.0 / q_internal);
}

Rates rates_from_coherence(double omega_r, double q_loaded, double t1_s, double gamma_phi,
                           double thermal_ratio) {
    if (q_loaded <= 0 || t1_s <= 0) {
        throw ParameterError("Q_L and T1 must be positive");
    }
    if (thermal_ratio < 0 || thermal_ratio > 1) {
        throw ParameterError("thermal ratio must lie in [0, 1]");
    }
    Rates r;
    r.kappa_minus = omega_r / q_loaded;
    r.kappa_plus = thermal_ratio * r.kappa_minus;
    r.gamma_minus = 1.0 / (t1_s * (1.0 + thermal_ratio));
    r.gamma_plus = thermal_ratio * r.gamma_minus;
    r.gamma_phi = gamma_phi;
    return r;
}

BareDevice paper_bare_device(const PaperDeviceConstants& c) {
    BareDevice d;
    d.omega_r = hz_to_rad(c.omega_r_hz);
    d.omega_ge = hz_to_rad(c.omega_ge_tilde_hz - c.chi_ge_hz);
    d.omega_ef = d.omega_ge - hz_to_rad(c.charging_energy_hz);
    d.g_ge = hz_to_rad(c.g_ge_hz);
    d.g_ef = hz_to_rad(c.g_ef_hz);
    return d;
}

SystemParams paper_device_params(const PaperDeviceConstants& c) {
    const BareDevice d = paper_bare_device(c);
    SystemParams p;
    p.omega_r = d.omega_r;
    p.omega_ge = d.omega_ge;
    p.omega_ef = d.omega_ef;
    p.g_ge = d.g_ge;
    p.g_ef = d.g_ef;
    p.chi_ge = hz_to_rad(c.chi_ge_hz);
    p.chi_ef = hz_to_rad(c.chi_ef_hz);
    p.chi = hz_to_rad(c.chi_hz);
    p.lambda_ge = d.g_ge / (d.omega_ge - d.omega_r);
    p.lambda_ef = d.g_ef / (d.omega_ef - d.omega_r);
    p.zeta = hz_to_rad(c.zeta_hz);
    p.zeta_prime = hz_to_rad(c.zeta_prime_hz);
    p.rates = rates_from_coherence(d.omega_r, c.q_loaded, c.t1_s, c.gamma_phi_per_s,
                                   c.thermal_ratio);
    check_dispersive_validity(p);
    return p;
}

}  // namespace cqed
