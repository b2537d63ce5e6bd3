#include "cqed/analytic.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "cqed/error.hpp"
#include "cqed/units.hpp"

namespace cqed {

Eigen::Matrix4cd h_four_level(const FourLevelParams& p) {
    using namespace four_level;
    Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
    h(g0, g0) = -p.delta_s / 2.0;
    h(e0, e0) = p.delta_s / 2.0;
    h(g1, g1) = p.delta_d - p.delta_s / 2.0 - p.chi;
    h(e1, e1) = p.delta_d + p.delta_s / 2.0 + p.chi;
    h(e0, e1) = h(e1, e0) = p.Omega_d / 2.0;
    h(g1, e1) = h(e1, g1) = p.Omega_s / 2.0;
    return h;
}

FourLevelSpectrum four_level_spectrum(const FourLevelParams& p) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(h_four_level(p));
    return {solver.eigenvalues(), solver.eigenvectors()};
}

double dressed_pair_gap(const FourLevelSpectrum& spectrum) {
    std::array<int, 4> order{0, 1, 2, 3};
    const auto weight = [&](int k) { return std::norm(spectrum.vectors(four_level::e1, k)); };
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double wa = weight(a);
        const double wb = weight(b);
        return wa != wb ? wa > wb : a < b;
    });
    return std::abs(spectrum.energies(order[0]) - spectrum.energies(order[1]));
}

double at_splitting(double Omega_s, double Omega_d) {
    if (Omega_s < 0 || Omega_d < 0) {
        throw ParameterError("Rabi amplitudes must be non-negative");
    }
    return std::hypot(Omega_d, Omega_s);
}

double nbar_from_weights(std::span<const double> weights) {
    double total = 0.0;
    double first_moment = 0.0;
    for (std::size_t n = 0; n < weights.size(); ++n) {
        if (weights[n] < 0.0) {
            throw ParameterError("photon-number weights must be non-negative");
        }
        total += weights[n];
        first_moment += static_cast<double>(n) * weights[n];
    }
    if (!(total > 0.0)) {
        throw UndefinedError("mean photon number undefined for all-zero weights");
    }
    return first_moment / total;
}

std::vector<double> poisson_weights(double nbar, int n_max) {
    std::vector<double> w(static_cast<std::size_t>(n_max) + 1);
    double term = std::exp(-nbar);
    for (int n = 0; n <= n_max; ++n) {
        w[static_cast<std::size_t>(n)] = term;
        term *= nbar / (n + 1);
    }
    return w;
}

std::vector<double> thermal_weights(double nbar, int n_max) {
    std::vector<double> w(static_cast<std::size_t>(n_max) + 1);
    const double ratio = nbar / (1.0 + nbar);
    double term = 1.0 / (1.0 + nbar);
    for (int n = 0; n <= n_max; ++n) {
        w[static_cast<std::size_t>(n)] = term;
        term *= ratio;
    }
    return w;
}

void CalibrationParams::validate() const {
    if (!(q_loaded > 0 && q_coupling > 0 && q_internal > 0)) {
        throw ParameterError("quality factors must be positive");
    }
    const double lhs = 1.0 / q_loaded;
    const double rhs = 1.0 / q_internal + 1.0 / q_coupling;
    if (std::abs(lhs - rhs) > 0.01 * lhs) {
        throw ParameterError("1/Q_L must equal 1/Q_I + 1/Q_C within 1%");
    }
    if (!(kappa_minus > 0 && omega_r_tilde > 0)) {
        throw ParameterError("kappa_minus and omega_r_tilde must be positive");
    }
}

CalibrationParams CalibrationParams::from_quality(double q_loaded, double q_internal,
                                                  double kappa_minus, double omega_r_tilde,
                                                  double attenuation_db) {
    if (!(q_loaded > 0 && q_internal > q_loaded)) {
        throw ParameterError("need 0 < Q_L < Q_I");
    }
    CalibrationParams c;
    c.q_loaded = q_loaded;
    c.q_internal = q_internal;
    c.q_coupling = 1.0 / (1.0 / q_loaded - 1.0 / q_internal);
    c.kappa_minus = kappa_minus;
    c.omega_r_tilde = omega_r_tilde;
    c.attenuation_db = attenuation_db;
    c.validate();
    return c;
}

double nbar_vs_power(double p_rf, DetuningBranch branch, const CalibrationParams& cal,
                     double delta_d, double chi) {
    if (p_rf < 0) throw ParameterError("power must be non-negative");
    const double detuning = branch == DetuningBranch::Plus ? delta_d + chi : delta_d - chi;
    const double half_kappa = cal.kappa_minus / 2.0;
    const double photon_flux = cal.kappa_minus * p_rf / (units::hbar * cal.omega_r_tilde);
    return cal.q_coupling / (2.0 * cal.q_loaded) * photon_flux /
           (half_kappa * half_kappa + detuning * detuning);
}

double rabi_from_power(double p_rf, const CalibrationParams& cal) {
    if (p_rf < 0) throw ParameterError("power must be non-negative");
    return std::sqrt(cal.q_coupling * cal.kappa_minus * p_rf /
                     (2.0 * cal.q_loaded * units::hbar * cal.omega_r_tilde));
}

double power_from_rabi(double Omega_d, const CalibrationParams& cal) {
    if (Omega_d < 0) throw ParameterError("Rabi amplitude must be non-negative");
    return Omega_d * Omega_d * 2.0 * cal.q_loaded * units::hbar * cal.omega_r_tilde /
           (cal.q_coupling * cal.kappa_minus);
}

double device_power(double source_power, const CalibrationParams& cal) {
    return source_power * std::pow(10.0, -cal.attenuation_db / 10.0);
}

double rms_voltage(double p_rf, double impedance_ohm) {
    if (p_rf < 0) throw ParameterError("power must be non-negative");
    return std::sqrt(p_rf * impedance_ohm);
}

double sideband_mismatch(int n, double delta_s, double delta_d, double chi) {
    if (n < 1) throw ParameterError("sideband order must be >= 1");
    return delta_s + n * delta_d + n * chi;
}

bool sideband_condition(int n, double delta_s, double delta_d, double chi, double tolerance) {
    const double mismatch = sideband_mismatch(n, delta_s, delta_d, chi);
    if (tolerance < 0) {
        const double scale =
            std::max({std::abs(delta_s), n * std::abs(delta_d), n * std::abs(chi)});
        tolerance = 1e-9 * scale;
    }
    return std::abs(mismatch) <= tolerance;
}

}  // namespace cqed
