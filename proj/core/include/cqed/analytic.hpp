#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace cqed {

// Truncated model on |g~0>, |e~0>, |g~1>, |e~1> (in that order). Detunings are
// those of the rotating frame: delta_s = omega_ge~ - omega_s,
// delta_d = omega_r~ - omega_d.
struct FourLevelParams {
    double delta_s = 0.0;
    double delta_d = 0.0;
    double chi = 0.0;
    double Omega_s = 0.0;
    double Omega_d = 0.0;
};

namespace four_level {
inline constexpr int g0 = 0;
inline constexpr int e0 = 1;
inline constexpr int g1 = 2;
inline constexpr int e1 = 3;
}  // namespace four_level

Eigen::Matrix4cd h_four_level(const FourLevelParams& p);

struct FourLevelSpectrum {
    Eigen::Vector4d energies;   // ascending
    Eigen::Matrix4cd vectors;   // column k belongs to energies(k)
};

FourLevelSpectrum four_level_spectrum(const FourLevelParams& p);

// Energy gap between the two eigenstates carrying the most |e~1> weight: the
// Autler-Townes doublet probed from |g~1>.
double dressed_pair_gap(const FourLevelSpectrum& spectrum);

// delta = sqrt(Omega_d^2 + Omega_s^2)
double at_splitting(double Omega_s, double Omega_d);

// n_bar = sum n w_n / sum w_n. Throws UndefinedError for an all-zero list and
// ParameterError for a negative weight.
double nbar_from_weights(std::span<const double> weights);

std::vector<double> poisson_weights(double nbar, int n_max);
// Bose-Einstein (geometric) distribution with mean nbar.
std::vector<double> thermal_weights(double nbar, int n_max);

struct CalibrationParams {
    double q_loaded = 0.0;
    double q_coupling = 0.0;
    double q_internal = 0.0;
    double kappa_minus = 0.0;    // 1/s
    double omega_r_tilde = 0.0;  // rad/s
    double attenuation_db = 0.0;

    // Throws ParameterError unless Q's are positive and
    // 1/Q_L = 1/Q_I + 1/Q_C holds within 1 %.
    void validate() const;

    // Q_C from the parallel combination of Q_L and Q_I.
    static CalibrationParams from_quality(double q_loaded, double q_internal, double kappa_minus,
                                          double omega_r_tilde, double attenuation_db);
};

enum class DetuningBranch { Plus, Minus };

// Steady resonator occupation for a coherent drive of power p_rf (W) at the
// device, on the qubit-state branch selected by `branch`:
//   n = (Q_C / 2 Q_L) (kappa P / hbar w) / ((kappa/2)^2 + (delta_d +- chi)^2)
double nbar_vs_power(double p_rf, DetuningBranch branch, const CalibrationParams& cal,
                     double delta_d, double chi);

// Omega_d = sqrt(Q_C kappa P / (2 Q_L hbar w))
double rabi_from_power(double p_rf, const CalibrationParams& cal);
double power_from_rabi(double Omega_d, const CalibrationParams& cal);

// Power arriving at the device after the input-line attenuation.
double device_power(double source_power, const CalibrationParams& cal);

// RMS voltage of power p_rf on a line of the given impedance.
double rms_voltage(double p_rf, double impedance_ohm = 50.0);

// Multi-photon sideband |g,0> <-> |e,n> driven by one probe and n coupler
// photons. In the rotating frame the two levels are degenerate when
//   delta_s + n delta_d + n chi = 0,
// a band of slope -1/n in the (omega_s, omega_d) plane.
double sideband_mismatch(int n, double delta_s, double delta_d, double chi);

// True when |sideband_mismatch| <= tolerance. The default tolerance is a
// relative 1e-9 of the largest term.
bool sideband_condition(int n, double delta_s, double delta_d, double chi,
                        double tolerance = -1.0);

}  // namespace cqed
