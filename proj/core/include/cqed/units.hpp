#pragma once

#include <numbers>

// Internally every frequency is an angular frequency in rad/s and hbar = 1,
// so energies and frequencies share a unit. Hz only appears at the I/O edge.
namespace cqed::units {

inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double hbar = 1.054571817e-34;     // J s
inline constexpr double k_boltzmann = 1.380649e-23;  // J / K

constexpr double hz_to_rad(double hz) noexcept { return two_pi * hz; }
constexpr double rad_to_hz(double rad_per_s) noexcept { return rad_per_s / two_pi; }

}  // namespace cqed::units
