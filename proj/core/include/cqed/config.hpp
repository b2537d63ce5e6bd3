#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cqed/analytic.hpp"
#include "cqed/grid.hpp"
#include "cqed/lindblad.hpp"
#include "cqed/model.hpp"

namespace cqed {

// Parsed run configuration. Everything below is already in internal units
// (rad/s, 1/s, W); Hz only survives in the sweep axes, which are written back
// to CSV as-is.
struct RunConfig {
    std::string profile;  // "paper-device" or empty
    SystemParams params;
    SpaceConfig space;
    DriveSpec drive;  // probe/coupler frequencies that are not swept
    CalibrationParams calibration;

    std::optional<Axis> axis1;
    std::optional<Axis> axis2;
    SolverKind solver = SolverKind::SparseLU;
    int n_peaks = 2;
    std::vector<double> coupler_rabi_list;  // rad/s, for splitting-curve
    std::vector<double> coupler_power_list; // W at the device

    std::filesystem::path out_dir = ".";
    std::vector<std::string> warnings;

    // Photon frequency used to convert w_1/w_0 into a temperature.
    double photon_frequency() const noexcept {
        return params.dressed().omega_r_tilde - params.chi;
    }
    // Coupler frequency resonant with |e,0> <-> |e,1>, Kerr terms included.
    double coupler_resonance() const noexcept {
        return params.dressed().omega_r_tilde + params.chi + params.zeta + params.zeta_prime;
    }
};

// Parse INI-style text. `profile_override` (from the command line) wins over a
// profile named in the file. Throws ConfigError with the offending line.
RunConfig parse_config(const std::string& text, const std::string& profile_override = {});
RunConfig load_config(const std::filesystem::path& path, const std::string& profile_override = {});

// Stable text dump of every physical parameter, 17 significant digits.
std::string canonical_parameters(const RunConfig& config);
// FNV-1a 64 of canonical_parameters, as 16 hex digits.
std::string parameters_hash(const RunConfig& config);

}  // namespace cqed
