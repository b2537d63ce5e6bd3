#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cqed/config.hpp"
#include "cqed/sweep.hpp"

namespace cqed {

// 17 significant digits, "NaN" for NaN.
std::string format_double(double v);

// Probe window used when a spectrum config has no axis: omega_ge~ +- 15 MHz,
// widened to keep a 2|chi| margin around every expected photon-number peak.
Axis default_spectrum_axis(const RunConfig& config, int points = 401);

// Probe window for one point of the splitting curve: centred on the
// |g,1> -> |e,1> line, wide enough for the expected doublet.
Axis splitting_window(const RunConfig& config, double Omega_d, int points = 401);

// One row of splitting.csv. Unresolved points keep NaN in gap_hz_simulated.
struct SplittingPoint {
    double omega_d_rabi_hz = 0.0;
    double v_rf_volts = 0.0;
    double gap_hz_simulated = 0.0;
    double gap_hz_analytic = 0.0;
    std::string note;
};
std::vector<SplittingPoint> splitting_curve(const RunConfig& config, int workers);

// Each command writes its files into config.out_dir and a short summary to
// `log`. Library errors propagate unchanged.
void cmd_spectrum(const RunConfig& config, int workers, std::ostream& log);
void cmd_map2d(const RunConfig& config, int workers, std::ostream& log);
void cmd_splitting_curve(const RunConfig& config, int workers, std::ostream& log);

struct ValidationCheck {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double tolerance = 0.0;
    std::string detail;
};
std::vector<ValidationCheck> validation_checks(const RunConfig& config);

// Prints the checks as CSV (check,status,value,tolerance,detail) to `log`,
// writes the same to validate.csv and returns true when all passed.
bool cmd_validate(const RunConfig& config, int workers, std::ostream& log);

}  // namespace cqed
