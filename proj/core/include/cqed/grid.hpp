#pragma once

#include <string>
#include <vector>

namespace cqed {

// Uniform frequency axis in Hz. Names are "omega_s" (probe) or "omega_d"
// (coupler).
struct Axis {
    std::string name;
    double start_hz = 0.0;
    double stop_hz = 0.0;
    int count = 0;

    double at(int i) const noexcept {
        return start_hz + (stop_hz - start_hz) * static_cast<double>(i) / (count - 1);
    }
    double step() const noexcept { return (stop_hz - start_hz) / (count - 1); }
    std::vector<double> values() const;
    // Index of the grid value nearest to `hz` (clamped to the axis).
    int nearest(double hz) const noexcept;

    // Throws ParameterError unless count >= 2 and start < stop.
    void validate() const;
};

// One-dimensional spectrum of the readout observable Tr[rho sigma_z].
// Failed points carry NaN signal and a non-empty error string.
struct SpectrumTrace {
    Axis axis;
    std::vector<double> signal;
    std::vector<double> residual;
    std::vector<std::string> errors;

    std::size_t size() const noexcept { return signal.size(); }
    int failed() const noexcept;
};

// Two-dimensional map, stored row-major with axis1 outer and axis2 inner:
// signal[i1 * axis2.count + i2].
struct Map2D {
    Axis axis1;
    Axis axis2;
    std::vector<double> signal;
    std::vector<double> residual;
    std::vector<std::string> errors;

    double at(int i1, int i2) const { return signal[static_cast<std::size_t>(i1) * axis2.count + i2]; }
    int failed() const noexcept;

    // Line through the map along `axis_name` with the other axis fixed at
    // grid index `fixed_index`.
    SpectrumTrace line(const std::string& axis_name, int fixed_index) const;
};

}  // namespace cqed
