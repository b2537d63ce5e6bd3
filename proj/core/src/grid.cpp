#include "cqed/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cqed/error.hpp"

namespace cqed {

std::vector<double> Axis::values() const {
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = at(i);
    return v;
}

int Axis::nearest(double hz) const noexcept {
    const double t = std::round((hz - start_hz) / step());
    return static_cast<int>(std::clamp(t, 0.0, static_cast<double>(count - 1)));
}

void Axis::validate() const {
    if (name != "omega_s" && name != "omega_d") {
        throw ParameterError("axis name must be omega_s or omega_d, got '" + name + "'");
    }
    if (count < 2) throw ParameterError("axis '" + name + "' needs count >= 2");
    if (!(start_hz < stop_hz)) throw ParameterError("axis '" + name + "' needs start < stop");
}

namespace {
int count_failed(const std::vector<std::string>& errors) {
    return static_cast<int>(std::count_if(errors.begin(), errors.end(),
                                          [](const std::string& e) { return !e.empty(); }));
}
}  // namespace

int SpectrumTrace::failed() const noexcept { return count_failed(errors); }
int Map2D::failed() const noexcept { return count_failed(errors); }

SpectrumTrace Map2D::line(const std::string& axis_name, int fixed_index) const {
    SpectrumTrace t;
    if (axis_name == axis1.name) {
        t.axis = axis1;
        for (int i = 0; i < axis1.count; ++i) {
            const std::size_t k = static_cast<std::size_t>(i) * axis2.count + fixed_index;
            t.signal.push_back(signal[k]);
            t.residual.push_back(residual[k]);
            t.errors.push_back(errors[k]);
        }
    } else if (axis_name == axis2.name) {
        t.axis = axis2;
        for (int i = 0; i < axis2.count; ++i) {
            const std::size_t k = static_cast<std::size_t>(fixed_index) * axis2.count + i;
            t.signal.push_back(signal[k]);
            t.residual.push_back(residual[k]);
            t.errors.push_back(errors[k]);
        }
    } else {
        throw ParameterError("map has no axis named '" + axis_name + "'");
    }
    return t;
}

}  // namespace cqed
