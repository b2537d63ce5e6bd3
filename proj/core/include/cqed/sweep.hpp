#pragma once

#include <functional>
#include <optional>
#include <variant>

#include "cqed/grid.hpp"
#include "cqed/lindblad.hpp"
#include "cqed/model.hpp"
#include "cqed/specfit.hpp"

namespace cqed {

// Swept axes override the matching DriveSpec frequency; everything else comes
// from `fixed`.
struct SweepPlan {
    Axis axis1;
    std::optional<Axis> axis2;
    DriveSpec fixed;
    SystemParams params;
    SpaceConfig space;
    SolverKind solver = SolverKind::SparseLU;

    void validate() const;
};

// Fraction of failed points above which a whole sweep is rejected.
inline constexpr double kMaxFailedFraction = 0.01;

// Hardware concurrency, at least 1.
int default_workers() noexcept;

// Calls fn(i) for i in [0, count) on `workers` threads. Each index is handled
// exactly once; results must be written to pre-allocated slots by fn.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

SpectrumTrace run_spectrum(const SweepPlan& plan, int workers = 1);
Map2D run_map(const SweepPlan& plan, int workers = 1);

using SweepResult = std::variant<SpectrumTrace, Map2D>;

// Dispatches on plan.axis2. Each point: build the drive, build L, solve the
// steady state and record Tr[rho sigma_z]. A failing point is stored as NaN
// with its message; more than 1 % failures throw SweepError.
SweepResult run_sweep(const SweepPlan& plan, int workers = 1);

// A line through a map: along `along`, with the other axis at the grid value
// nearest `fixed_hz`.
struct GapCut {
    std::string along = "omega_s";
    double fixed_hz = 0.0;
};

struct GapResult {
    double gap_hz = 0.0;
    double lower_center_hz = 0.0;
    double upper_center_hz = 0.0;
    double fixed_hz = 0.0;  // grid value actually used
    PeakFit fit;
};

// Minimum prominence, as a fraction of the cut's signal range, for a local
// maximum to count as a resolved branch.
inline constexpr double kGapProminenceFraction = 1e-3;

// Distance between the two strongest resolved maxima along the cut, each
// refined to the vertex of a three-point parabola. `fit` holds a
// two-Lorentzian summary of the doublet. Throws UnresolvedSplittingError when fewer than two
// maxima are resolved.
GapResult extract_gap(const SpectrumTrace& trace);
GapResult extract_gap(const Map2D& map, const GapCut& cut);

}  // namespace cqed
