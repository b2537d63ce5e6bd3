#include "cqed/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "cqed/error.hpp"
#include "cqed/units.hpp"

namespace cqed {

void SweepPlan::validate() const {
    axis1.validate();
    if (axis2) {
        axis2->validate();
        if (axis2->name == axis1.name) throw ParameterError("both map axes sweep " + axis1.name);
    }
    space.validate();
    if (space.n_qubit != 2) throw ParameterError("sweeps need a two-level qubit space");
    params.validate();
    fixed.validate();
}

int default_workers() noexcept {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    const std::size_t n_threads =
        std::min<std::size_t>(count, static_cast<std::size_t>(std::max(workers, 1)));
    if (n_threads == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                if (!failed.exchange(true)) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

namespace {

DriveSpec drive_at(const DriveSpec& fixed, const Axis& axis, int i) {
    DriveSpec d = fixed;
    const double w = units::hz_to_rad(axis.at(i));
    if (axis.name == "omega_s") d.omega_s = w; else d.omega_d = w;
    return d;
}

struct PointOutcome {
    double signal;
    double residual;
    std::string error;
};

PointOutcome solve_point(const LiouvillianBuilder& builder, const DriveSpec& drive,
                         SolverKind solver) {
    try {
        const SteadyState ss = steady_state(builder.build(drive), solver);
        return {ss.sigma_z(), ss.residual_norm, {}};
    } catch (const std::exception& e) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        return {nan, nan, e.what()};
    }
}

void check_failures(const std::vector<std::string>& errors) {
    int failed = 0;
    const std::string* first = nullptr;
    for (const std::string& e : errors) {
        if (e.empty()) continue;
        ++failed;
        if (!first) first = &e;
    }
    const std::size_t total = errors.size();
    if (static_cast<double>(failed) > kMaxFailedFraction * static_cast<double>(total)) {
        std::ostringstream os;
        os << failed << " of " << total << " sweep points failed (limit "
           << kMaxFailedFraction * 100.0 << " %); first error: " << *first;
        throw SweepError(os.str());
    }
}

}  // namespace

SpectrumTrace run_spectrum(const SweepPlan& plan, int workers) {
    plan.validate();
    const LiouvillianBuilder builder(plan.params, plan.space);
    const std::size_t n = static_cast<std::size_t>(plan.axis1.count);
    SpectrumTrace t;
    t.axis = plan.axis1;
    t.signal.resize(n);
    t.residual.resize(n);
    t.errors.resize(n);
    parallel_for(n, workers, [&](std::size_t i) {
        PointOutcome p = solve_point(builder, drive_at(plan.fixed, plan.axis1, static_cast<int>(i)),
                                     plan.solver);
        t.signal[i] = p.signal;
        t.residual[i] = p.residual;
        t.errors[i] = std::move(p.error);
    });
    check_failures(t.errors);
    return t;
}

Map2D run_map(const SweepPlan& plan, int workers) {
    plan.validate();
    if (!plan.axis2) throw ParameterError("a map needs two axes");
    const LiouvillianBuilder builder(plan.params, plan.space);
    const Axis& a1 = plan.axis1;
    const Axis& a2 = *plan.axis2;
    const std::size_t n = static_cast<std::size_t>(a1.count) * static_cast<std::size_t>(a2.count);
    Map2D m;
    m.axis1 = a1;
    m.axis2 = a2;
    m.signal.resize(n);
    m.residual.resize(n);
    m.errors.resize(n);
    parallel_for(n, workers, [&](std::size_t k) {
        const int i1 = static_cast<int>(k / static_cast<std::size_t>(a2.count));
        const int i2 = static_cast<int>(k % static_cast<std::size_t>(a2.count));
        const DriveSpec d = drive_at(drive_at(plan.fixed, a1, i1), a2, i2);
        PointOutcome p = solve_point(builder, d, plan.solver);
        m.signal[k] = p.signal;
        m.residual[k] = p.residual;
        m.errors[k] = std::move(p.error);
    });
    check_failures(m.errors);
    return m;
}

SweepResult run_sweep(const SweepPlan& plan, int workers) {
    if (plan.axis2) return run_map(plan, workers);
    return run_spectrum(plan, workers);
}

namespace {

// Vertex of the parabola through a grid maximum and its two neighbours.
double vertex(const SpectrumTrace& trace, std::size_t i) {
    const double x = trace.axis.at(static_cast<int>(i));
    if (i == 0 || i + 1 >= trace.size()) return x;
    const double ym = trace.signal[i - 1], y0 = trace.signal[i], yp = trace.signal[i + 1];
    const double curv = ym - 2 * y0 + yp;
    if (!(curv < 0)) return x;
    return x + 0.5 * (ym - yp) / curv * trace.axis.step();
}

}  // namespace

GapResult extract_gap(const SpectrumTrace& trace) {
    if (trace.failed() > 0) {
        throw UnresolvedSplittingError("cut contains " + std::to_string(trace.failed()) +
                                       " failed points");
    }
    const std::vector<Extremum> maxima = local_maxima(trace.signal, kGapProminenceFraction);
    if (maxima.size() < 2) {
        throw UnresolvedSplittingError("fewer than two resolved maxima along the cut");
    }
    std::size_t lo = std::min(maxima[0].index, maxima[1].index);
    std::size_t hi = std::max(maxima[0].index, maxima[1].index);

    const std::vector<double> x = trace.axis.values();
    GapResult r;
    r.lower_center_hz = vertex(trace, lo);
    r.upper_center_hz = vertex(trace, hi);

    // Lorentzian pair on a window holding both branches, kept as a lineshape
    // summary. Dressed doublets are not Lorentzian, so the fitted centres
    // drift outward and are not used for the gap.
    const std::size_t span = hi - lo;
    const std::size_t w_lo = lo > span ? lo - span : 0;
    const std::size_t w_hi = std::min(x.size() - 1, hi + span);
    FitOptions opts;
    opts.seeds_hz = std::vector<double>{x[lo], x[hi]};
    try {
        std::span<const double> xs(x.data() + w_lo, w_hi - w_lo + 1);
        std::span<const double> ys(trace.signal.data() + w_lo, w_hi - w_lo + 1);
        r.fit = fit_lorentzians(xs, ys, 2, opts);
    } catch (const FitError& e) {
        r.fit = PeakFit{};
        r.fit.warnings.push_back(std::string("lineshape fit failed: ") + e.what());
    }
    r.gap_hz = r.upper_center_hz - r.lower_center_hz;
    return r;
}

GapResult extract_gap(const Map2D& map, const GapCut& cut) {
    const Axis& other = cut.along == map.axis1.name ? map.axis2 : map.axis1;
    if (cut.along != map.axis1.name && cut.along != map.axis2.name) {
        throw ParameterError("map has no axis named '" + cut.along + "'");
    }
    const int idx = other.nearest(cut.fixed_hz);
    GapResult r = extract_gap(map.line(cut.along, idx));
    r.fixed_hz = other.at(idx);
    return r;
}

}  // namespace cqed
