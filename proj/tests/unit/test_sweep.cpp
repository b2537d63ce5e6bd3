#include <doctest.h>

#include <atomic>
#include <cmath>

#include "cqed/error.hpp"
#include "cqed/profile.hpp"
#include "cqed/sweep.hpp"
#include "cqed/units.hpp"

using namespace cqed;
using units::hz_to_rad;
using units::rad_to_hz;

namespace {

SweepPlan probe_plan(int points) {
    SweepPlan plan;
    plan.params = paper_device_params();
    plan.space = {8, 2};
    const DressedFrequencies f = plan.params.dressed();
    plan.fixed = DriveSpec{f.omega_ge_tilde, f.omega_r_tilde, hz_to_rad(0.3e6), 0.0};
    const double ge = rad_to_hz(f.omega_ge_tilde);
    plan.axis1 = Axis{"omega_s", ge - 12e6, ge + 3e6, points};
    return plan;
}

}  // namespace

TEST_CASE("parallel_for visits every index once") {
    for (int workers : {1, 2, 5, 64}) {
        std::vector<std::atomic<int>> hits(1000);
        parallel_for(hits.size(), workers, [&](std::size_t i) { hits[i]++; });
        for (const auto& h : hits) CHECK(h.load() == 1);
    }
    CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) { if (i == 7) throw SweepError("x"); }),
                    SweepError);
}

TEST_CASE("axis values and validation") {
    const Axis a{"omega_d", 1.0, 3.0, 5};
    CHECK(a.values() == std::vector<double>{1.0, 1.5, 2.0, 2.5, 3.0});
    CHECK(a.nearest(2.2) == 2);
    CHECK(a.nearest(-10) == 0);
    CHECK(a.nearest(10) == 4);
    CHECK_THROWS_AS((Axis{"omega_d", 1.0, 3.0, 1}).validate(), ParameterError);
    CHECK_THROWS_AS((Axis{"omega_d", 3.0, 1.0, 5}).validate(), ParameterError);
    CHECK_THROWS_AS((Axis{"omega_x", 1.0, 3.0, 5}).validate(), ParameterError);
}

TEST_CASE("spectrum is independent of the worker count") {
    const SweepPlan plan = probe_plan(61);
    const SpectrumTrace a = run_spectrum(plan, 1);
    const SpectrumTrace b = run_spectrum(plan, 4);
    CHECK(a.signal == b.signal);
    CHECK(a.residual == b.residual);
    CHECK(a.failed() == 0);
    for (double s : a.signal) {
        CHECK(s >= -1 - 1e-6);
        CHECK(s <= 1 + 1e-6);
    }
}

TEST_CASE("every map point equals a direct steady-state solve") {
    SweepPlan plan = probe_plan(3);
    const DressedFrequencies f = plan.params.dressed();
    plan.fixed.Omega_d = hz_to_rad(1e6);
    plan.axis2 = Axis{"omega_d", rad_to_hz(f.omega_r_tilde) - 5e6, rad_to_hz(f.omega_r_tilde) + 5e6, 4};
    const Map2D m = run_map(plan, 3);
    REQUIRE(m.signal.size() == 12);
    for (int i1 = 0; i1 < 3; ++i1) {
        for (int i2 = 0; i2 < 4; ++i2) {
            DriveSpec d = plan.fixed;
            d.omega_s = hz_to_rad(plan.axis1.at(i1));
            d.omega_d = hz_to_rad(plan.axis2->at(i2));
            const double direct = steady_state(build_liouvillian(plan.params, d, plan.space)).sigma_z();
            CHECK(m.at(i1, i2) == direct);
        }
    }
    const SpectrumTrace row = m.line("omega_d", 1);
    const SpectrumTrace col = m.line("omega_s", 2);
    CHECK(row.size() == 4);
    CHECK(col.size() == 3);
    CHECK(row.signal[3] == m.at(1, 3));
    CHECK(col.signal[1] == m.at(1, 2));
    CHECK(std::holds_alternative<Map2D>(run_sweep(plan, 2)));
}

TEST_CASE("overdamped system gives a flat trace at the thermal value") {
    SweepPlan plan = probe_plan(11);
    const double r = 0.1;
    plan.params.rates = {1e12, r * 1e12, 1e12, r * 1e12, 0};
    const SpectrumTrace t = run_spectrum(plan, 2);
    for (double s : t.signal) CHECK(s == doctest::Approx((r - 1) / (r + 1)).epsilon(1e-6));
}

TEST_CASE("a sweep with no dissipation fails as a whole") {
    SweepPlan plan = probe_plan(5);
    plan.params.rates = {};
    try {
        run_spectrum(plan, 1);
        FAIL("expected SweepError");
    } catch (const SweepError& e) {
        CHECK(std::string(e.what()).find("5 of 5") != std::string::npos);
    }
}

TEST_CASE("invalid plans are rejected before solving") {
    SweepPlan plan = probe_plan(5);
    plan.axis2 = plan.axis1;
    CHECK_THROWS_AS(run_map(plan, 1), ParameterError);
    plan = probe_plan(5);
    plan.space = {8, 3};
    CHECK_THROWS_AS(run_spectrum(plan, 1), ParameterError);
}

TEST_CASE("gap of a synthetic doublet") {
    SpectrumTrace t;
    t.axis = Axis{"omega_s", -5e6, 5e6, 401};
    for (int i = 0; i < t.axis.count; ++i) {
        const double x = t.axis.at(i);
        t.signal.push_back(lorentzian(x, -0.5e6, 0.3e6, 1e5) + lorentzian(x, 0.5e6, 0.3e6, 1e5) - 1);
        t.residual.push_back(0);
        t.errors.emplace_back();
    }
    const GapResult g = extract_gap(t);
    CHECK(g.gap_hz == doctest::Approx(1e6).epsilon(0.01));
    CHECK(g.lower_center_hz < g.upper_center_hz);
}

TEST_CASE("single line is an unresolved splitting") {
    SpectrumTrace t;
    t.axis = Axis{"omega_s", -5e6, 5e6, 201};
    for (int i = 0; i < t.axis.count; ++i) {
        t.signal.push_back(lorentzian(t.axis.at(i), 0.2e6, 0.5e6, 1e5));
        t.residual.push_back(0);
        t.errors.emplace_back();
    }
    CHECK_THROWS_AS(extract_gap(t), UnresolvedSplittingError);
    t.errors[3] = "failed";
    CHECK_THROWS_AS(extract_gap(t), UnresolvedSplittingError);
}

TEST_CASE("weak coupler leaves the n = 1 doublet unresolved") {
    SweepPlan plan;
    plan.params = paper_device_params();
    plan.space = {8, 2};
    const SystemParams& p = plan.params;
    const DressedFrequencies f = p.dressed();
    plan.fixed = DriveSpec{0.0, f.omega_r_tilde + p.chi + p.zeta + p.zeta_prime, hz_to_rad(0.3e6),
                           hz_to_rad(0.1e6)};
    const double c = rad_to_hz(f.omega_ge_tilde + 2 * p.chi + 2 * p.zeta);
    plan.axis1 = Axis{"omega_s", c - 2e6, c + 2e6, 161};
    CHECK_THROWS_AS(extract_gap(run_spectrum(plan, 2)), UnresolvedSplittingError);
}
