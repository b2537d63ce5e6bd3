#include <benchmark/benchmark.h>

#include "cqed/lindblad.hpp"
#include "cqed/profile.hpp"
#include "cqed/sweep.hpp"
#include "cqed/units.hpp"

using namespace cqed;

namespace {

DriveSpec driven(const SystemParams& p) {
    return DriveSpec::from_detunings(p.dressed(), -2 * p.chi, -p.chi, units::hz_to_rad(0.3e6),
                                     units::hz_to_rad(1.0e6));
}

void BM_BuildLiouvillian(benchmark::State& state) {
    const SystemParams p = paper_device_params();
    const SpaceConfig space{static_cast<int>(state.range(0)), 2};
    const LiouvillianBuilder builder(p, space);
    const DriveSpec d = driven(p);
    for (auto _ : state) benchmark::DoNotOptimize(builder.build(d));
}
BENCHMARK(BM_BuildLiouvillian)->Arg(10)->Arg(14);

void BM_SteadyState(benchmark::State& state) {
    const SystemParams p = paper_device_params();
    const SpaceConfig space{static_cast<int>(state.range(0)), 2};
    const Liouvillian L = build_liouvillian(p, driven(p), space);
    const auto solver = state.range(1) == 0 ? SolverKind::SparseLU : SolverKind::DenseLU;
    for (auto _ : state) benchmark::DoNotOptimize(steady_state(L, solver));
}
BENCHMARK(BM_SteadyState)->Args({10, 0})->Args({10, 1})->Args({14, 0})->Unit(benchmark::kMillisecond);

void BM_Spectrum(benchmark::State& state) {
    SweepPlan plan;
    plan.params = paper_device_params();
    plan.space = {10, 2};
    const DressedFrequencies f = plan.params.dressed();
    plan.fixed = DriveSpec{f.omega_ge_tilde, f.omega_r_tilde, units::hz_to_rad(0.3e6), 0.0};
    const double ge = units::rad_to_hz(f.omega_ge_tilde);
    plan.axis1 = Axis{"omega_s", ge - 15e6, ge + 15e6, static_cast<int>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(run_spectrum(plan, 1));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Spectrum)->Arg(101)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
