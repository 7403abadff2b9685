#include <benchmark/benchmark.h>

#include "uavbeam/antenna.hpp"
#include "uavbeam/engine.hpp"
#include "uavbeam/network.hpp"

using namespace uavbeam;

static void BM_ArrayFactor(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const ArraySpec spec = parse_topology(std::to_string(m) + "x" + std::to_string(m));
  const SteeringAngles steer{100.0, 20.0};
  double phi = -60.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(array_factor(spec, {95.0, phi}, steer));
    phi = phi > 60.0 ? -60.0 : phi + 0.37;
  }
}
BENCHMARK(BM_ArrayFactor)->Arg(8)->Arg(16)->Arg(64);

static void BM_MeasureCell(benchmark::State& state) {
  Sector sector;
  sector.position = {0, 0, 25};
  sector.orientation = {0.0, 7.0};
  sector.array = parse_topology("16x16");
  LinkContext ctx;
  const auto assumption = static_cast<MeasurementAssumption>(state.range(0));
  double x = 50.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(measure_cell(sector, {x, 300.0, 40.0}, assumption, ctx));
    x = x > 400.0 ? -400.0 : x + 1.4;
  }
}
BENCHMARK(BM_MeasureCell)
    ->Arg(static_cast<int>(MeasurementAssumption::kCurrent))
    ->Arg(static_cast<int>(MeasurementAssumption::kAligned));

static void BM_SimulateTrajectory(benchmark::State& state) {
  ScenarioConfig cfg;
  cfg.topology = state.range(0) == 0 ? "8x8" : "16x16";
  cfg.trajectory_count = 1;
  const auto ctx = build_context(cfg);
  const auto set = resolve_trajectories(cfg, ctx.terrain);
  for (auto _ : state) benchmark::DoNotOptimize(simulate_trajectory(ctx, set.trajectories.front()));
}
BENCHMARK(BM_SimulateTrajectory)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
