#include <benchmark/benchmark.h>

#include "cellsim/config.hpp"
#include "cellsim/experiment.hpp"
#include "cellsim/geometry.hpp"
#include "cellsim/outage.hpp"
#include "cellsim/rng.hpp"

namespace {

cellsim::OutageContext make_context(int n_interferers, int m0) {
  cellsim::RngStream rng(7);
  cellsim::OutageContext ctx;
  ctx.omega0 = 1.0;
  ctx.m0 = m0;
  ctx.gamma = 10.0;
  for (int i = 0; i < n_interferers; ++i) {
    ctx.interferers.push_back({std::pow(10.0, rng.uniform(-3.0, 3.0)), 1.0});
  }
  return ctx;
}

void BM_ccdf_z(benchmark::State& state) {
  const cellsim::OutageContext ctx = make_context(static_cast<int>(state.range(0)), 3);
  double beta0 = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cellsim::ccdf_z(beta0, 0.1, ctx));
    beta0 = beta0 < 8.0 ? beta0 * 1.01 : 0.5;  // vary the argument a little
  }
}
BENCHMARK(BM_ccdf_z)->Arg(1)->Arg(10)->Arg(49);

void BM_invert_outage(benchmark::State& state) {
  const cellsim::OutageContext ctx = make_context(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cellsim::invert_outage_beta0(0.1, ctx));
  }
}
BENCHMARK(BM_invert_outage)->Arg(10)->Arg(49);

void BM_placement(benchmark::State& state) {
  const cellsim::Disk disk{2.0};
  const cellsim::PlacementSpec spec{50, state.range(0) / 100.0, 1000, 100};
  cellsim::RngStream rng(11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cellsim::place_uniform_clustering(disk, spec, rng));
  }
}
BENCHMARK(BM_placement)->Arg(0)->Arg(25)->Arg(50);

void BM_run_trial(benchmark::State& state) {
  cellsim::ExperimentConfig cfg;
  cfg.K = 0;
  cfg.K_over_M = static_cast<double>(state.range(0));
  cfg.policy = cellsim::PolicySelection::both;
  int trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cellsim::run_trial(cfg, trial++));
  }
}
BENCHMARK(BM_run_trial)->Unit(benchmark::kMillisecond)->Arg(4)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
