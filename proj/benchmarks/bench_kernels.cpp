#include <benchmark/benchmark.h>

#include <numbers>
#include <numeric>
#include <random>

#include "bifid/orchestrator.hpp"
#include "bifid/selection.hpp"

namespace {

using namespace bifid;

Field random_field(int rows, int cols, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  Field f(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int l = 0; l < cols; ++l) f(i, l) = u(gen);
  }
  return f;
}

void BM_DvmApply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto mesh = build_velocity_mesh(2, 8.0, n, VelocityLayout::kCellCentered);
  const auto tables = build_dvm_tables(mesh, 1.0 / (2.0 * std::numbers::pi));
  const Field f = random_field(8, mesh.size(), 1);
  std::vector<int> cols(static_cast<std::size_t>(mesh.size()));
  std::iota(cols.begin(), cols.end(), 0);
  for (auto _ : state) benchmark::DoNotOptimize(q_nb_dvm_apply(tables, f, cols));
  state.SetItemsProcessed(state.iterations() * 8);
}
BENCHMARK(BM_DvmApply)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_GreedySelect(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Field a = random_field(50, n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(greedy_select(a, 1e-12, 50));
}
BENCHMARK(BM_GreedySelect)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);

void BM_BifidelityStep(benchmark::State& state) {
  RunConfig c = preset_config("test1b");
  c.epsilon = 1e-4;
  c.velocity_points = static_cast<int>(state.range(0));
  const auto pb = build_problem(c);
  const double dt = effective_dt(c);
  for (auto _ : state) benchmark::DoNotOptimize(bifid_step_boltzmann(*pb.boltzmann, pb.initial, c, dt, false));
}
BENCHMARK(BM_BifidelityStep)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_HighFidelityStep(benchmark::State& state) {
  RunConfig c = preset_config("test1b");
  c.epsilon = 1e-4;
  c.velocity_points = static_cast<int>(state.range(0));
  const auto pb = build_problem(c);
  const double dt = effective_dt(c);
  for (auto _ : state) benchmark::DoNotOptimize(hf_full_step_boltzmann(*pb.boltzmann, pb.initial, c, dt));
}
BENCHMARK(BM_HighFidelityStep)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
