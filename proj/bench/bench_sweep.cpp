#include <benchmark/benchmark.h>

#include "soliton/sweep.hpp"

using namespace soliton;

namespace {

std::vector<SweepItem> grid() {
  std::vector<SweepItem> items;
  for (auto f : {FamilyKind::zeta, FamilyKind::gamma, FamilyKind::gamma_tilde}) {
    for (int e : {0, 1}) {
      auto g = sign_pattern_grid(f, 1, e, 3);
      items.insert(items.end(), g.begin(), g.end());
    }
  }
  return items;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto items = grid();
  const RunOptions opt;
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep_serial(items, opt));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(items.size()));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto items = grid();
  const RunOptions opt;
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(items, opt, jobs));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(items.size()));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond)->UseRealTime()->Iterations(3);
BENCHMARK(BM_SweepParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime()->Iterations(3);

BENCHMARK_MAIN();
