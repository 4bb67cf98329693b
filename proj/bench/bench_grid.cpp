#include <benchmark/benchmark.h>

#include <vector>

#include "fraccalc/grid.hpp"
#include "fraccalc/operators.hpp"

using namespace fraccalc;

namespace {

std::vector<double> grid(int n) {
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = 2.0 * (i + 1) / n;
  return xs;
}

const PointEvaluator& derivative_op() {
  static const RealFunction f = RealFunction::parse("exp");
  static const PointEvaluator op = [](double x) { return gfd_riemann_left(f, 0.5, 0.4, 0.0, x); };
  return op;
}

void BM_GridSerial(benchmark::State& state) {
  const auto xs = grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_grid_ref(derivative_op(), xs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_GridParallel(benchmark::State& state) {
  const auto xs = grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_grid(derivative_op(), xs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["threads"] = max_threads();
}

}  // namespace

BENCHMARK(BM_GridSerial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridParallel)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
