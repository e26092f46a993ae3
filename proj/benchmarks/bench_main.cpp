#include <benchmark/benchmark.h>

#include <cmath>

#include "chebpert/cheb_core.hpp"
#include "chebpert/dbar_extension.hpp"
#include "chebpert/harness.hpp"
#include "chebpert/orthopoly.hpp"
#include "chebpert/szego.hpp"

using namespace chebpert;

namespace {

const WeightSpec& holder() {
  static const WeightSpec w = WeightSpec::holder(2.0, 0.5, 0.0, 3);
  return w;
}

void BM_ChebCoeffs(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto s = cheb_coeffs([](double x) { return std::exp(x) / (2.0 + x * x); }, n);
    benchmark::DoNotOptimize(s);
  }
  state.SetComplexityN(state.range(0));
}

void BM_SzegoBuild(benchmark::State& state) {
  const WeightSpec w = state.range(0) == 0 ? WeightSpec::exponential(1.0) : holder();
  for (auto _ : state) {
    auto sd = SzegoData::build(w);
    benchmark::DoNotOptimize(sd);
  }
}

void BM_StieltjesRecurrence(benchmark::State& state) {
  const int n_max = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto t = stieltjes_recurrence(holder(), Kind::from_index(1), n_max);
    benchmark::DoNotOptimize(t);
  }
  state.SetComplexityN(state.range(0));
}

void BM_RunExperiment(benchmark::State& state) {
  ExperimentConfig cfg;
  cfg.weight = "holder:c=2,beta=0.5,x0=0,m=3";
  cfg.kind = 1;
  cfg.n_list = {32, 64, 128, 256, 512};
  for (auto _ : state) {
    auto r = run_experiment(cfg);
    benchmark::DoNotOptimize(r);
  }
}

void BM_LambdaAverage(benchmark::State& state) {
  const ChebSeries l = build_l_n(holder(), 64);
  double y = 0.0;
  for (auto _ : state) {
    y = y < 0.5 ? y + 1e-3 : 1e-3;
    benchmark::DoNotOptimize(Lambda_n(holder(), l, Complex(0.1, y)));
  }
}

void BM_LField(benchmark::State& state) {
  ExtensionParams p;
  p.n = static_cast<int>(state.range(0));
  p.grid = 64;
  for (auto _ : state) {
    auto f = L_field(holder(), p);
    benchmark::DoNotOptimize(f);
  }
}

}  // namespace

BENCHMARK(BM_ChebCoeffs)->RangeMultiplier(4)->Range(64, 16384)->Complexity(benchmark::oNLogN);
BENCHMARK(BM_SzegoBuild)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StieltjesRecurrence)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunExperiment)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LambdaAverage);
BENCHMARK(BM_LField)->Arg(32)->Arg(64)->Unit(benchmark::kSecond)->Iterations(1);

BENCHMARK_MAIN();
