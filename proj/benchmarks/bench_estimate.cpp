#include <benchmark/benchmark.h>

#include <vector>

#include "lfpc/diagnose.hpp"
#include "lfpc/estimate.hpp"
#include "lfpc/oracle.hpp"

namespace {

lfpc::Dataset synthetic(int length, bool with_break) {
  lfpc::oracle::SynthSpec s;
  s.length = length;
  s.intercept = 0.01;
  s.slopes = {1.5};
  s.noise_sigma = 0.003;
  s.seed = 1;
  if (with_break) {
    s.break_year = s.start_year + length / 2;
    s.post_intercept = 0.01;
    s.post_slopes = {-1.0};
  }
  return lfpc::oracle::generate(s).dataset();
}

lfpc::LinkSpec spec(lfpc::Estimator est) {
  lfpc::LinkSpec s;
  s.response = "y";
  s.predictors = {{"x0", 0, false}};
  s.estimator = est;
  return s;
}

void BM_OlsFit(benchmark::State& state) {
  const auto data = synthetic(static_cast<int>(state.range(0)), false);
  const auto s = spec(lfpc::Estimator::Ols);
  for (auto _ : state) benchmark::DoNotOptimize(lfpc::fit(s, data));
}
BENCHMARK(BM_OlsFit)->Arg(40)->Arg(400);

void BM_CumulativeFit(benchmark::State& state) {
  const auto data = synthetic(static_cast<int>(state.range(0)), false);
  const auto s = spec(lfpc::Estimator::Cumulative);
  for (auto _ : state) benchmark::DoNotOptimize(lfpc::fit(s, data));
}
BENCHMARK(BM_CumulativeFit)->Arg(40)->Arg(400);

void BM_ScanLag(benchmark::State& state) {
  const auto data = synthetic(60, false);
  const auto s = spec(lfpc::Estimator::Cumulative);
  lfpc::LagScanOptions opt;
  opt.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lfpc::scan_lag(s, data, opt));
}
BENCHMARK(BM_ScanLag)->Arg(1)->Arg(4);

void BM_ScanBreak(benchmark::State& state) {
  const auto data = synthetic(60, true);
  const auto s = spec(lfpc::Estimator::Ols);
  std::vector<int> candidates;
  for (int y = 1976; y <= 2025; ++y) candidates.push_back(y);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lfpc::scan_break(s, data, candidates, {static_cast<unsigned>(state.range(0))}));
  }
}
BENCHMARK(BM_ScanBreak)->Arg(1)->Arg(4);

void BM_Adf(benchmark::State& state) {
  lfpc::oracle::Rng rng(3);
  std::vector<double> v(static_cast<std::size_t>(state.range(0)));
  for (auto& x : v) x = rng.normal();
  for (auto _ : state) benchmark::DoNotOptimize(lfpc::adf_test(v, 2));
}
BENCHMARK(BM_Adf)->Arg(200)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
