#include <benchmark/benchmark.h>

#include <cmath>

#include "ibern/ibern.hpp"

namespace {

ibern::UniformSamples sine_samples(unsigned n) {
  return ibern::UniformSamples::from_function([](double t) { return std::sin(2 * M_PI * t); }, n);
}

void BM_BasisVector(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  double t = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ibern::basis_vector(n, t));
    t = t < 0.9 ? t + 1e-3 : 0.1;
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BasisVector)->RangeMultiplier(4)->Range(8, 512)->Complexity();

void BM_IterateCoefficients(benchmark::State& state) {
  const auto samples = sine_samples(static_cast<unsigned>(state.range(0)));
  const auto k = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(ibern::iterate_coefficients(samples, k));
}
BENCHMARK(BM_IterateCoefficients)->Args({10, 5})->Args({30, 5})->Args({30, 100})->Args({100, 10});

void BM_LimitCoefficients(benchmark::State& state) {
  const auto samples = sine_samples(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ibern::limit_coefficients(samples));
}
BENCHMARK(BM_LimitCoefficients)->Arg(5)->Arg(10)->Arg(20)->Arg(30);

void BM_DerivativeGrid(benchmark::State& state) {
  const auto samples = sine_samples(30);
  for (auto _ : state) {
    const ibern::IteratedDerivative d(samples, 3, 2);
    double acc = 0.0;
    for (int j = 0; j <= 1000; ++j) acc += d(j / 1000.0);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_DerivativeGrid);

void BM_SzaszIterated(benchmark::State& state) {
  const ibern::SzaszContext ctx(static_cast<unsigned>(state.range(0)));
  const auto k = static_cast<unsigned>(state.range(1));
  const auto chi4 = [](double x) { return 0.25 * x * std::exp(-x / 2); };
  for (auto _ : state) benchmark::DoNotOptimize(ibern::SzaszIterated(chi4, ctx, k));
}
BENCHMARK(BM_SzaszIterated)->Args({10, 1})->Args({10, 3})->Args({50, 3});

void BM_QIterated(benchmark::State& state) {
  const ibern::QContext ctx(1.1, 30);
  std::vector<double> v;
  for (double x : ctx.nodes()) v.push_back(std::sin(2 * M_PI * x));
  for (auto _ : state) benchmark::DoNotOptimize(ibern::QIterated(ctx, v, 3));
}
BENCHMARK(BM_QIterated);

}  // namespace
BENCHMARK_MAIN();
