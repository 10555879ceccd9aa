// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "fsg/frac_operator.hpp"

namespace {

std::vector<double> random_input(std::size_t n) {
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = dist(gen);
  return v;
}

void BM_ApplyDense(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const fsg::FracOperator op(fsg::FractionalOrder(1.3), fsg::GridSpec(-20.0, 20.0, m));
  const auto u = random_input(op.size());
  std::vector<double> out(op.size());
  for (auto _ : state) {
    op.apply_dense(u, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(state.range(0));
}

void BM_ApplyFft(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const fsg::FracOperator op(fsg::FractionalOrder(1.3), fsg::GridSpec(-20.0, 20.0, m));
  const auto u = random_input(op.size());
  std::vector<double> out(op.size());
  auto ws = op.make_workspace();
  for (auto _ : state) {
    op.apply_fft(u, out, ws);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(state.range(0));
}

void BM_GenerateKernel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fsg::generate_kernel(fsg::FractionalOrder(1.5), n));
}

}  // namespace

BENCHMARK(BM_ApplyDense)->RangeMultiplier(4)->Range(64, 4096)->Complexity();
BENCHMARK(BM_ApplyFft)->RangeMultiplier(4)->Range(64, 16384)->Complexity();
BENCHMARK(BM_GenerateKernel)->Arg(1000)->Arg(10000);
