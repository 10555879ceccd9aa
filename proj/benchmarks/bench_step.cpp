// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "fsg/ieq_scheme.hpp"
#include "fsg/problems.hpp"

namespace {

// One regular step from the breather start; the two-level history is built
// once outside the timed loop.
void step_benchmark(benchmark::State& state, fsg::SolveMethod method) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const double half = 0.05 * static_cast<double>(m);
  fsg::SchemeConfig cfg{fsg::GridSpec(-half, half, m), fsg::TimeSpec(10.0, 200),
                        fsg::FractionalOrder(1.3)};
  cfg.solve.method = method;
  const fsg::IeqStepper stepper(cfg);
  const auto data = fsg::initial_data(fsg::ProblemSpec::breather(1.1), cfg.grid);
  const auto s0 = fsg::make_initial_state(data.phi, data.psi);
  const auto s1 = stepper.startup_step(s0);
  for (auto _ : state) {
    auto s2 = stepper.cn_step(s0, s1);
    benchmark::DoNotOptimize(s2.u.data());
  }
  state.SetComplexityN(state.range(0));
}

void BM_StepDirect(benchmark::State& state) { step_benchmark(state, fsg::SolveMethod::Direct); }
void BM_StepFftCg(benchmark::State& state) { step_benchmark(state, fsg::SolveMethod::CG); }

}  // namespace

BENCHMARK(BM_StepDirect)->RangeMultiplier(2)->Range(100, 800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StepFftCg)->RangeMultiplier(2)->Range(100, 3200)->Unit(benchmark::kMillisecond);
