// Copyright 2026 The gem-fleet Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Assembly and solve timings on the bundled scenarios.

#include <benchmark/benchmark.h>

#include <string>

#include "gem/assembler.hpp"
#include "gem/costs.hpp"
#include "gem/scenario_io.hpp"
#include "gem/solver.hpp"
#include "gem/split.hpp"

namespace {

gem::ScenarioSpec load(const std::string& name, double s) {
  return gem::shaev_split(gem::load_scenario(std::string(GEM_SCENARIO_DIR) + "/" + name), s);
}

void BM_Assemble(benchmark::State& state, const char* name) {
  const auto spec = load(name, 0.5);
  const auto costs = gem::compute_cost_coefficients(spec);
  for (auto _ : state) {
    auto a = gem::build_program(spec, costs);
    benchmark::DoNotOptimize(a.program.triplets.data());
  }
}

void BM_Solve(benchmark::State& state, const char* name) {
  const auto spec = load(name, 0.5);
  const auto a = gem::build_program(spec, gem::compute_cost_coefficients(spec));
  gem::SolveSettings settings;
  settings.presolve = state.range(0) != 0;
  int iterations = 0;
  for (auto _ : state) {
    const auto sol = gem::solve(a.program, settings);
    iterations = sol.iterations;
    benchmark::DoNotOptimize(sol.objective);
  }
  state.counters["rows"] = static_cast<double>(a.program.num_rows());
  state.counters["cols"] = static_cast<double>(a.program.num_cols());
  state.counters["ipm_iterations"] = iterations;
}

void BM_Split(benchmark::State& state) {
  const auto spec = gem::load_scenario(std::string(GEM_SCENARIO_DIR) + "/desk");
  for (auto _ : state) {
    auto s = gem::shaev_split(spec, 0.5);
    benchmark::DoNotOptimize(s.grid.num_days);
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_Assemble, toy, "toy");
BENCHMARK_CAPTURE(BM_Assemble, desk, "desk");
BENCHMARK_CAPTURE(BM_Solve, toy, "toy")->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Solve, desk, "desk")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Split);

BENCHMARK_MAIN();
