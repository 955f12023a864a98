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

#include "gem/certify.hpp"

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "gem/costs.hpp"

namespace gem {
namespace {

TEST(Certify, OptimalDeskSolutionPasses) {
  const auto r = testing::solve_spec(testing::desk_spec(), 0.5);
  ASSERT_EQ(r.solution.status, SolveStatus::optimal);
  const auto c = certify(r.assembled.program, r.solution);
  EXPECT_TRUE(c.pass());
  EXPECT_NEAR(c.primal_objective, r.solution.objective,
              1e-9 * (1.0 + std::abs(r.solution.objective)));
  EXPECT_NEAR(c.gap, r.solution.gap, 1e-9);
  ASSERT_FALSE(c.checks.empty());
  for (const auto& k : c.checks) {
    EXPECT_EQ(c.find(k.metric), &k);
    EXPECT_LE(k.value, k.tolerance) << k.metric;
  }
  EXPECT_EQ(c.find("no such metric"), nullptr);
}

TEST(Certify, PerturbedPrimalFails) {
  auto r = testing::solve_spec(testing::toy_spec(), 1.0);
  for (auto& v : r.solution.x) v -= 1.0;
  const auto c = certify(r.assembled.program, r.solution);
  EXPECT_FALSE(c.pass());
  EXPECT_GT(c.primal_residual, 1e-6);
}

TEST(Certify, WrongDualSignsFail) {
  auto r = testing::solve_spec(testing::toy_spec(), 1.0);
  for (auto& v : r.solution.y) v = -v - 1.0;
  EXPECT_FALSE(certify(r.assembled.program, r.solution).pass());
}

TEST(Certify, MisreportedGapFails) {
  auto r = testing::solve_spec(testing::toy_spec(), 1.0);
  r.solution.gap += 1e-3;
  EXPECT_FALSE(certify(r.assembled.program, r.solution).pass());
}

TEST(Certify, EveryFixtureCertifies) {
  for (const auto& f : testing::tiny_fixtures()) {
    const auto spec = f.tiny.spec;
    const auto sol = solve(build_program(spec, compute_cost_coefficients(spec)).program);
    ASSERT_EQ(sol.status, SolveStatus::optimal) << f.name;
    EXPECT_TRUE(certify(build_program(spec, compute_cost_coefficients(spec)).program, sol)
                    .pass())
        << f.name;
  }
}

}  // namespace
}  // namespace gem
