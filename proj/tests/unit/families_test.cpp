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

#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"

namespace gem {
namespace {

class FamilyCaseTest : public ::testing::TestWithParam<std::size_t> {};

const std::vector<testing::FamilyCase>& cases() {
  static const auto c = testing::family_cases();
  return c;
}

TEST_P(FamilyCaseTest, ExpectedState) {
  const auto& c = cases()[GetParam()];
  const auto r = testing::solve_spec(c.spec, c.shared_fraction);
  ASSERT_EQ(r.solution.status, SolveStatus::optimal) << c.fixture;
  const auto st = testing::family_state(r.assembled.program, r.solution, c.family);
  EXPECT_TRUE(st.feasible);
  EXPECT_GT(st.rows, 0u);
  if (c.binding)
    EXPECT_TRUE(st.binding) << c.fixture << " max|y| " << st.max_abs_dual;
  else
    EXPECT_TRUE(st.slack) << c.fixture << " max|y| " << st.max_abs_dual;
}

std::string case_name(const ::testing::TestParamInfo<std::size_t>& info) {
  const auto& c = cases()[info.param];
  return std::string(family_name(c.family)) + (c.binding ? "_binding" : "_slack");
}

INSTANTIATE_TEST_SUITE_P(AllFamilies, FamilyCaseTest,
                         ::testing::Range<std::size_t>(0, cases().size()),
                         case_name);

TEST(FamilyCases, CoverEveryFamilyBothWays) {
  std::set<std::pair<RowFamily, bool>> seen;
  for (const auto& c : cases()) seen.insert({c.family, c.binding});
  for (auto f : model_row_families()) {
    EXPECT_TRUE(seen.count({f, true})) << family_name(f);
    EXPECT_TRUE(seen.count({f, false})) << family_name(f);
  }
}

}  // namespace
}  // namespace gem
