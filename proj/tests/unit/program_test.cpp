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

#include "gem/program.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

namespace gem {
namespace {

RowLabel custom(std::string s) { return RowLabel{RowFamily::custom, {}, s}; }

TEST(ProgramBuilder, SumsRepeatedTermsAndSortsTriplets) {
  ProgramBuilder b;
  const auto x = b.add_column("x", 1.0);
  const auto y = b.add_column("y", 2.0, -1.0, 3.0);
  const std::vector<Term> r0{{y, 1.0}, {x, 2.0}, {y, 0.5}};
  b.add_row(custom("r0"), RowSense::less_equal, 4.0, r0);
  const auto p = std::move(b).finalize();
  ASSERT_EQ(p.triplets.size(), 2u);
  EXPECT_EQ(p.triplets[0], (Triplet{0, x, 2.0}));
  EXPECT_EQ(p.triplets[1], (Triplet{0, y, 1.5}));
  EXPECT_EQ(p.lower[y], -1.0);
  EXPECT_EQ(p.upper[x], kInfinity);
  EXPECT_EQ(p.column_names[1], "y");
}

TEST(ProgramBuilder, DropsTermsThatCancel) {
  ProgramBuilder b;
  const auto x = b.add_column("x", 0.0);
  const auto y = b.add_column("y", 0.0);
  const std::vector<Term> terms{{x, 1.0}, {y, 1.0}, {x, -1.0}};
  b.add_row(custom("r"), RowSense::equal, 0.0, terms);
  const auto p = std::move(b).finalize();
  ASSERT_EQ(p.triplets.size(), 1u);
  EXPECT_EQ(p.triplets[0].col, y);
}

TEST(ProgramBuilder, TermOrderDoesNotMatter) {
  std::vector<Term> terms;
  for (std::size_t j = 0; j < 20; ++j)
    for (int k = 0; k < 3; ++k)
      terms.push_back({j, 0.1 * static_cast<double>(k + 1) / (j + 1.0)});
  const auto build = [](const std::vector<Term>& t) {
    ProgramBuilder b;
    for (std::size_t j = 0; j < 20; ++j) b.add_column("c" + std::to_string(j), 1.0);
    b.add_row(custom("r"), RowSense::greater_equal, 1.0, t);
    return std::move(b).finalize();
  };
  const auto ref = build(terms);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(terms.begin(), terms.end(), rng);
    EXPECT_EQ(build(terms), ref);
  }
}

TEST(ProgramBuilder, SetCostAndUpper) {
  ProgramBuilder b;
  const auto x = b.add_column("x", 1.0);
  b.set_cost(x, 5.0);
  b.set_upper(x, 2.0);
  const auto p = std::move(b).finalize();
  EXPECT_EQ(p.objective[x], 5.0);
  EXPECT_EQ(p.upper[x], 2.0);
}

SparseProgram two_by_two() {
  ProgramBuilder b;
  const auto x = b.add_column("x", 1.0, 0.0, 1.0);
  const auto y = b.add_column("y", -1.0);
  const std::vector<Term> r0{{x, 1.0}, {y, 1.0}};
  const std::vector<Term> r1{{x, 1.0}, {y, -1.0}};
  const std::vector<Term> r2{{y, 2.0}};
  b.add_row(RowLabel{RowFamily::generation, {}, "a"}, RowSense::greater_equal, 1.0, r0);
  b.add_row(RowLabel{RowFamily::max_demand, {}, "b"}, RowSense::less_equal, 0.0, r1);
  b.add_row(RowLabel{RowFamily::terminal_soc, Segment::hdv, "c"}, RowSense::equal, 2.0, r2);
  return std::move(b).finalize();
}

TEST(RowResiduals, FeasiblePoint) {
  const auto p = two_by_two();
  const std::vector<double> x{0.5, 1.0};
  const auto t = row_residuals(p, x);
  EXPECT_EQ(t.activity, (std::vector<double>{1.5, -0.5, 2.0}));
  EXPECT_EQ(t.residual, (std::vector<double>{0.5, -0.5, 0.0}));
  EXPECT_EQ(t.violation, (std::vector<double>{0.0, 0.0, 0.0}));
  EXPECT_TRUE(t.feasible(0.0));
  EXPECT_DOUBLE_EQ(p.objective_value(x), -0.5);
}

TEST(RowResiduals, ViolationsAreScaledAndGroupedByFamily) {
  const auto p = two_by_two();
  const std::vector<double> x{2.0, 0.0};
  const auto t = row_residuals(p, x);
  EXPECT_DOUBLE_EQ(t.violation[0], 0.0);
  EXPECT_DOUBLE_EQ(t.violation[1], 2.0);
  EXPECT_DOUBLE_EQ(t.violation[2], 2.0);
  EXPECT_DOUBLE_EQ(t.bound_violation[0], 1.0);
  EXPECT_DOUBLE_EQ(t.max_violation_by_family.at(RowFamily::max_demand), 2.0);
  EXPECT_DOUBLE_EQ(t.max_violation_by_family.at(RowFamily::terminal_soc), 2.0);
  // 2 / (1 + 0) on the <= row dominates 2 / 3 and 1 / 2.
  EXPECT_DOUBLE_EQ(t.max_scaled_violation, 2.0);
  EXPECT_FALSE(t.feasible(1e-6));
}

TEST(RowResiduals, RejectsWrongDimension) {
  const auto p = two_by_two();
  const std::vector<double> x{1.0};
  EXPECT_THROW(row_residuals(p, x), std::invalid_argument);
}

TEST(RowLabel, ToStringCarriesFamilyAndSubscripts) {
  const RowLabel l{RowFamily::fleet_dispatch, Segment::hdv, "b=HB1,t=0,r=R1"};
  const auto s = l.to_string();
  EXPECT_NE(s.find(family_name(RowFamily::fleet_dispatch)), std::string::npos);
  EXPECT_NE(s.find("b=HB1,t=0,r=R1"), std::string::npos);
}

TEST(RowFamilies, ModelFamiliesExcludeDefinitionsAndCustom) {
  const auto& f = model_row_families();
  EXPECT_EQ(f.size(), 17u);
  for (auto x : {RowFamily::energy_definition, RowFamily::moving_definition,
                 RowFamily::charging_definition, RowFamily::custom})
    EXPECT_EQ(std::count(f.begin(), f.end(), x), 0);
}

}  // namespace
}  // namespace gem
