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

#include "gem/report.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>

#include "fixtures.hpp"
#include "gem/costs.hpp"
#include "gem/split.hpp"
#include "gem/sweep.hpp"

namespace gem {
namespace {

namespace fs = std::filesystem;

ReportBundle report_for(const ScenarioSpec& base, double s) {
  const auto r = testing::solve_spec(base, s);
  return make_report(r.spec, s, compute_cost_coefficients(r.spec), r.assembled,
                     r.solution, SolveSettings{});
}

TEST(Report, CostTermsSumToObjective) {
  for (double s : {0.0, 0.5, 1.0}) {
    const auto b = report_for(testing::desk_spec(), s);
    ASSERT_EQ(b.status, SolveStatus::optimal);
    EXPECT_NEAR(b.costs.objective(), b.solution.objective,
                1e-9 * std::abs(b.solution.objective));
    EXPECT_GE(b.costs.total(), b.costs.objective());
    if (s == 1.0) {
      EXPECT_EQ(b.costs.private_fleet, 0.0);
      EXPECT_EQ(b.costs.private_maintenance, 0.0);
    } else {
      EXPECT_GT(b.costs.private_fleet, 0.0);
      EXPECT_GT(b.costs.private_maintenance, 0.0);
    }
  }
}

TEST(Report, PrivateMaintenanceIsPerMileCost) {
  const auto b = report_for(testing::toy_spec(), 0.0);
  // 6 trips of 20 miles at 0.1 $/mile.
  EXPECT_NEAR(b.costs.private_maintenance, 12.0, 1e-12);
}

TEST(Report, LoadProfileReconstructsCharging) {
  const auto r = testing::solve_spec(testing::desk_spec(), 0.5);
  const auto b = make_report(r.spec, 0.5, compute_cost_coefficients(r.spec),
                             r.assembled, r.solution, SolveSettings{});
  const auto& idx = r.assembled.index;
  const auto& x = r.solution.x;
  std::map<std::pair<std::size_t, std::size_t>, double> shaev;
  for (const auto& l : b.load_profile)
    if (l.category == "shaev") shaev[{l.hour, l.region}] += l.kw;
  for (std::size_t t = 0; t < 24; ++t)
    for (std::size_t r = 0; r < 2; ++r) {
      double p = 0.0;
      for (std::size_t bb = 0; bb < 2; ++bb)
        for (std::size_t l = 0; l < 2; ++l) p += x[idx.charging(Segment::hdv, bb, t, l, r)];
      EXPECT_NEAR((shaev[{t, r}]), p, 1e-9 * (1.0 + p));
    }
}

TEST(Report, PeakVariableEqualsNetPeakWithoutSlack) {
  for (double s : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const auto b = report_for(testing::desk_spec(), s);
    ASSERT_EQ(b.status, SolveStatus::optimal);
    for (const auto& p : b.peaks) EXPECT_NEAR(p.pmax_kw, p.net_peak_kw, 1e-6) << s;
  }
}

TEST(Report, IntermediatesMatchFleetEquations) {
  const auto r = testing::solve_spec(testing::toy_spec(), 1.0);
  const auto in = reconstruct_intermediates(r.solution, r.assembled.index, r.spec);
  const auto& hdv = in[index_of(Segment::hdv)];
  const auto& x = r.solution.x;
  const auto& idx = r.assembled.index;
  for (std::size_t t = 0; t < 4; ++t) {
    const double d = x[idx.trips(Segment::hdv, 0, 0, t, 0)];
    // 20 miles at 1 kWh/mile; 20 miles at 40 mph in a 1 h period.
    EXPECT_NEAR(hdv.energy(0, 0, t, 0), 20.0 * d, 1e-9);
    EXPECT_NEAR(hdv.moving(0, 0, t, 0), 0.5 * d, 1e-9);
    EXPECT_NEAR(hdv.charging(0, t, 0, 0),
                x[idx.charging(Segment::hdv, 0, t, 0, 0)] / 50.0, 1e-9);
  }
}

TEST(Report, WritesEveryTableWithHeader) {
  const auto spec = shaev_split(testing::toy_spec(), 0.5);
  const auto b = report_for(testing::toy_spec(), 0.5);
  const fs::path dir = fs::temp_directory_path() / "gem_report_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  write_report(b, spec, dir);
  for (const char* f :
       {"load_profile.csv", "chargers.csv", "fleet_size.csv", "peak_load.csv",
        "cost_breakdown.csv", "dispatch.csv", "grid_balance.csv", "flows.csv",
        "intermediates.csv", "solver.csv"}) {
    std::ifstream in(dir / f);
    ASSERT_TRUE(in) << f;
    std::string first;
    std::getline(in, first);
    EXPECT_EQ(first.rfind("# family=", 0), 0u) << f;
    EXPECT_NE(first.find(" units="), std::string::npos) << f;
  }
  // Only written for a failed solve.
  EXPECT_FALSE(fs::exists(dir / "infeasibility.csv"));
  fs::remove_all(dir);
}

TEST(Report, ZeroDemandSolvesToZeroFleet) {
  testing::Shape shape;
  auto spec = testing::make_spec(shape);
  const auto r = run_single(spec, 1.0, SolveSettings{});
  ASSERT_EQ(r.exit_code, kExitOk) << r.error;
  ASSERT_TRUE(r.bundle);
  EXPECT_NEAR(r.bundle->fleet_size, 0.0, 1e-7);
  EXPECT_NEAR(r.bundle->charger_count, 0.0, 1e-7);
  EXPECT_NEAR(r.bundle->system_peak_kw, 0.0, 1e-7);
}

TEST(Report, InfeasibleRunNamesViolatedFamilies) {
  auto spec = testing::toy_spec();
  spec.grid.generator_capacity = {1.0};
  const fs::path dir = fs::temp_directory_path() / "gem_report_infeasible";
  fs::remove_all(dir);
  const auto r = run_single(spec, 1.0, SolveSettings{}, dir);
  EXPECT_EQ(r.exit_code, kExitInfeasible);
  ASSERT_TRUE(r.bundle);
  EXPECT_FALSE(r.bundle->violated_families.empty());
  EXPECT_TRUE(fs::exists(dir / "infeasibility.csv"));
  fs::remove_all(dir);
}

}  // namespace
}  // namespace gem
