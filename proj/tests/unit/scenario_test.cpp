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

#include "gem/scenario.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "fixtures.hpp"

namespace gem {
namespace {

using testing::desk_spec;
using testing::make_spec;
using testing::Shape;
using testing::toy_spec;

TEST(Validation, BuilderScenariosAreValid) {
  EXPECT_TRUE(validate_scenario(toy_spec()).ok());
  EXPECT_TRUE(validate_scenario(desk_spec()).ok());
  for (const auto& f : testing::tiny_fixtures())
    EXPECT_TRUE(validate_scenario(f.tiny.spec).ok()) << f.name;
}

TEST(Validation, AbsentSegmentIsAllowed) {
  Shape shape;
  shape.ldv_batteries = shape.ldv_chargers = shape.ldv_distances = 0;
  EXPECT_TRUE(validate_scenario(make_spec(shape)).ok());
}

TEST(Validation, NoSegmentPresentIsRejected) {
  Shape shape;
  shape.hdv_batteries = shape.hdv_chargers = shape.hdv_distances = 0;
  const auto rep = validate_scenario(make_spec(shape));
  ASSERT_TRUE(rep.cites("set non-empty"));
  EXPECT_EQ(rep.violations.back().detail, "no vehicle segment present");
}

TEST(Validation, SharingBelowOneIsRejected) {
  auto s = toy_spec();
  s.segment(Segment::hdv).demand.sharing[0] = 0.5;
  EXPECT_TRUE(validate_scenario(s).cites("sharing factor >= 1"));
}

TEST(Validation, NegativeTripsAreRejected) {
  auto s = toy_spec();
  s.segment(Segment::hdv).demand.trips(0, 1, 0) = -1.0;
  EXPECT_TRUE(validate_scenario(s).cites("demand >= 0"));
}

TEST(Validation, FinalPeriodDemandIsRejected) {
  auto s = toy_spec();
  s.segment(Segment::hdv).demand.trips(0, 3, 0) = 1.0;
  EXPECT_TRUE(validate_scenario(s).cites("no trip demand in final period"));
}

TEST(Validation, MissingValueIsReported) {
  auto s = toy_spec();
  s.segment(Segment::hdv).fleet.battery_kwh[0] =
      std::numeric_limits<double>::quiet_NaN();
  EXPECT_TRUE(validate_scenario(s).cites("missing or non-finite value"));
}

TEST(Validation, ZeroBatteryRejected) {
  auto s = toy_spec();
  s.segment(Segment::hdv).fleet.battery_kwh[0] = 0.0;
  EXPECT_TRUE(validate_scenario(s).cites("battery capacity > 0"));
}

TEST(Validation, HorizonMustMatchDays) {
  auto s = toy_spec();
  s.grid.num_days = 2.0;
  EXPECT_FALSE(validate_scenario(s).ok());
}

TEST(Validation, ChargerDeadheadTimeInUnitInterval) {
  auto s = toy_spec();
  s.segment(Segment::hdv).chargers.deadhead_time(0, 0, 0) = 1.5;
  EXPECT_TRUE(
      validate_scenario(s).cites("charger deadhead correction in (0, 1]"));
}

TEST(Validation, TransmissionEfficiencyInUnitInterval) {
  auto s = toy_spec();
  s.grid.transmission_efficiency = 1.2;
  EXPECT_TRUE(validate_scenario(s).cites("transmission efficiency in (0, 1]"));
}

TEST(Validation, EnvelopeBoundsOrdered) {
  auto s = toy_spec();
  s.loads.hdv_automated.power_min(1, 0) = 5.0;
  s.loads.hdv_automated.power_max(1, 0) = 1.0;
  EXPECT_TRUE(validate_scenario(s).cites("envelope lower bound <= upper bound"));
}

TEST(Validation, WrongTableExtentsReported) {
  auto s = toy_spec();
  s.segment(Segment::hdv).demand.trips = Table3({1, 2, 1});
  EXPECT_TRUE(validate_scenario(s).cites("table extents match dimensions"));
}

TEST(Validation, RegionMapOutOfRange) {
  auto s = toy_spec();
  s.dims.region_grid[0] = 3;
  EXPECT_TRUE(validate_scenario(s).cites("region maps to grid region"));
}

TEST(Validation, NeverThrowsOnEmptySpec) {
  ScenarioSpec s;
  EXPECT_NO_THROW({
    const auto rep = validate_scenario(s);
    EXPECT_FALSE(rep.ok());
  });
}

TEST(Allocate, TablesMatchDimensions) {
  Shape shape;
  shape.hours = 5;
  shape.regions = 2;
  shape.grid_regions = 2;
  shape.hdv_distances = 3;
  const auto s = make_spec(shape);
  const auto& d = s.segment(Segment::hdv).demand;
  EXPECT_EQ(d.trips.extents(), (Table3::Extents{3, 5, 2}));
  EXPECT_EQ(s.loads.other.extents(), (Table2::Extents{5, 2}));
  EXPECT_EQ(s.grid.transmission_capacity.extents(), (Table2::Extents{2, 2}));
  EXPECT_EQ(s.dims.num_links(), 2u);
}

TEST(HourOfDay, WrapsAtMidnight) {
  DimensionSets dims;
  dims.dt_hours = 2.0;
  dims.num_hours = 24;
  EXPECT_DOUBLE_EQ(hour_of_day(dims, 0), 0.0);
  EXPECT_DOUBLE_EQ(hour_of_day(dims, 5), 10.0);
  EXPECT_DOUBLE_EQ(hour_of_day(dims, 13), 2.0);
}

}  // namespace
}  // namespace gem
