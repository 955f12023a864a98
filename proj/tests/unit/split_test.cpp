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

#include "gem/split.hpp"

#include <gtest/gtest.h>

#include <stdexcept>

#include "fixtures.hpp"

namespace gem {
namespace {

double sum(const Table3& t) {
  double s = 0.0;
  for (double v : t.values()) s += v;
  return s;
}

TEST(Split, FullShareLeavesDemandUntouched) {
  const auto spec = testing::toy_spec();
  const auto out = shaev_split(spec, 1.0);
  EXPECT_EQ(out.segment(Segment::hdv).demand.trips,
            spec.segment(Segment::hdv).demand.trips);
  EXPECT_DOUBLE_EQ(sum(out.private_hdv.automated_trips), 0.0);
  EXPECT_EQ(out.loads.hdv_automated, spec.loads.hdv_automated);
  EXPECT_EQ(out.loads.hdv_human, spec.loads.hdv_human);
}

TEST(Split, ZeroShareMovesEverythingPrivate) {
  const auto spec = testing::toy_spec();
  const auto out = shaev_split(spec, 0.0);
  EXPECT_DOUBLE_EQ(sum(out.segment(Segment::hdv).demand.trips), 0.0);
  EXPECT_DOUBLE_EQ(sum(out.private_hdv.automated_trips) +
                       sum(out.private_hdv.human_trips),
                   sum(spec.segment(Segment::hdv).demand.trips));
}

TEST(Split, AutomatedShareDividesPrivateTrips) {
  auto spec = testing::toy_spec();
  spec.split.automated_share = 0.25;
  const auto out = shaev_split(spec, 0.2);
  EXPECT_NEAR(sum(out.private_hdv.automated_trips), 0.25 * 0.8 * 6.0, 1e-12);
  EXPECT_NEAR(sum(out.private_hdv.human_trips), 0.75 * 0.8 * 6.0, 1e-12);
}

TEST(Split, TripMilesConservedForEveryFraction) {
  const auto spec = testing::desk_spec();
  const double miles = hdv_trip_miles(spec);
  for (double s : {0.0, 0.1, 0.37, 0.5, 0.9, 1.0})
    EXPECT_NEAR(hdv_trip_miles(shaev_split(spec, s)), miles, 1e-9 * miles) << s;
}

TEST(Split, SplitScenarioValidates) {
  for (double s : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    EXPECT_TRUE(validate_scenario(shaev_split(testing::desk_spec(), s)).ok()) << s;
    EXPECT_TRUE(validate_scenario(shaev_split(testing::toy_spec(), s)).ok()) << s;
  }
}

TEST(Split, EnvelopeEnergyBoundsOrderedAndCloseAtEnd) {
  const auto out = shaev_split(testing::desk_spec(), 0.3);
  for (const auto* env : {&out.loads.hdv_automated, &out.loads.hdv_human}) {
    const std::size_t T = out.dims.num_hours;
    for (std::size_t r = 0; r < out.dims.num_regions(); ++r) {
      for (std::size_t t = 0; t < T; ++t) {
        EXPECT_LE(env->energy_min(t, r), env->energy_max(t, r) + 1e-9);
        if (t > 0) EXPECT_GE(env->energy_max(t, r), env->energy_max(t - 1, r));
      }
      // No demand in the final period, so consumption is complete by then.
      EXPECT_NEAR(env->energy_min(T - 1, r), env->energy_max(T - 1, r), 1e-9);
    }
  }
}

TEST(Split, PrivateFleetIsPeakVehiclesOnRoad) {
  const auto out = shaev_split(testing::toy_spec(), 0.0);
  const auto automated = private_fleet_size(out, PrivateGroup::automated);
  const auto human = private_fleet_size(out, PrivateGroup::human);
  // Peak hour carries 3 trips, half of them automated.
  EXPECT_NEAR(automated[0], 1.5 * 20.0 / 40.0, 1e-12);
  EXPECT_NEAR(human[0], 1.5 * 20.0 / 40.0, 1e-12);
}

TEST(Split, PowerCapIsRatingTimesFleetWhilePlugged) {
  auto spec = testing::toy_spec();
  spec.split.plug_start_hour = 2.0;
  spec.split.plug_end_hour = 4.0;
  const auto out = shaev_split(spec, 0.0);
  const double fleet = private_fleet_size(out, PrivateGroup::automated)[0];
  const double rating = spec.segment(Segment::hdv).chargers.power_kw[0];
  EXPECT_DOUBLE_EQ(out.loads.hdv_automated.power_max(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(out.loads.hdv_automated.power_max(1, 0), 0.0);
  EXPECT_NEAR(out.loads.hdv_automated.power_max(2, 0), rating * fleet, 1e-12);
  EXPECT_NEAR(out.loads.hdv_automated.power_max(3, 0), rating * fleet, 1e-12);
}

TEST(Split, PlugWindowWrapsMidnight) {
  auto spec = testing::desk_spec();
  spec.split.plug_start_hour = 18.0;
  spec.split.plug_end_hour = 6.0;
  EXPECT_TRUE(plugged_in(spec, 20));
  EXPECT_TRUE(plugged_in(spec, 3));
  EXPECT_FALSE(plugged_in(spec, 6));
  EXPECT_FALSE(plugged_in(spec, 12));
  spec.split.plug_end_hour = 18.0;
  EXPECT_TRUE(plugged_in(spec, 12));
}

TEST(Split, RejectsFractionOutsideUnitInterval) {
  EXPECT_THROW(shaev_split(testing::toy_spec(), -0.1), std::invalid_argument);
  EXPECT_THROW(shaev_split(testing::toy_spec(), 1.5), std::invalid_argument);
}

TEST(Split, RepeatedSplitsAccumulateEnvelopes) {
  const auto once = shaev_split(testing::toy_spec(), 0.5);
  const auto twice = shaev_split(once, 1.0);
  EXPECT_EQ(once, twice);
}

}  // namespace
}  // namespace gem
