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

#ifndef GEM_SCENARIO_HPP_
#define GEM_SCENARIO_HPP_

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "gem/dense_table.hpp"

namespace gem {

// Vehicle segment. Both segments share the same variable and row families;
// they differ only in which deadhead corrections enter the energy and
// moving-vehicle relations.
enum class Segment : std::size_t { ldv = 0, hdv = 1 };
inline constexpr std::array<Segment, 2> kSegments{Segment::ldv, Segment::hdv};

std::string_view segment_name(Segment s);
inline constexpr std::size_t index_of(Segment s) {
  return static_cast<std::size_t>(s);
}

struct SegmentSets {
  std::vector<std::string> batteries;
  std::vector<std::string> chargers;
  std::vector<std::string> distances;

  // A segment is either present (all three sets non-empty) or absent.
  bool absent() const {
    return batteries.empty() && chargers.empty() && distances.empty();
  }
  bool operator==(const SegmentSets&) const = default;
};

struct DimensionSets {
  double dt_hours = 1.0;
  std::size_t num_hours = 24;
  std::vector<std::string> mobility_regions;
  std::vector<std::string> grid_regions;
  std::vector<std::string> generators;
  std::vector<std::size_t> region_grid;     // mobility region -> grid region
  std::vector<std::size_t> generator_grid;  // generator -> grid region
  std::array<SegmentSets, 2> segments;

  const SegmentSets& segment(Segment s) const { return segments[index_of(s)]; }
  SegmentSets& segment(Segment s) { return segments[index_of(s)]; }
  std::size_t num_regions() const { return mobility_regions.size(); }
  std::size_t num_grid_regions() const { return grid_regions.size(); }
  std::size_t num_generators() const { return generators.size(); }
  // Ordered pairs (from, to) with from != to.
  std::size_t num_links() const {
    const auto n = grid_regions.size();
    return n * (n > 0 ? n - 1 : 0);
  }
  bool operator==(const DimensionSets&) const = default;
};

// Per-segment vehicle parameters. Battery capacity and drivetrain efficiency
// vary by battery type; everything else is per segment or per region.
struct FleetParams {
  std::vector<double> battery_kwh;       // [b] kWh
  std::vector<double> efficiency;        // [b] kWh/mile
  double maintenance_per_mile = 0.0;     // $/mile
  double vehicle_capital = 0.0;          // $ per vehicle, battery excluded
  double vehicle_fixed_om = 0.0;         // $/day per vehicle
  double vehicle_lifetime = 0.0;         // days
  double battery_capital = 0.0;          // $/kWh
  double battery_lifetime = 0.0;         // days
  std::vector<double> fleet_mismatch;    // [r] >= 1
  std::vector<double> battery_mismatch;  // [r] >= 1
  bool operator==(const FleetParams&) const = default;
};

struct ChargerParams {
  std::vector<double> power_kw;        // [l] kW per charger
  std::vector<double> capital_per_kw;  // [l] $/kW
  std::vector<double> lifetime;        // [l] days
  Table3 deadhead_time;                // [b][l][r] in (0, 1]
  bool operator==(const ChargerParams&) const = default;
};

struct MobilityDemand {
  Table3 trips;                                  // [d][t][r] trips per period
  Table3 speed;                                  // [d][t][r] mph
  std::vector<double> distance;                  // [d] miles per trip
  std::vector<double> sharing;                   // [d] >= 1
  std::vector<double> charge_deadhead_distance;  // [r]
  std::vector<double> customer_deadhead_distance;  // [r], LDV only
  std::vector<double> customer_deadhead_time;      // [r], LDV only
  bool operator==(const MobilityDemand&) const = default;
};

struct SegmentData {
  FleetParams fleet;
  ChargerParams chargers;
  MobilityDemand demand;
  bool operator==(const SegmentData&) const = default;
};

// Power bounds (kW) and cumulative energy bounds (kWh) on an exogenous
// charging profile, indexed [t][r].
struct ChargingEnvelope {
  Table2 power_min;
  Table2 power_max;
  Table2 energy_min;
  Table2 energy_max;
  bool operator==(const ChargingEnvelope&) const = default;
};

struct ExogenousLoads {
  Table2 other;        // [t][i] kW, non-mobility grid demand
  Table2 private_ldv;  // [t][r] kW, fixed personal LDV charging profile
  ChargingEnvelope hdv_automated;
  ChargingEnvelope hdv_human;
  bool operator==(const ExogenousLoads&) const = default;
};

// HDV trips removed from the optimized fleet by the shared-fraction split,
// kept so trip-miles and private fleet assets can be accounted for.
struct PrivateHdvDemand {
  Table3 automated_trips;  // [dH][t][r]
  Table3 human_trips;      // [dH][t][r]
  bool operator==(const PrivateHdvDemand&) const = default;
};

struct GridParams {
  std::vector<double> generator_cost;      // [g] $/kWh
  std::vector<double> generator_capacity;  // [g] kW
  Table3 transmission_cost;                // [i][i'][t] $/kWh, diagonal unused
  Table2 transmission_capacity;            // [i][i'] kW, diagonal unused
  double transmission_efficiency = 1.0;    // applied to imports
  std::vector<double> demand_charge;       // [r] $/kW/month
  double discount_rate = 0.0;              // daily
  double num_days = 1.0;
  bool operator==(const GridParams&) const = default;
};

// Controls how the private share of HDV demand is turned into envelopes.
struct SplitOptions {
  double automated_share = 0.5;   // of the private fraction
  double plug_start_hour = 18.0;  // hour of day, inclusive
  double plug_end_hour = 6.0;     // hour of day, exclusive; wraps midnight
  std::size_t battery = 0;        // HDV battery type used by private trucks
  std::size_t charger = 0;        // HDV charger level used by private trucks
  bool operator==(const SplitOptions&) const = default;
};

struct ScenarioSpec {
  DimensionSets dims;
  std::array<SegmentData, 2> segments;
  ExogenousLoads loads;
  PrivateHdvDemand private_hdv;
  GridParams grid;
  SplitOptions split;

  const SegmentData& segment(Segment s) const { return segments[index_of(s)]; }
  SegmentData& segment(Segment s) { return segments[index_of(s)]; }
  bool operator==(const ScenarioSpec&) const = default;
};

// Allocates every table in `spec` to the extents implied by `spec.dims`.
// Values are set to the defaults used by the scenario reader (NaN for
// required parameters, neutral values for correction factors and loads).
void allocate_tables(ScenarioSpec& spec);

struct Violation {
  std::string rule;
  std::string detail;
  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool cites(std::string_view rule) const;
};

// Lists every violated invariant; an empty report means the scenario is
// well formed. Never throws on bad data.
ValidationReport validate_scenario(const ScenarioSpec& spec);

// Hour-of-day (in [0, 24)) at the start of period t.
double hour_of_day(const DimensionSets& dims, std::size_t t);

}  // namespace gem

#endif  // GEM_SCENARIO_HPP_
