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

#ifndef GEM_COSTS_HPP_
#define GEM_COSTS_HPP_

#include <array>
#include <vector>

#include "gem/scenario.hpp"

namespace gem {

// Days per month and hours per day used to turn a monthly demand charge into
// an hourly rate.
inline constexpr double kDemandChargeDaysPerMonth = 30.5;
inline constexpr double kHoursPerDay = 24.0;

// Capital recovery: capital * rate * (1+rate)^L / ((1+rate)^L - 1).
// Returns capital / lifetime at rate == 0. Evaluated as
// rate / (1 - (1+rate)^-L) through log1p/expm1 so tiny rates keep full
// precision. Throws std::domain_error on invalid arguments or a non-finite
// result.
double amortize_daily(double capital, double rate, double lifetime_days);

// psi_f[r] * (fixed O&M + amortized vehicle capital), $/vehicle/day.
double daily_vehicle_cost(const FleetParams& fleet, double discount_rate,
                          std::size_t region);

// psi_b[r] * amortized battery capital, $/kWh/day.
double daily_battery_cost(const FleetParams& fleet, double discount_rate,
                          std::size_t region);

// Amortized charger capital, $/kW/day.
double daily_charger_cost(const ChargerParams& chargers, double discount_rate,
                          std::size_t level);

// beta * moving vehicles * speed, $ per period.
double maintenance_cost_row(double moving_vehicles, double speed_mph,
                            double cost_per_mile);

// beta_r / 30.5 / 24, $/kW per hour.
double demand_charge_hourly_rate(double demand_charge_per_month);

struct SegmentCosts {
  std::vector<double> charger_daily;  // [l] $/kW/day
  std::vector<double> vehicle_daily;  // [r] $/vehicle/day
  std::vector<double> battery_daily;  // [r] $/kWh/day
  Table3 maintenance_rate;  // [d][t][r] $ per moving vehicle per period
};

// Every cost coefficient of a scenario, computed once before assembly.
struct CostCoefficients {
  std::array<SegmentCosts, 2> segments;
  std::vector<double> demand_charge_rate;  // [r] $/kW/hour

  const SegmentCosts& segment(Segment s) const {
    return segments[index_of(s)];
  }

  // Objective weight on one vehicle of battery type b in region r over the
  // horizon: n_days * (vehicle_daily + battery_daily * B_b).
  double fleet_weight(const ScenarioSpec& spec, Segment s, std::size_t b,
                      std::size_t r) const;
  // Objective weight on one charger of level l: n_days * gamma_l * theta_l.
  double charger_weight(const ScenarioSpec& spec, Segment s,
                        std::size_t l) const;
  // Objective weight on the peak-demand variable of region r: the hourly
  // rate accumulated over every hour of the horizon.
  double peak_weight(const ScenarioSpec& spec, std::size_t r) const;
};

CostCoefficients compute_cost_coefficients(const ScenarioSpec& spec);

}  // namespace gem

#endif  // GEM_COSTS_HPP_
