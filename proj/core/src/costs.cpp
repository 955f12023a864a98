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

#include "gem/costs.hpp"

#include <cmath>
#include <stdexcept>

namespace gem {

double amortize_daily(double capital, double rate, double lifetime_days) {
  if (!(capital >= 0.0) || !(rate >= 0.0) || !(lifetime_days > 0.0) ||
      !std::isfinite(capital) || !std::isfinite(lifetime_days))
    throw std::domain_error("amortize_daily: invalid arguments");
  if (rate == 0.0) return capital / lifetime_days;
  const double decay = -std::expm1(-lifetime_days * std::log1p(rate));
  const double value = capital * rate / decay;
  if (!std::isfinite(value))
    throw std::domain_error("amortize_daily: non-finite result");
  return value;
}

double daily_vehicle_cost(const FleetParams& fleet, double discount_rate,
                          std::size_t region) {
  return fleet.fleet_mismatch.at(region) *
         (fleet.vehicle_fixed_om +
          amortize_daily(fleet.vehicle_capital, discount_rate,
                         fleet.vehicle_lifetime));
}

double daily_battery_cost(const FleetParams& fleet, double discount_rate,
                          std::size_t region) {
  return fleet.battery_mismatch.at(region) *
         amortize_daily(fleet.battery_capital, discount_rate,
                        fleet.battery_lifetime);
}

double daily_charger_cost(const ChargerParams& chargers, double discount_rate,
                          std::size_t level) {
  return amortize_daily(chargers.capital_per_kw.at(level), discount_rate,
                        chargers.lifetime.at(level));
}

double maintenance_cost_row(double moving_vehicles, double speed_mph,
                            double cost_per_mile) {
  return cost_per_mile * moving_vehicles * speed_mph;
}

double demand_charge_hourly_rate(double demand_charge_per_month) {
  return demand_charge_per_month / kDemandChargeDaysPerMonth / kHoursPerDay;
}

double CostCoefficients::fleet_weight(const ScenarioSpec& spec, Segment s,
                                      std::size_t b, std::size_t r) const {
  const auto& c = segment(s);
  return spec.grid.num_days *
         (c.vehicle_daily[r] +
          c.battery_daily[r] * spec.segment(s).fleet.battery_kwh[b]);
}

double CostCoefficients::charger_weight(const ScenarioSpec& spec, Segment s,
                                        std::size_t l) const {
  return spec.grid.num_days * spec.segment(s).chargers.power_kw[l] *
         segment(s).charger_daily[l];
}

double CostCoefficients::peak_weight(const ScenarioSpec& spec,
                                     std::size_t r) const {
  return demand_charge_rate[r] * static_cast<double>(spec.dims.num_hours) *
         spec.dims.dt_hours;
}

CostCoefficients compute_cost_coefficients(const ScenarioSpec& spec) {
  CostCoefficients out;
  const double rate = spec.grid.discount_rate;
  const std::size_t R = spec.dims.num_regions();
  for (Segment s : kSegments) {
    auto& c = out.segments[index_of(s)];
    const auto& seg = spec.segment(s);
    const auto& sets = spec.dims.segment(s);
    c.maintenance_rate = Table3(seg.demand.speed.extents(), 0.0);
    if (sets.absent()) continue;
    for (std::size_t l = 0; l < sets.chargers.size(); ++l)
      c.charger_daily.push_back(daily_charger_cost(seg.chargers, rate, l));
    for (std::size_t r = 0; r < R; ++r) {
      c.vehicle_daily.push_back(daily_vehicle_cost(seg.fleet, rate, r));
      c.battery_daily.push_back(daily_battery_cost(seg.fleet, rate, r));
    }
    for (std::size_t k = 0; k < c.maintenance_rate.size(); ++k) {
      // Cost of one moving vehicle for one period.
      c.maintenance_rate.values()[k] =
          maintenance_cost_row(1.0, seg.demand.speed.values()[k],
                               seg.fleet.maintenance_per_mile) *
          spec.dims.dt_hours;
    }
  }
  for (std::size_t r = 0; r < R; ++r)
    out.demand_charge_rate.push_back(
        demand_charge_hourly_rate(spec.grid.demand_charge[r]));
  return out;
}

}  // namespace gem
