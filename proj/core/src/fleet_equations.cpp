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

#include "gem/fleet_equations.hpp"

namespace gem {

double energy_per_trip(const ScenarioSpec& spec, Segment s, std::size_t b,
                       std::size_t d, std::size_t r) {
  const auto& seg = spec.segment(s);
  double factor = seg.demand.charge_deadhead_distance[r];
  if (s == Segment::ldv) factor *= seg.demand.customer_deadhead_distance[r];
  return factor * seg.fleet.efficiency[b] * seg.demand.distance[d] /
         seg.demand.sharing[d];
}

double vehicles_per_trip(const ScenarioSpec& spec, Segment s, std::size_t d,
                         std::size_t t, std::size_t r) {
  const auto& dm = spec.segment(s).demand;
  double value =
      dm.distance[d] / (dm.sharing[d] * spec.dims.dt_hours * dm.speed(d, t, r));
  if (s == Segment::ldv) value *= dm.customer_deadhead_time[r];
  return value;
}

double vehicles_per_kwh(const ScenarioSpec& spec, Segment s, std::size_t b,
                        std::size_t l, std::size_t r) {
  const auto& ch = spec.segment(s).chargers;
  return 1.0 /
         (spec.dims.dt_hours * ch.deadhead_time(b, l, r) * ch.power_kw[l]);
}

}  // namespace gem
