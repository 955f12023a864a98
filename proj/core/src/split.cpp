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

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gem {
namespace {

const Table3& private_trips(const ScenarioSpec& spec, PrivateGroup g) {
  return g == PrivateGroup::automated ? spec.private_hdv.automated_trips
                                      : spec.private_hdv.human_trips;
}

// Adds the envelope implied by `trips` (private trucks of one group) to
// `env`.
void add_envelope(const ScenarioSpec& spec, const Table3& trips,
                  const std::vector<double>& fleet, ChargingEnvelope& env) {
  const auto& dims = spec.dims;
  const auto& hdv = spec.segment(Segment::hdv);
  const std::size_t T = dims.num_hours, R = dims.num_regions(),
                    D = trips.extent(0);
  const double eta = hdv.fleet.efficiency[spec.split.battery];
  const double battery = hdv.fleet.battery_kwh[spec.split.battery];
  const double rating = hdv.chargers.power_kw[spec.split.charger];
  for (std::size_t r = 0; r < R; ++r) {
    const double psi = hdv.demand.charge_deadhead_distance[r];
    const double capacity = fleet[r] * battery;
    double consumed_before = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
      double used = 0.0;
      for (std::size_t d = 0; d < D; ++d)
        used += trips(d, t, r) * psi * eta * hdv.demand.distance[d];
      const double consumed_through = consumed_before + used;
      env.energy_max(t, r) += consumed_before;
      env.energy_min(t, r) += t + 1 == T
                                  ? consumed_through
                                  : std::max(0.0, consumed_through - capacity);
      if (plugged_in(spec, t)) env.power_max(t, r) += rating * fleet[r];
      consumed_before = consumed_through;
    }
  }
}

}  // namespace

bool plugged_in(const ScenarioSpec& spec, std::size_t t) {
  const double h = hour_of_day(spec.dims, t);
  const double start = spec.split.plug_start_hour;
  const double end = spec.split.plug_end_hour;
  if (start == end) return true;
  if (start < end) return h >= start && h < end;
  return h >= start || h < end;
}

std::vector<double> private_fleet_size(const ScenarioSpec& spec,
                                       PrivateGroup group) {
  const auto& trips = private_trips(spec, group);
  const auto& hdv = spec.segment(Segment::hdv);
  const std::size_t D = trips.extent(0), T = trips.extent(1),
                    R = trips.extent(2);
  std::vector<double> fleet(spec.dims.num_regions(), 0.0);
  for (std::size_t r = 0; r < R; ++r) {
    for (std::size_t t = 0; t < T; ++t) {
      double moving = 0.0;
      for (std::size_t d = 0; d < D; ++d)
        moving += trips(d, t, r) * hdv.demand.distance[d] /
                  (spec.dims.dt_hours * hdv.demand.speed(d, t, r));
      fleet[r] = std::max(fleet[r], moving);
    }
  }
  return fleet;
}

double hdv_trip_miles(const ScenarioSpec& spec) {
  const auto& hdv = spec.segment(Segment::hdv);
  double total = 0.0;
  for (const Table3* t : {&hdv.demand.trips, &spec.private_hdv.automated_trips,
                          &spec.private_hdv.human_trips}) {
    for (std::size_t k = 0; k < t->size(); ++k)
      total += t->values()[k] * hdv.demand.distance[t->unravel(k)[0]];
  }
  return total;
}

ScenarioSpec shaev_split(const ScenarioSpec& spec, double shared_fraction) {
  if (!(shared_fraction >= 0.0 && shared_fraction <= 1.0))
    throw std::invalid_argument("shared fraction must lie in [0, 1]");
  ScenarioSpec out = spec;
  if (spec.dims.segment(Segment::hdv).absent()) return out;

  auto& trips = out.segment(Segment::hdv).demand.trips;
  Table3 automated(trips.extents(), 0.0);
  Table3 human(trips.extents(), 0.0);
  const double a = spec.split.automated_share;
  for (std::size_t k = 0; k < trips.size(); ++k) {
    const double total = trips.values()[k];
    const double shared = shared_fraction * total;
    const double priv = total - shared;
    automated.values()[k] = a * priv;
    human.values()[k] = priv - a * priv;
    trips.values()[k] = shared;
  }
  for (std::size_t k = 0; k < automated.size(); ++k) {
    out.private_hdv.automated_trips.values()[k] += automated.values()[k];
    out.private_hdv.human_trips.values()[k] += human.values()[k];
  }

  // Envelopes for the newly privatized trips only.
  ScenarioSpec delta = out;
  delta.private_hdv.automated_trips = automated;
  delta.private_hdv.human_trips = human;
  add_envelope(out, automated,
               private_fleet_size(delta, PrivateGroup::automated),
               out.loads.hdv_automated);
  add_envelope(out, human, private_fleet_size(delta, PrivateGroup::human),
               out.loads.hdv_human);
  return out;
}

}  // namespace gem
