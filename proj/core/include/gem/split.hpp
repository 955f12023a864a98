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

#ifndef GEM_SPLIT_HPP_
#define GEM_SPLIT_HPP_

#include <vector>

#include "gem/scenario.hpp"

namespace gem {

// Routes a fraction `shared_fraction` of the HDV trip demand to the
// optimized shared fleet and converts the remainder into exogenous private
// charging envelopes, split between automated and human-driven trucks by
// spec.split.automated_share.
//
// Private trucks do not pool trips (sharing factor 1). For each private
// group and region the envelope is built from hourly energy use
// e_t = sum_d trips * psi_chdd * eta * rho:
//   energy_max(t) = sum_{t' < t} e_t'                  (replenish after use)
//   energy_min(t) = max(0, sum_{t' <= t} e_t' - fleet battery capacity)
//   energy_min(T-1) = total consumption                 (full at the end)
//   power_max(t) = vehicles * charger rating while plugged in, else 0
// where the private vehicle count is the peak number of trucks on the road.
// Envelopes are added to any envelopes already present in `spec`.
//
// Throws std::invalid_argument if shared_fraction is outside [0, 1].
ScenarioSpec shaev_split(const ScenarioSpec& spec, double shared_fraction);

// Total HDV trip-miles: shared demand plus both private tables.
double hdv_trip_miles(const ScenarioSpec& spec);

enum class PrivateGroup { automated, human };

// Private trucks per mobility region needed to carry the group's trips:
// the peak over t of sum_d trips * rho / (dt * speed).
std::vector<double> private_fleet_size(const ScenarioSpec& spec,
                                       PrivateGroup group);

// Whether private trucks are plugged in during period t.
bool plugged_in(const ScenarioSpec& spec, std::size_t t);

}  // namespace gem

#endif  // GEM_SPLIT_HPP_
