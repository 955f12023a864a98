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

#ifndef GEM_FLEET_EQUATIONS_HPP_
#define GEM_FLEET_EQUATIONS_HPP_

#include <cstddef>

#include "gem/scenario.hpp"

namespace gem {

// The fleet's intermediate quantities are affine in trips served D and
// charging energy P. These return the per-unit factors; the assembler uses
// them to substitute the intermediates out of the program and the reporter
// uses them to reconstruct the values.

// kWh consumed per trip served:
//   LDV: psi_chdd * psi_cdd * eta_b * rho_d / sigma_d
//   HDV: psi_chdd * eta_b * rho_d / sigma_d
double energy_per_trip(const ScenarioSpec& spec, Segment s, std::size_t b,
                       std::size_t d, std::size_t r);

// Vehicles moving per trip served:
//   LDV: rho_d * psi_cdt / (sigma_d * dt * speed)
//   HDV: rho_d / (sigma_d * dt * speed)
double vehicles_per_trip(const ScenarioSpec& spec, Segment s, std::size_t d,
                         std::size_t t, std::size_t r);

// Vehicles charging per kWh delivered in one period:
//   1 / (dt * psi_chdt * gamma_l)
double vehicles_per_kwh(const ScenarioSpec& spec, Segment s, std::size_t b,
                        std::size_t l, std::size_t r);

// Convenience forms evaluated at a point.
inline double energy_to_meet_demand(const ScenarioSpec& spec, Segment s,
                                    std::size_t b, std::size_t d,
                                    std::size_t r, double trips) {
  return trips * energy_per_trip(spec, s, b, d, r);
}
inline double vehicles_moving(const ScenarioSpec& spec, Segment s,
                              std::size_t d, std::size_t t, std::size_t r,
                              double trips) {
  return trips * vehicles_per_trip(spec, s, d, t, r);
}
inline double vehicles_charging(const ScenarioSpec& spec, Segment s,
                                std::size_t b, std::size_t l, std::size_t r,
                                double energy_kwh) {
  return energy_kwh * vehicles_per_kwh(spec, s, b, l, r);
}

}  // namespace gem

#endif  // GEM_FLEET_EQUATIONS_HPP_
