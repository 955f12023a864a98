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

#ifndef GEM_DISPATCH_HPP_
#define GEM_DISPATCH_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gem/scenario.hpp"
#include "gem/solver.hpp"
#include "gem/variable_index.hpp"

namespace gem {

enum class GeneratorState { off, marginal, at_capacity };
std::string_view generator_state_name(GeneratorState s);

struct GeneratorDispatch {
  std::size_t generator = 0;
  std::size_t hour = 0;
  double energy = 0.0;    // kWh in the period
  double capacity = 0.0;  // kWh in the period
  GeneratorState state = GeneratorState::off;
};

struct RegionBalance {
  std::size_t grid_region = 0;
  std::size_t hour = 0;
  double generation = 0.0;  // kWh
  double imports = 0.0;     // kWh delivered, after losses
  double exports = 0.0;     // kWh sent
  double load = 0.0;        // kWh served: fleet charging plus exogenous
  double surplus = 0.0;     // generation + imports - exports - load
  std::optional<double> price;  // $/kWh, dual of the balance row
};

struct FlowRecord {
  std::size_t from = 0;
  std::size_t to = 0;
  std::size_t hour = 0;
  double flow = 0.0;      // kWh sent
  double capacity = 0.0;  // kWh in the period
  bool binding = false;
};

struct DispatchResult {
  std::vector<GeneratorDispatch> generators;  // g-major, then hour
  std::vector<RegionBalance> regions;         // grid region-major, then hour
  std::vector<FlowRecord> flows;              // link-major, then hour
  bool prices_available = false;
};

// Tabulates generation, transmission and balance-row prices from a solved
// program assembled by build_program. Prices are reported as unavailable
// when the solution carries no row duals or is not optimal.
DispatchResult extract_dispatch(const Solution& solution,
                                const VariableIndex& index,
                                const ScenarioSpec& spec);

struct MeritViolation {
  std::size_t grid_region = 0;
  std::size_t hour = 0;
  std::size_t cheaper = 0;    // generator left with spare capacity
  std::size_t expensive = 0;  // generator dispatched above tolerance
  std::string detail;
};

// For each (i, t), reports a generator running while a cheaper one in the
// same grid region has spare capacity, or while a cheaper remote generator
// has spare capacity and the direct link into i is not at capacity (remote
// cost is compared after transmission cost and losses). Quantities are
// compared with tolerance tol * (1 + capacity).
std::vector<MeritViolation> verify_merit_order(const DispatchResult& result,
                                               const ScenarioSpec& spec,
                                               double tol = 1e-6);

}  // namespace gem

#endif  // GEM_DISPATCH_HPP_
