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

#ifndef GEM_SCENARIO_IO_HPP_
#define GEM_SCENARIO_IO_HPP_

#include <filesystem>

#include "gem/csv.hpp"
#include "gem/scenario.hpp"

namespace gem {

// Scenario directory layout:
//
//   manifest.txt         key = value (n_days, dt_hours, discount_rate,
//                        eta_trans, private split options)
//   dimensions.csv       set,label,parent
//   fleet.csv            param,segment,battery,region,value
//   chargers.csv         param,segment,battery,charger,region,value
//   demand.csv           param,segment,distance,hour,region,value
//   grid.csv             param,generator,grid_region,to_region,hour,region,value
//   exogenous_loads.csv  param,hour,region,grid_region,value
//
// Parameter rows are applied in file order. A blank subscript broadcasts the
// value over every member of that set, so later specific rows override
// earlier broadcast rows. Hours are zero-based period indices.
//
// Throws ParseError for malformed files, unknown parameters or labels.
// Missing values are not parse errors; validate_scenario reports them.
ScenarioSpec load_scenario(const std::filesystem::path& dir);

// Writes every parameter fully expanded, so load_scenario(save_scenario(s))
// reproduces `s` exactly.
void save_scenario(const ScenarioSpec& spec, const std::filesystem::path& dir);

}  // namespace gem

#endif  // GEM_SCENARIO_IO_HPP_
