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

#ifndef GEM_ORACLE_HPP_
#define GEM_ORACLE_HPP_

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gem/dense_table.hpp"
#include "gem/program.hpp"
#include "gem/scenario.hpp"
#include "gem/solver.hpp"
#include "gem/variable_index.hpp"

namespace gem {

// A scenario small enough for exhaustive search: one mobility region, one
// grid region, at most 4 hours, one present vehicle segment with at most 2
// battery types, 2 charger levels and 2 distance bins, at most 2
// generators.
struct TinyScenario {
  ScenarioSpec spec;
  double grid_step = 1.0;           // kWh per period for charging variables
  std::size_t split_levels = 4;     // trip split fractions between batteries
  double budget = 1e8;              // maximum number of search points
};

// Lists the size limits `tiny` breaks, plus any scenario validation issue.
std::vector<std::string> check_tiny(const TinyScenario& tiny);

class OracleRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A full assignment of the model's variables for a tiny scenario. Region
// subscripts are dropped.
struct OraclePoint {
  DenseTable<3> trips;     // D[b][d][t]
  DenseTable<3> charging;  // P[b][t][l], kWh
  std::vector<double> fleet;     // V*[b]
  std::vector<double> chargers;  // N[l]
  double peak = 0.0;             // Pmax, kW
  std::vector<double> automated;   // [t], kW
  std::vector<double> human;       // [t], kW
  DenseTable<2> generation;        // G[g][t], kWh
};

struct OracleResult {
  double objective = 0.0;
  double slack = 0.0;  // discretization bound on objective - continuous optimum
  OraclePoint point;
  double search_points = 0.0;  // size of the discretized space
  std::size_t feasible_points = 0;
};

// Exhaustive search over discretized charging, private charging and trip
// splits; fleet size, chargers, peak demand and generation are set to their
// cheapest feasible values in closed form. Constraints are evaluated from
// their defining relations, independently of the assembler.
//
// Throws OracleRefusal if the scenario is not tiny, the search space
// exceeds the budget, or no discretized point is feasible.
OracleResult enumerate_optimum(const TinyScenario& tiny);

// Calls `visit` for every complete search point with the oracle's own
// feasibility verdict and objective (objective is only meaningful when
// feasible). Same refusal rules as enumerate_optimum except that an empty
// feasible set is not an error.
void visit_search_points(
    const TinyScenario& tiny,
    const std::function<void(const OraclePoint&, bool feasible,
                             double objective)>& visit);

// Embeds an oracle point into the column space of build_program for the
// same scenario. Idle vehicles are set to zero and transmission is empty.
std::vector<double> to_program_point(const OraclePoint& point,
                                     const VariableIndex& index,
                                     const ScenarioSpec& spec);

struct Comparison {
  bool pass = false;
  bool pipeline_feasible = false;
  double gap = 0.0;    // pipeline objective - oracle objective
  double slack = 0.0;
};

// Passes iff the pipeline objective is at most oracle + slack (plus `tol`
// relative rounding room) and the pipeline point satisfies every row and
// bound to `tol` scaled by 1 + |rhs|.
Comparison compare(const OracleResult& oracle, const SparseProgram& program,
                   const Solution& pipeline, double tol = 1e-6);

}  // namespace gem

#endif  // GEM_ORACLE_HPP_
