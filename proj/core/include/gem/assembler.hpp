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

#ifndef GEM_ASSEMBLER_HPP_
#define GEM_ASSEMBLER_HPP_

#include <stdexcept>

#include "gem/costs.hpp"
#include "gem/program.hpp"
#include "gem/scenario.hpp"
#include "gem/variable_index.hpp"

namespace gem {

class AssemblyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AssembledProgram {
  SparseProgram program;
  VariableIndex index;
};

// Builds the cost-minimizing fleet, charging and dispatch program.
//
// Energy used, vehicles moving and vehicles charging are affine in trips
// served D and charging energy P, so they are substituted into the rows
// rather than carried as columns (see fleet_equations.hpp).
//
// Units: P, G and T are kWh per period; peak demand and private HDV charging
// are kW. With dt = 1 h the two coincide numerically.
//
// Throws AssemblyError when a table's extents disagree with the dimension
// sets, naming the table.
AssembledProgram build_program(const ScenarioSpec& spec,
                               const CostCoefficients& costs);

// Closed-form program size for `dims` (columns, rows).
std::size_t expected_column_count(const DimensionSets& dims);
std::size_t expected_row_count(const DimensionSets& dims);

// "b=B1,t=3,r=R1"-style subscripts for row labels.
std::string subscript_label(
    std::initializer_list<std::pair<const char*, std::string>> parts);

}  // namespace gem

#endif  // GEM_ASSEMBLER_HPP_
