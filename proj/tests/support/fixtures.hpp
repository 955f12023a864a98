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

#ifndef GEM_TESTS_SUPPORT_FIXTURES_HPP_
#define GEM_TESTS_SUPPORT_FIXTURES_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "gem/assembler.hpp"
#include "gem/oracle.hpp"
#include "gem/scenario.hpp"
#include "gem/solver.hpp"

namespace gem::testing {

struct Shape {
  std::size_t hours = 3;
  double dt = 1.0;
  std::size_t regions = 1;
  std::size_t grid_regions = 1;
  std::size_t generators = 1;
  std::size_t hdv_batteries = 1, hdv_chargers = 1, hdv_distances = 1;
  std::size_t ldv_batteries = 0, ldv_chargers = 0, ldv_distances = 0;
};

// A valid scenario of the given shape with simple round parameters and no
// trip demand. Region r maps to grid region r % grid_regions, generator g to
// g % grid_regions.
ScenarioSpec make_spec(const Shape& shape);

// One trip every period except the last.
ScenarioSpec toy_spec();

// 2 mobility regions, 2 grid regions, 24 h, 2 HDV batteries, 2 HDV chargers,
// 3 generators, 3 distance bins. Pooling makes the shared fleet cheaper per
// trip than private trucks.
ScenarioSpec desk_spec();

struct NamedTiny {
  std::string name;
  TinyScenario tiny;
};

// Oracle fixtures, already split (the oracle sees the split scenario).
std::vector<NamedTiny> tiny_fixtures();

struct Solved {
  ScenarioSpec spec;  // after the split
  AssembledProgram assembled;
  Solution solution;
};

// split -> costs -> assemble -> solve.
Solved solve_spec(const ScenarioSpec& spec, double shared_fraction = 1.0,
                  const SolveSettings& settings = {});

// Binding: some row of the family is active and carries a nonzero dual.
// Slack: no row of the family carries a dual above the tolerance, and for
// inequality families at least one row is strictly inactive.
struct FamilyState {
  bool feasible = false;  // every row and bound within tolerance
  bool binding = false;
  bool slack = false;
  std::size_t rows = 0;
  double max_abs_dual = 0.0;
};
FamilyState family_state(const SparseProgram& program, const Solution& sol,
                         RowFamily family, double tol = 1e-6);

struct FamilyCase {
  RowFamily family;
  bool binding = true;  // expected state; false means slack
  std::string fixture;
  ScenarioSpec spec;    // before the split
  double shared_fraction = 1.0;
};

// One binding and one slack fixture for every model row family.
std::vector<FamilyCase> family_cases();

// Assembles the program with E, Vm and Vc carried as explicit columns tied
// to D and P by definition rows. Test-only second encoding.
AssembledProgram build_explicit_program(const ScenarioSpec& spec);

}  // namespace gem::testing

#endif  // GEM_TESTS_SUPPORT_FIXTURES_HPP_
