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

#ifndef GEM_PROGRAM_HPP_
#define GEM_PROGRAM_HPP_

#include <array>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gem/scenario.hpp"

namespace gem {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class RowSense { less_equal, greater_equal, equal };

// Constraint families of the fleet-grid program. The three *_definition
// families only appear when intermediates are carried as explicit columns.
enum class RowFamily {
  demand_allocation,
  charging_upper_bound,
  charging_lower_bound,
  no_charge_at_start,
  terminal_soc,
  fleet_dispatch,
  max_charging,
  max_demand,
  automated_power_min,
  automated_power_max,
  automated_energy_min,
  automated_energy_max,
  human_power_min,
  human_power_max,
  human_energy_min,
  human_energy_max,
  generation,
  energy_definition,
  moving_definition,
  charging_definition,
  custom,
};

std::string_view family_name(RowFamily f);
const std::vector<RowFamily>& model_row_families();

struct RowLabel {
  RowFamily family = RowFamily::custom;
  std::optional<Segment> segment;
  std::string subscripts;  // e.g. "b=B1,t=3,r=R1"

  std::string to_string() const;
  bool operator==(const RowLabel&) const = default;
};

struct Triplet {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;
  bool operator==(const Triplet&) const = default;
};

// min c'x  s.t.  rows (sense) rhs,  lower <= x <= upper.
struct SparseProgram {
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::string> column_names;
  std::vector<RowSense> senses;
  std::vector<double> rhs;
  std::vector<RowLabel> labels;
  std::vector<Triplet> triplets;  // sorted by (row, col), unique

  std::size_t num_rows() const { return rhs.size(); }
  std::size_t num_cols() const { return objective.size(); }

  double objective_value(std::span<const double> x) const;
  // Row activities A x.
  std::vector<double> activities(std::span<const double> x) const;
  bool operator==(const SparseProgram&) const = default;
};

struct Term {
  std::size_t col;
  double coef;
};

// Accumulates columns and rows, then produces a finalized SparseProgram.
// Terms may repeat a column; finalize() sums them. Triplets are sorted by
// (row, col, value) before merging, so the result does not depend on the
// order in which rows or terms were appended.
class ProgramBuilder {
 public:
  std::size_t add_column(std::string name, double cost, double lower = 0.0,
                         double upper = kInfinity);
  std::size_t add_row(RowLabel label, RowSense sense, double rhs,
                      std::span<const Term> terms);
  void set_cost(std::size_t col, double cost);
  void set_upper(std::size_t col, double upper);
  std::size_t num_cols() const { return program_.objective.size(); }
  std::size_t num_rows() const { return program_.rhs.size(); }

  SparseProgram finalize() &&;

 private:
  SparseProgram program_;
};

struct ResidualTable {
  std::vector<double> activity;   // A x per row
  std::vector<double> residual;   // activity - rhs
  std::vector<double> violation;  // >= 0, zero when the sense holds
  std::vector<double> bound_violation;  // per column
  std::map<RowFamily, double> max_violation_by_family;
  // max over rows of violation / (1 + |rhs|) and over columns of bound
  // violation / (1 + |bound|).
  double max_scaled_violation = 0.0;

  bool feasible(double tol) const { return max_scaled_violation <= tol; }
};

// Signed residual per row. Throws std::invalid_argument if x has the wrong
// dimension.
ResidualTable row_residuals(const SparseProgram& program,
                            std::span<const double> x);

}  // namespace gem

#endif  // GEM_PROGRAM_HPP_
