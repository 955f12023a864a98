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

#ifndef GEM_SOLVER_HPP_
#define GEM_SOLVER_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "gem/program.hpp"

namespace gem {

enum class SolveStatus {
  optimal,
  infeasible,
  unbounded,
  iteration_limit,
  numerical_failure,
};

std::string_view status_name(SolveStatus s);

struct SolveSettings {
  double feasibility_tol = 1e-8;
  double optimality_tol = 1e-8;
  int max_iterations = 200;
  bool scaling = true;
  bool presolve = true;

  // Throws std::invalid_argument unless tolerances are positive and the
  // iteration limit is at least one.
  void check() const;
};

// One row per interior-point iteration, measured on the original program.
struct IterateLog {
  int iteration = 0;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double mu = 0.0;
  double step = 0.0;
  bool operator==(const IterateLog&) const = default;
};

// Row duals follow the Lagrangian sign convention for minimization:
// y >= 0 on >= rows, y <= 0 on <= rows, free on equalities. Reduced costs
// are c - A'y; positive entries price active lower bounds, negative entries
// active upper bounds.
//
// primal_residual is the largest row or bound violation divided by
// 1 + max |rhs or finite bound|; dual_residual is the largest dual sign or
// reduced-cost violation divided by 1 + max |c|; gap is
// |primal - dual objective| / (1 + |primal objective|).
struct Solution {
  SolveStatus status = SolveStatus::numerical_failure;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> reduced_costs;
  double objective = 0.0;
  double dual_objective = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
  int iterations = 0;
  double wall_seconds = 0.0;
  std::string message;
  std::vector<IterateLog> history;

  // Field-wise equality ignoring wall time.
  bool same_result(const Solution& other) const;
};

// Homogeneous self-dual interior-point method with Mehrotra
// predictor-corrector steps on the normal equations. Presolve removes fixed
// columns, empty rows and columns, turns singleton rows into bounds, fixes
// the columns of forcing rows and merges parallel rows; duals of removed
// rows are recovered afterwards. No crossover is performed, so the returned
// point lies near the analytic center of the optimal face.
//
// Deterministic: the same program and settings give bit-identical results.
// Throws std::invalid_argument for a program with no columns or malformed
// settings.
Solution solve(const SparseProgram& program, const SolveSettings& settings = {});

}  // namespace gem

#endif  // GEM_SOLVER_HPP_
