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

#ifndef GEM_CERTIFY_HPP_
#define GEM_CERTIFY_HPP_

#include <string>
#include <vector>

#include "gem/program.hpp"
#include "gem/solver.hpp"

namespace gem {

struct CertificateCheck {
  std::string metric;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct CertificateReport {
  std::vector<CertificateCheck> checks;
  // Recomputed quantities, same normalization as Solution.
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
  double primal_objective = 0.0;
  double dual_objective = 0.0;

  bool pass() const;
  const CertificateCheck* find(const std::string& metric) const;
};

// Recomputes primal feasibility, dual feasibility and the duality gap of
// `solution` in extended precision, without reusing any solver code, and
// checks them against `settings`. Also checks that the recomputed gap
// matches the solver's reported gap to 1e-9.
CertificateReport certify(const SparseProgram& program,
                          const Solution& solution,
                          const SolveSettings& settings = {});

}  // namespace gem

#endif  // GEM_CERTIFY_HPP_
