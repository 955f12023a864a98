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

#include "gem/certify.hpp"

#include <algorithm>
#include <cmath>

namespace gem {
namespace {

using Real = long double;

constexpr double kGapAgreement = 1e-9;
// Room for rounding between the solver's double arithmetic and ours.
constexpr double kSlack = 1.0 + 1e-6;

}  // namespace

bool CertificateReport::pass() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(),
                     [](const CertificateCheck& c) { return c.pass; });
}

const CertificateCheck* CertificateReport::find(
    const std::string& metric) const {
  for (const auto& c : checks)
    if (c.metric == metric) return &c;
  return nullptr;
}

CertificateReport certify(const SparseProgram& program,
                          const Solution& solution,
                          const SolveSettings& settings) {
  CertificateReport rep;
  const std::size_t m = program.num_rows(), n = program.num_cols();
  const bool shaped = solution.x.size() == n && solution.y.size() == m;
  rep.checks.push_back({"status optimal",
                        solution.status == SolveStatus::optimal ? 0.0 : 1.0,
                        0.0, solution.status == SolveStatus::optimal});
  rep.checks.push_back({"dimensions", shaped ? 0.0 : 1.0, 0.0, shaped});
  if (!shaped) return rep;

  Real bscale = 0, cscale = 0;
  std::vector<Real> act(m, 0), red(n, 0);
  for (std::size_t j = 0; j < n; ++j) red[j] = program.objective[j];
  for (const auto& t : program.triplets) {
    act[t.row] += static_cast<Real>(t.value) * solution.x[t.col];
    red[t.col] -= static_cast<Real>(t.value) * solution.y[t.row];
  }
  Real pviol = 0, dviol = 0, pobj = 0, dobj = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const Real rhs = program.rhs[i];
    const Real y = solution.y[i];
    bscale = std::max(bscale, std::fabs(rhs));
    const Real r = act[i] - rhs;
    if (program.senses[i] == RowSense::less_equal) {
      pviol = std::max(pviol, r);
      dviol = std::max(dviol, y);
    } else if (program.senses[i] == RowSense::greater_equal) {
      pviol = std::max(pviol, -r);
      dviol = std::max(dviol, -y);
    } else {
      pviol = std::max(pviol, std::fabs(r));
    }
    dobj += rhs * y;
  }
  for (std::size_t j = 0; j < n; ++j) {
    const Real lo = program.lower[j], hi = program.upper[j];
    const Real x = solution.x[j];
    cscale = std::max(cscale, std::fabs(static_cast<Real>(program.objective[j])));
    if (std::isfinite(lo)) {
      bscale = std::max(bscale, std::fabs(lo));
      pviol = std::max(pviol, lo - x);
    }
    if (std::isfinite(hi)) {
      bscale = std::max(bscale, std::fabs(hi));
      pviol = std::max(pviol, x - hi);
    }
    pobj += static_cast<Real>(program.objective[j]) * x;
    // Split each reduced cost into the bound multiplier it can price.
    if (red[j] > 0) {
      if (std::isfinite(lo))
        dobj += lo * red[j];
      else
        dviol = std::max(dviol, red[j]);
    } else if (red[j] < 0) {
      if (std::isfinite(hi))
        dobj += hi * red[j];
      else
        dviol = std::max(dviol, -red[j]);
    }
  }
  const Real pres = pviol / (1 + bscale);
  const Real dres = dviol / (1 + cscale);
  const Real gap = std::fabs(pobj - dobj) / (1 + std::fabs(pobj));
  rep.primal_residual = static_cast<double>(pres);
  rep.dual_residual = static_cast<double>(dres);
  rep.gap = static_cast<double>(gap);
  rep.primal_objective = static_cast<double>(pobj);
  rep.dual_objective = static_cast<double>(dobj);

  const auto add = [&](const char* name, double v, double tol) {
    rep.checks.push_back({name, v, tol, v <= tol * kSlack});
  };
  add("primal residual", rep.primal_residual, settings.feasibility_tol);
  add("dual residual", rep.dual_residual, settings.feasibility_tol);
  add("duality gap", rep.gap, settings.optimality_tol);
  add("reported gap agreement", std::abs(rep.gap - solution.gap),
      kGapAgreement);
  return rep;
}

}  // namespace gem
