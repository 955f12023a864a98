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

#ifndef GEM_REPORT_HPP_
#define GEM_REPORT_HPP_

#include <array>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "gem/assembler.hpp"
#include "gem/certify.hpp"
#include "gem/costs.hpp"
#include "gem/dispatch.hpp"
#include "gem/scenario.hpp"
#include "gem/solver.hpp"

namespace gem {

// Intermediate fleet quantities evaluated at a primal point.
struct SegmentIntermediates {
  DenseTable<4> energy;    // E[b][d][t][r], kWh
  DenseTable<4> moving;    // Vm[b][d][t][r], vehicles
  DenseTable<4> charging;  // Vc[b][t][l][r], vehicles
  Table3 idle;             // Vi[b][t][r], vehicles
};
using Intermediates = std::array<SegmentIntermediates, 2>;

Intermediates reconstruct_intermediates(const Solution& solution,
                                        const VariableIndex& index,
                                        const ScenarioSpec& spec);

// Objective terms plus the exogenous capital of private trucks, which the
// program does not size.
struct CostBreakdown {
  double maintenance = 0.0;
  double demand_charge = 0.0;
  double infrastructure = 0.0;
  double fleet = 0.0;
  double generation = 0.0;
  double transmission = 0.0;
  double private_fleet = 0.0;
  double private_infrastructure = 0.0;
  double private_maintenance = 0.0;  // beta * private trip-miles

  double objective() const {
    return maintenance + demand_charge + infrastructure + fleet + generation +
           transmission;
  }
  double total() const {
    return objective() + private_fleet + private_infrastructure +
           private_maintenance;
  }
};

struct LoadRow {
  std::size_t hour = 0;
  std::size_t region = 0;
  std::string category;  // shaev, ldv_fleet, private_automated, ...
  std::string charger;   // charger level label, or "-"
  double kw = 0.0;
};

struct AssetRow {
  std::string segment;
  std::string type;  // battery or charger label
  std::size_t region = 0;
  std::string origin;  // optimized or private
  double count = 0.0;
};

struct PeakRow {
  std::size_t region = 0;
  double pmax_kw = 0.0;       // value of the peak-demand variable
  double net_peak_kw = 0.0;   // max(0, max_t net fleet demand)
  double gross_peak_kw = 0.0; // max_t total charging load
};

struct ReportBundle {
  double shared_fraction = 1.0;
  SolveStatus status = SolveStatus::numerical_failure;
  Solution solution;
  CertificateReport certificate;
  std::vector<LoadRow> load_profile;
  std::vector<AssetRow> chargers;
  std::vector<AssetRow> fleet;
  std::vector<PeakRow> peaks;
  double system_peak_kw = 0.0;
  double fleet_size = 0.0;
  double charger_count = 0.0;
  CostBreakdown costs;
  DispatchResult dispatch;
  std::vector<MeritViolation> merit_violations;
  Intermediates intermediates;
  // Row families ordered by decreasing scaled violation at the returned
  // point; only entries with a positive violation.
  std::vector<std::pair<RowFamily, double>> violated_families;
};

// Net fleet demand entering the peak-demand row for (t, r), kW:
// sum P / dt - automated - human - private LDV.
double net_fleet_demand(const std::vector<double>& x,
                        const VariableIndex& index, const ScenarioSpec& spec,
                        std::size_t t, std::size_t r);

// Builds every report table from a solved program. `spec` is the split
// scenario the program was assembled from.
ReportBundle make_report(const ScenarioSpec& spec, double shared_fraction,
                         const CostCoefficients& costs,
                         const AssembledProgram& assembled,
                         const Solution& solution,
                         const SolveSettings& settings);

// Writes one delimited table per result family into `dir`. Each file starts
// with a "# family=... units=..." header line. Output is a pure function of
// the bundle; wall time is not written.
void write_report(const ReportBundle& bundle, const ScenarioSpec& spec,
                  const std::filesystem::path& dir);

}  // namespace gem

#endif  // GEM_REPORT_HPP_
