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

#ifndef GEM_SWEEP_HPP_
#define GEM_SWEEP_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gem/report.hpp"
#include "gem/scenario.hpp"
#include "gem/solver.hpp"

namespace gem {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitNumerical = 4;

int exit_code_for(SolveStatus status);

struct RunResult {
  int exit_code = kExitNumerical;
  ValidationReport validation;
  std::optional<ReportBundle> bundle;
  std::string error;
};

// load -> split -> costs -> assemble -> solve -> certify -> report. Never
// throws for bad data; failures are reported through exit_code, validation
// and error. When `out_dir` is given the bundle tables are written there.
RunResult run_single(const ScenarioSpec& spec, double shared_fraction,
                     const SolveSettings& settings,
                     const std::optional<std::filesystem::path>& out_dir = {});
RunResult run_single(const std::filesystem::path& scenario_dir,
                     double shared_fraction, const SolveSettings& settings,
                     const std::optional<std::filesystem::path>& out_dir = {});

struct SweepMember {
  double shared_fraction = 0.0;
  std::string subdir;  // relative to the sweep output directory
  RunResult result;
};

struct SweepReport {
  std::vector<SweepMember> members;  // in the order of the S list
  // Worst exit code over all members.
  int exit_code() const;
};

// Worker count from GEM_WORKERS, else hardware concurrency, at least 1.
std::size_t default_workers();

// "run_03_S0.7500"
std::string member_subdir(std::size_t position, double shared_fraction);

// Runs every S independently on up to `workers` threads. Member i writes
// into out_dir/member_subdir(i, S_i); the summary table is written after
// all members finish. Throws std::invalid_argument for an empty list or a
// fraction outside [0, 1].
SweepReport run_sweep(const ScenarioSpec& spec,
                      const std::vector<double>& fractions,
                      const SolveSettings& settings, std::size_t workers,
                      const std::optional<std::filesystem::path>& out_dir = {});

// S, status, total cost, objective, peak load, fleet size, charger count.
void write_summary(const SweepReport& report, const std::filesystem::path& path);

}  // namespace gem

#endif  // GEM_SWEEP_HPP_
