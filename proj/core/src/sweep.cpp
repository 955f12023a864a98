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

#include "gem/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "gem/assembler.hpp"
#include "gem/costs.hpp"
#include "gem/csv.hpp"
#include "gem/scenario_io.hpp"
#include "gem/split.hpp"

namespace gem {

int exit_code_for(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return kExitOk;
    case SolveStatus::infeasible:
    case SolveStatus::unbounded: return kExitInfeasible;
    case SolveStatus::iteration_limit:
    case SolveStatus::numerical_failure: return kExitNumerical;
  }
  return kExitNumerical;
}

RunResult run_single(const ScenarioSpec& spec, double shared_fraction,
                     const SolveSettings& settings,
                     const std::optional<std::filesystem::path>& out_dir) {
  RunResult out;
  out.validation = validate_scenario(spec);
  if (!out.validation.ok()) {
    out.exit_code = kExitValidation;
    out.error = "scenario failed validation";
    return out;
  }
  try {
    const ScenarioSpec split = shaev_split(spec, shared_fraction);
    out.validation = validate_scenario(split);
    if (!out.validation.ok()) {
      out.exit_code = kExitValidation;
      out.error = "split scenario failed validation";
      return out;
    }
    const CostCoefficients costs = compute_cost_coefficients(split);
    const AssembledProgram assembled = build_program(split, costs);
    const Solution solution = solve(assembled.program, settings);
    out.bundle = make_report(split, shared_fraction, costs, assembled,
                             solution, settings);
    out.exit_code = exit_code_for(solution.status);
    if (solution.status != SolveStatus::optimal) out.error = solution.message;
    if (out_dir) write_report(*out.bundle, split, *out_dir);
  } catch (const std::exception& e) {
    out.exit_code = kExitNumerical;
    out.error = e.what();
    out.bundle.reset();
  }
  return out;
}

RunResult run_single(const std::filesystem::path& scenario_dir,
                     double shared_fraction, const SolveSettings& settings,
                     const std::optional<std::filesystem::path>& out_dir) {
  ScenarioSpec spec;
  try {
    spec = load_scenario(scenario_dir);
  } catch (const std::exception& e) {
    RunResult out;
    out.exit_code = kExitValidation;
    out.error = e.what();
    out.validation.violations.push_back({"scenario parses", e.what()});
    return out;
  }
  return run_single(spec, shared_fraction, settings, out_dir);
}

int SweepReport::exit_code() const {
  int code = kExitOk;
  for (const auto& m : members) code = std::max(code, m.result.exit_code);
  return code;
}

std::size_t default_workers() {
  if (const char* env = std::getenv("GEM_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string member_subdir(std::size_t position, double shared_fraction) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "run_%02zu_S%.4f", position, shared_fraction);
  return buf;
}

SweepReport run_sweep(const ScenarioSpec& spec,
                      const std::vector<double>& fractions,
                      const SolveSettings& settings, std::size_t workers,
                      const std::optional<std::filesystem::path>& out_dir) {
  if (fractions.empty())
    throw std::invalid_argument("run_sweep: empty list of shared fractions");
  for (double s : fractions)
    if (!(s >= 0.0 && s <= 1.0))
      throw std::invalid_argument("run_sweep: shared fraction outside [0, 1]");
  SweepReport rep;
  rep.members.resize(fractions.size());
  for (std::size_t k = 0; k < fractions.size(); ++k) {
    rep.members[k].shared_fraction = fractions[k];
    rep.members[k].subdir = member_subdir(k, fractions[k]);
  }
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < fractions.size();) {
      auto& m = rep.members[k];
      std::optional<std::filesystem::path> dir;
      if (out_dir) dir = *out_dir / m.subdir;
      m.result = run_single(spec, m.shared_fraction, settings, dir);
    }
  };
  const std::size_t n = std::clamp<std::size_t>(workers, 1, fractions.size());
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < n; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (out_dir) write_summary(rep, *out_dir / "summary.csv");
  return rep;
}

void write_summary(const SweepReport& report,
                   const std::filesystem::path& path) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "# family=sweep_summary units=S:fraction;cost:USD;peak:kW;"
         "fleet:vehicles;chargers:count\n";
  out << "S,status,total_cost,objective,peak_load_kw,fleet_size,"
         "charger_count,run\n";
  for (const auto& m : report.members) {
    out << format_double(m.shared_fraction) << ',';
    if (m.result.bundle) {
      const auto& b = *m.result.bundle;
      out << status_name(b.status) << ',' << format_double(b.costs.total())
          << ',' << format_double(b.costs.objective()) << ','
          << format_double(b.system_peak_kw) << ','
          << format_double(b.fleet_size) << ','
          << format_double(b.charger_count);
    } else {
      out << (m.result.exit_code == kExitValidation ? "invalid" : "error")
          << ",NA,NA,NA,NA,NA";
    }
    out << ',' << m.subdir << '\n';
  }
}

}  // namespace gem
