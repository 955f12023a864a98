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

// gem: fleet and grid co-optimization from the command line.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gem/assembler.hpp"
#include "gem/certify.hpp"
#include "gem/config.hpp"
#include "gem/costs.hpp"
#include "gem/csv.hpp"
#include "gem/lp_format.hpp"
#include "gem/oracle.hpp"
#include "gem/scenario_io.hpp"
#include "gem/split.hpp"
#include "gem/sweep.hpp"

namespace fs = std::filesystem;

namespace {

struct Options {
  fs::path scenario;
  fs::path out;
  std::optional<fs::path> config;
  std::optional<double> shared_fraction;
  std::vector<double> fractions;
  std::optional<double> feasibility_tol;
  std::optional<double> optimality_tol;
  std::optional<int> max_iterations;
  bool no_presolve = false;
  bool no_scaling = false;
  std::optional<std::size_t> workers;
  bool oracle = false;
  double grid_step = 1.0;
  std::size_t split_levels = 4;
  double budget = 1e8;
};

gem::Config resolve(const Options& o) {
  gem::Config c = o.config ? gem::load_config(*o.config) : gem::default_config();
  if (o.shared_fraction) c.shared_fraction = *o.shared_fraction;
  if (!o.fractions.empty()) c.sweep_fractions = o.fractions;
  if (o.feasibility_tol) c.solve.feasibility_tol = *o.feasibility_tol;
  if (o.optimality_tol) c.solve.optimality_tol = *o.optimality_tol;
  if (o.max_iterations) c.solve.max_iterations = *o.max_iterations;
  if (o.no_presolve) c.solve.presolve = false;
  if (o.no_scaling) c.solve.scaling = false;
  if (o.workers) c.workers = *o.workers;
  c.solve.check();
  return c;
}

void print_violations(const gem::ValidationReport& rep) {
  for (const auto& v : rep.violations)
    std::cerr << "invalid: " << v.rule << ": " << v.detail << '\n';
}

// Loads, validates and splits; returns nullopt after printing problems.
std::optional<gem::ScenarioSpec> prepared(const fs::path& dir, double s) {
  gem::ScenarioSpec spec;
  try {
    spec = gem::load_scenario(dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return std::nullopt;
  }
  auto rep = gem::validate_scenario(spec);
  if (!rep.ok()) {
    print_violations(rep);
    return std::nullopt;
  }
  spec = gem::shaev_split(spec, s);
  rep = gem::validate_scenario(spec);
  if (!rep.ok()) {
    print_violations(rep);
    return std::nullopt;
  }
  return spec;
}

void print_run(const gem::RunResult& r) {
  if (!r.validation.ok()) print_violations(r.validation);
  if (!r.bundle) {
    std::cerr << "error: " << r.error << '\n';
    return;
  }
  const auto& b = *r.bundle;
  std::printf("status %s\n", std::string(gem::status_name(b.status)).c_str());
  std::printf("objective %.10g\n", b.costs.objective());
  std::printf("total_cost %.10g\n", b.costs.total());
  std::printf("peak_kw %.10g\n", b.system_peak_kw);
  std::printf("fleet %.10g\n", b.fleet_size);
  std::printf("chargers %.10g\n", b.charger_count);
  std::printf("iterations %d\n", b.solution.iterations);
  if (b.status != gem::SolveStatus::optimal) {
    std::cerr << "error: " << b.solution.message << '\n';
    for (const auto& [fam, v] : b.violated_families)
      std::cerr << "violated: " << gem::family_name(fam) << ' ' << v << '\n';
  }
}

int cmd_validate(const Options& o) {
  gem::ScenarioSpec spec;
  try {
    spec = gem::load_scenario(o.scenario);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return gem::kExitValidation;
  }
  const auto rep = gem::validate_scenario(spec);
  if (!rep.ok()) {
    print_violations(rep);
    return gem::kExitValidation;
  }
  std::cout << "ok " << gem::expected_column_count(spec.dims) << " columns "
            << gem::expected_row_count(spec.dims) << " rows\n";
  return gem::kExitOk;
}

int cmd_solve(const Options& o) {
  const gem::Config c = resolve(o);
  const auto r = gem::run_single(o.scenario, c.shared_fraction, c.solve, o.out);
  print_run(r);
  return r.exit_code;
}

int cmd_sweep(const Options& o) {
  const gem::Config c = resolve(o);
  gem::ScenarioSpec spec;
  try {
    spec = gem::load_scenario(o.scenario);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return gem::kExitValidation;
  }
  const std::size_t workers = c.workers ? c.workers : gem::default_workers();
  const auto rep = gem::run_sweep(spec, c.sweep_fractions, c.solve, workers, o.out);
  for (const auto& m : rep.members) {
    std::printf("S=%.4f exit=%d", m.shared_fraction, m.result.exit_code);
    if (m.result.bundle)
      std::printf(" total_cost=%.10g peak_kw=%.10g",
                  m.result.bundle->costs.total(),
                  m.result.bundle->system_peak_kw);
    else
      std::printf(" error=%s", m.result.error.c_str());
    std::printf("\n");
  }
  return rep.exit_code();
}

int cmd_dump_lp(const Options& o) {
  const gem::Config c = resolve(o);
  const auto spec = prepared(o.scenario, c.shared_fraction);
  if (!spec) return gem::kExitValidation;
  const auto assembled =
      gem::build_program(*spec, gem::compute_cost_coefficients(*spec));
  if (o.out.empty()) {
    gem::write_lp(assembled.program, std::cout);
  } else {
    if (o.out.has_parent_path()) fs::create_directories(o.out.parent_path());
    std::ofstream f(o.out);
    if (!f) {
      std::cerr << "error: cannot write " << o.out << '\n';
      return gem::kExitNumerical;
    }
    gem::write_lp(assembled.program, f);
  }
  return gem::kExitOk;
}

int cmd_certify(const Options& o) {
  const gem::Config c = resolve(o);
  const auto spec = prepared(o.scenario, c.shared_fraction);
  if (!spec) return gem::kExitValidation;
  const auto assembled =
      gem::build_program(*spec, gem::compute_cost_coefficients(*spec));
  const auto sol = gem::solve(assembled.program, c.solve);
  std::printf("status %s\n", std::string(gem::status_name(sol.status)).c_str());
  const auto cert = gem::certify(assembled.program, sol, c.solve);
  for (const auto& k : cert.checks)
    std::printf("%s %s value=%.3e tol=%.3e\n", k.pass ? "PASS" : "FAIL",
                k.metric.c_str(), k.value, k.tolerance);
  bool ok = cert.pass();
  if (o.oracle) {
    gem::TinyScenario tiny{*spec, o.grid_step, o.split_levels, o.budget};
    try {
      const auto res = gem::enumerate_optimum(tiny);
      const auto cmp = gem::compare(res, assembled.program, sol);
      std::printf("%s oracle objective=%.10g pipeline=%.10g gap=%.3e "
                  "slack=%.3e points=%.0f\n",
                  cmp.pass ? "PASS" : "FAIL", res.objective, sol.objective,
                  cmp.gap, cmp.slack, res.search_points);
      ok = ok && cmp.pass;
    } catch (const gem::OracleRefusal& e) {
      std::cerr << "oracle refused: " << e.what() << '\n';
      return gem::kExitValidation;
    }
  }
  if (sol.status != gem::SolveStatus::optimal) return gem::exit_code_for(sol.status);
  return ok ? gem::kExitOk : gem::kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gem: shared electric fleet and grid co-optimization"};
  app.set_version_flag("--version", std::string(gem::kVersion));
  app.require_subcommand(1);
  Options o;

  const auto scenario_flag = [&](CLI::App* sub) {
    sub->add_option("--scenario", o.scenario, "Scenario directory")
        ->required()
        ->check(CLI::ExistingDirectory);
  };
  const auto solve_flags = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "Tool defaults file");
    sub->add_option("--feasibility-tol", o.feasibility_tol,
                    "Primal feasibility tolerance");
    sub->add_option("--optimality-tol", o.optimality_tol,
                    "Dual feasibility and gap tolerance");
    sub->add_option("--max-iterations", o.max_iterations,
                    "Interior-point iteration limit");
    sub->add_flag("--no-presolve", o.no_presolve, "Skip bound presolve");
    sub->add_flag("--no-scaling", o.no_scaling, "Skip equilibration");
  };
  const auto s_flag = [&](CLI::App* sub) {
    sub->add_option("--S", o.shared_fraction,
                    "Fraction of HDV demand served by the shared fleet")
        ->check(CLI::Range(0.0, 1.0));
  };

  auto* validate = app.add_subcommand("validate", "Check a scenario directory");
  scenario_flag(validate);

  auto* solve = app.add_subcommand("solve", "Solve one scenario and write tables");
  scenario_flag(solve);
  solve_flags(solve);
  s_flag(solve);
  solve->add_option("--out", o.out, "Output directory")->required();

  auto* sweep = app.add_subcommand("sweep", "Solve over a list of S values");
  scenario_flag(sweep);
  solve_flags(sweep);
  sweep->add_option("--S", o.fractions, "Shared fractions")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--workers", o.workers,
                    "Concurrent members (default GEM_WORKERS or cores)")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--out", o.out, "Output directory")->required();

  auto* dump = app.add_subcommand("dump-lp", "Write the assembled program in LP format");
  scenario_flag(dump);
  s_flag(dump);
  dump->add_option("--config", o.config, "Tool defaults file");
  dump->add_option("--out", o.out, "LP file (default stdout)");

  auto* cert = app.add_subcommand("certify", "Solve and check optimality certificates");
  scenario_flag(cert);
  solve_flags(cert);
  s_flag(cert);
  cert->add_flag("--oracle", o.oracle,
                 "Compare against exhaustive search (tiny scenarios only)");
  cert->add_option("--grid-step", o.grid_step, "Oracle charging grid, kWh")
      ->check(CLI::PositiveNumber);
  cert->add_option("--split-levels", o.split_levels,
                   "Oracle trip split levels between battery types")
      ->check(CLI::PositiveNumber);
  cert->add_option("--budget", o.budget, "Oracle search point budget")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) return cmd_validate(o);
    if (*solve) return cmd_solve(o);
    if (*sweep) return cmd_sweep(o);
    if (*dump) return cmd_dump_lp(o);
    if (*cert) return cmd_certify(o);
  } catch (const gem::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return gem::kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return gem::kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return gem::kExitNumerical;
  }
  return gem::kExitOk;
}
