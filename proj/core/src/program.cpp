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

#include "gem/program.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gem {

std::string_view family_name(RowFamily f) {
  switch (f) {
    case RowFamily::demand_allocation: return "demand_allocation";
    case RowFamily::charging_upper_bound: return "charging_upper_bound";
    case RowFamily::charging_lower_bound: return "charging_lower_bound";
    case RowFamily::no_charge_at_start: return "no_charge_at_start";
    case RowFamily::terminal_soc: return "terminal_soc";
    case RowFamily::fleet_dispatch: return "fleet_dispatch";
    case RowFamily::max_charging: return "max_charging";
    case RowFamily::max_demand: return "max_demand";
    case RowFamily::automated_power_min: return "automated_power_min";
    case RowFamily::automated_power_max: return "automated_power_max";
    case RowFamily::automated_energy_min: return "automated_energy_min";
    case RowFamily::automated_energy_max: return "automated_energy_max";
    case RowFamily::human_power_min: return "human_power_min";
    case RowFamily::human_power_max: return "human_power_max";
    case RowFamily::human_energy_min: return "human_energy_min";
    case RowFamily::human_energy_max: return "human_energy_max";
    case RowFamily::generation: return "generation";
    case RowFamily::energy_definition: return "energy_definition";
    case RowFamily::moving_definition: return "moving_definition";
    case RowFamily::charging_definition: return "charging_definition";
    case RowFamily::custom: return "custom";
  }
  return "unknown";
}

const std::vector<RowFamily>& model_row_families() {
  static const std::vector<RowFamily> kFamilies{
      RowFamily::demand_allocation,    RowFamily::charging_upper_bound,
      RowFamily::charging_lower_bound, RowFamily::no_charge_at_start,
      RowFamily::terminal_soc,         RowFamily::fleet_dispatch,
      RowFamily::max_charging,         RowFamily::max_demand,
      RowFamily::automated_power_min,  RowFamily::automated_power_max,
      RowFamily::automated_energy_min, RowFamily::automated_energy_max,
      RowFamily::human_power_min,      RowFamily::human_power_max,
      RowFamily::human_energy_min,     RowFamily::human_energy_max,
      RowFamily::generation};
  return kFamilies;
}

std::string RowLabel::to_string() const {
  std::string s(family_name(family));
  if (segment) {
    s += ".";
    s += segment_name(*segment);
  }
  if (!subscripts.empty()) {
    s += "[";
    s += subscripts;
    s += "]";
  }
  return s;
}

double SparseProgram::objective_value(std::span<const double> x) const {
  double v = 0.0;
  for (std::size_t j = 0; j < objective.size(); ++j) v += objective[j] * x[j];
  return v;
}

std::vector<double> SparseProgram::activities(
    std::span<const double> x) const {
  std::vector<double> ax(num_rows(), 0.0);
  for (const auto& t : triplets) ax[t.row] += t.value * x[t.col];
  return ax;
}

std::size_t ProgramBuilder::add_column(std::string name, double cost,
                                       double lower, double upper) {
  program_.objective.push_back(cost);
  program_.lower.push_back(lower);
  program_.upper.push_back(upper);
  program_.column_names.push_back(std::move(name));
  return program_.objective.size() - 1;
}

std::size_t ProgramBuilder::add_row(RowLabel label, RowSense sense, double rhs,
                                    std::span<const Term> terms) {
  const std::size_t row = program_.rhs.size();
  program_.labels.push_back(std::move(label));
  program_.senses.push_back(sense);
  program_.rhs.push_back(rhs);
  for (const auto& t : terms) {
    if (t.col >= program_.objective.size())
      throw std::out_of_range("ProgramBuilder: term references unknown column");
    if (t.coef != 0.0) program_.triplets.push_back({row, t.col, t.coef});
  }
  return row;
}

void ProgramBuilder::set_cost(std::size_t col, double cost) {
  program_.objective.at(col) = cost;
}

void ProgramBuilder::set_upper(std::size_t col, double upper) {
  program_.upper.at(col) = upper;
}

SparseProgram ProgramBuilder::finalize() && {
  auto& trip = program_.triplets;
  std::sort(trip.begin(), trip.end(), [](const Triplet& a, const Triplet& b) {
    if (a.row != b.row) return a.row < b.row;
    if (a.col != b.col) return a.col < b.col;
    return a.value < b.value;
  });
  std::vector<Triplet> merged;
  merged.reserve(trip.size());
  for (const auto& t : trip) {
    if (!merged.empty() && merged.back().row == t.row &&
        merged.back().col == t.col) {
      merged.back().value += t.value;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Triplet& t) { return t.value == 0.0; });
  trip = std::move(merged);
  return std::move(program_);
}

ResidualTable row_residuals(const SparseProgram& program,
                            std::span<const double> x) {
  if (x.size() != program.num_cols())
    throw std::invalid_argument("row_residuals: point has wrong dimension");
  ResidualTable out;
  out.activity = program.activities(x);
  const std::size_t m = program.num_rows();
  out.residual.resize(m);
  out.violation.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double r = out.activity[i] - program.rhs[i];
    out.residual[i] = r;
    double v = 0.0;
    switch (program.senses[i]) {
      case RowSense::less_equal: v = std::max(0.0, r); break;
      case RowSense::greater_equal: v = std::max(0.0, -r); break;
      case RowSense::equal: v = std::abs(r); break;
    }
    out.violation[i] = v;
    auto& fam = out.max_violation_by_family[program.labels[i].family];
    fam = std::max(fam, v);
    out.max_scaled_violation =
        std::max(out.max_scaled_violation, v / (1.0 + std::abs(program.rhs[i])));
  }
  out.bound_violation.resize(program.num_cols());
  for (std::size_t j = 0; j < program.num_cols(); ++j) {
    double v = 0.0, scale = 1.0;
    if (x[j] < program.lower[j]) {
      v = program.lower[j] - x[j];
      scale += std::abs(program.lower[j]);
    } else if (x[j] > program.upper[j]) {
      v = x[j] - program.upper[j];
      scale += std::abs(program.upper[j]);
    }
    out.bound_violation[j] = v;
    out.max_scaled_violation = std::max(out.max_scaled_violation, v / scale);
  }
  return out;
}

}  // namespace gem
