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

#include "gem/dispatch.hpp"

#include <cmath>
#include <sstream>

#include "gem/assembler.hpp"

namespace gem {
namespace {

constexpr double kStateTol = 1e-6;

}  // namespace

std::string_view generator_state_name(GeneratorState s) {
  switch (s) {
    case GeneratorState::off: return "off";
    case GeneratorState::marginal: return "marginal";
    case GeneratorState::at_capacity: return "at_capacity";
  }
  return "unknown";
}

DispatchResult extract_dispatch(const Solution& solution,
                                const VariableIndex& index,
                                const ScenarioSpec& spec) {
  const auto& dims = spec.dims;
  const std::size_t T = dims.num_hours, I = dims.num_grid_regions();
  const double dt = dims.dt_hours;
  const double eta = spec.grid.transmission_efficiency;
  const auto& x = solution.x;
  DispatchResult out;

  for (std::size_t g = 0; g < dims.num_generators(); ++g)
    for (std::size_t t = 0; t < T; ++t) {
      GeneratorDispatch gd{g, t, x[index.generation(g, t)],
                           spec.grid.generator_capacity[g] * dt,
                           GeneratorState::off};
      const double tol = kStateTol * (1.0 + gd.capacity);
      if (gd.energy >= gd.capacity - tol)
        gd.state = GeneratorState::at_capacity;
      else if (gd.energy > tol)
        gd.state = GeneratorState::marginal;
      out.generators.push_back(gd);
    }

  for (std::size_t link = 0; link < dims.num_links(); ++link) {
    auto [from, to] = link_endpoints(link, I);
    for (std::size_t t = 0; t < T; ++t) {
      FlowRecord f{from, to, t, x[index.transmission(link, t)],
                   spec.grid.transmission_capacity(from, to) * dt, false};
      f.binding = f.flow >= f.capacity - kStateTol * (1.0 + f.capacity);
      out.flows.push_back(f);
    }
  }

  // Generation rows are the last I*T rows of the assembled program.
  const std::size_t rows = expected_row_count(dims);
  out.prices_available = solution.status == SolveStatus::optimal &&
                         solution.y.size() == rows && rows >= I * T;
  const std::size_t base = rows - I * T;
  for (std::size_t i = 0; i < I; ++i)
    for (std::size_t t = 0; t < T; ++t) {
      RegionBalance rb;
      rb.grid_region = i;
      rb.hour = t;
      for (const auto& gd : out.generators)
        if (gd.hour == t && dims.generator_grid[gd.generator] == i)
          rb.generation += gd.energy;
      for (const auto& f : out.flows) {
        if (f.hour != t) continue;
        if (f.to == i) rb.imports += eta * f.flow;
        if (f.from == i) rb.exports += f.flow;
      }
      rb.load = spec.loads.other(t, i) * dt;
      for (std::size_t r = 0; r < dims.num_regions(); ++r) {
        if (dims.region_grid[r] != i) continue;
        rb.load += (spec.loads.private_ldv(t, r) + x[index.automated(t, r)] +
                    x[index.human(t, r)]) *
                   dt;
        for (Segment s : kSegments) {
          const auto& sets = dims.segment(s);
          for (std::size_t b = 0; b < sets.batteries.size(); ++b)
            for (std::size_t l = 0; l < sets.chargers.size(); ++l)
              rb.load += x[index.charging(s, b, t, l, r)];
        }
      }
      rb.surplus = rb.generation + rb.imports - rb.exports - rb.load;
      if (out.prices_available) rb.price = solution.y[base + i * T + t];
      out.regions.push_back(rb);
    }
  return out;
}

std::vector<MeritViolation> verify_merit_order(const DispatchResult& result,
                                               const ScenarioSpec& spec,
                                               double tol) {
  const auto& dims = spec.dims;
  const std::size_t T = dims.num_hours, I = dims.num_grid_regions();
  const double eta = spec.grid.transmission_efficiency;
  const auto& cost = spec.grid.generator_cost;
  std::vector<MeritViolation> out;
  const auto cell = [&](std::size_t g, std::size_t t) -> const auto& {
    return result.generators[g * T + t];
  };
  const auto spare = [&](const GeneratorDispatch& d) {
    return d.energy < d.capacity - tol * (1.0 + d.capacity);
  };
  const auto running = [&](const GeneratorDispatch& d) {
    return d.energy > tol * (1.0 + d.capacity);
  };
  const auto flow = [&](std::size_t from, std::size_t to, std::size_t t)
      -> const FlowRecord& {
    return result.flows[link_index(from, to, I) * T + t];
  };
  for (std::size_t i = 0; i < I; ++i)
    for (std::size_t t = 0; t < T; ++t)
      for (std::size_t hi = 0; hi < dims.num_generators(); ++hi) {
        if (dims.generator_grid[hi] != i || !running(cell(hi, t))) continue;
        for (std::size_t lo = 0; lo < dims.num_generators(); ++lo) {
          if (lo == hi || !spare(cell(lo, t))) continue;
          const std::size_t j = dims.generator_grid[lo];
          double delivered = cost[lo];
          if (j != i) {
            if (flow(j, i, t).binding) continue;
            delivered =
                (cost[lo] + spec.grid.transmission_cost(j, i, t)) / eta;
          }
          if (delivered >= cost[hi] - tol * (1.0 + std::abs(cost[hi])))
            continue;
          std::ostringstream os;
          os << dims.generators[hi] << " runs at " << cell(hi, t).energy
             << " kWh in " << dims.grid_regions[i] << " hour " << t
             << " while " << dims.generators[lo] << " has spare capacity at "
             << "delivered cost " << delivered << " < " << cost[hi];
          out.push_back({i, t, lo, hi, os.str()});
        }
      }
  return out;
}

}  // namespace gem
