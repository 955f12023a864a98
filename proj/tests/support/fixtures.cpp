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

#include "fixtures.hpp"

#include <algorithm>
#include <cmath>

#include "gem/costs.hpp"
#include "gem/split.hpp"

namespace gem::testing {
namespace {

std::vector<std::string> labels(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(prefix + std::to_string(k + 1));
  return out;
}

void fill_segment(ScenarioSpec& spec, Segment s) {
  const auto& sets = spec.dims.segment(s);
  if (sets.absent()) return;
  auto& seg = spec.segment(s);
  const bool hdv = s == Segment::hdv;
  for (std::size_t b = 0; b < sets.batteries.size(); ++b) {
    seg.fleet.battery_kwh[b] = (hdv ? 200.0 : 50.0) * static_cast<double>(b + 1);
    seg.fleet.efficiency[b] = (hdv ? 1.0 : 0.25) * (1.0 + 0.25 * static_cast<double>(b));
  }
  seg.fleet.maintenance_per_mile = hdv ? 0.1 : 0.05;
  seg.fleet.vehicle_capital = hdv ? 100000.0 : 20000.0;
  seg.fleet.vehicle_fixed_om = hdv ? 10.0 : 2.0;
  seg.fleet.vehicle_lifetime = 3650.0;
  seg.fleet.battery_capital = 100.0;
  seg.fleet.battery_lifetime = 3650.0;
  for (std::size_t l = 0; l < sets.chargers.size(); ++l) {
    seg.chargers.power_kw[l] = (hdv ? 50.0 : 10.0) * static_cast<double>(l + 1);
    seg.chargers.capital_per_kw[l] = 100.0 * static_cast<double>(l + 1);
    seg.chargers.lifetime[l] = 3650.0;
  }
  seg.demand.speed.fill(hdv ? 40.0 : 20.0);
  for (std::size_t d = 0; d < sets.distances.size(); ++d) {
    seg.demand.distance[d] = (hdv ? 20.0 : 5.0) * static_cast<double>(d + 1);
    seg.demand.sharing[d] = 1.0;
  }
}

void set_trips(ScenarioSpec& spec, Segment s, std::size_t d, std::size_t r,
               const std::vector<double>& by_hour) {
  for (std::size_t t = 0; t < by_hour.size(); ++t)
    spec.segment(s).demand.trips(d, t, r) = by_hour[t];
}

TinyScenario tiny(ScenarioSpec spec, double shared_fraction, double step,
                  std::size_t levels = 4) {
  return TinyScenario{shaev_split(spec, shared_fraction), step, levels, 1e8};
}

}  // namespace

ScenarioSpec make_spec(const Shape& shape) {
  ScenarioSpec spec;
  auto& dims = spec.dims;
  dims.dt_hours = shape.dt;
  dims.num_hours = shape.hours;
  dims.mobility_regions = labels("R", shape.regions);
  dims.grid_regions = labels("I", shape.grid_regions);
  dims.generators = labels("G", shape.generators);
  for (std::size_t r = 0; r < shape.regions; ++r)
    dims.region_grid.push_back(r % shape.grid_regions);
  for (std::size_t g = 0; g < shape.generators; ++g)
    dims.generator_grid.push_back(g % shape.grid_regions);
  auto& hdv = dims.segment(Segment::hdv);
  hdv.batteries = labels("HB", shape.hdv_batteries);
  hdv.chargers = labels("HL", shape.hdv_chargers);
  hdv.distances = labels("HD", shape.hdv_distances);
  auto& ldv = dims.segment(Segment::ldv);
  ldv.batteries = labels("LB", shape.ldv_batteries);
  ldv.chargers = labels("LL", shape.ldv_chargers);
  ldv.distances = labels("LD", shape.ldv_distances);
  allocate_tables(spec);
  for (Segment s : kSegments) fill_segment(spec, s);
  auto& grid = spec.grid;
  for (std::size_t g = 0; g < shape.generators; ++g) {
    grid.generator_cost[g] = 0.05 * static_cast<double>(g + 1);
    grid.generator_capacity[g] = 1e5;
  }
  for (std::size_t i = 0; i < shape.grid_regions; ++i)
    for (std::size_t j = 0; j < shape.grid_regions; ++j) {
      if (i == j) continue;
      grid.transmission_capacity(i, j) = 1000.0;
      for (std::size_t t = 0; t < shape.hours; ++t)
        grid.transmission_cost(i, j, t) = 0.01;
    }
  grid.transmission_efficiency = 0.95;
  std::fill(grid.demand_charge.begin(), grid.demand_charge.end(), 10.0);
  grid.discount_rate = 1e-4;
  grid.num_days = static_cast<double>(shape.hours) * shape.dt / 24.0;
  return spec;
}

ScenarioSpec toy_spec() {
  Shape shape;
  shape.hours = 4;
  ScenarioSpec spec = make_spec(shape);
  set_trips(spec, Segment::hdv, 0, 0, {2.0, 1.0, 3.0, 0.0});
  spec.loads.other.fill(20.0);
  return spec;
}

ScenarioSpec desk_spec() {
  Shape shape;
  shape.hours = 24;
  shape.regions = 2;
  shape.grid_regions = 2;
  shape.generators = 3;
  shape.hdv_batteries = 2;
  shape.hdv_chargers = 2;
  shape.hdv_distances = 3;
  ScenarioSpec spec = make_spec(shape);
  auto& hdv = spec.segment(Segment::hdv);
  hdv.fleet.battery_kwh = {300.0, 600.0};
  hdv.fleet.efficiency = {1.6, 1.8};
  hdv.chargers.power_kw = {50.0, 150.0};
  hdv.chargers.capital_per_kw = {150.0, 300.0};
  hdv.demand.distance = {15.0, 40.0, 90.0};
  hdv.demand.sharing = {3.0, 2.5, 2.0};
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t t = 0; t < 24; ++t) {
      const double h = static_cast<double>(t);
      // Daytime freight peak, nothing in the final period.
      const double wave =
          t == 23 ? 0.0
                  : 1.0 + 0.8 * std::exp(-std::pow((h - 11.0) / 4.0, 2.0));
      const double scale = r == 0 ? 1.0 : 0.7;
      hdv.demand.trips(0, t, r) = 12.0 * wave * scale;
      hdv.demand.trips(1, t, r) = 6.0 * wave * scale;
      hdv.demand.trips(2, t, r) = 2.0 * wave * scale;
      for (std::size_t d = 0; d < 3; ++d)
        hdv.demand.speed(d, t, r) = 30.0 + 10.0 * static_cast<double>(d);
    }
  hdv.demand.charge_deadhead_distance = {1.05, 1.08};
  auto& grid = spec.grid;
  grid.generator_cost = {0.03, 0.08, 0.3};
  grid.generator_capacity = {6000.0, 5000.0, 20000.0};
  grid.demand_charge = {12.0, 15.0};
  for (std::size_t t = 0; t < 24; ++t) {
    const double h = static_cast<double>(t);
    const double base = 2500.0 + 1500.0 * std::exp(-std::pow((h - 18.0) / 3.0, 2.0));
    spec.loads.other(t, 0) = base;
    spec.loads.other(t, 1) = 0.8 * base;
  }
  // Private trucks plug in between runs at any hour.
  spec.split.plug_start_hour = 0.0;
  spec.split.plug_end_hour = 0.0;
  return spec;
}

std::vector<NamedTiny> tiny_fixtures() {
  std::vector<NamedTiny> out;
  {
    Shape shape;
    out.push_back({"zero_demand", tiny(make_spec(shape), 1.0, 1.0)});
  }
  {
    // One trip in the middle hour, replenished in the last.
    Shape shape;
    ScenarioSpec s = make_spec(shape);
    s.segment(Segment::hdv).demand.distance = {4.0};
    set_trips(s, Segment::hdv, 0, 0, {0.0, 1.0, 0.0});
    out.push_back({"single_trip", tiny(s, 1.0, 1.0)});
  }
  {
    // Cheap and expensive generator with the cheap one saturated.
    Shape shape;
    shape.generators = 2;
    ScenarioSpec s = make_spec(shape);
    s.segment(Segment::hdv).demand.distance = {3.0};
    set_trips(s, Segment::hdv, 0, 0, {1.0, 1.0, 0.0});
    s.grid.generator_cost = {0.2, 0.05};
    s.grid.generator_capacity = {100.0, 4.0};
    s.loads.other.fill(2.0);
    out.push_back({"merit_two_generators", tiny(s, 1.0, 1.0)});
  }
  {
    // Two batteries and two chargers.
    Shape shape;
    shape.hdv_batteries = 2;
    shape.hdv_chargers = 2;
    ScenarioSpec s = make_spec(shape);
    auto& h = s.segment(Segment::hdv);
    h.demand.distance = {2.0};
    h.fleet.battery_kwh = {2.0, 8.0};
    h.fleet.efficiency = {1.0, 1.5};
    set_trips(s, Segment::hdv, 0, 0, {1.0, 1.0, 0.0});
    out.push_back({"two_batteries_two_chargers", tiny(s, 1.0, 1.0, 2)});
  }
  {
    // Half the trucks private: envelopes in play.
    Shape shape;
    shape.hours = 3;
    ScenarioSpec s = make_spec(shape);
    s.segment(Segment::hdv).demand.distance = {4.0};
    s.segment(Segment::hdv).demand.speed.fill(8.0);
    set_trips(s, Segment::hdv, 0, 0, {2.0, 2.0, 0.0});
    s.split.plug_start_hour = 0.0;
    s.split.plug_end_hour = 0.0;
    out.push_back({"private_envelopes", tiny(s, 0.5, 2.0)});
  }
  {
    // Light-duty fleet with deadhead corrections and a private LDV load.
    Shape shape;
    shape.hdv_batteries = shape.hdv_chargers = shape.hdv_distances = 0;
    shape.ldv_batteries = 1;
    shape.ldv_chargers = 2;
    shape.ldv_distances = 2;
    ScenarioSpec s = make_spec(shape);
    auto& l = s.segment(Segment::ldv);
    l.demand.distance = {4.0, 8.0};
    l.demand.sharing = {2.0, 2.0};
    l.demand.customer_deadhead_distance = {1.25};
    l.demand.customer_deadhead_time = {1.5};
    l.demand.charge_deadhead_distance = {2.0};
    l.fleet.efficiency = {0.25};
    set_trips(s, Segment::ldv, 0, 0, {2.0, 0.0, 0.0});
    set_trips(s, Segment::ldv, 1, 0, {0.0, 1.0, 0.0});
    s.loads.private_ldv.fill(1.0);
    out.push_back({"ldv_deadhead", tiny(s, 1.0, 0.5)});
  }
  {
    // Four hours, heavy demand charge against spreading the charging.
    Shape shape;
    shape.hours = 4;
    ScenarioSpec s = make_spec(shape);
    s.segment(Segment::hdv).demand.distance = {3.0};
    s.grid.demand_charge = {3000.0};
    set_trips(s, Segment::hdv, 0, 0, {2.0, 0.0, 0.0, 0.0});
    out.push_back({"peak_spreading", tiny(s, 1.0, 1.0)});
  }
  return out;
}

Solved solve_spec(const ScenarioSpec& spec, double shared_fraction,
                  const SolveSettings& settings) {
  Solved s{shaev_split(spec, shared_fraction), {}, {}};
  s.assembled = build_program(s.spec, compute_cost_coefficients(s.spec));
  s.solution = solve(s.assembled.program, settings);
  return s;
}

FamilyState family_state(const SparseProgram& program, const Solution& sol,
                         RowFamily family, double tol) {
  FamilyState st;
  const auto res = row_residuals(program, sol.x);
  st.feasible = res.feasible(tol);
  bool inactive_row = false, inequality = false;
  for (std::size_t i = 0; i < program.num_rows(); ++i) {
    if (program.labels[i].family != family) continue;
    ++st.rows;
    const double y = std::abs(sol.y[i]);
    const bool active = std::abs(res.residual[i]) <= tol * (1.0 + std::abs(program.rhs[i]));
    st.max_abs_dual = std::max(st.max_abs_dual, y);
    if (active && y > tol) st.binding = true;
    if (program.senses[i] != RowSense::equal) inequality = true;
    if (!active) inactive_row = true;
  }
  st.slack = st.rows > 0 && st.max_abs_dual <= tol && (!inequality || inactive_row);
  return st;
}

namespace {

ScenarioSpec one_trip_spec(std::vector<double> by_hour) {
  ScenarioSpec s = make_spec(Shape{});
  set_trips(s, Segment::hdv, 0, 0, by_hour);
  return s;
}

// Fleet sized by battery capacity rather than by vehicles on the road.
ScenarioSpec small_battery_spec() {
  ScenarioSpec s = one_trip_spec({0.0, 1.0, 0.0});
  s.segment(Segment::hdv).fleet.battery_kwh = {1.0};
  s.segment(Segment::hdv).demand.distance = {4.0};
  return s;
}

// No trips and an unpriced fleet.
ScenarioSpec idle_free_fleet_spec() {
  ScenarioSpec s = make_spec(Shape{});
  auto& f = s.segment(Segment::hdv).fleet;
  f.vehicle_capital = 0.0;
  f.vehicle_fixed_om = 0.0;
  f.battery_capital = 0.0;
  f.maintenance_per_mile = 0.0;
  return s;
}

ScenarioSpec free_chargers_spec() {
  ScenarioSpec s = one_trip_spec({1.0, 1.0, 0.0});
  s.segment(Segment::hdv).chargers.capital_per_kw = {0.0};
  return s;
}

// Two unpriced generators share the load, so supply exceeds it.
ScenarioSpec free_generation_spec() {
  Shape shape;
  shape.generators = 2;
  ScenarioSpec s = make_spec(shape);
  set_trips(s, Segment::hdv, 0, 0, {0.0, 1.0, 0.0});
  s.grid.generator_cost = {0.0, 0.0};
  s.loads.other.fill(5.0);
  return s;
}

// Private envelopes with a power floor and loose energy bounds.
ScenarioSpec envelope_floor_spec() {
  ScenarioSpec s = one_trip_spec({1.0, 1.0, 0.0});
  for (auto* e : {&s.loads.hdv_automated, &s.loads.hdv_human}) {
    e->power_min.fill(1.0);
    e->power_max.fill(10.0);
    e->energy_min.fill(0.0);
    e->energy_max.fill(100.0);
  }
  return s;
}

ScenarioSpec private_envelope_spec() {
  ScenarioSpec s = one_trip_spec({2.0, 2.0, 0.0});
  s.segment(Segment::hdv).demand.distance = {4.0};
  s.segment(Segment::hdv).demand.speed.fill(8.0);
  s.split.plug_start_hour = 0.0;
  s.split.plug_end_hour = 0.0;
  return s;
}

ScenarioSpec two_chargers_spec() {
  Shape shape;
  shape.hdv_batteries = 2;
  shape.hdv_chargers = 2;
  ScenarioSpec s = make_spec(shape);
  auto& h = s.segment(Segment::hdv);
  h.demand.distance = {2.0};
  h.fleet.battery_kwh = {2.0, 8.0};
  h.fleet.efficiency = {1.0, 1.5};
  set_trips(s, Segment::hdv, 0, 0, {1.0, 1.0, 0.0});
  return s;
}

ScenarioSpec peak_spreading_spec() {
  Shape shape;
  shape.hours = 4;
  ScenarioSpec s = make_spec(shape);
  s.segment(Segment::hdv).demand.distance = {3.0};
  s.grid.demand_charge = {3000.0};
  set_trips(s, Segment::hdv, 0, 0, {2.0, 0.0, 0.0, 0.0});
  return s;
}

}  // namespace

std::vector<FamilyCase> family_cases() {
  using F = RowFamily;
  const ScenarioSpec single = one_trip_spec({0.0, 1.0, 0.0});
  const ScenarioSpec toy = toy_spec();
  std::vector<FamilyCase> c{
      {F::demand_allocation, true, "toy", toy, 1.0},
      {F::demand_allocation, false, "idle_free_fleet", idle_free_fleet_spec(), 1.0},
      {F::charging_upper_bound, true, "single_trip", single, 1.0},
      {F::charging_upper_bound, false, "early_trip", one_trip_spec({1.0, 0.0, 0.0}), 1.0},
      {F::charging_lower_bound, true, "small_battery", small_battery_spec(), 1.0},
      {F::charging_lower_bound, false, "single_trip", single, 1.0},
      {F::no_charge_at_start, true, "two_batteries_two_chargers", two_chargers_spec(), 1.0},
      {F::no_charge_at_start, false, "single_trip", single, 1.0},
      {F::terminal_soc, true, "single_trip", single, 1.0},
      {F::terminal_soc, false, "toy_all_private", toy, 0.0},
      {F::fleet_dispatch, true, "single_trip", single, 1.0},
      {F::fleet_dispatch, false, "small_battery", small_battery_spec(), 1.0},
      {F::max_charging, true, "single_trip", single, 1.0},
      {F::max_charging, false, "free_chargers", free_chargers_spec(), 1.0},
      {F::max_demand, true, "single_trip", single, 1.0},
      {F::max_demand, false, "toy_all_private", toy, 0.0},
      {F::automated_power_min, true, "envelope_floor", envelope_floor_spec(), 1.0},
      {F::automated_power_min, false, "toy_half_private", toy, 0.5},
      {F::automated_power_max, true, "peak_spreading", peak_spreading_spec(), 1.0},
      {F::automated_power_max, false, "private_envelopes", private_envelope_spec(), 0.5},
      {F::automated_energy_min, true, "private_envelopes", private_envelope_spec(), 0.5},
      {F::automated_energy_min, false, "envelope_floor", envelope_floor_spec(), 1.0},
      {F::automated_energy_max, true, "private_envelopes", private_envelope_spec(), 0.5},
      {F::automated_energy_max, false, "toy_half_private", toy, 0.5},
      {F::human_power_min, true, "envelope_floor", envelope_floor_spec(), 1.0},
      {F::human_power_min, false, "toy_half_private", toy, 0.5},
      {F::human_power_max, true, "peak_spreading", peak_spreading_spec(), 1.0},
      {F::human_power_max, false, "private_envelopes", private_envelope_spec(), 0.5},
      {F::human_energy_min, true, "private_envelopes", private_envelope_spec(), 0.5},
      {F::human_energy_min, false, "envelope_floor", envelope_floor_spec(), 1.0},
      {F::human_energy_max, true, "private_envelopes", private_envelope_spec(), 0.5},
      {F::human_energy_max, false, "envelope_floor", envelope_floor_spec(), 1.0},
      {F::generation, true, "single_trip", single, 1.0},
      {F::generation, false, "free_generation", free_generation_spec(), 1.0},
  };
  return c;
}

AssembledProgram build_explicit_program(const ScenarioSpec& spec) {
  const auto& dims = spec.dims;
  const CostCoefficients costs = compute_cost_coefficients(spec);
  AssembledProgram out;
  out.index = make_variable_index(dims, true);
  const auto& ix = out.index;
  ProgramBuilder pb;
  for (std::size_t c = 0; c < ix.num_columns(); ++c)
    pb.add_column(ix.column_name(c, dims), 0.0);

  const std::size_t T = dims.num_hours, R = dims.num_regions(),
                    I = dims.num_grid_regions(), G = dims.num_generators();
  const double dt = dims.dt_hours;
  std::vector<Term> terms;
  const auto row = [&](RowFamily f, std::optional<Segment> s, RowSense sense,
                       double rhs) {
    pb.add_row({f, s, ""}, sense, rhs, terms);
    terms.clear();
  };
  using CF = ColumnFamily;

  for (Segment s : kSegments) {
    const auto& sets = dims.segment(s);
    if (sets.absent()) continue;
    const auto& seg = spec.segment(s);
    const bool ldv = s == Segment::ldv;
    const std::size_t B = sets.batteries.size(), L = sets.chargers.size(),
                      D = sets.distances.size();
    const auto E = [&](auto b, auto d, auto t, auto r) {
      return ix.column(CF::energy, s, {b, d, t, r});
    };
    const auto Vm = [&](auto b, auto d, auto t, auto r) {
      return ix.column(CF::moving_vehicles, s, {b, d, t, r});
    };
    const auto Vc = [&](auto b, auto t, auto l, auto r) {
      return ix.column(CF::charging_vehicles, s, {b, t, l, r});
    };
    const auto& cs = costs.segment(s);
    for (std::size_t b = 0; b < B; ++b)
      for (std::size_t r = 0; r < R; ++r) {
        pb.set_cost(ix.fleet(s, b, r), costs.fleet_weight(spec, s, b, r));
        for (std::size_t d = 0; d < D; ++d)
          for (std::size_t t = 0; t < T; ++t)
            pb.set_cost(Vm(b, d, t, r), cs.maintenance_rate(d, t, r));
      }
    for (std::size_t l = 0; l < L; ++l)
      for (std::size_t r = 0; r < R; ++r)
        pb.set_cost(ix.chargers(s, l, r), costs.charger_weight(spec, s, l));

    // Definitions.
    for (std::size_t b = 0; b < B; ++b)
      for (std::size_t d = 0; d < D; ++d)
        for (std::size_t t = 0; t < T; ++t)
          for (std::size_t r = 0; r < R; ++r) {
            const auto& dm = seg.demand;
            double e = dm.charge_deadhead_distance[r] * seg.fleet.efficiency[b] *
                       dm.distance[d] / dm.sharing[d];
            double vm = dm.distance[d] / (dm.sharing[d] * dt * dm.speed(d, t, r));
            if (ldv) {
              e *= dm.customer_deadhead_distance[r];
              vm *= dm.customer_deadhead_time[r];
            }
            terms = {{E(b, d, t, r), 1.0}, {ix.trips(s, b, d, t, r), -e}};
            row(RowFamily::energy_definition, s, RowSense::equal, 0.0);
            terms = {{Vm(b, d, t, r), 1.0}, {ix.trips(s, b, d, t, r), -vm}};
            row(RowFamily::moving_definition, s, RowSense::equal, 0.0);
          }
    for (std::size_t b = 0; b < B; ++b)
      for (std::size_t t = 0; t < T; ++t)
        for (std::size_t l = 0; l < L; ++l)
          for (std::size_t r = 0; r < R; ++r) {
            const double vc = 1.0 / (dt * seg.chargers.deadhead_time(b, l, r) *
                                     seg.chargers.power_kw[l]);
            terms = {{Vc(b, t, l, r), 1.0}, {ix.charging(s, b, t, l, r), -vc}};
            row(RowFamily::charging_definition, s, RowSense::equal, 0.0);
          }

    for (std::size_t d = 0; d < D; ++d)
      for (std::size_t t = 0; t < T; ++t)
        for (std::size_t r = 0; r < R; ++r) {
          for (std::size_t b = 0; b < B; ++b)
            terms.push_back({ix.trips(s, b, d, t, r), 1.0});
          row(RowFamily::demand_allocation, s, RowSense::equal,
              seg.demand.trips(d, t, r));
        }
    // State of charge.
    for (std::size_t b = 0; b < B; ++b)
      for (std::size_t r = 0; r < R; ++r) {
        for (std::size_t t = 0; t < T; ++t) {
          for (std::size_t q = 0; q <= t; ++q)
            for (std::size_t l = 0; l < L; ++l)
              terms.push_back({ix.charging(s, b, q, l, r), 1.0});
          for (std::size_t q = 0; q < t; ++q)
            for (std::size_t d = 0; d < D; ++d)
              terms.push_back({E(b, d, q, r), -1.0});
          row(RowFamily::charging_upper_bound, s, RowSense::less_equal, 0.0);

          for (std::size_t q = 0; q < t; ++q)
            for (std::size_t l = 0; l < L; ++l)
              terms.push_back({ix.charging(s, b, q, l, r), 1.0});
          for (std::size_t q = 0; q <= t; ++q)
            for (std::size_t d = 0; d < D; ++d)
              terms.push_back({E(b, d, q, r), -1.0});
          terms.push_back({ix.fleet(s, b, r), seg.fleet.battery_kwh[b]});
          row(RowFamily::charging_lower_bound, s, RowSense::greater_equal, 0.0);
        }
        for (std::size_t l = 0; l < L; ++l) {
          terms.push_back({ix.charging(s, b, 0, l, r), 1.0});
          row(RowFamily::no_charge_at_start, s, RowSense::equal, 0.0);
        }
        for (std::size_t q = 0; q < T; ++q) {
          for (std::size_t l = 0; l < L; ++l)
            terms.push_back({ix.charging(s, b, q, l, r), 1.0});
          for (std::size_t d = 0; d < D; ++d) terms.push_back({E(b, d, q, r), -1.0});
        }
        row(RowFamily::terminal_soc, s, RowSense::equal, 0.0);
        for (std::size_t t = 0; t < T; ++t) {
          for (std::size_t d = 0; d < D; ++d) terms.push_back({Vm(b, d, t, r), 1.0});
          for (std::size_t l = 0; l < L; ++l) terms.push_back({Vc(b, t, l, r), 1.0});
          terms.push_back({ix.idle(s, b, t, r), 1.0});
          terms.push_back({ix.fleet(s, b, r), -1.0});
          row(RowFamily::fleet_dispatch, s, RowSense::less_equal, 0.0);
        }
      }
    for (std::size_t l = 0; l < L; ++l)
      for (std::size_t t = 0; t < T; ++t)
        for (std::size_t r = 0; r < R; ++r) {
          for (std::size_t b = 0; b < B; ++b) terms.push_back({Vc(b, t, l, r), 1.0});
          terms.push_back({ix.chargers(s, l, r), -1.0});
          row(RowFamily::max_charging, s, RowSense::less_equal, 0.0);
        }
  }

  const auto charging_sum = [&](std::size_t t, std::size_t r, double coef) {
    for (Segment s : kSegments) {
      const auto& sets = dims.segment(s);
      for (std::size_t b = 0; b < sets.batteries.size(); ++b)
        for (std::size_t l = 0; l < sets.chargers.size(); ++l)
          terms.push_back({ix.charging(s, b, t, l, r), coef});
    }
  };
  for (std::size_t r = 0; r < R; ++r) {
    pb.set_cost(ix.peak(r), costs.peak_weight(spec, r));
    for (std::size_t t = 0; t < T; ++t) {
      terms.push_back({ix.peak(r), 1.0});
      charging_sum(t, r, -1.0 / dt);
      terms.push_back({ix.automated(t, r), 1.0});
      terms.push_back({ix.human(t, r), 1.0});
      row(RowFamily::max_demand, std::nullopt, RowSense::greater_equal,
          -spec.loads.private_ldv(t, r));
    }
  }
  const auto envelope = [&](CF fam, const ChargingEnvelope& env, int first) {
    for (std::size_t r = 0; r < R; ++r)
      for (std::size_t t = 0; t < T; ++t) {
        const auto col = [&](std::size_t q) { return ix.column(fam, std::nullopt, {q, r}); };
        terms = {{col(t), 1.0}};
        row(static_cast<RowFamily>(first), std::nullopt, RowSense::greater_equal,
            env.power_min(t, r));
        terms = {{col(t), 1.0}};
        row(static_cast<RowFamily>(first + 1), std::nullopt, RowSense::less_equal,
            env.power_max(t, r));
        for (std::size_t q = 0; q <= t; ++q) terms.push_back({col(q), dt});
        row(static_cast<RowFamily>(first + 2), std::nullopt,
            RowSense::greater_equal, env.energy_min(t, r));
        for (std::size_t q = 0; q <= t; ++q) terms.push_back({col(q), dt});
        row(static_cast<RowFamily>(first + 3), std::nullopt, RowSense::less_equal,
            env.energy_max(t, r));
      }
  };
  envelope(CF::automated_power, spec.loads.hdv_automated,
           static_cast<int>(RowFamily::automated_power_min));
  envelope(CF::human_power, spec.loads.hdv_human,
           static_cast<int>(RowFamily::human_power_min));

  for (std::size_t g = 0; g < G; ++g)
    for (std::size_t t = 0; t < T; ++t) {
      pb.set_cost(ix.generation(g, t), spec.grid.generator_cost[g]);
      pb.set_upper(ix.generation(g, t), spec.grid.generator_capacity[g] * dt);
    }
  for (std::size_t i = 0; i < I; ++i)
    for (std::size_t j = 0; j < I; ++j) {
      if (i == j) continue;
      for (std::size_t t = 0; t < T; ++t) {
        const auto c = ix.transmission(link_index(i, j, I), t);
        pb.set_cost(c, spec.grid.transmission_cost(i, j, t));
        pb.set_upper(c, spec.grid.transmission_capacity(i, j) * dt);
      }
    }
  for (std::size_t i = 0; i < I; ++i)
    for (std::size_t t = 0; t < T; ++t) {
      double rhs = spec.loads.other(t, i) * dt;
      for (std::size_t g = 0; g < G; ++g)
        if (dims.generator_grid[g] == i) terms.push_back({ix.generation(g, t), 1.0});
      for (std::size_t j = 0; j < I; ++j) {
        if (j == i) continue;
        terms.push_back({ix.transmission(link_index(j, i, I), t),
                         spec.grid.transmission_efficiency});
        terms.push_back({ix.transmission(link_index(i, j, I), t), -1.0});
      }
      for (std::size_t r = 0; r < R; ++r) {
        if (dims.region_grid[r] != i) continue;
        rhs += spec.loads.private_ldv(t, r) * dt;
        charging_sum(t, r, -1.0);
        terms.push_back({ix.automated(t, r), -dt});
        terms.push_back({ix.human(t, r), -dt});
      }
      row(RowFamily::generation, std::nullopt, RowSense::greater_equal, rhs);
    }
  out.program = std::move(pb).finalize();
  return out;
}

}  // namespace gem::testing
