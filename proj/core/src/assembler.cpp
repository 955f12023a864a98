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

#include "gem/assembler.hpp"

#include <string>
#include <vector>

#include "gem/fleet_equations.hpp"

namespace gem {
namespace {

std::string hour_label(std::size_t t) { return std::to_string(t); }

void check_inputs(const ScenarioSpec& spec, const CostCoefficients& costs) {
  const auto report = validate_scenario(spec);
  for (const auto& v : report.violations) {
    if (v.rule == "table extents match dimensions" ||
        v.rule == "region maps to grid region" ||
        v.rule == "generator maps to grid region")
      throw AssemblyError("dimension mismatch: " + v.detail);
  }
  const std::size_t R = spec.dims.num_regions();
  if (costs.demand_charge_rate.size() != R)
    throw AssemblyError("dimension mismatch: cost coefficients demand_charge");
  for (Segment s : kSegments) {
    const auto& sets = spec.dims.segment(s);
    if (sets.absent()) continue;
    const auto& c = costs.segment(s);
    if (c.charger_daily.size() != sets.chargers.size() ||
        c.vehicle_daily.size() != R || c.battery_daily.size() != R ||
        c.maintenance_rate.extents() != spec.segment(s).demand.speed.extents())
      throw AssemblyError("dimension mismatch: cost coefficients for " +
                          std::string(segment_name(s)));
  }
}

class Assembly {
 public:
  Assembly(const ScenarioSpec& spec, const CostCoefficients& costs)
      : spec_(spec),
        costs_(costs),
        dims_(spec.dims),
        index_(make_variable_index(spec.dims)) {}

  AssembledProgram run() && {
    add_columns();
    for (Segment s : kSegments) demand_allocation(s);
    for (Segment s : kSegments) charging_upper(s);
    for (Segment s : kSegments) charging_lower(s);
    for (Segment s : kSegments) no_charge_at_start(s);
    for (Segment s : kSegments) terminal_soc(s);
    for (Segment s : kSegments) fleet_dispatch(s);
    for (Segment s : kSegments) max_charging(s);
    max_demand();
    envelope(ColumnFamily::automated_power, spec_.loads.hdv_automated,
             RowFamily::automated_power_min);
    envelope(ColumnFamily::human_power, spec_.loads.hdv_human,
             RowFamily::human_power_min);
    generation();
    return {std::move(builder_).finalize(), std::move(index_)};
  }

 private:
  const SegmentSets& sets(Segment s) const { return dims_.segment(s); }

  void add_columns() {
    for (std::size_t col = 0; col < index_.num_columns(); ++col)
      builder_.add_column(index_.column_name(col, dims_), 0.0);
    const std::size_t T = dims_.num_hours, R = dims_.num_regions();
    const double dt = dims_.dt_hours;
    for (Segment s : kSegments) {
      const auto& st = sets(s);
      const auto& maint = costs_.segment(s).maintenance_rate;
      for (std::size_t b = 0; b < st.batteries.size(); ++b)
        for (std::size_t d = 0; d < st.distances.size(); ++d)
          for (std::size_t t = 0; t < T; ++t)
            for (std::size_t r = 0; r < R; ++r)
              builder_.set_cost(index_.trips(s, b, d, t, r),
                                maint(d, t, r) *
                                    vehicles_per_trip(spec_, s, d, t, r));
      for (std::size_t b = 0; b < st.batteries.size(); ++b)
        for (std::size_t r = 0; r < R; ++r)
          builder_.set_cost(index_.fleet(s, b, r),
                            costs_.fleet_weight(spec_, s, b, r));
      for (std::size_t l = 0; l < st.chargers.size(); ++l)
        for (std::size_t r = 0; r < R; ++r)
          builder_.set_cost(index_.chargers(s, l, r),
                            costs_.charger_weight(spec_, s, l));
    }
    for (std::size_t r = 0; r < R; ++r)
      builder_.set_cost(index_.peak(r), costs_.peak_weight(spec_, r));
    for (std::size_t g = 0; g < dims_.num_generators(); ++g) {
      for (std::size_t t = 0; t < T; ++t) {
        const auto col = index_.generation(g, t);
        builder_.set_cost(col, spec_.grid.generator_cost[g]);
        builder_.set_upper(col, spec_.grid.generator_capacity[g] * dt);
      }
    }
    const std::size_t I = dims_.num_grid_regions();
    for (std::size_t link = 0; link < dims_.num_links(); ++link) {
      auto [from, to] = link_endpoints(link, I);
      for (std::size_t t = 0; t < T; ++t) {
        const auto col = index_.transmission(link, t);
        builder_.set_cost(col, spec_.grid.transmission_cost(from, to, t));
        builder_.set_upper(col,
                           spec_.grid.transmission_capacity(from, to) * dt);
      }
    }
  }

  void row(RowFamily family, std::optional<Segment> s, std::string subs,
           RowSense sense, double rhs) {
    builder_.add_row({family, s, std::move(subs)}, sense, rhs, terms_);
    terms_.clear();
  }

  // Adds - sum_{t' <= last} sum_d e * D[b][d][t'][r] to the pending terms.
  void add_energy_terms(Segment s, std::size_t b, std::size_t r,
                        std::ptrdiff_t last, double sign) {
    for (std::ptrdiff_t t = 0; t <= last; ++t)
      for (std::size_t d = 0; d < sets(s).distances.size(); ++d)
        terms_.push_back({index_.trips(s, b, d, static_cast<std::size_t>(t), r),
                          sign * energy_per_trip(spec_, s, b, d, r)});
  }
  void add_charging_terms(Segment s, std::size_t b, std::size_t r,
                          std::ptrdiff_t last, double sign) {
    for (std::ptrdiff_t t = 0; t <= last; ++t)
      for (std::size_t l = 0; l < sets(s).chargers.size(); ++l)
        terms_.push_back(
            {index_.charging(s, b, static_cast<std::size_t>(t), l, r), sign});
  }

  std::string btr(Segment s, std::size_t b, std::size_t t, std::size_t r) {
    return subscript_label({{"b", sets(s).batteries[b]},
                            {"t", hour_label(t)},
                            {"r", dims_.mobility_regions[r]}});
  }

  void demand_allocation(Segment s) {
    const auto& trips = spec_.segment(s).demand.trips;
    for (std::size_t d = 0; d < sets(s).distances.size(); ++d)
      for (std::size_t t = 0; t < dims_.num_hours; ++t)
        for (std::size_t r = 0; r < dims_.num_regions(); ++r) {
          for (std::size_t b = 0; b < sets(s).batteries.size(); ++b)
            terms_.push_back({index_.trips(s, b, d, t, r), 1.0});
          row(RowFamily::demand_allocation, s,
              subscript_label({{"d", sets(s).distances[d]},
                               {"t", hour_label(t)},
                               {"r", dims_.mobility_regions[r]}}),
              RowSense::equal, trips(d, t, r));
        }
  }

  void charging_upper(Segment s) {
    for (std::size_t b = 0; b < sets(s).batteries.size(); ++b)
      for (std::size_t t = 0; t < dims_.num_hours; ++t)
        for (std::size_t r = 0; r < dims_.num_regions(); ++r) {
          const auto tt = static_cast<std::ptrdiff_t>(t);
          add_charging_terms(s, b, r, tt, 1.0);
          add_energy_terms(s, b, r, tt - 1, -1.0);
          row(RowFamily::charging_upper_bound, s, btr(s, b, t, r),
              RowSense::less_equal, 0.0);
        }
  }

  void charging_lower(Segment s) {
    for (std::size_t b = 0; b < sets(s).batteries.size(); ++b)
      for (std::size_t t = 0; t < dims_.num_hours; ++t)
        for (std::size_t r = 0; r < dims_.num_regions(); ++r) {
          const auto tt = static_cast<std::ptrdiff_t>(t);
          add_charging_terms(s, b, r, tt - 1, 1.0);
          add_energy_terms(s, b, r, tt, -1.0);
          terms_.push_back({index_.fleet(s, b, r),
                            spec_.segment(s).fleet.battery_kwh[b]});
          row(RowFamily::charging_lower_bound, s, btr(s, b, t, r),
              RowSense::greater_equal, 0.0);
        }
  }

  void no_charge_at_start(Segment s) {
    for (std::size_t b = 0; b < sets(s).batteries.size(); ++b)
      for (std::size_t l = 0; l < sets(s).chargers.size(); ++l)
        for (std::size_t r = 0; r < dims_.num_regions(); ++r) {
          terms_.push_back({index_.charging(s, b, 0, l, r), 1.0});
          row(RowFamily::no_charge_at_start, s,
              subscript_label({{"b", sets(s).batteries[b]},
                               {"l", sets(s).chargers[l]},
                               {"r", dims_.mobility_regions[r]}}),
              RowSense::equal, 0.0);
        }
  }

  void terminal_soc(Segment s) {
    const auto last = static_cast<std::ptrdiff_t>(dims_.num_hours) - 1;
    for (std::size_t b = 0; b < sets(s).batteries.size(); ++b)
      for (std::size_t r = 0; r < dims_.num_regions(); ++r) {
        add_charging_terms(s, b, r, last, 1.0);
        add_energy_terms(s, b, r, last, -1.0);
        row(RowFamily::terminal_soc, s,
            subscript_label({{"b", sets(s).batteries[b]},
                             {"r", dims_.mobility_regions[r]}}),
            RowSense::equal, 0.0);
      }
  }

  void fleet_dispatch(Segment s) {
    for (std::size_t b = 0; b < sets(s).batteries.size(); ++b)
      for (std::size_t t = 0; t < dims_.num_hours; ++t)
        for (std::size_t r = 0; r < dims_.num_regions(); ++r) {
          for (std::size_t d = 0; d < sets(s).distances.size(); ++d)
            terms_.push_back({index_.trips(s, b, d, t, r),
                              vehicles_per_trip(spec_, s, d, t, r)});
          terms_.push_back({index_.idle(s, b, t, r), 1.0});
          for (std::size_t l = 0; l < sets(s).chargers.size(); ++l)
            terms_.push_back({index_.charging(s, b, t, l, r),
                              vehicles_per_kwh(spec_, s, b, l, r)});
          terms_.push_back({index_.fleet(s, b, r), -1.0});
          row(RowFamily::fleet_dispatch, s, btr(s, b, t, r),
              RowSense::less_equal, 0.0);
        }
  }

  void max_charging(Segment s) {
    for (std::size_t l = 0; l < sets(s).chargers.size(); ++l)
      for (std::size_t t = 0; t < dims_.num_hours; ++t)
        for (std::size_t r = 0; r < dims_.num_regions(); ++r) {
          for (std::size_t b = 0; b < sets(s).batteries.size(); ++b)
            terms_.push_back({index_.charging(s, b, t, l, r),
                              vehicles_per_kwh(spec_, s, b, l, r)});
          terms_.push_back({index_.chargers(s, l, r), -1.0});
          row(RowFamily::max_charging, s,
              subscript_label({{"l", sets(s).chargers[l]},
                               {"t", hour_label(t)},
                               {"r", dims_.mobility_regions[r]}}),
              RowSense::less_equal, 0.0);
        }
  }

  std::string tr(std::size_t t, std::size_t r) {
    return subscript_label(
        {{"t", hour_label(t)}, {"r", dims_.mobility_regions[r]}});
  }

  // Pmax[r] >= sum P / dt - P_private - P_automated - P_human, rearranged
  // with the fixed LDV profile on the right-hand side.
  void max_demand() {
    const double dt = dims_.dt_hours;
    for (std::size_t t = 0; t < dims_.num_hours; ++t)
      for (std::size_t r = 0; r < dims_.num_regions(); ++r) {
        terms_.push_back({index_.peak(r), 1.0});
        for (Segment s : kSegments)
          for (std::size_t b = 0; b < sets(s).batteries.size(); ++b)
            for (std::size_t l = 0; l < sets(s).chargers.size(); ++l)
              terms_.push_back({index_.charging(s, b, t, l, r), -1.0 / dt});
        terms_.push_back({index_.automated(t, r), 1.0});
        terms_.push_back({index_.human(t, r), 1.0});
        row(RowFamily::max_demand, std::nullopt, tr(t, r),
            RowSense::greater_equal, -spec_.loads.private_ldv(t, r));
      }
  }

  // Four families starting at `first`: power min, power max, energy min,
  // energy max, in that enum order.
  void envelope(ColumnFamily col_family, const ChargingEnvelope& env,
                RowFamily first) {
    const auto fam = [&](int k) {
      return static_cast<RowFamily>(static_cast<int>(first) + k);
    };
    const double dt = dims_.dt_hours;
    const std::size_t T = dims_.num_hours, R = dims_.num_regions();
    auto col = [&](std::size_t t, std::size_t r) {
      return index_.column(col_family, std::nullopt, {t, r});
    };
    for (std::size_t t = 0; t < T; ++t)
      for (std::size_t r = 0; r < R; ++r) {
        terms_.push_back({col(t, r), 1.0});
        row(fam(0), std::nullopt, tr(t, r), RowSense::greater_equal,
            env.power_min(t, r));
      }
    for (std::size_t t = 0; t < T; ++t)
      for (std::size_t r = 0; r < R; ++r) {
        terms_.push_back({col(t, r), 1.0});
        row(fam(1), std::nullopt, tr(t, r), RowSense::less_equal,
            env.power_max(t, r));
      }
    for (int k = 2; k < 4; ++k) {
      for (std::size_t t = 0; t < T; ++t)
        for (std::size_t r = 0; r < R; ++r) {
          for (std::size_t q = 0; q <= t; ++q) terms_.push_back({col(q, r), dt});
          if (k == 2)
            row(fam(2), std::nullopt, tr(t, r), RowSense::greater_equal,
                env.energy_min(t, r));
          else
            row(fam(3), std::nullopt, tr(t, r), RowSense::less_equal,
                env.energy_max(t, r));
        }
    }
  }

  void generation() {
    const double dt = dims_.dt_hours;
    const double eta = spec_.grid.transmission_efficiency;
    const std::size_t I = dims_.num_grid_regions();
    for (std::size_t i = 0; i < I; ++i)
      for (std::size_t t = 0; t < dims_.num_hours; ++t) {
        for (std::size_t g = 0; g < dims_.num_generators(); ++g)
          if (dims_.generator_grid[g] == i)
            terms_.push_back({index_.generation(g, t), 1.0});
        for (std::size_t j = 0; j < I; ++j) {
          if (j == i) continue;
          terms_.push_back({index_.transmission(link_index(j, i, I), t), eta});
          terms_.push_back({index_.transmission(link_index(i, j, I), t), -1.0});
        }
        double fixed = spec_.loads.other(t, i);
        for (std::size_t r = 0; r < dims_.num_regions(); ++r) {
          if (dims_.region_grid[r] != i) continue;
          fixed += spec_.loads.private_ldv(t, r);
          for (Segment s : kSegments)
            for (std::size_t b = 0; b < sets(s).batteries.size(); ++b)
              for (std::size_t l = 0; l < sets(s).chargers.size(); ++l)
                terms_.push_back({index_.charging(s, b, t, l, r), -1.0});
          terms_.push_back({index_.automated(t, r), -dt});
          terms_.push_back({index_.human(t, r), -dt});
        }
        row(RowFamily::generation, std::nullopt,
            subscript_label({{"i", dims_.grid_regions[i]}, {"t", hour_label(t)}}),
            RowSense::greater_equal, fixed * dt);
      }
  }

  const ScenarioSpec& spec_;
  const CostCoefficients& costs_;
  const DimensionSets& dims_;
  VariableIndex index_;
  ProgramBuilder builder_;
  std::vector<Term> terms_;
};

}  // namespace

std::string subscript_label(
    std::initializer_list<std::pair<const char*, std::string>> parts) {
  std::string s;
  for (const auto& [k, v] : parts) {
    if (!s.empty()) s += ",";
    s += k;
    s += "=";
    s += v;
  }
  return s;
}

AssembledProgram build_program(const ScenarioSpec& spec,
                               const CostCoefficients& costs) {
  check_inputs(spec, costs);
  return Assembly(spec, costs).run();
}

std::size_t expected_column_count(const DimensionSets& dims) {
  const std::size_t T = dims.num_hours, R = dims.num_regions();
  std::size_t n = 0;
  for (Segment s : kSegments) {
    const auto& st = dims.segment(s);
    const std::size_t B = st.batteries.size(), L = st.chargers.size(),
                      D = st.distances.size();
    n += B * D * T * R + B * T * R + B * R + L * R + B * T * L * R;
  }
  n += R + 2 * T * R + dims.num_generators() * T + dims.num_links() * T;
  return n;
}

std::size_t expected_row_count(const DimensionSets& dims) {
  const std::size_t T = dims.num_hours, R = dims.num_regions();
  std::size_t m = 0;
  for (Segment s : kSegments) {
    const auto& st = dims.segment(s);
    const std::size_t B = st.batteries.size(), L = st.chargers.size(),
                      D = st.distances.size();
    m += D * T * R + 3 * B * T * R + B * L * R + B * R + L * T * R;
  }
  m += T * R + 8 * T * R + dims.num_grid_regions() * T;
  return m;
}

}  // namespace gem
