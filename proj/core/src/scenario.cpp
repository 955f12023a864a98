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

#include "gem/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace gem {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class Checker {
 public:
  explicit Checker(ValidationReport& report) : report_(report) {}

  void fail(std::string rule, std::string detail) {
    report_.violations.push_back({std::move(rule), std::move(detail)});
  }

  // Reports non-finite entries once per table; returns false when any exist.
  bool finite(std::span<const double> values, std::string_view what) {
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (!std::isfinite(values[k])) {
        std::ostringstream os;
        os << what << " entry " << k;
        fail("missing or non-finite value", os.str());
        return false;
      }
    }
    return true;
  }

  template <class Pred>
  void each(std::span<const double> values, std::string_view rule,
            std::string_view what, Pred pred) {
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (std::isfinite(values[k]) && !pred(values[k])) {
        std::ostringstream os;
        os << what << " entry " << k << " = " << values[k];
        fail(std::string(rule), os.str());
        return;
      }
    }
  }

  void scalar(double v, std::string_view rule, std::string_view what,
              bool ok) {
    if (!std::isfinite(v)) {
      fail("missing or non-finite value", std::string(what));
    } else if (!ok) {
      std::ostringstream os;
      os << what << " = " << v;
      fail(std::string(rule), os.str());
    }
  }

  void extent(std::size_t have, std::size_t want, std::string_view what) {
    if (have != want) {
      std::ostringstream os;
      os << what << " has " << have << " entries, expected " << want;
      fail("table extents match dimensions", os.str());
    }
  }

 private:
  ValidationReport& report_;
};

template <std::size_t R>
std::array<std::size_t, R> dims_of(std::initializer_list<std::size_t> l) {
  std::array<std::size_t, R> a{};
  std::copy(l.begin(), l.end(), a.begin());
  return a;
}

void check_extents3(Checker& c, const Table3& t, std::size_t a, std::size_t b,
                    std::size_t d, std::string_view what) {
  if (t.extents() != dims_of<3>({a, b, d})) {
    std::ostringstream os;
    os << what << " extents (" << t.extent(0) << "," << t.extent(1) << ","
       << t.extent(2) << "), expected (" << a << "," << b << "," << d << ")";
    c.fail("table extents match dimensions", os.str());
  }
}

void check_extents2(Checker& c, const Table2& t, std::size_t a, std::size_t b,
                    std::string_view what) {
  if (t.extents() != dims_of<2>({a, b})) {
    std::ostringstream os;
    os << what << " extents (" << t.extent(0) << "," << t.extent(1)
       << "), expected (" << a << "," << b << ")";
    c.fail("table extents match dimensions", os.str());
  }
}

bool check_shapes(Checker& c, const ScenarioSpec& spec) {
  ValidationReport probe;
  Checker local(probe);
  const auto& dims = spec.dims;
  const std::size_t T = dims.num_hours, R = dims.num_regions(),
                    I = dims.num_grid_regions(), G = dims.num_generators();
  for (Segment s : kSegments) {
    const auto& sets = dims.segment(s);
    const auto& seg = spec.segment(s);
    const std::size_t B = sets.batteries.size(), L = sets.chargers.size(),
                      D = sets.distances.size();
    const std::string p(segment_name(s));
    local.extent(seg.fleet.battery_kwh.size(), B, p + ".battery_kwh");
    local.extent(seg.fleet.efficiency.size(), B, p + ".eta");
    local.extent(seg.fleet.fleet_mismatch.size(), R, p + ".psi_f");
    local.extent(seg.fleet.battery_mismatch.size(), R, p + ".psi_b");
    local.extent(seg.chargers.power_kw.size(), L, p + ".gamma");
    local.extent(seg.chargers.capital_per_kw.size(), L, p + ".charger_capital");
    local.extent(seg.chargers.lifetime.size(), L, p + ".charger_life");
    check_extents3(local, seg.chargers.deadhead_time, B, L, R, p + ".psi_chdt");
    check_extents3(local, seg.demand.trips, D, T, R, p + ".trips");
    check_extents3(local, seg.demand.speed, D, T, R, p + ".speed");
    local.extent(seg.demand.distance.size(), D, p + ".rho");
    local.extent(seg.demand.sharing.size(), D, p + ".sigma");
    local.extent(seg.demand.charge_deadhead_distance.size(), R, p + ".psi_chdd");
    local.extent(seg.demand.customer_deadhead_distance.size(), R,
                 p + ".psi_cdd");
    local.extent(seg.demand.customer_deadhead_time.size(), R, p + ".psi_cdt");
  }
  const std::size_t DH = dims.segment(Segment::hdv).distances.size();
  check_extents2(local, spec.loads.other, T, I, "p_other");
  check_extents2(local, spec.loads.private_ldv, T, R, "p_private");
  for (const auto* env : {&spec.loads.hdv_automated, &spec.loads.hdv_human}) {
    check_extents2(local, env->power_min, T, R, "envelope power_min");
    check_extents2(local, env->power_max, T, R, "envelope power_max");
    check_extents2(local, env->energy_min, T, R, "envelope energy_min");
    check_extents2(local, env->energy_max, T, R, "envelope energy_max");
  }
  check_extents3(local, spec.private_hdv.automated_trips, DH, T, R,
                 "private_auto_trips");
  check_extents3(local, spec.private_hdv.human_trips, DH, T, R,
                 "private_human_trips");
  local.extent(spec.grid.generator_cost.size(), G, "gen_cost");
  local.extent(spec.grid.generator_capacity.size(), G, "gen_capacity");
  check_extents3(local, spec.grid.transmission_cost, I, I, T, "trans_cost");
  check_extents2(local, spec.grid.transmission_capacity, I, I,
                 "trans_capacity");
  local.extent(spec.grid.demand_charge.size(), R, "demand_charge");
  for (auto& v : probe.violations) c.fail(v.rule, v.detail);
  return probe.ok();
}

void check_sets(Checker& c, const DimensionSets& dims) {
  if (dims.mobility_regions.empty())
    c.fail("set non-empty", "mobility_region");
  if (dims.grid_regions.empty()) c.fail("set non-empty", "grid_region");
  if (dims.generators.empty()) c.fail("set non-empty", "generator");
  bool any_segment = false;
  for (Segment s : kSegments) {
    const auto& sets = dims.segment(s);
    if (sets.absent()) continue;
    any_segment = true;
    const std::string p(segment_name(s));
    if (sets.batteries.empty()) c.fail("set non-empty", p + "_battery");
    if (sets.chargers.empty()) c.fail("set non-empty", p + "_charger");
    if (sets.distances.empty()) c.fail("set non-empty", p + "_distance");
  }
  if (!any_segment) c.fail("set non-empty", "no vehicle segment present");

  if (dims.region_grid.size() != dims.mobility_regions.size()) {
    c.fail("region maps to grid region",
           "region map size differs from mobility region count");
  } else {
    for (std::size_t r = 0; r < dims.region_grid.size(); ++r) {
      if (dims.region_grid[r] >= dims.grid_regions.size())
        c.fail("region maps to grid region", dims.mobility_regions[r]);
    }
  }
  if (dims.generator_grid.size() != dims.generators.size()) {
    c.fail("generator maps to grid region",
           "generator map size differs from generator count");
  } else {
    for (std::size_t g = 0; g < dims.generator_grid.size(); ++g) {
      if (dims.generator_grid[g] >= dims.grid_regions.size())
        c.fail("generator maps to grid region", dims.generators[g]);
    }
  }
  if (!(dims.dt_hours > 0.0) || !std::isfinite(dims.dt_hours))
    c.fail("hours contiguous with uniform step", "dt must be positive");
  if (dims.num_hours == 0)
    c.fail("hours contiguous with uniform step", "no hours");
}

void check_envelope(Checker& c, const ChargingEnvelope& env, double dt,
                    std::string_view name) {
  const std::string n(name);
  if (!c.finite(env.power_min.values(), n + ".p_min") ||
      !c.finite(env.power_max.values(), n + ".p_max") ||
      !c.finite(env.energy_min.values(), n + ".e_min") ||
      !c.finite(env.energy_max.values(), n + ".e_max"))
    return;
  const std::size_t T = env.power_min.extent(0), R = env.power_min.extent(1);
  const double tol = 1e-9;
  for (std::size_t r = 0; r < R; ++r) {
    double cum_power = 0.0;
    double cum_power_min = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
      std::ostringstream at;
      at << n << " t=" << t << " r=" << r;
      if (env.power_min(t, r) < 0.0)
        c.fail("envelope power bounds non-negative", at.str());
      if (env.power_min(t, r) > env.power_max(t, r) + tol)
        c.fail("envelope lower bound <= upper bound", at.str() + " (power)");
      if (env.energy_min(t, r) > env.energy_max(t, r) + tol)
        c.fail("envelope lower bound <= upper bound", at.str() + " (energy)");
      if (t > 0 && (env.energy_min(t, r) < env.energy_min(t - 1, r) - tol ||
                    env.energy_max(t, r) < env.energy_max(t - 1, r) - tol))
        c.fail("envelope cumulative energy non-decreasing", at.str());
      cum_power += env.power_max(t, r) * dt;
      cum_power_min += env.power_min(t, r) * dt;
      const double scale = 1.0 + std::abs(env.energy_min(t, r));
      if (cum_power < env.energy_min(t, r) - tol * scale)
        c.fail("envelope feasibility", at.str() + " (max power cannot reach "
                                                  "cumulative energy minimum)");
      if (cum_power_min > env.energy_max(t, r) + tol * scale)
        c.fail("envelope feasibility", at.str() + " (min power exceeds "
                                                  "cumulative energy maximum)");
    }
  }
}

}  // namespace

std::string_view segment_name(Segment s) {
  return s == Segment::ldv ? "ldv" : "hdv";
}

bool ValidationReport::cites(std::string_view rule) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.rule == rule; });
}

double hour_of_day(const DimensionSets& dims, std::size_t t) {
  return std::fmod(static_cast<double>(t) * dims.dt_hours, 24.0);
}

void allocate_tables(ScenarioSpec& spec) {
  const auto& dims = spec.dims;
  const std::size_t T = dims.num_hours, R = dims.num_regions(),
                    I = dims.num_grid_regions(), G = dims.num_generators();
  for (Segment s : kSegments) {
    const auto& sets = dims.segment(s);
    auto& seg = spec.segment(s);
    const std::size_t B = sets.batteries.size(), L = sets.chargers.size(),
                      D = sets.distances.size();
    seg.fleet.battery_kwh.assign(B, kNaN);
    seg.fleet.efficiency.assign(B, kNaN);
    seg.fleet.maintenance_per_mile = kNaN;
    seg.fleet.vehicle_capital = kNaN;
    seg.fleet.vehicle_fixed_om = 0.0;
    seg.fleet.vehicle_lifetime = kNaN;
    seg.fleet.battery_capital = kNaN;
    seg.fleet.battery_lifetime = kNaN;
    seg.fleet.fleet_mismatch.assign(R, 1.0);
    seg.fleet.battery_mismatch.assign(R, 1.0);
    if (sets.absent()) {
      // Scalars of an absent segment never enter the program.
      seg.fleet.maintenance_per_mile = 0.0;
      seg.fleet.vehicle_capital = 0.0;
      seg.fleet.vehicle_lifetime = 1.0;
      seg.fleet.battery_capital = 0.0;
      seg.fleet.battery_lifetime = 1.0;
    }
    seg.chargers.power_kw.assign(L, kNaN);
    seg.chargers.capital_per_kw.assign(L, kNaN);
    seg.chargers.lifetime.assign(L, kNaN);
    seg.chargers.deadhead_time = Table3({B, L, R}, 1.0);
    seg.demand.trips = Table3({D, T, R}, 0.0);
    seg.demand.speed = Table3({D, T, R}, kNaN);
    seg.demand.distance.assign(D, kNaN);
    seg.demand.sharing.assign(D, kNaN);
    seg.demand.charge_deadhead_distance.assign(R, 1.0);
    seg.demand.customer_deadhead_distance.assign(R, 1.0);
    seg.demand.customer_deadhead_time.assign(R, 1.0);
  }
  const std::size_t DH = dims.segment(Segment::hdv).distances.size();
  spec.loads.other = Table2({T, I}, 0.0);
  spec.loads.private_ldv = Table2({T, R}, 0.0);
  for (auto* env : {&spec.loads.hdv_automated, &spec.loads.hdv_human}) {
    env->power_min = Table2({T, R}, 0.0);
    env->power_max = Table2({T, R}, 0.0);
    env->energy_min = Table2({T, R}, 0.0);
    env->energy_max = Table2({T, R}, 0.0);
  }
  spec.private_hdv.automated_trips = Table3({DH, T, R}, 0.0);
  spec.private_hdv.human_trips = Table3({DH, T, R}, 0.0);
  spec.grid.generator_cost.assign(G, kNaN);
  spec.grid.generator_capacity.assign(G, kNaN);
  spec.grid.transmission_cost = Table3({I, I, T}, 0.0);
  spec.grid.transmission_capacity = Table2({I, I}, 0.0);
  spec.grid.demand_charge.assign(R, 0.0);
}

ValidationReport validate_scenario(const ScenarioSpec& spec) {
  ValidationReport report;
  Checker c(report);
  const auto& dims = spec.dims;
  check_sets(c, dims);
  if (!check_shapes(c, spec)) return report;

  const double expected_hours = spec.grid.num_days * 24.0 / dims.dt_hours;
  if (!(spec.grid.num_days > 0.0) ||
      std::abs(expected_hours - static_cast<double>(dims.num_hours)) > 1e-9) {
    std::ostringstream os;
    os << "n_days*24/dt = " << expected_hours << " but " << dims.num_hours
       << " hours";
    c.fail("hours contiguous with uniform step", os.str());
  }

  auto positive = [](double v) { return v > 0.0; };
  auto nonneg = [](double v) { return v >= 0.0; };
  auto at_least_one = [](double v) { return v >= 1.0; };
  auto unit_interval = [](double v) { return v > 0.0 && v <= 1.0; };

  for (Segment s : kSegments) {
    if (dims.segment(s).absent()) continue;
    const auto& seg = spec.segment(s);
    const std::string p(segment_name(s));
    const auto& f = seg.fleet;
    if (c.finite(f.battery_kwh, p + ".battery_kwh"))
      c.each(f.battery_kwh, "battery capacity > 0", p + ".battery_kwh",
             positive);
    if (c.finite(f.efficiency, p + ".eta"))
      c.each(f.efficiency, "conversion efficiency > 0", p + ".eta", positive);
    c.scalar(f.maintenance_per_mile, "costs >= 0", p + ".beta_v",
             f.maintenance_per_mile >= 0.0);
    c.scalar(f.vehicle_capital, "costs >= 0", p + ".vehicle_capital",
             f.vehicle_capital >= 0.0);
    c.scalar(f.vehicle_fixed_om, "costs >= 0", p + ".vehicle_om",
             f.vehicle_fixed_om >= 0.0);
    c.scalar(f.battery_capital, "costs >= 0", p + ".battery_capital",
             f.battery_capital >= 0.0);
    c.scalar(f.vehicle_lifetime, "lifetime > 0", p + ".vehicle_life",
             f.vehicle_lifetime > 0.0);
    c.scalar(f.battery_lifetime, "lifetime > 0", p + ".battery_life",
             f.battery_lifetime > 0.0);
    if (c.finite(f.fleet_mismatch, p + ".psi_f"))
      c.each(f.fleet_mismatch, "spatial mismatch factor >= 1", p + ".psi_f",
             at_least_one);
    if (c.finite(f.battery_mismatch, p + ".psi_b"))
      c.each(f.battery_mismatch, "spatial mismatch factor >= 1", p + ".psi_b",
             at_least_one);

    const auto& ch = seg.chargers;
    if (c.finite(ch.power_kw, p + ".gamma"))
      c.each(ch.power_kw, "charger power > 0", p + ".gamma", positive);
    if (c.finite(ch.capital_per_kw, p + ".charger_capital"))
      c.each(ch.capital_per_kw, "costs >= 0", p + ".charger_capital", nonneg);
    if (c.finite(ch.lifetime, p + ".charger_life"))
      c.each(ch.lifetime, "lifetime > 0", p + ".charger_life", positive);
    if (c.finite(ch.deadhead_time.values(), p + ".psi_chdt"))
      c.each(ch.deadhead_time.values(), "charger deadhead correction in (0, 1]",
             p + ".psi_chdt", unit_interval);

    const auto& dm = seg.demand;
    if (c.finite(dm.trips.values(), p + ".trips"))
      c.each(dm.trips.values(), "demand >= 0", p + ".trips", nonneg);
    if (c.finite(dm.speed.values(), p + ".speed"))
      c.each(dm.speed.values(), "speed > 0", p + ".speed", positive);
    if (c.finite(dm.distance, p + ".rho"))
      c.each(dm.distance, "trip distance > 0", p + ".rho", positive);
    if (c.finite(dm.sharing, p + ".sigma"))
      c.each(dm.sharing, "sharing factor >= 1", p + ".sigma", at_least_one);
    for (const auto* v :
         {&dm.charge_deadhead_distance, &dm.customer_deadhead_distance,
          &dm.customer_deadhead_time}) {
      if (c.finite(*v, p + ".psi_deadhead"))
        c.each(*v, "deadhead correction > 0", p + ".psi_deadhead", positive);
    }

    // The charging upper bound only admits energy consumed before the current
    // period, while terminal state of charge must return every kWh consumed.
    // Consumption in the final period can therefore never be replenished.
    const std::size_t last = dims.num_hours - 1;
    for (std::size_t d = 0; d < dm.trips.extent(0); ++d) {
      for (std::size_t r = 0; r < dm.trips.extent(2); ++r) {
        if (dm.trips(d, last, r) > 0.0) {
          std::ostringstream os;
          os << p << " distance " << d << " region " << r;
          c.fail("no trip demand in final period", os.str());
        }
      }
    }
  }

  for (const auto* priv :
       {&spec.private_hdv.automated_trips, &spec.private_hdv.human_trips}) {
    if (c.finite(priv->values(), "private_trips"))
      c.each(priv->values(), "demand >= 0", "private_trips", nonneg);
  }

  const auto& loads = spec.loads;
  if (c.finite(loads.other.values(), "p_other"))
    c.each(loads.other.values(), "exogenous load >= 0", "p_other", nonneg);
  if (c.finite(loads.private_ldv.values(), "p_private"))
    c.each(loads.private_ldv.values(), "exogenous load >= 0", "p_private",
           nonneg);
  check_envelope(c, loads.hdv_automated, dims.dt_hours, "hdv_automated");
  check_envelope(c, loads.hdv_human, dims.dt_hours, "hdv_human");

  const auto& g = spec.grid;
  c.finite(g.generator_cost, "gen_cost");
  if (c.finite(g.generator_capacity, "gen_capacity"))
    c.each(g.generator_capacity, "capacities >= 0", "gen_capacity", nonneg);
  c.finite(g.transmission_cost.values(), "trans_cost");
  if (c.finite(g.transmission_capacity.values(), "trans_capacity"))
    c.each(g.transmission_capacity.values(), "capacities >= 0",
           "trans_capacity", nonneg);
  if (c.finite(g.demand_charge, "demand_charge"))
    c.each(g.demand_charge, "demand charge >= 0", "demand_charge", nonneg);
  c.scalar(g.transmission_efficiency, "transmission efficiency in (0, 1]",
           "eta_trans",
           g.transmission_efficiency > 0.0 && g.transmission_efficiency <= 1.0);
  c.scalar(g.discount_rate, "discount rate >= 0", "discount_rate",
           g.discount_rate >= 0.0);

  const auto& sp = spec.split;
  c.scalar(sp.automated_share, "split option in range", "automated_share",
           sp.automated_share >= 0.0 && sp.automated_share <= 1.0);
  c.scalar(sp.plug_start_hour, "split option in range", "plug_start",
           sp.plug_start_hour >= 0.0 && sp.plug_start_hour < 24.0);
  c.scalar(sp.plug_end_hour, "split option in range", "plug_end",
           sp.plug_end_hour >= 0.0 && sp.plug_end_hour < 24.0);
  if (!dims.segment(Segment::hdv).absent()) {
    if (sp.battery >= dims.segment(Segment::hdv).batteries.size())
      c.fail("split option in range", "private_battery");
    if (sp.charger >= dims.segment(Segment::hdv).chargers.size())
      c.fail("split option in range", "private_charger");
  }
  return report;
}

}  // namespace gem
