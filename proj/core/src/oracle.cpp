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

#include "gem/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gem/costs.hpp"

namespace gem {
namespace {

constexpr double kTol = 1e-9;

bool within(double lhs, double lo, double hi) {
  return lhs >= lo - kTol * (1.0 + std::abs(lo)) &&
         lhs <= hi + kTol * (1.0 + std::abs(hi));
}

Segment present_segment(const ScenarioSpec& spec) {
  return spec.dims.segment(Segment::ldv).absent() ? Segment::hdv : Segment::ldv;
}

// Every coefficient the search needs, derived straight from the raw
// parameters.
struct Model {
  Segment seg = Segment::hdv;
  std::size_t B = 0, L = 0, D = 0, T = 0, G = 0;
  double dt = 1.0;
  Table2 energy;        // [b][d] kWh per trip
  Table2 moving;        // [d][t] vehicles per trip
  Table2 per_kwh;       // [b][l] vehicles charging per kWh
  Table2 demand;        // [d][t]
  Table2 maintenance;   // [d][t] $ per trip
  std::vector<double> battery, fleet_cost, charger_cost;
  double peak_cost = 0.0;
  std::vector<double> gen_cost, gen_cap;
  std::vector<std::size_t> merit;  // generators by ascending cost
  std::vector<double> fixed_load;  // [t] kWh
  std::vector<double> private_ldv; // [t] kW
  std::array<std::vector<double>, 4> env_a, env_h;  // pmin, pmax, emin, emax
  std::vector<double> max_energy;  // [b] total energy if all trips used b
};

Model make_model(const ScenarioSpec& spec) {
  Model m;
  const auto& dims = spec.dims;
  m.seg = present_segment(spec);
  const auto& sets = dims.segment(m.seg);
  const auto& seg = spec.segment(m.seg);
  const bool ldv = m.seg == Segment::ldv;
  m.B = sets.batteries.size();
  m.L = sets.chargers.size();
  m.D = sets.distances.size();
  m.T = dims.num_hours;
  m.G = dims.num_generators();
  m.dt = dims.dt_hours;
  const auto& dm = seg.demand;
  const double chdd = dm.charge_deadhead_distance[0];
  const double cdd = ldv ? dm.customer_deadhead_distance[0] : 1.0;
  const double cdt = ldv ? dm.customer_deadhead_time[0] : 1.0;

  const double n_days = spec.grid.num_days;
  const double rate = spec.grid.discount_rate;

  m.energy = Table2({m.B, m.D});
  m.per_kwh = Table2({m.B, m.L});
  m.moving = Table2({m.D, m.T});
  m.demand = Table2({m.D, m.T});
  m.maintenance = Table2({m.D, m.T});
  for (std::size_t b = 0; b < m.B; ++b) {
    m.battery.push_back(seg.fleet.battery_kwh[b]);
    for (std::size_t d = 0; d < m.D; ++d)
      m.energy(b, d) = chdd * cdd * seg.fleet.efficiency[b] * dm.distance[d] /
                       dm.sharing[d];
    for (std::size_t l = 0; l < m.L; ++l)
      m.per_kwh(b, l) = 1.0 / (m.dt * seg.chargers.deadhead_time(b, l, 0) *
                               seg.chargers.power_kw[l]);
    m.fleet_cost.push_back(
        n_days * (daily_vehicle_cost(seg.fleet, rate, 0) +
                  daily_battery_cost(seg.fleet, rate, 0) * m.battery[b]));
  }
  for (std::size_t l = 0; l < m.L; ++l)
    m.charger_cost.push_back(n_days * seg.chargers.power_kw[l] *
                             daily_charger_cost(seg.chargers, rate, l));
  for (std::size_t d = 0; d < m.D; ++d)
    for (std::size_t t = 0; t < m.T; ++t) {
      const double speed = dm.speed(d, t, 0);
      m.moving(d, t) = dm.distance[d] * cdt / (dm.sharing[d] * m.dt * speed);
      m.demand(d, t) = dm.trips(d, t, 0);
      // beta per mile times miles driven by the moving vehicles.
      m.maintenance(d, t) =
          seg.fleet.maintenance_per_mile * speed * m.dt * m.moving(d, t);
    }
  m.peak_cost = spec.grid.demand_charge[0] / 30.5 / 24.0 *
                static_cast<double>(m.T) * m.dt;
  for (std::size_t g = 0; g < m.G; ++g) {
    m.gen_cost.push_back(spec.grid.generator_cost[g]);
    m.gen_cap.push_back(spec.grid.generator_capacity[g] * m.dt);
  }
  m.merit.resize(m.G);
  std::iota(m.merit.begin(), m.merit.end(), 0);
  std::stable_sort(m.merit.begin(), m.merit.end(), [&](auto a, auto b) {
    return m.gen_cost[a] < m.gen_cost[b];
  });
  for (std::size_t t = 0; t < m.T; ++t) {
    m.private_ldv.push_back(spec.loads.private_ldv(t, 0));
    m.fixed_load.push_back((spec.loads.other(t, 0) + m.private_ldv[t]) * m.dt);
    const auto& a = spec.loads.hdv_automated;
    const auto& h = spec.loads.hdv_human;
    m.env_a[0].push_back(a.power_min(t, 0));
    m.env_a[1].push_back(a.power_max(t, 0));
    m.env_a[2].push_back(a.energy_min(t, 0));
    m.env_a[3].push_back(a.energy_max(t, 0));
    m.env_h[0].push_back(h.power_min(t, 0));
    m.env_h[1].push_back(h.power_max(t, 0));
    m.env_h[2].push_back(h.energy_min(t, 0));
    m.env_h[3].push_back(h.energy_max(t, 0));
  }
  for (std::size_t b = 0; b < m.B; ++b) {
    double e = 0.0;
    for (std::size_t d = 0; d < m.D; ++d)
      for (std::size_t t = 0; t < m.T; ++t) e += m.energy(b, d) * m.demand(d, t);
    m.max_energy.push_back(e);
  }
  return m;
}

enum class SlotKind { split, charge, forced_charge, automated, human };

struct Slot {
  SlotKind kind;
  std::size_t a = 0, b = 0, c = 0;  // (d,t) | (b,t,l) | (t)
  std::vector<double> values;
};

std::vector<double> grid_values(double lo, double hi, double step) {
  std::vector<double> v;
  if (hi < lo) return v;
  const auto first = static_cast<long long>(std::ceil(lo / step - 1e-12));
  const auto last = static_cast<long long>(std::floor(hi / step + 1e-12));
  for (long long k = first; k <= last; ++k) v.push_back(static_cast<double>(k) * step);
  v.push_back(lo);
  v.push_back(hi);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

class Search {
 public:
  Search(const TinyScenario& tiny, bool prune)
      : tiny_(tiny), m_(make_model(tiny.spec)), prune_(prune) {
    const double step = tiny.grid_step;
    for (std::size_t d = 0; d < m_.D; ++d)
      for (std::size_t t = 0; t < m_.T; ++t) {
        Slot s{SlotKind::split, d, t, 0, {}};
        const std::size_t levels = m_.B == 1 || m_.demand(d, t) == 0.0
                                       ? 0
                                       : tiny.split_levels;
        for (std::size_t k = 0; k <= levels; ++k)
          s.values.push_back(levels ? static_cast<double>(k) / levels : 1.0);
        slots_.push_back(std::move(s));
      }
    for (std::size_t b = 0; b < m_.B; ++b)
      for (std::size_t t = 1; t < m_.T; ++t)
        for (std::size_t l = 0; l < m_.L; ++l) {
          const bool forced = t + 1 == m_.T && l + 1 == m_.L;
          Slot s{forced ? SlotKind::forced_charge : SlotKind::charge, b, t, l,
                 {}};
          if (!forced) s.values = grid_values(0.0, m_.max_energy[b], step);
          slots_.push_back(std::move(s));
        }
    for (auto kind : {SlotKind::automated, SlotKind::human}) {
      const auto& env = kind == SlotKind::automated ? m_.env_a : m_.env_h;
      for (std::size_t t = 0; t < m_.T; ++t) {
        if (!std::isfinite(env[1][t]))
          throw OracleRefusal("private charging power bound must be finite");
        Slot s{kind, t, 0, 0, grid_values(env[0][t], env[1][t], step)};
        if (s.values.empty()) s.values.push_back(env[0][t]);
        slots_.push_back(std::move(s));
      }
    }
    size_ = 1.0;
    for (const auto& s : slots_) {
      double n = s.kind == SlotKind::forced_charge ? 1.0
                                                   : static_cast<double>(s.values.size());
      if ((s.kind == SlotKind::automated || s.kind == SlotKind::human) &&
          s.a + 1 == m_.T)
        n += 2.0;
      size_ *= n;
    }
    if (size_ > tiny.budget)
      throw OracleRefusal("search space of " + std::to_string(size_) +
                          " points exceeds budget of " +
                          std::to_string(tiny.budget));

    p_.trips = DenseTable<3>({m_.B, m_.D, m_.T});
    p_.charging = DenseTable<3>({m_.B, m_.T, m_.L});
    p_.fleet.assign(m_.B, 0.0);
    p_.chargers.assign(m_.L, 0.0);
    p_.automated.assign(m_.T, 0.0);
    p_.human.assign(m_.T, 0.0);
    p_.generation = DenseTable<2>({m_.G, m_.T});
  }

  double size() const { return size_; }

  template <class Visit>
  void run(Visit&& visit) {
    go(0, visit);
  }

  // Objective slack from rounding each searched quantity to the grid.
  double slack() const {
    const double step = tiny_.grid_step;
    const double gmax =
        m_.G ? *std::max_element(m_.gen_cost.begin(), m_.gen_cost.end()) : 0.0;
    double per_kwh = m_.peak_cost / m_.dt + gmax;
    double worst_vc = 0.0;
    for (std::size_t b = 0; b < m_.B; ++b)
      for (std::size_t l = 0; l < m_.L; ++l)
        worst_vc = std::max(worst_vc, m_.per_kwh(b, l) *
                                          (m_.fleet_cost[b] + m_.charger_cost[l]));
    per_kwh += worst_vc;
    double total = 0.0;
    for (const auto& s : slots_) {
      switch (s.kind) {
        case SlotKind::charge:
        case SlotKind::forced_charge:
          total += step * per_kwh;
          break;
        case SlotKind::automated:
        case SlotKind::human:
          total += step * m_.dt * (m_.peak_cost / m_.dt + gmax);
          break;
        case SlotKind::split: {
          if (s.values.size() <= 1) break;
          const double moved = m_.demand(s.a, s.b) / tiny_.split_levels;
          double per_trip = m_.maintenance(s.a, s.b);
          for (std::size_t b = 0; b < m_.B; ++b) {
            double e = 0.0;
            for (std::size_t d = 0; d < m_.D; ++d) e = std::max(e, m_.energy(b, d));
            per_trip = std::max(
                per_trip, m_.maintenance(s.a, s.b) +
                              m_.fleet_cost[b] *
                                  (m_.moving(s.a, s.b) + e / m_.battery[b]) +
                              e * per_kwh);
          }
          total += moved * per_trip;
          break;
        }
      }
    }
    return total;
  }

 private:
  template <class Visit>
  void go(std::size_t k, Visit& visit) {
    if (k == slots_.size()) {
      double objective = 0.0;
      const bool ok = evaluate(objective);
      visit(p_, ok, objective);
      return;
    }
    const Slot& s = slots_[k];
    switch (s.kind) {
      case SlotKind::split:
        for (double f : s.values) {
          const double dd = m_.demand(s.a, s.b);
          p_.trips(0, s.a, s.b) = dd * f;
          if (m_.B == 2) p_.trips(1, s.a, s.b) = dd - dd * f;
          go(k + 1, visit);
        }
        break;
      case SlotKind::charge:
        for (double v : s.values) {
          p_.charging(s.a, s.b, s.c) = v;
          if (prune_ && !charge_prefix_ok(s.a, s.b)) break;
          go(k + 1, visit);
        }
        p_.charging(s.a, s.b, s.c) = 0.0;
        break;
      case SlotKind::forced_charge: {
        double rest = total_energy(s.a);
        for (std::size_t t = 0; t < m_.T; ++t)
          for (std::size_t l = 0; l < m_.L; ++l)
            if (!(t == s.b && l == s.c)) rest -= p_.charging(s.a, t, l);
        p_.charging(s.a, s.b, s.c) = rest;
        go(k + 1, visit);
        p_.charging(s.a, s.b, s.c) = 0.0;
        break;
      }
      case SlotKind::automated:
      case SlotKind::human: {
        auto& vec = s.kind == SlotKind::automated ? p_.automated : p_.human;
        const auto& env = s.kind == SlotKind::automated ? m_.env_a : m_.env_h;
        std::vector<double> values = s.values;
        if (s.a + 1 == m_.T) {
          double before = 0.0;
          for (std::size_t t = 0; t + 1 < m_.T; ++t) before += vec[t] * m_.dt;
          for (double e : {env[2][s.a], env[3][s.a]}) {
            const double v = (e - before) / m_.dt;
            if (v >= env[0][s.a] && v <= env[1][s.a]) values.push_back(v);
          }
          std::sort(values.begin(), values.end());
          values.erase(std::unique(values.begin(), values.end()), values.end());
        }
        for (double v : values) {
          vec[s.a] = v;
          if (prune_ && !envelope_prefix_ok(vec, env, s.a)) continue;
          go(k + 1, visit);
        }
        break;
      }
    }
  }

  double energy_at(std::size_t b, std::size_t t) const {
    double e = 0.0;
    for (std::size_t d = 0; d < m_.D; ++d) e += m_.energy(b, d) * p_.trips(b, d, t);
    return e;
  }
  double total_energy(std::size_t b) const {
    double e = 0.0;
    for (std::size_t t = 0; t < m_.T; ++t) e += energy_at(b, t);
    return e;
  }

  // Cumulative charging through `t` may not exceed consumption before t.
  bool charge_prefix_ok(std::size_t b, std::size_t t) const {
    double charged = 0.0, used = 0.0;
    for (std::size_t q = 0; q <= t; ++q) {
      for (std::size_t l = 0; l < m_.L; ++l) charged += p_.charging(b, q, l);
      if (q > 0) used += energy_at(b, q - 1);
    }
    return charged <= used + kTol;
  }

  bool envelope_prefix_ok(const std::vector<double>& vec,
                          const std::array<std::vector<double>, 4>& env,
                          std::size_t t) const {
    double cum = 0.0;
    for (std::size_t q = 0; q <= t; ++q) cum += vec[q] * m_.dt;
    return cum <= env[3][t] + kTol * (1.0 + std::abs(env[3][t]));
  }

  bool evaluate(double& objective) {
    bool ok = true;
    objective = 0.0;
    // Batteries: state of charge, fleet size.
    for (std::size_t b = 0; b < m_.B; ++b) {
      double charged = 0.0, used = 0.0, fleet = 0.0;
      for (std::size_t t = 0; t < m_.T; ++t) {
        double p_t = 0.0, busy = 0.0;
        for (std::size_t l = 0; l < m_.L; ++l) {
          const double p = p_.charging(b, t, l);
          if (p < -kTol) ok = false;
          if (t == 0 && std::abs(p) > kTol) ok = false;
          p_t += p;
          busy += m_.per_kwh(b, l) * p;
        }
        const double e_t = energy_at(b, t);
        for (std::size_t d = 0; d < m_.D; ++d)
          busy += m_.moving(d, t) * p_.trips(b, d, t);
        // Upper: charged through t <= used through t-1.
        if (charged + p_t > used + kTol) ok = false;
        // Lower: charged through t-1 >= used through t - battery * fleet.
        fleet = std::max({fleet, busy, (used + e_t - charged) / m_.battery[b]});
        charged += p_t;
        used += e_t;
      }
      if (std::abs(charged - used) > kTol) ok = false;
      p_.fleet[b] = fleet;
      objective += m_.fleet_cost[b] * fleet;
    }
    for (std::size_t l = 0; l < m_.L; ++l) {
      double n = 0.0;
      for (std::size_t t = 0; t < m_.T; ++t) {
        double v = 0.0;
        for (std::size_t b = 0; b < m_.B; ++b)
          v += m_.per_kwh(b, l) * p_.charging(b, t, l);
        n = std::max(n, v);
      }
      p_.chargers[l] = n;
      objective += m_.charger_cost[l] * n;
    }
    for (std::size_t b = 0; b < m_.B; ++b)
      for (std::size_t d = 0; d < m_.D; ++d)
        for (std::size_t t = 0; t < m_.T; ++t)
          objective += m_.maintenance(d, t) * p_.trips(b, d, t);
    // Private envelopes.
    for (int g = 0; g < 2; ++g) {
      const auto& vec = g == 0 ? p_.automated : p_.human;
      const auto& env = g == 0 ? m_.env_a : m_.env_h;
      double cum = 0.0;
      for (std::size_t t = 0; t < m_.T; ++t) {
        cum += vec[t] * m_.dt;
        if (!within(vec[t], env[0][t], env[1][t])) ok = false;
        if (!within(cum, env[2][t], env[3][t])) ok = false;
      }
    }
    // Peak demand and merit-order generation.
    double peak = 0.0;
    for (std::size_t t = 0; t < m_.T; ++t) {
      double charge = 0.0;
      for (std::size_t b = 0; b < m_.B; ++b)
        for (std::size_t l = 0; l < m_.L; ++l) charge += p_.charging(b, t, l);
      const double priv = p_.automated[t] + p_.human[t];
      peak = std::max(peak, charge / m_.dt - priv - m_.private_ldv[t]);
      double load = charge + priv * m_.dt + m_.fixed_load[t];
      for (std::size_t g : m_.merit) {
        const double gen = std::clamp(load, 0.0, m_.gen_cap[g]);
        p_.generation(g, t) = gen;
        load -= gen;
        objective += m_.gen_cost[g] * gen;
      }
      if (load > kTol * (1.0 + m_.fixed_load[t])) ok = false;
    }
    p_.peak = peak;
    objective += m_.peak_cost * peak;
    return ok;
  }

  const TinyScenario& tiny_;
  Model m_;
  bool prune_;
  std::vector<Slot> slots_;
  double size_ = 0.0;
  OraclePoint p_;
};

void require_tiny(const TinyScenario& tiny) {
  const auto problems = check_tiny(tiny);
  if (!problems.empty())
    throw OracleRefusal("scenario is not tiny: " + problems.front());
}

}  // namespace

std::vector<std::string> check_tiny(const TinyScenario& tiny) {
  std::vector<std::string> out;
  const auto& dims = tiny.spec.dims;
  const auto limit = [&](bool ok, const char* what) {
    if (!ok) out.emplace_back(what);
  };
  limit(dims.num_regions() == 1, "exactly one mobility region");
  limit(dims.num_grid_regions() == 1, "exactly one grid region");
  limit(dims.num_hours >= 1 && dims.num_hours <= 4, "at most 4 hours");
  limit(dims.num_generators() >= 1 && dims.num_generators() <= 2,
        "at most 2 generators");
  const bool ldv = !dims.segment(Segment::ldv).absent();
  const bool hdv = !dims.segment(Segment::hdv).absent();
  limit(ldv != hdv, "exactly one vehicle segment");
  const auto& sets = dims.segment(ldv ? Segment::ldv : Segment::hdv);
  limit(sets.batteries.size() <= 2, "at most 2 battery types");
  limit(sets.chargers.size() <= 2, "at most 2 charger levels");
  limit(sets.distances.size() <= 2, "at most 2 distance bins");
  limit(tiny.grid_step > 0.0, "grid step > 0");
  limit(tiny.split_levels >= 1, "split levels >= 1");
  for (const auto& v : validate_scenario(tiny.spec).violations)
    out.push_back(v.rule + ": " + v.detail);
  return out;
}

OracleResult enumerate_optimum(const TinyScenario& tiny) {
  require_tiny(tiny);
  Search search(tiny, true);
  OracleResult best;
  best.objective = std::numeric_limits<double>::infinity();
  best.search_points = search.size();
  search.run([&](const OraclePoint& p, bool ok, double obj) {
    if (!ok) return;
    ++best.feasible_points;
    if (obj < best.objective) {
      best.objective = obj;
      best.point = p;
    }
  });
  if (best.feasible_points == 0)
    throw OracleRefusal("no feasible point on the search grid");
  best.slack = search.slack();
  return best;
}

void visit_search_points(
    const TinyScenario& tiny,
    const std::function<void(const OraclePoint&, bool, double)>& visit) {
  require_tiny(tiny);
  Search search(tiny, false);
  search.run(visit);
}

std::vector<double> to_program_point(const OraclePoint& p,
                                     const VariableIndex& index,
                                     const ScenarioSpec& spec) {
  std::vector<double> x(index.num_columns(), 0.0);
  const Segment s = present_segment(spec);
  const auto& sets = spec.dims.segment(s);
  const std::size_t T = spec.dims.num_hours;
  for (std::size_t b = 0; b < sets.batteries.size(); ++b) {
    for (std::size_t d = 0; d < sets.distances.size(); ++d)
      for (std::size_t t = 0; t < T; ++t)
        x[index.trips(s, b, d, t, 0)] = p.trips(b, d, t);
    for (std::size_t t = 0; t < T; ++t)
      for (std::size_t l = 0; l < sets.chargers.size(); ++l)
        x[index.charging(s, b, t, l, 0)] = p.charging(b, t, l);
    x[index.fleet(s, b, 0)] = p.fleet[b];
  }
  for (std::size_t l = 0; l < sets.chargers.size(); ++l)
    x[index.chargers(s, l, 0)] = p.chargers[l];
  x[index.peak(0)] = p.peak;
  for (std::size_t t = 0; t < T; ++t) {
    x[index.automated(t, 0)] = p.automated[t];
    x[index.human(t, 0)] = p.human[t];
    for (std::size_t g = 0; g < spec.dims.num_generators(); ++g)
      x[index.generation(g, t)] = p.generation(g, t);
  }
  return x;
}

Comparison compare(const OracleResult& oracle, const SparseProgram& program,
                   const Solution& pipeline, double tol) {
  Comparison c;
  c.slack = oracle.slack;
  c.gap = pipeline.objective - oracle.objective;
  c.pipeline_feasible =
      pipeline.x.size() == program.num_cols() &&
      row_residuals(program, pipeline.x).feasible(tol);
  c.pass = c.pipeline_feasible &&
           pipeline.objective <=
               oracle.objective + oracle.slack + tol * (1.0 + std::abs(oracle.objective));
  return c;
}

}  // namespace gem
