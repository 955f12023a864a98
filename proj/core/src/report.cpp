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

#include "gem/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include "gem/csv.hpp"
#include "gem/fleet_equations.hpp"
#include "gem/split.hpp"

namespace gem {
namespace {

std::string_view load_category(Segment s) {
  return s == Segment::hdv ? "shaev" : "ldv_fleet";
}

class TableWriter {
 public:
  TableWriter(const std::filesystem::path& path, std::string_view family,
              std::string_view units, std::string_view header)
      : out_(path) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    out_ << "# family=" << family << " units=" << units << '\n'
         << header << '\n';
  }
  template <class... Fields>
  void row(const Fields&... f) {
    bool first = true;
    ((out_ << (first ? "" : ",") << field(f), first = false), ...);
    out_ << '\n';
  }

 private:
  static std::string field(double v) { return format_double(v); }
  static std::string field(std::size_t v) { return std::to_string(v); }
  static std::string field(int v) { return std::to_string(v); }
  static std::string field(std::string_view v) { return std::string(v); }
  static std::string field(const std::string& v) { return v; }
  static std::string field(const char* v) { return v; }

  std::ofstream out_;
};

}  // namespace

Intermediates reconstruct_intermediates(const Solution& solution,
                                        const VariableIndex& index,
                                        const ScenarioSpec& spec) {
  const auto& dims = spec.dims;
  const std::size_t T = dims.num_hours, R = dims.num_regions();
  const auto& x = solution.x;
  Intermediates out;
  for (Segment s : kSegments) {
    const auto& sets = dims.segment(s);
    const std::size_t B = sets.batteries.size(), L = sets.chargers.size(),
                      D = sets.distances.size();
    auto& seg = out[index_of(s)];
    seg.energy = DenseTable<4>({B, D, T, R});
    seg.moving = DenseTable<4>({B, D, T, R});
    seg.charging = DenseTable<4>({B, T, L, R});
    seg.idle = Table3({B, T, R});
    for (std::size_t b = 0; b < B; ++b)
      for (std::size_t t = 0; t < T; ++t)
        for (std::size_t r = 0; r < R; ++r) {
          for (std::size_t d = 0; d < D; ++d) {
            const double trips = x[index.trips(s, b, d, t, r)];
            seg.energy(b, d, t, r) =
                energy_to_meet_demand(spec, s, b, d, r, trips);
            seg.moving(b, d, t, r) = vehicles_moving(spec, s, d, t, r, trips);
          }
          for (std::size_t l = 0; l < L; ++l)
            seg.charging(b, t, l, r) = vehicles_charging(
                spec, s, b, l, r, x[index.charging(s, b, t, l, r)]);
          seg.idle(b, t, r) = x[index.idle(s, b, t, r)];
        }
  }
  return out;
}

double net_fleet_demand(const std::vector<double>& x,
                        const VariableIndex& index, const ScenarioSpec& spec,
                        std::size_t t, std::size_t r) {
  double p = 0.0;
  for (Segment s : kSegments) {
    const auto& sets = spec.dims.segment(s);
    for (std::size_t b = 0; b < sets.batteries.size(); ++b)
      for (std::size_t l = 0; l < sets.chargers.size(); ++l)
        p += x[index.charging(s, b, t, l, r)];
  }
  return p / spec.dims.dt_hours - x[index.automated(t, r)] -
         x[index.human(t, r)] - spec.loads.private_ldv(t, r);
}

ReportBundle make_report(const ScenarioSpec& spec, double shared_fraction,
                         const CostCoefficients& costs,
                         const AssembledProgram& assembled,
                         const Solution& solution,
                         const SolveSettings& settings) {
  const auto& dims = spec.dims;
  const auto& index = assembled.index;
  const auto& program = assembled.program;
  const std::size_t T = dims.num_hours, R = dims.num_regions();
  const double dt = dims.dt_hours;
  const auto& x = solution.x;
  if (x.size() != program.num_cols())
    throw std::invalid_argument("make_report: solution does not match program");

  ReportBundle rep;
  rep.shared_fraction = shared_fraction;
  rep.status = solution.status;
  rep.solution = solution;
  rep.certificate = certify(program, solution, settings);

  for (std::size_t j = 0; j < program.num_cols(); ++j) {
    const double v = program.objective[j] * x[j];
    switch (index.owner(j).family) {
      case ColumnFamily::trips_served: rep.costs.maintenance += v; break;
      case ColumnFamily::peak_demand: rep.costs.demand_charge += v; break;
      case ColumnFamily::chargers: rep.costs.infrastructure += v; break;
      case ColumnFamily::fleet_size: rep.costs.fleet += v; break;
      case ColumnFamily::generation: rep.costs.generation += v; break;
      case ColumnFamily::transmission: rep.costs.transmission += v; break;
      default: break;
    }
  }

  // Optimized assets.
  for (Segment s : kSegments) {
    const auto& sets = dims.segment(s);
    for (std::size_t l = 0; l < sets.chargers.size(); ++l)
      for (std::size_t r = 0; r < R; ++r) {
        const double n = x[index.chargers(s, l, r)];
        rep.chargers.push_back({std::string(segment_name(s)), sets.chargers[l],
                                r, "optimized", n});
        rep.charger_count += n;
      }
    for (std::size_t b = 0; b < sets.batteries.size(); ++b)
      for (std::size_t r = 0; r < R; ++r) {
        const double v = x[index.fleet(s, b, r)];
        rep.fleet.push_back({std::string(segment_name(s)), sets.batteries[b],
                             r, "optimized", v});
        rep.fleet_size += v;
      }
  }

  // Private trucks: one charger per truck, priced like the shared fleet.
  const auto& hdv_sets = dims.segment(Segment::hdv);
  if (!hdv_sets.absent()) {
    const std::size_t pb = spec.split.battery, pl = spec.split.charger;
    for (auto [group, name] :
         {std::pair{PrivateGroup::automated, "private_automated"},
          std::pair{PrivateGroup::human, "private_human"}}) {
      const auto trucks = private_fleet_size(spec, group);
      for (std::size_t r = 0; r < R; ++r) {
        rep.fleet.push_back({"hdv", hdv_sets.batteries[pb], r, name,
                             trucks[r]});
        rep.chargers.push_back({"hdv", hdv_sets.chargers[pl], r, name,
                                trucks[r]});
        rep.fleet_size += trucks[r];
        rep.charger_count += trucks[r];
        rep.costs.private_fleet +=
            trucks[r] * costs.fleet_weight(spec, Segment::hdv, pb, r);
        rep.costs.private_infrastructure +=
            trucks[r] * costs.charger_weight(spec, Segment::hdv, pl);
      }
    }
    const auto& hdv = spec.segment(Segment::hdv);
    for (const Table3* trips : {&spec.private_hdv.automated_trips,
                                &spec.private_hdv.human_trips})
      for (std::size_t k = 0; k < trips->size(); ++k)
        rep.costs.private_maintenance +=
            hdv.fleet.maintenance_per_mile * trips->values()[k] *
            hdv.demand.distance[trips->unravel(k)[0]];
  }

  // Load profile and peaks.
  const std::string private_charger =
      hdv_sets.absent() ? "-" : hdv_sets.chargers[spec.split.charger];
  std::vector<double> system(T, 0.0);
  for (std::size_t r = 0; r < R; ++r) {
    PeakRow peak{r, x[index.peak(r)], 0.0, 0.0};
    for (std::size_t t = 0; t < T; ++t) {
      double gross = 0.0;
      for (Segment s : kSegments) {
        const auto& sets = dims.segment(s);
        for (std::size_t l = 0; l < sets.chargers.size(); ++l) {
          double kwh = 0.0;
          for (std::size_t b = 0; b < sets.batteries.size(); ++b)
            kwh += x[index.charging(s, b, t, l, r)];
          rep.load_profile.push_back(
              {t, r, std::string(load_category(s)), sets.chargers[l], kwh / dt});
          gross += kwh / dt;
        }
      }
      const double pa = x[index.automated(t, r)], ph = x[index.human(t, r)];
      const double pp = spec.loads.private_ldv(t, r);
      rep.load_profile.push_back({t, r, "private_automated", private_charger, pa});
      rep.load_profile.push_back({t, r, "private_human", private_charger, ph});
      rep.load_profile.push_back({t, r, "private_ldv", "-", pp});
      gross += pa + ph + pp;
      system[t] += gross;
      peak.gross_peak_kw = std::max(peak.gross_peak_kw, gross);
      peak.net_peak_kw =
          std::max(peak.net_peak_kw, net_fleet_demand(x, index, spec, t, r));
    }
    rep.peaks.push_back(peak);
  }
  for (double v : system) rep.system_peak_kw = std::max(rep.system_peak_kw, v);

  rep.dispatch = extract_dispatch(solution, index, spec);
  rep.merit_violations = verify_merit_order(rep.dispatch, spec);
  rep.intermediates = reconstruct_intermediates(solution, index, spec);

  if (solution.status != SolveStatus::optimal) {
    const auto res = row_residuals(program, x);
    std::map<RowFamily, double> scaled;
    for (std::size_t i = 0; i < program.num_rows(); ++i) {
      const double v = res.violation[i] / (1.0 + std::abs(program.rhs[i]));
      auto& s = scaled[program.labels[i].family];
      s = std::max(s, v);
    }
    for (auto [f, v] : scaled)
      if (v > 0.0) rep.violated_families.emplace_back(f, v);
    std::stable_sort(rep.violated_families.begin(), rep.violated_families.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
  }
  return rep;
}

void write_report(const ReportBundle& rep, const ScenarioSpec& spec,
                  const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto& dims = spec.dims;
  const auto region = [&](std::size_t r) { return dims.mobility_regions[r]; };

  {
    TableWriter w(dir / "load_profile.csv", "charging_load_profile", "kW",
                  "hour,region,category,charger,kw");
    for (const auto& l : rep.load_profile)
      w.row(l.hour, region(l.region), l.category, l.charger, l.kw);
  }
  {
    TableWriter w(dir / "chargers.csv", "charger_count", "chargers",
                  "segment,charger,region,origin,count");
    for (const auto& a : rep.chargers)
      w.row(a.segment, a.type, region(a.region), a.origin, a.count);
  }
  {
    TableWriter w(dir / "fleet_size.csv", "fleet_size", "vehicles",
                  "segment,battery,region,origin,vehicles");
    for (const auto& a : rep.fleet)
      w.row(a.segment, a.type, region(a.region), a.origin, a.count);
  }
  {
    TableWriter w(dir / "peak_load.csv", "peak_load", "kW",
                  "region,pmax_kw,net_peak_kw,gross_peak_kw");
    for (const auto& p : rep.peaks)
      w.row(region(p.region), p.pmax_kw, p.net_peak_kw, p.gross_peak_kw);
    w.row("ALL", "", "", rep.system_peak_kw);
  }
  {
    TableWriter w(dir / "cost_breakdown.csv", "cost_decomposition", "USD",
                  "component,usd");
    const auto& c = rep.costs;
    w.row("maintenance", c.maintenance);
    w.row("demand_charge", c.demand_charge);
    w.row("infrastructure", c.infrastructure);
    w.row("fleet", c.fleet);
    w.row("generation", c.generation);
    w.row("transmission", c.transmission);
    w.row("objective", c.objective());
    w.row("private_fleet", c.private_fleet);
    w.row("private_infrastructure", c.private_infrastructure);
    w.row("private_maintenance", c.private_maintenance);
    w.row("total", c.total());
  }
  {
    TableWriter w(dir / "dispatch.csv", "generator_dispatch", "kWh",
                  "generator,hour,kwh,capacity_kwh,state");
    for (const auto& g : rep.dispatch.generators)
      w.row(dims.generators[g.generator], g.hour, g.energy, g.capacity,
            generator_state_name(g.state));
  }
  {
    TableWriter w(dir / "grid_balance.csv", "grid_balance", "kWh;USD/kWh",
                  "grid_region,hour,generation_kwh,imports_kwh,exports_kwh,"
                  "load_kwh,surplus_kwh,price");
    for (const auto& b : rep.dispatch.regions)
      w.row(dims.grid_regions[b.grid_region], b.hour, b.generation, b.imports,
            b.exports, b.load, b.surplus,
            b.price ? format_double(*b.price) : std::string("NA"));
  }
  {
    TableWriter w(dir / "flows.csv", "transmission_flow", "kWh",
                  "from,to,hour,kwh,capacity_kwh,binding");
    for (const auto& f : rep.dispatch.flows)
      w.row(dims.grid_regions[f.from], dims.grid_regions[f.to], f.hour, f.flow,
            f.capacity, f.binding ? 1 : 0);
  }
  {
    TableWriter w(dir / "intermediates.csv", "fleet_intermediates",
                  "E=kWh;Vm,Vc,Vi=vehicles",
                  "segment,quantity,battery,bin,hour,region,value");
    for (Segment s : kSegments) {
      const auto& sets = dims.segment(s);
      const auto& seg = rep.intermediates[index_of(s)];
      const std::string sn(segment_name(s));
      for (std::size_t k = 0; k < seg.energy.size(); ++k) {
        const auto i = seg.energy.unravel(k);
        w.row(sn, "E", sets.batteries[i[0]], sets.distances[i[1]], i[2],
              region(i[3]), seg.energy.values()[k]);
      }
      for (std::size_t k = 0; k < seg.moving.size(); ++k) {
        const auto i = seg.moving.unravel(k);
        w.row(sn, "Vm", sets.batteries[i[0]], sets.distances[i[1]], i[2],
              region(i[3]), seg.moving.values()[k]);
      }
      for (std::size_t k = 0; k < seg.charging.size(); ++k) {
        const auto i = seg.charging.unravel(k);
        w.row(sn, "Vc", sets.batteries[i[0]], sets.chargers[i[2]], i[1],
              region(i[3]), seg.charging.values()[k]);
      }
      for (std::size_t k = 0; k < seg.idle.size(); ++k) {
        const auto i = seg.idle.unravel(k);
        w.row(sn, "Vi", sets.batteries[i[0]], "-", i[1], region(i[2]),
              seg.idle.values()[k]);
      }
    }
  }
  {
    TableWriter w(dir / "solver.csv", "solver_diagnostics", "-", "key,value");
    const auto& s = rep.solution;
    w.row("status", status_name(s.status));
    w.row("iterations", s.iterations);
    w.row("objective", s.objective);
    w.row("dual_objective", s.dual_objective);
    w.row("primal_residual", s.primal_residual);
    w.row("dual_residual", s.dual_residual);
    w.row("gap", s.gap);
    w.row("certificate", rep.certificate.pass() ? "pass" : "fail");
    w.row("merit_order_violations", rep.merit_violations.size());
    std::string msg = s.message.empty() ? std::string("-") : s.message;
    std::replace(msg.begin(), msg.end(), ',', ';');
    w.row("message", msg);
  }
  if (!rep.violated_families.empty()) {
    TableWriter w(dir / "infeasibility.csv", "violated_row_families",
                  "scaled violation", "family,max_scaled_violation");
    for (const auto& [f, v] : rep.violated_families) w.row(family_name(f), v);
  }
}

}  // namespace gem
