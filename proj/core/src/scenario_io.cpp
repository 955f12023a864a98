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

#include "gem/scenario_io.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

namespace gem {
namespace {

namespace fs = std::filesystem;

enum class Axis : std::size_t {
  segment,
  battery,
  charger,
  distance,
  hour,
  region,
  grid_region,
  to_region,
  generator,
  count
};
constexpr std::size_t kAxisCount = static_cast<std::size_t>(Axis::count);
constexpr std::array<std::string_view, kAxisCount> kAxisNames{
    "segment", "battery",     "charger",   "distance", "hour",
    "region",  "grid_region", "to_region", "generator"};

using Idx = std::array<std::size_t, kAxisCount>;
std::size_t& at(Idx& idx, Axis a) { return idx[static_cast<std::size_t>(a)]; }
std::size_t at(const Idx& idx, Axis a) {
  return idx[static_cast<std::size_t>(a)];
}
Segment seg_of(const Idx& idx) { return static_cast<Segment>(at(idx, Axis::segment)); }

struct ParamDef {
  std::string name;
  std::vector<Axis> axes;
  std::function<double&(ScenarioSpec&, const Idx&)> ref;
  bool hdv_only = false;  // segment implied, no segment column
};

struct FileDef {
  std::string_view file;
  std::vector<Axis> columns;
  std::vector<ParamDef> params;
};

#define SEG(s, i) (s).segment(seg_of(i))

std::vector<FileDef> registry() {
  using A = Axis;
  std::vector<FileDef> files;

  files.push_back(
      {"fleet.csv",
       {A::segment, A::battery, A::region},
       {
           {"battery_kwh", {A::segment, A::battery},
            [](ScenarioSpec& s, const Idx& i) -> double& {
              return SEG(s, i).fleet.battery_kwh[at(i, A::battery)];
            }},
           {"eta", {A::segment, A::battery},
            [](ScenarioSpec& s, const Idx& i) -> double& {
              return SEG(s, i).fleet.efficiency[at(i, A::battery)];
            }},
           {"beta_v", {A::segment},
            [](ScenarioSpec& s, const Idx& i) -> double& {
              return SEG(s, i).fleet.maintenance_per_mile;
            }},
           {"vehicle_capital", {A::segment},
            [](ScenarioSpec& s, const Idx& i) -> double& {
              return SEG(s, i).fleet.vehicle_capital;
            }},
           {"vehicle_om", {A::segment},
            [](ScenarioSpec& s, const Idx& i) -> double& {
              return SEG(s, i).fleet.vehicle_fixed_om;
            }},
           {"vehicle_life", {A::segment},
            [](ScenarioSpec& s, const Idx& i) -> double& {
              return SEG(s, i).fleet.vehicle_lifetime;
            }},
           {"battery_capital", {A::segment},
            [](ScenarioSpec& s, const Idx& i) -> double& {
              return SEG(s, i).fleet.battery_capital;
            }},
           {"battery_life", {A::segment},
            [](ScenarioSpec& s, const Idx& i) -> double& {
              return SEG(s, i).fleet.battery_lifetime;
            }},
           {"psi_f", {A::segment, A::region},
            [](ScenarioSpec& s, const Idx& i) -> double& {
              return SEG(s, i).fleet.fleet_mismatch[at(i, A::region)];
            }},
           {"psi_b", {A::segment, A::region},
            [](ScenarioSpec& s, const Idx& i) -> double& {
              return SEG(s, i).fleet.battery_mismatch[at(i, A::region)];
            }},
       }});

  files.push_back(
      {"chargers.csv",
       {A::segment, A::battery, A::charger, A::region},
       {
           {"gamma", {A::segment, A::charger},
            [](ScenarioSpec& s, const Idx& i) -> double& {
              return SEG(s, i).chargers.power_kw[at(i, A::charger)];
            }},
           {"charger_capital", {A::segment, A::charger},
            [](ScenarioSpec& s, const Idx& i) -> double& {
              return SEG(s, i).chargers.capital_per_kw[at(i, A::charger)];
            }},
           {"charger_life", {A::segment, A::charger},
            [](ScenarioSpec& s, const Idx& i) -> double& {
              return SEG(s, i).chargers.lifetime[at(i, A::charger)];
            }},
           {"psi_chdt", {A::segment, A::battery, A::charger, A::region},
            [](ScenarioSpec& s, const Idx& i) -> double& {
              return SEG(s, i).chargers.deadhead_time(
                  at(i, A::battery), at(i, A::charger), at(i, A::region));
            }},
       }});

  files.push_back(
      {"demand.csv",
       {A::segment, A::distance, A::hour, A::region},
       {
           {"trips", {A::segment, A::distance, A::hour, A::region},
            [](ScenarioSpec& s, const Idx& i) -> double& {
              return SEG(s, i).demand.trips(at(i, A::distance), at(i, A::hour),
                                            at(i, A::region));
            }},
           {"speed", {A::segment, A::distance, A::hour, A::region},
            [](ScenarioSpec& s, const Idx& i) -> double& {
              return SEG(s, i).demand.speed(at(i, A::distance), at(i, A::hour),
                                            at(i, A::region));
            }},
           {"rho", {A::segment, A::distance},
            [](ScenarioSpec& s, const Idx& i) -> double& {
              return SEG(s, i).demand.distance[at(i, A::distance)];
            }},
           {"sigma", {A::segment, A::distance},
            [](ScenarioSpec& s, const Idx& i) -> double& {
              return SEG(s, i).demand.sharing[at(i, A::distance)];
            }},
           {"psi_chdd", {A::segment, A::region},
            [](ScenarioSpec& s, const Idx& i) -> double& {
              return SEG(s, i).demand.charge_deadhead_distance[at(i, A::region)];
            }},
           {"psi_cdd", {A::segment, A::region},
            [](ScenarioSpec& s, const Idx& i) -> double& {
              return SEG(s, i)
                  .demand.customer_deadhead_distance[at(i, A::region)];
            }},
           {"psi_cdt", {A::segment, A::region},
            [](ScenarioSpec& s, const Idx& i) -> double& {
              return SEG(s, i).demand.customer_deadhead_time[at(i, A::region)];
            }},
           {"private_auto_trips",
            {A::distance, A::hour, A::region},
            [](ScenarioSpec& s, const Idx& i) -> double& {
              return s.private_hdv.automated_trips(
                  at(i, A::distance), at(i, A::hour), at(i, A::region));
            },
            true},
           {"private_human_trips",
            {A::distance, A::hour, A::region},
            [](ScenarioSpec& s, const Idx& i) -> double& {
              return s.private_hdv.human_trips(at(i, A::distance),
                                               at(i, A::hour), at(i, A::region));
            },
            true},
       }});

  files.push_back(
      {"grid.csv",
       {A::generator, A::grid_region, A::to_region, A::hour, A::region},
       {
           {"gen_cost", {A::generator},
            [](ScenarioSpec& s, const Idx& i) -> double& {
              return s.grid.generator_cost[at(i, A::generator)];
            }},
           {"gen_capacity", {A::generator},
            [](ScenarioSpec& s, const Idx& i) -> double& {
              return s.grid.generator_capacity[at(i, A::generator)];
            }},
           {"trans_cost", {A::grid_region, A::to_region, A::hour},
            [](ScenarioSpec& s, const Idx& i) -> double& {
              return s.grid.transmission_cost(
                  at(i, A::grid_region), at(i, A::to_region), at(i, A::hour));
            }},
           {"trans_capacity", {A::grid_region, A::to_region},
            [](ScenarioSpec& s, const Idx& i) -> double& {
              return s.grid.transmission_capacity(at(i, A::grid_region),
                                                  at(i, A::to_region));
            }},
           {"demand_charge", {A::region},
            [](ScenarioSpec& s, const Idx& i) -> double& {
              return s.grid.demand_charge[at(i, A::region)];
            }},
       }});

  auto envelope_params = [](std::string_view prefix, auto member) {
    std::vector<ParamDef> out;
    const std::array<std::pair<std::string_view, Table2 ChargingEnvelope::*>,
                     4>
        fields{{{"_p_min", &ChargingEnvelope::power_min},
                {"_p_max", &ChargingEnvelope::power_max},
                {"_e_min", &ChargingEnvelope::energy_min},
                {"_e_max", &ChargingEnvelope::energy_max}}};
    for (const auto& [suffix, field] : fields) {
      out.push_back({std::string(prefix) + std::string(suffix),
                     {Axis::hour, Axis::region},
                     [member, field](ScenarioSpec& s, const Idx& i) -> double& {
                       return (s.loads.*member.*field)(at(i, Axis::hour),
                                                       at(i, Axis::region));
                     }});
    }
    return out;
  };

  FileDef loads{"exogenous_loads.csv",
                {A::hour, A::region, A::grid_region},
                {
                    {"p_other", {A::hour, A::grid_region},
                     [](ScenarioSpec& s, const Idx& i) -> double& {
                       return s.loads.other(at(i, A::hour),
                                            at(i, A::grid_region));
                     }},
                    {"p_private", {A::hour, A::region},
                     [](ScenarioSpec& s, const Idx& i) -> double& {
                       return s.loads.private_ldv(at(i, A::hour),
                                                  at(i, A::region));
                     }},
                }};
  for (auto& p : envelope_params("hpriv", &ExogenousLoads::hdv_automated))
    loads.params.push_back(std::move(p));
  for (auto& p : envelope_params("hhdr", &ExogenousLoads::hdv_human))
    loads.params.push_back(std::move(p));
  files.push_back(std::move(loads));
  return files;
}

#undef SEG

const std::vector<FileDef>& files() {
  static const std::vector<FileDef> kFiles = registry();
  return kFiles;
}

// Members of an axis, given the segment already chosen in `idx`.
const std::vector<std::string>* axis_labels(const ScenarioSpec& s, Axis a,
                                            const Idx& idx) {
  const auto& d = s.dims;
  switch (a) {
    case Axis::battery:
      return &d.segment(seg_of(idx)).batteries;
    case Axis::charger:
      return &d.segment(seg_of(idx)).chargers;
    case Axis::distance:
      return &d.segment(seg_of(idx)).distances;
    case Axis::region:
      return &d.mobility_regions;
    case Axis::grid_region:
    case Axis::to_region:
      return &d.grid_regions;
    case Axis::generator:
      return &d.generators;
    default:
      return nullptr;
  }
}

std::size_t axis_size(const ScenarioSpec& s, Axis a, const Idx& idx) {
  if (a == Axis::hour) return s.dims.num_hours;
  if (a == Axis::segment) return kSegments.size();
  return axis_labels(s, a, idx)->size();
}

std::optional<std::size_t> find_label(const std::vector<std::string>& labels,
                                      std::string_view label) {
  for (std::size_t k = 0; k < labels.size(); ++k)
    if (labels[k] == label) return k;
  return std::nullopt;
}

std::map<std::string, std::string> read_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      std::ostringstream os;
      os << path.string() << ":" << line_no << ": expected key = value";
      throw ParseError(os.str());
    }
    kv[trim(std::string_view(t).substr(0, eq))] =
        trim(std::string_view(t).substr(eq + 1));
  }
  return kv;
}

void read_dimensions(const fs::path& path, DimensionSets& dims) {
  const auto table = read_csv(path);
  const auto c_set = table.column("set"), c_label = table.column("label"),
             c_parent = table.column("parent");
  if (c_set == std::string::npos || c_label == std::string::npos ||
      c_parent == std::string::npos)
    throw ParseError(path.string() + ": header must be set,label,parent");

  std::vector<std::string> region_parent, generator_parent;
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    const auto& row = table.rows[k];
    const auto& set = row[c_set];
    const auto& label = row[c_label];
    if (label.empty()) {
      std::ostringstream os;
      os << path.string() << ":" << table.line_numbers[k] << ": empty label";
      throw ParseError(os.str());
    }
    if (set == "mobility_region") {
      dims.mobility_regions.push_back(label);
      region_parent.push_back(row[c_parent]);
    } else if (set == "grid_region") {
      dims.grid_regions.push_back(label);
    } else if (set == "generator") {
      dims.generators.push_back(label);
      generator_parent.push_back(row[c_parent]);
    } else {
      bool matched = false;
      for (Segment s : kSegments) {
        const std::string p(segment_name(s));
        auto& sets = dims.segment(s);
        if (set == p + "_battery") {
          sets.batteries.push_back(label);
          matched = true;
        } else if (set == p + "_charger") {
          sets.chargers.push_back(label);
          matched = true;
        } else if (set == p + "_distance") {
          sets.distances.push_back(label);
          matched = true;
        }
      }
      if (!matched) {
        std::ostringstream os;
        os << path.string() << ":" << table.line_numbers[k]
           << ": unknown set '" << set << "'";
        throw ParseError(os.str());
      }
    }
  }
  auto resolve = [&](const std::vector<std::string>& parents,
                     std::vector<std::size_t>& out, std::string_view what) {
    out.clear();
    for (const auto& p : parents) {
      auto idx = find_label(dims.grid_regions, p);
      // Unknown parents become an out-of-range index that validation reports.
      out.push_back(idx ? *idx : dims.grid_regions.size());
      if (!idx && p.empty())
        throw ParseError(path.string() + ": " + std::string(what) +
                         " requires a parent grid_region");
    }
  };
  resolve(region_parent, dims.region_grid, "mobility_region");
  resolve(generator_parent, dims.generator_grid, "generator");
}

void apply_rows(const fs::path& path, const FileDef& def, ScenarioSpec& spec) {
  const auto table = read_csv(path);
  const auto c_param = table.column("param");
  const auto c_value = table.column("value");
  if (c_param == std::string::npos || c_value == std::string::npos)
    throw ParseError(path.string() + ": header must contain param and value");
  std::array<std::size_t, kAxisCount> col{};
  col.fill(std::string::npos);
  for (Axis a : def.columns)
    col[static_cast<std::size_t>(a)] = table.column(kAxisNames[static_cast<std::size_t>(a)]);

  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    const auto& row = table.rows[k];
    auto where = [&] {
      std::ostringstream os;
      os << path.string() << ":" << table.line_numbers[k] << ": ";
      return os.str();
    };
    const ParamDef* param = nullptr;
    for (const auto& p : def.params)
      if (p.name == row[c_param]) param = &p;
    if (!param)
      throw ParseError(where() + "unknown parameter '" + row[c_param] + "'");
    const double value = parse_double(row[c_value], param->name);

    auto cell = [&](Axis a) -> std::string {
      const auto c = col[static_cast<std::size_t>(a)];
      return c == std::string::npos ? std::string() : row[c];
    };
    for (Axis a : def.columns) {
      const bool used =
          std::find(param->axes.begin(), param->axes.end(), a) !=
          param->axes.end();
      if (!used && !cell(a).empty())
        throw ParseError(where() + "parameter '" + std::string(param->name) +
                         "' does not take a " +
                         std::string(kAxisNames[static_cast<std::size_t>(a)]));
    }

    std::vector<Segment> segments;
    if (param->hdv_only) {
      segments = {Segment::hdv};
    } else if (std::find(param->axes.begin(), param->axes.end(),
                         Axis::segment) != param->axes.end()) {
      const auto s = cell(Axis::segment);
      if (s.empty()) {
        for (Segment sg : kSegments)
          if (!spec.dims.segment(sg).absent()) segments.push_back(sg);
      } else if (s == "ldv") {
        segments = {Segment::ldv};
      } else if (s == "hdv") {
        segments = {Segment::hdv};
      } else {
        throw ParseError(where() + "unknown segment '" + s + "'");
      }
    } else {
      segments = {Segment::hdv};  // unused placeholder for segment-free params
    }

    for (Segment sg : segments) {
      Idx base{};
      at(base, Axis::segment) = index_of(sg);
      std::vector<Axis> loop_axes;
      for (Axis a : param->axes) {
        if (a == Axis::segment) continue;
        const auto text = cell(a);
        if (text.empty()) {
          loop_axes.push_back(a);
          continue;
        }
        std::size_t idx = 0;
        if (a == Axis::hour) {
          const double h = parse_double(text, "hour");
          if (h < 0 || h != std::floor(h) ||
              h >= static_cast<double>(spec.dims.num_hours))
            throw ParseError(where() + "hour '" + text + "' out of range");
          idx = static_cast<std::size_t>(h);
        } else {
          auto found = find_label(*axis_labels(spec, a, base), text);
          if (!found)
            throw ParseError(where() + "unknown " +
                             std::string(kAxisNames[static_cast<std::size_t>(a)]) +
                             " '" + text + "'");
          idx = *found;
        }
        at(base, a) = idx;
      }
      // Odometer over the broadcast axes.
      std::vector<std::size_t> sizes;
      bool empty = false;
      for (Axis a : loop_axes) {
        sizes.push_back(axis_size(spec, a, base));
        if (sizes.back() == 0) empty = true;
      }
      if (empty) continue;
      std::vector<std::size_t> pos(loop_axes.size(), 0);
      const bool has_to = std::find(param->axes.begin(), param->axes.end(),
                                    Axis::to_region) != param->axes.end();
      bool done = false;
      while (!done) {
        Idx idx = base;
        for (std::size_t q = 0; q < loop_axes.size(); ++q)
          at(idx, loop_axes[q]) = pos[q];
        if (!(has_to && at(idx, Axis::grid_region) == at(idx, Axis::to_region)))
          param->ref(spec, idx) = value;
        done = true;
        for (std::size_t q = loop_axes.size(); q-- > 0;) {
          if (++pos[q] < sizes[q]) {
            done = false;
            break;
          }
          pos[q] = 0;
        }
      }
    }
  }
}

std::string label_or_index(const ScenarioSpec& s, Axis a, const Idx& idx) {
  if (a == Axis::hour) return std::to_string(at(idx, a));
  if (a == Axis::segment) return std::string(segment_name(seg_of(idx)));
  return (*axis_labels(s, a, idx))[at(idx, a)];
}

void write_table(const fs::path& path, const FileDef& def,
                 const ScenarioSpec& spec) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string());
  out << "param";
  for (Axis a : def.columns) out << "," << kAxisNames[static_cast<std::size_t>(a)];
  out << ",value\n";
  auto& mutable_spec = const_cast<ScenarioSpec&>(spec);  // ref() is read here
  for (const auto& param : def.params) {
    std::vector<Segment> segments;
    const bool has_seg = std::find(param.axes.begin(), param.axes.end(),
                                   Axis::segment) != param.axes.end();
    if (param.hdv_only || !has_seg) {
      segments = {Segment::hdv};
    } else {
      for (Segment sg : kSegments)
        if (!spec.dims.segment(sg).absent()) segments.push_back(sg);
    }
    for (Segment sg : segments) {
      Idx base{};
      at(base, Axis::segment) = index_of(sg);
      std::vector<Axis> loop_axes;
      for (Axis a : param.axes)
        if (a != Axis::segment) loop_axes.push_back(a);
      std::vector<std::size_t> sizes;
      bool empty = false;
      for (Axis a : loop_axes) {
        sizes.push_back(axis_size(spec, a, base));
        if (sizes.back() == 0) empty = true;
      }
      if (empty) continue;
      std::vector<std::size_t> pos(loop_axes.size(), 0);
      bool done = false;
      while (!done) {
        Idx idx = base;
        for (std::size_t q = 0; q < loop_axes.size(); ++q)
          at(idx, loop_axes[q]) = pos[q];
        const bool diagonal =
            std::find(param.axes.begin(), param.axes.end(), Axis::to_region) !=
                param.axes.end() &&
            at(idx, Axis::grid_region) == at(idx, Axis::to_region);
        if (!diagonal) {
          out << param.name;
          for (Axis a : def.columns) {
            out << ",";
            const bool used =
                std::find(param.axes.begin(), param.axes.end(), a) !=
                param.axes.end();
            if (used && !(a == Axis::segment && !has_seg))
              out << label_or_index(spec, a, idx);
          }
          out << "," << format_double(param.ref(mutable_spec, idx)) << "\n";
        }
        done = true;
        for (std::size_t q = loop_axes.size(); q-- > 0;) {
          if (++pos[q] < sizes[q]) {
            done = false;
            break;
          }
          pos[q] = 0;
        }
      }
    }
  }
}

double manifest_number(const std::map<std::string, std::string>& kv,
                       const std::string& key, double fallback) {
  auto it = kv.find(key);
  return it == kv.end() ? fallback : parse_double(it->second, key);
}

}  // namespace

ScenarioSpec load_scenario(const fs::path& dir) {
  ScenarioSpec spec;
  const auto kv = read_manifest(dir / "manifest.txt");
  static const std::array<std::string_view, 10> kKeys{
      "format_version",   "n_days",           "dt_hours",
      "discount_rate",    "eta_trans",        "private_automated_share",
      "plug_start_hour",  "plug_end_hour",    "private_battery",
      "private_charger"};
  for (const auto& [k, v] : kv) {
    if (std::find(kKeys.begin(), kKeys.end(), k) == kKeys.end())
      throw ParseError((dir / "manifest.txt").string() + ": unknown key '" +
                       k + "'");
  }
  spec.grid.num_days = manifest_number(kv, "n_days", 1.0);
  spec.dims.dt_hours = manifest_number(kv, "dt_hours", 1.0);
  spec.grid.discount_rate = manifest_number(kv, "discount_rate", 0.0);
  spec.grid.transmission_efficiency = manifest_number(kv, "eta_trans", 1.0);
  spec.split.automated_share =
      manifest_number(kv, "private_automated_share", 0.5);
  spec.split.plug_start_hour = manifest_number(kv, "plug_start_hour", 18.0);
  spec.split.plug_end_hour = manifest_number(kv, "plug_end_hour", 6.0);
  if (!(spec.dims.dt_hours > 0.0) || !(spec.grid.num_days > 0.0))
    throw ParseError("manifest: n_days and dt_hours must be positive");
  const double hours = spec.grid.num_days * 24.0 / spec.dims.dt_hours;
  if (hours < 0.5 || hours > 1e6)
    throw ParseError("manifest: horizon must contain at least one period");
  spec.dims.num_hours = static_cast<std::size_t>(std::llround(hours));

  read_dimensions(dir / "dimensions.csv", spec.dims);
  allocate_tables(spec);

  const auto& hdv = spec.dims.segment(Segment::hdv);
  auto label_index = [&](const char* key, const std::vector<std::string>& set)
      -> std::size_t {
    auto it = kv.find(key);
    if (it == kv.end() || it->second.empty()) return 0;
    auto idx = find_label(set, it->second);
    if (!idx) throw ParseError(std::string("manifest: unknown ") + key);
    return *idx;
  };
  spec.split.battery = label_index("private_battery", hdv.batteries);
  spec.split.charger = label_index("private_charger", hdv.chargers);

  for (const auto& def : files()) {
    const auto path = dir / def.file;
    if (fs::exists(path)) apply_rows(path, def, spec);
  }
  return spec;
}

void save_scenario(const ScenarioSpec& spec, const fs::path& dir) {
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "manifest.txt");
    if (!out) throw ParseError("cannot write manifest in " + dir.string());
    out << "format_version = 1\n"
        << "n_days = " << format_double(spec.grid.num_days) << "\n"
        << "dt_hours = " << format_double(spec.dims.dt_hours) << "\n"
        << "discount_rate = " << format_double(spec.grid.discount_rate) << "\n"
        << "eta_trans = " << format_double(spec.grid.transmission_efficiency)
        << "\n"
        << "private_automated_share = "
        << format_double(spec.split.automated_share) << "\n"
        << "plug_start_hour = " << format_double(spec.split.plug_start_hour)
        << "\n"
        << "plug_end_hour = " << format_double(spec.split.plug_end_hour)
        << "\n";
    const auto& hdv = spec.dims.segment(Segment::hdv);
    if (!hdv.absent()) {
      out << "private_battery = " << hdv.batteries.at(spec.split.battery)
          << "\n"
          << "private_charger = " << hdv.chargers.at(spec.split.charger)
          << "\n";
    }
  }
  {
    std::ofstream out(dir / "dimensions.csv");
    const auto& d = spec.dims;
    out << "set,label,parent\n";
    for (const auto& g : d.grid_regions) out << "grid_region," << g << ",\n";
    for (std::size_t r = 0; r < d.mobility_regions.size(); ++r)
      out << "mobility_region," << d.mobility_regions[r] << ","
          << d.grid_regions.at(d.region_grid.at(r)) << "\n";
    for (std::size_t g = 0; g < d.generators.size(); ++g)
      out << "generator," << d.generators[g] << ","
          << d.grid_regions.at(d.generator_grid.at(g)) << "\n";
    for (Segment s : kSegments) {
      const std::string p(segment_name(s));
      const auto& sets = d.segment(s);
      for (const auto& b : sets.batteries) out << p << "_battery," << b << ",\n";
      for (const auto& l : sets.chargers) out << p << "_charger," << l << ",\n";
      for (const auto& x : sets.distances)
        out << p << "_distance," << x << ",\n";
    }
  }
  for (const auto& def : files()) write_table(dir / def.file, def, spec);
}

}  // namespace gem
