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

#include "gem/variable_index.hpp"

#include <algorithm>
#include <stdexcept>

namespace gem {

std::string_view column_family_name(ColumnFamily f) {
  switch (f) {
    case ColumnFamily::trips_served: return "D";
    case ColumnFamily::idle_vehicles: return "Vi";
    case ColumnFamily::fleet_size: return "Vstar";
    case ColumnFamily::chargers: return "N";
    case ColumnFamily::charging_energy: return "P";
    case ColumnFamily::peak_demand: return "Pmax";
    case ColumnFamily::automated_power: return "Phpriv";
    case ColumnFamily::human_power: return "Phhdr";
    case ColumnFamily::generation: return "G";
    case ColumnFamily::transmission: return "T";
    case ColumnFamily::energy: return "E";
    case ColumnFamily::moving_vehicles: return "Vm";
    case ColumnFamily::charging_vehicles: return "Vc";
  }
  return "?";
}

std::size_t VariableIndex::add_family(ColumnFamily family,
                                      std::optional<Segment> segment,
                                      std::vector<std::size_t> extents) {
  if (has(family, segment))
    throw std::logic_error("VariableIndex: family registered twice");
  Block b{family, segment, std::move(extents), num_columns_, 1};
  for (auto e : b.extents) b.size *= e;
  num_columns_ += b.size;
  blocks_.push_back(std::move(b));
  return blocks_.back().offset;
}

bool VariableIndex::has(ColumnFamily family,
                        std::optional<Segment> segment) const {
  return std::any_of(blocks_.begin(), blocks_.end(), [&](const Block& b) {
    return b.family == family && b.segment == segment;
  });
}

const VariableIndex::Block& VariableIndex::block(
    ColumnFamily family, std::optional<Segment> segment) const {
  for (const auto& b : blocks_)
    if (b.family == family && b.segment == segment) return b;
  throw std::out_of_range("VariableIndex: unknown family " +
                          std::string(column_family_name(family)));
}

std::size_t VariableIndex::column(
    ColumnFamily family, std::optional<Segment> segment,
    std::initializer_list<std::size_t> subscripts) const {
  const Block& b = block(family, segment);
  if (subscripts.size() != b.extents.size())
    throw std::out_of_range("VariableIndex: wrong subscript count");
  std::size_t flat = 0, axis = 0;
  for (auto s : subscripts) {
    if (s >= b.extents[axis])
      throw std::out_of_range("VariableIndex: subscript out of range");
    flat = flat * b.extents[axis] + s;
    ++axis;
  }
  return b.offset + flat;
}

ColumnOwner VariableIndex::owner(std::size_t col) const {
  for (const auto& b : blocks_) {
    if (col >= b.offset && col < b.offset + b.size) {
      ColumnOwner o{b.family, b.segment,
                    std::vector<std::size_t>(b.extents.size(), 0)};
      std::size_t flat = col - b.offset;
      for (std::size_t a = b.extents.size(); a-- > 0;) {
        o.subscripts[a] = flat % b.extents[a];
        flat /= b.extents[a];
      }
      return o;
    }
  }
  throw std::out_of_range("VariableIndex: column out of range");
}

std::string VariableIndex::column_name(std::size_t col,
                                       const DimensionSets& dims) const {
  const auto o = owner(col);
  std::string name(column_family_name(o.family));
  if (o.segment) {
    name += ".";
    name += segment_name(*o.segment);
  }
  const SegmentSets* sets = o.segment ? &dims.segment(*o.segment) : nullptr;
  std::vector<std::string> parts;
  auto hour = [](std::size_t t) { return "t" + std::to_string(t); };
  const auto& s = o.subscripts;
  switch (o.family) {
    case ColumnFamily::trips_served:
    case ColumnFamily::energy:
    case ColumnFamily::moving_vehicles:
      parts = {sets->batteries[s[0]], sets->distances[s[1]], hour(s[2]),
               dims.mobility_regions[s[3]]};
      break;
    case ColumnFamily::idle_vehicles:
      parts = {sets->batteries[s[0]], hour(s[1]), dims.mobility_regions[s[2]]};
      break;
    case ColumnFamily::fleet_size:
      parts = {sets->batteries[s[0]], dims.mobility_regions[s[1]]};
      break;
    case ColumnFamily::chargers:
      parts = {sets->chargers[s[0]], dims.mobility_regions[s[1]]};
      break;
    case ColumnFamily::charging_energy:
    case ColumnFamily::charging_vehicles:
      parts = {sets->batteries[s[0]], hour(s[1]), sets->chargers[s[2]],
               dims.mobility_regions[s[3]]};
      break;
    case ColumnFamily::peak_demand:
      parts = {dims.mobility_regions[s[0]]};
      break;
    case ColumnFamily::automated_power:
    case ColumnFamily::human_power:
      parts = {hour(s[0]), dims.mobility_regions[s[1]]};
      break;
    case ColumnFamily::generation:
      parts = {dims.generators[s[0]], hour(s[1])};
      break;
    case ColumnFamily::transmission: {
      auto [from, to] = link_endpoints(s[0], dims.num_grid_regions());
      parts = {dims.grid_regions[from], hour(s[1]), dims.grid_regions[to]};
      break;
    }
  }
  for (const auto& p : parts) name += "." + p;
  return name;
}

std::size_t link_index(std::size_t from, std::size_t to,
                       std::size_t num_grid_regions) {
  if (from == to || from >= num_grid_regions || to >= num_grid_regions)
    throw std::out_of_range("link_index: invalid link");
  return from * (num_grid_regions - 1) + (to < from ? to : to - 1);
}

std::pair<std::size_t, std::size_t> link_endpoints(
    std::size_t link, std::size_t num_grid_regions) {
  const std::size_t from = link / (num_grid_regions - 1);
  const std::size_t k = link % (num_grid_regions - 1);
  return {from, k < from ? k : k + 1};
}

VariableIndex make_variable_index(const DimensionSets& dims,
                                  bool explicit_intermediates) {
  VariableIndex index;
  const std::size_t T = dims.num_hours, R = dims.num_regions();
  auto sizes = [&](Segment s) {
    const auto& sets = dims.segment(s);
    return std::array<std::size_t, 3>{sets.batteries.size(),
                                      sets.chargers.size(),
                                      sets.distances.size()};
  };
  for (Segment s : kSegments)
    index.add_family(ColumnFamily::trips_served, s,
                     {sizes(s)[0], sizes(s)[2], T, R});
  for (Segment s : kSegments)
    index.add_family(ColumnFamily::idle_vehicles, s, {sizes(s)[0], T, R});
  for (Segment s : kSegments)
    index.add_family(ColumnFamily::fleet_size, s, {sizes(s)[0], R});
  for (Segment s : kSegments)
    index.add_family(ColumnFamily::chargers, s, {sizes(s)[1], R});
  for (Segment s : kSegments)
    index.add_family(ColumnFamily::charging_energy, s,
                     {sizes(s)[0], T, sizes(s)[1], R});
  index.add_family(ColumnFamily::peak_demand, std::nullopt, {R});
  index.add_family(ColumnFamily::automated_power, std::nullopt, {T, R});
  index.add_family(ColumnFamily::human_power, std::nullopt, {T, R});
  index.add_family(ColumnFamily::generation, std::nullopt,
                   {dims.num_generators(), T});
  index.add_family(ColumnFamily::transmission, std::nullopt,
                   {dims.num_links(), T});
  if (explicit_intermediates) {
    for (Segment s : kSegments)
      index.add_family(ColumnFamily::energy, s,
                       {sizes(s)[0], sizes(s)[2], T, R});
    for (Segment s : kSegments)
      index.add_family(ColumnFamily::moving_vehicles, s,
                       {sizes(s)[0], sizes(s)[2], T, R});
    for (Segment s : kSegments)
      index.add_family(ColumnFamily::charging_vehicles, s,
                       {sizes(s)[0], T, sizes(s)[1], R});
  }
  return index;
}

}  // namespace gem
