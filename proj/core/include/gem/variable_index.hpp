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

#ifndef GEM_VARIABLE_INDEX_HPP_
#define GEM_VARIABLE_INDEX_HPP_

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gem/scenario.hpp"

namespace gem {

enum class ColumnFamily {
  trips_served,       // D[b][d][t][r]
  idle_vehicles,      // Vi[b][t][r]
  fleet_size,         // V*[b][r]
  chargers,           // N[l][r]
  charging_energy,    // P[b][t][l][r], kWh per period
  peak_demand,        // Pmax[r], kW
  automated_power,    // private automated HDV charging [t][r], kW
  human_power,        // private human-driven HDV charging [t][r], kW
  generation,         // G[g][t], kWh per period
  transmission,       // T[link][t], kWh per period sent over link
  energy,             // E[b][d][t][r] (explicit form only)
  moving_vehicles,    // Vm[b][d][t][r] (explicit form only)
  charging_vehicles,  // Vc[b][t][l][r] (explicit form only)
};

std::string_view column_family_name(ColumnFamily f);

struct ColumnOwner {
  ColumnFamily family;
  std::optional<Segment> segment;
  std::vector<std::size_t> subscripts;
};

// Bijection between subscripted decision variables and program columns.
// Families occupy contiguous column ranges in registration order, and
// subscripts within a family are laid out row-major.
class VariableIndex {
 public:
  struct Block {
    ColumnFamily family;
    std::optional<Segment> segment;
    std::vector<std::size_t> extents;
    std::size_t offset = 0;
    std::size_t size = 0;
  };

  // Registers a family and returns its first column.
  std::size_t add_family(ColumnFamily family, std::optional<Segment> segment,
                         std::vector<std::size_t> extents);

  bool has(ColumnFamily family, std::optional<Segment> segment) const;
  const Block& block(ColumnFamily family,
                     std::optional<Segment> segment = std::nullopt) const;
  // Throws std::out_of_range for unregistered families or bad subscripts.
  std::size_t column(ColumnFamily family, std::optional<Segment> segment,
                     std::initializer_list<std::size_t> subscripts) const;
  ColumnOwner owner(std::size_t col) const;
  std::size_t num_columns() const { return num_columns_; }
  const std::vector<Block>& blocks() const { return blocks_; }

  // Human-readable column name built from dimension labels.
  std::string column_name(std::size_t col, const DimensionSets& dims) const;

  std::size_t trips(Segment s, std::size_t b, std::size_t d, std::size_t t,
                    std::size_t r) const {
    return column(ColumnFamily::trips_served, s, {b, d, t, r});
  }
  std::size_t idle(Segment s, std::size_t b, std::size_t t,
                   std::size_t r) const {
    return column(ColumnFamily::idle_vehicles, s, {b, t, r});
  }
  std::size_t fleet(Segment s, std::size_t b, std::size_t r) const {
    return column(ColumnFamily::fleet_size, s, {b, r});
  }
  std::size_t chargers(Segment s, std::size_t l, std::size_t r) const {
    return column(ColumnFamily::chargers, s, {l, r});
  }
  std::size_t charging(Segment s, std::size_t b, std::size_t t, std::size_t l,
                       std::size_t r) const {
    return column(ColumnFamily::charging_energy, s, {b, t, l, r});
  }
  std::size_t peak(std::size_t r) const {
    return column(ColumnFamily::peak_demand, std::nullopt, {r});
  }
  std::size_t automated(std::size_t t, std::size_t r) const {
    return column(ColumnFamily::automated_power, std::nullopt, {t, r});
  }
  std::size_t human(std::size_t t, std::size_t r) const {
    return column(ColumnFamily::human_power, std::nullopt, {t, r});
  }
  std::size_t generation(std::size_t g, std::size_t t) const {
    return column(ColumnFamily::generation, std::nullopt, {g, t});
  }
  std::size_t transmission(std::size_t link, std::size_t t) const {
    return column(ColumnFamily::transmission, std::nullopt, {link, t});
  }

 private:
  std::vector<Block> blocks_;
  std::size_t num_columns_ = 0;
};

// Ordered link (from, to), from != to, enumerated row-major with the
// diagonal skipped.
std::size_t link_index(std::size_t from, std::size_t to,
                       std::size_t num_grid_regions);
std::pair<std::size_t, std::size_t> link_endpoints(
    std::size_t link, std::size_t num_grid_regions);

// Registers the model's column families for `dims` in canonical order.
// When `explicit_intermediates` is set, E, Vm and Vc families are added
// after the canonical ones.
VariableIndex make_variable_index(const DimensionSets& dims,
                                  bool explicit_intermediates = false);

}  // namespace gem

#endif  // GEM_VARIABLE_INDEX_HPP_
