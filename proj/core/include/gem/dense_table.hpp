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

#ifndef GEM_DENSE_TABLE_HPP_
#define GEM_DENSE_TABLE_HPP_

#include <array>
#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace gem {

// Row-major dense array of doubles with a fixed rank. Used for every
// subscripted parameter table in a scenario (e.g. trips[d][t][r]).
template <std::size_t Rank>
class DenseTable {
 public:
  using Extents = std::array<std::size_t, Rank>;

  DenseTable() = default;
  explicit DenseTable(const Extents& extents, double fill = 0.0)
      : extents_(extents), data_(element_count(extents), fill) {}

  template <class... I>
  double& operator()(I... idx) {
    static_assert(sizeof...(I) == Rank);
    return data_[offset({static_cast<std::size_t>(idx)...})];
  }
  template <class... I>
  double operator()(I... idx) const {
    static_assert(sizeof...(I) == Rank);
    return data_[offset({static_cast<std::size_t>(idx)...})];
  }

  double& at(const Extents& idx) { return data_[offset(idx)]; }
  double at(const Extents& idx) const { return data_[offset(idx)]; }

  const Extents& extents() const { return extents_; }
  std::size_t extent(std::size_t axis) const { return extents_[axis]; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  void fill(double v) { data_.assign(data_.size(), v); }

  bool operator==(const DenseTable&) const = default;

  // Converts a flat position back to subscripts.
  Extents unravel(std::size_t flat) const {
    Extents idx{};
    for (std::size_t a = Rank; a-- > 0;) {
      idx[a] = flat % extents_[a];
      flat /= extents_[a];
    }
    return idx;
  }

 private:
  static std::size_t element_count(const Extents& e) {
    std::size_t n = 1;
    for (auto v : e) n *= v;
    return n;
  }
  std::size_t offset(const Extents& idx) const {
    std::size_t flat = 0;
    for (std::size_t a = 0; a < Rank; ++a) {
      assert(idx[a] < extents_[a]);
      flat = flat * extents_[a] + idx[a];
    }
    return flat;
  }

  Extents extents_{};
  std::vector<double> data_;
};

using Table2 = DenseTable<2>;
using Table3 = DenseTable<3>;

}  // namespace gem

#endif  // GEM_DENSE_TABLE_HPP_
