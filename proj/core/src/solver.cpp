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

#include "gem/solver.hpp"

#include <Eigen/Sparse>
#include <Eigen/OrderingMethods>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <stdexcept>

namespace gem {
namespace {

using Vec = Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<double>;

constexpr double kStepFraction = 0.9995;
constexpr double kPresolveTol = 1e-9;
constexpr int kRuizPasses = 10;
constexpr int kRefineSteps = 3;

struct Entry {
  std::size_t index;
  double value;
};

struct Metrics {
  double pobj = 0.0, dobj = 0.0, pres = 0.0, dres = 0.0, gap = 0.0;
  std::vector<double> reduced;
};

// Residuals of (x, y) against the original program.
Metrics evaluate(const SparseProgram& p, const std::vector<double>& x,
                 const std::vector<double>& y) {
  Metrics m;
  const std::size_t rows = p.num_rows(), cols = p.num_cols();
  double bnorm = 0.0, cnorm = 0.0;
  for (double r : p.rhs) bnorm = std::max(bnorm, std::abs(r));
  for (std::size_t j = 0; j < cols; ++j) {
    if (std::isfinite(p.lower[j])) bnorm = std::max(bnorm, std::abs(p.lower[j]));
    if (std::isfinite(p.upper[j])) bnorm = std::max(bnorm, std::abs(p.upper[j]));
    cnorm = std::max(cnorm, std::abs(p.objective[j]));
  }
  const auto ax = p.activities(x);
  double pviol = 0.0, dviol = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    const double r = ax[i] - p.rhs[i];
    switch (p.senses[i]) {
      case RowSense::less_equal:
        pviol = std::max(pviol, r);
        dviol = std::max(dviol, y[i]);
        break;
      case RowSense::greater_equal:
        pviol = std::max(pviol, -r);
        dviol = std::max(dviol, -y[i]);
        break;
      case RowSense::equal:
        pviol = std::max(pviol, std::abs(r));
        break;
    }
    m.dobj += p.rhs[i] * y[i];
  }
  m.reduced = p.objective;
  for (const auto& t : p.triplets) m.reduced[t.col] -= t.value * y[t.row];
  for (std::size_t j = 0; j < cols; ++j) {
    pviol = std::max({pviol, p.lower[j] - x[j], x[j] - p.upper[j]});
    const double d = m.reduced[j];
    if (d > 0.0) {
      if (std::isfinite(p.lower[j]))
        m.dobj += p.lower[j] * d;
      else
        dviol = std::max(dviol, d);
    } else if (d < 0.0) {
      if (std::isfinite(p.upper[j]))
        m.dobj += p.upper[j] * d;
      else
        dviol = std::max(dviol, -d);
    }
    m.pobj += p.objective[j] * x[j];
  }
  m.pres = pviol / (1.0 + bnorm);
  m.dres = dviol / (1.0 + cnorm);
  m.gap = std::abs(m.pobj - m.dobj) / (1.0 + std::abs(m.pobj));
  return m;
}

// Removes fixed and empty columns, empty rows and singleton rows, keeping a
// log that lets row duals be rebuilt for the original program.
class Presolve {
 public:
  Presolve(const SparseProgram& p, bool reduce)
      : p_(p),
        reduce_(reduce),
        rows_(p.num_rows()),
        cols_(p.num_cols()),
        lower_(p.lower),
        upper_(p.upper),
        rhs_(p.rhs),
        value_(p.num_cols(), 0.0),
        row_active_(p.num_rows(), 1),
        col_active_(p.num_cols(), 1),
        row_count_(p.num_rows(), 0),
        col_count_(p.num_cols(), 0),
        lower_src_(p.num_cols(), -1),
        upper_src_(p.num_cols(), -1),
        lower_coef_(p.num_cols(), 0.0),
        upper_coef_(p.num_cols(), 0.0),
        forced_by_(p.num_cols(), -1),
        forcing_min_(p.num_rows(), 0),
        sense_(p.senses) {
    for (const auto& t : p.triplets) {
      rows_[t.row].push_back({t.col, t.value});
      cols_[t.col].push_back({t.row, t.value});
      ++row_count_[t.row];
      ++col_count_[t.col];
    }
  }

  void run() {
    for (std::size_t j = 0; j < p_.num_cols(); ++j) {
      if (lower_[j] > upper_[j]) {
        fail(SolveStatus::infeasible, "column " + p_.column_names[j] +
                                          " has lower bound above upper");
        return;
      }
      queue_.push_back({false, j});
    }
    for (std::size_t i = 0; i < p_.num_rows(); ++i)
      if (row_count_[i] <= 1) queue_.push_back({true, i});
    do {
      while (!queue_.empty() && !failed()) {
        auto [is_row, k] = queue_.front();
        queue_.pop_front();
        if (is_row)
          process_row(k);
        else
          process_column(k);
      }
    } while (reduce_ && !failed() && forcing_rows());
    if (reduce_ && !failed()) merge_parallel_rows();
  }

  bool failed() const { return status_ != SolveStatus::optimal; }
  SolveStatus status() const { return status_; }
  const std::string& reason() const { return reason_; }

  std::vector<std::size_t> kept_rows() const { return active(row_active_); }
  std::vector<std::size_t> kept_cols() const { return active(col_active_); }
  const std::vector<Entry>& row(std::size_t i) const { return rows_[i]; }
  bool col_active(std::size_t j) const { return col_active_[j]; }
  double lower(std::size_t j) const { return lower_[j]; }
  double upper(std::size_t j) const { return upper_[j]; }
  double rhs(std::size_t i) const { return rhs_[i]; }
  RowSense sense(std::size_t i) const { return sense_[i]; }
  double value(std::size_t j) const { return value_[j]; }

  // Fills the duals of removed rows. `y` holds the duals of kept rows and
  // zeros elsewhere.
  void recover_duals(std::vector<double>& y) const {
    for (const auto& [dropped, kept] : merged_) {
      const auto d = static_cast<std::size_t>(dropped);
      const auto k = static_cast<std::size_t>(kept);
      // The kept row became an equality; its dual belongs to whichever of
      // the two inequalities has the matching sign.
      const bool kept_ge = p_.senses[k] == RowSense::greater_equal;
      if ((kept_ge && y[k] < 0.0) || (!kept_ge && y[k] > 0.0)) {
        y[d] = y[k];
        y[k] = 0.0;
      }
    }
    for (std::size_t j = 0; j < p_.num_cols(); ++j)
      if (col_active_[j]) attribute(j, y);
    for (auto it = fixed_order_.rbegin(); it != fixed_order_.rend(); ++it) {
      if (*it >= 0) {
        attribute(static_cast<std::size_t>(*it), y);
        continue;
      }
      const auto i = static_cast<std::size_t>(-*it - 1);
      y[i] = forcing_dual(i, y);
      for (const auto& e : rows_[i])
        if (forced_by_[e.index] == static_cast<std::ptrdiff_t>(i))
          attribute(e.index, y);
    }
  }

 private:
  static std::vector<std::size_t> active(const std::vector<char>& flags) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < flags.size(); ++k)
      if (flags[k]) out.push_back(k);
    return out;
  }

  void fail(SolveStatus s, std::string why) {
    status_ = s;
    reason_ = std::move(why);
  }

  double reduced_cost(std::size_t j, const std::vector<double>& y) const {
    double d = p_.objective[j];
    for (const auto& e : cols_[j]) d -= e.value * y[e.index];
    return d;
  }

  // Moves a reduced cost onto the row that tightened the bound it prices.
  // A bound no tighter than the column's own stays with the column.
  void attribute(std::size_t j, std::vector<double>& y) const {
    const double d = reduced_cost(j, y);
    if (d > 0.0 && lower_src_[j] >= 0 && lower_[j] > p_.lower[j])
      y[static_cast<std::size_t>(lower_src_[j])] += d / lower_coef_[j];
    else if (d < 0.0 && upper_src_[j] >= 0 && upper_[j] < p_.upper[j])
      y[static_cast<std::size_t>(upper_src_[j])] += d / upper_coef_[j];
  }

  // Smallest-magnitude dual of a forcing row that keeps every column it
  // fixed dual feasible at its bound.
  double forcing_dual(std::size_t i, const std::vector<double>& y) const {
    const bool at_min = forcing_min_[i];
    double v = 0.0;
    for (const auto& e : rows_[i]) {
      if (forced_by_[e.index] != static_cast<std::ptrdiff_t>(i)) continue;
      const double ratio = reduced_cost(e.index, y) / e.value;
      v = at_min ? std::min(v, ratio) : std::max(v, ratio);
    }
    return v;
  }

  // A row whose right-hand side equals its smallest (or largest) possible
  // activity fixes every column at the bound attaining it.
  bool forcing_rows() {
    bool found = false;
    for (std::size_t i = 0; i < p_.num_rows() && !failed(); ++i) {
      if (!row_active_[i] || row_count_[i] < 2) continue;
      double lo = 0.0, hi = 0.0;
      for (const auto& e : rows_[i]) {
        if (!col_active_[e.index]) continue;
        const double l = lower_[e.index], u = upper_[e.index];
        lo += e.value > 0.0 ? e.value * l : e.value * u;
        hi += e.value > 0.0 ? e.value * u : e.value * l;
      }
      const double tol = kPresolveTol * (1.0 + std::abs(p_.rhs[i]));
      const RowSense sense = p_.senses[i];
      bool at_min = false;
      if (sense != RowSense::greater_equal && std::isfinite(lo) &&
          std::abs(rhs_[i] - lo) <= tol)
        at_min = true;
      else if (!(sense != RowSense::less_equal && std::isfinite(hi) &&
                 std::abs(rhs_[i] - hi) <= tol))
        continue;
      found = true;
      row_active_[i] = 0;
      forcing_min_[i] = at_min;
      for (const auto& e : rows_[i]) {
        if (!col_active_[e.index]) continue;
        const bool low = (e.value > 0.0) == at_min;
        forced_by_[e.index] = static_cast<std::ptrdiff_t>(i);
        fix_column(e.index, low ? lower_[e.index] : upper_[e.index], false);
      }
      fixed_order_.push_back(-static_cast<std::ptrdiff_t>(i) - 1);
    }
    return found;
  }

  void fix_column(std::size_t j, double v, bool record = true) {
    if (!col_active_[j]) return;
    col_active_[j] = 0;
    value_[j] = v;
    if (record) fixed_order_.push_back(static_cast<std::ptrdiff_t>(j));
    for (const auto& e : cols_[j]) {
      if (!row_active_[e.index]) continue;
      rhs_[e.index] -= e.value * v;
      if (--row_count_[e.index] <= 1) queue_.push_back({true, e.index});
    }
  }

  void fix_empty(std::size_t j) {
    const double c = p_.objective[j];
    double v = std::clamp(0.0, lower_[j], upper_[j]);
    if (c > 0.0) v = lower_[j];
    if (c < 0.0) v = upper_[j];
    if (!std::isfinite(v)) {
      fail(SolveStatus::unbounded,
           "column " + p_.column_names[j] + " is unbounded in cost direction");
      return;
    }
    fix_column(j, v);
  }

  void process_column(std::size_t j) {
    if (!col_active_[j]) return;
    if (reduce_ && lower_[j] == upper_[j])
      fix_column(j, lower_[j]);
    else if (col_count_[j] == 0)
      fix_empty(j);
  }

  void process_row(std::size_t i) {
    if (!row_active_[i] || row_count_[i] > 1) return;
    const double tol = kPresolveTol * (1.0 + std::abs(p_.rhs[i]));
    if (row_count_[i] == 0) {
      const double r = rhs_[i];
      bool ok = true;
      switch (p_.senses[i]) {
        case RowSense::less_equal: ok = r >= -tol; break;
        case RowSense::greater_equal: ok = r <= tol; break;
        case RowSense::equal: ok = std::abs(r) <= tol; break;
      }
      row_active_[i] = 0;
      if (!ok) fail(SolveStatus::infeasible, "row " + p_.labels[i].to_string() +
                                                 " has no free columns");
      return;
    }
    if (!reduce_) return;
    std::size_t j = 0;
    double a = 0.0;
    for (const auto& e : rows_[i])
      if (col_active_[e.index]) {
        j = e.index;
        a = e.value;
      }
    const double bound = rhs_[i] / a;
    const auto ri = static_cast<std::ptrdiff_t>(i);
    const bool positive = a > 0.0;
    switch (p_.senses[i]) {
      case RowSense::equal:
        if (bound >= lower_[j]) set_lower(j, bound, ri, a);
        if (bound <= upper_[j]) set_upper(j, bound, ri, a);
        break;
      case RowSense::less_equal:
        if (positive && bound < upper_[j]) set_upper(j, bound, ri, a);
        if (!positive && bound > lower_[j]) set_lower(j, bound, ri, a);
        break;
      case RowSense::greater_equal:
        if (positive && bound > lower_[j]) set_lower(j, bound, ri, a);
        if (!positive && bound < upper_[j]) set_upper(j, bound, ri, a);
        break;
    }
    row_active_[i] = 0;
    --col_count_[j];
    if (lower_[j] > upper_[j]) {
      if (lower_[j] - upper_[j] >
          kPresolveTol * (1.0 + std::abs(lower_[j]))) {
        fail(SolveStatus::infeasible,
             "bounds implied by row " + p_.labels[i].to_string() + " conflict");
        return;
      }
      upper_[j] = lower_[j];
    }
    if (lower_[j] == upper_[j])
      fix_column(j, lower_[j]);
    else if (col_count_[j] == 0)
      fix_empty(j);
  }

  // Rows with identical active coefficients: a >= / <= pair with equal
  // right-hand sides becomes one equality, of two same-sense rows only the
  // tighter one is kept, and an equality absorbs any row it implies.
  void merge_parallel_rows() {
    std::map<std::vector<std::pair<std::size_t, double>>, std::size_t> seen;
    for (std::size_t i = 0; i < p_.num_rows(); ++i) {
      if (!row_active_[i]) continue;
      std::vector<std::pair<std::size_t, double>> key;
      for (const auto& e : rows_[i])
        if (col_active_[e.index]) key.emplace_back(e.index, e.value);
      auto [it, inserted] = seen.try_emplace(std::move(key), i);
      if (inserted) continue;
      const std::size_t k = it->second;
      const double tol =
          kPresolveTol * (1.0 + std::max(std::abs(rhs_[i]), std::abs(rhs_[k])));
      if (sense_[k] == RowSense::equal || sense_[i] == RowSense::equal) {
        // The equality implies the other row, which is dropped.
        const std::size_t e = sense_[k] == RowSense::equal ? k : i;
        const std::size_t o = e == k ? i : k;
        const double gap = rhs_[e] - rhs_[o];
        const bool ok = sense_[o] == RowSense::less_equal      ? gap <= tol
                        : sense_[o] == RowSense::greater_equal ? gap >= -tol
                                                               : std::abs(gap) <= tol;
        if (!ok) {
          fail(SolveStatus::infeasible,
               "rows " + p_.labels[k].to_string() + " and " +
                   p_.labels[i].to_string() + " conflict");
          return;
        }
        row_active_[o] = 0;
        it->second = e;
        continue;
      }
      if (p_.senses[i] == p_.senses[k]) {
        const bool le = p_.senses[i] == RowSense::less_equal;
        const bool i_tighter = le ? rhs_[i] < rhs_[k] : rhs_[i] > rhs_[k];
        const std::size_t drop = i_tighter ? k : i;
        row_active_[drop] = 0;
        it->second = i_tighter ? i : k;
        continue;
      }
      const double lo = p_.senses[k] == RowSense::greater_equal ? rhs_[k] : rhs_[i];
      const double hi = p_.senses[k] == RowSense::greater_equal ? rhs_[i] : rhs_[k];
      if (lo > hi + tol) {
        fail(SolveStatus::infeasible,
             "rows " + p_.labels[k].to_string() + " and " +
                 p_.labels[i].to_string() + " conflict");
        return;
      }
      if (hi - lo <= tol) {
        sense_[k] = RowSense::equal;
        rhs_[k] = p_.senses[k] == RowSense::greater_equal ? lo : hi;
        row_active_[i] = 0;
        merged_.emplace_back(static_cast<std::ptrdiff_t>(i),
                             static_cast<std::ptrdiff_t>(k));
      }
    }
  }

  void set_lower(std::size_t j, double v, std::ptrdiff_t src, double a) {
    lower_[j] = v;
    lower_src_[j] = src;
    lower_coef_[j] = a;
  }
  void set_upper(std::size_t j, double v, std::ptrdiff_t src, double a) {
    upper_[j] = v;
    upper_src_[j] = src;
    upper_coef_[j] = a;
  }

  const SparseProgram& p_;
  bool reduce_;
  std::vector<std::vector<Entry>> rows_, cols_;
  std::vector<double> lower_, upper_, rhs_, value_;
  std::vector<char> row_active_, col_active_;
  std::vector<std::size_t> row_count_, col_count_;
  std::vector<std::ptrdiff_t> lower_src_, upper_src_;
  std::vector<double> lower_coef_, upper_coef_;
  std::vector<std::ptrdiff_t> fixed_order_;  // column, or -(row + 1) for a forcing row
  std::vector<std::ptrdiff_t> forced_by_;
  std::vector<char> forcing_min_;
  std::vector<RowSense> sense_;
  std::vector<std::pair<std::ptrdiff_t, std::ptrdiff_t>> merged_;  // dropped, kept
  std::deque<std::pair<bool, std::size_t>> queue_;
  SolveStatus status_ = SolveStatus::optimal;
  std::string reason_;
};

// min c'x, Ax = b, x >= 0 built from the presolved program.
struct StandardForm {
  struct ColumnMap {
    std::ptrdiff_t pos = -1;
    std::ptrdiff_t neg = -1;
    double offset = 0.0;
    double sign = 1.0;
  };
  SpMat A;
  Vec b, c;
  std::vector<std::size_t> rows;  // original row of each kept row
  std::vector<std::size_t> cols;  // original column of each kept column
  std::vector<ColumnMap> map;     // per kept column
};

StandardForm standard_form(const SparseProgram& p, const Presolve& pre) {
  StandardForm sf;
  sf.rows = pre.kept_rows();
  sf.cols = pre.kept_cols();
  std::vector<std::ptrdiff_t> where(p.num_cols(), -1);
  std::size_t n = 0;
  std::vector<std::size_t> bounded;  // kept-column positions needing a row
  sf.map.resize(sf.cols.size());
  for (std::size_t k = 0; k < sf.cols.size(); ++k) {
    const std::size_t j = sf.cols[k];
    where[j] = static_cast<std::ptrdiff_t>(k);
    const double lb = pre.lower(j), ub = pre.upper(j);
    auto& m = sf.map[k];
    m.pos = static_cast<std::ptrdiff_t>(n++);
    if (std::isfinite(lb)) {
      m.offset = lb;
      if (std::isfinite(ub)) bounded.push_back(k);
    } else if (std::isfinite(ub)) {
      m.offset = ub;
      m.sign = -1.0;
    } else {
      m.neg = static_cast<std::ptrdiff_t>(n++);
    }
  }
  const std::size_t m_rows = sf.rows.size() + bounded.size();
  std::vector<Eigen::Triplet<double>> trip;
  sf.b = Vec::Zero(static_cast<Eigen::Index>(m_rows));
  for (std::size_t r = 0; r < sf.rows.size(); ++r) {
    const std::size_t i = sf.rows[r];
    double rhs = pre.rhs(i);
    const auto ri = static_cast<int>(r);
    for (const auto& e : pre.row(i)) {
      if (!pre.col_active(e.index)) continue;
      const auto& m = sf.map[static_cast<std::size_t>(where[e.index])];
      rhs -= e.value * m.offset;
      trip.emplace_back(ri, static_cast<int>(m.pos), e.value * m.sign);
      if (m.neg >= 0) trip.emplace_back(ri, static_cast<int>(m.neg), -e.value);
    }
    if (pre.sense(i) != RowSense::equal)
      trip.emplace_back(ri, static_cast<int>(n++),
                        pre.sense(i) == RowSense::less_equal ? 1.0 : -1.0);
    sf.b[ri] = rhs;
  }
  for (std::size_t q = 0; q < bounded.size(); ++q) {
    const auto ri = static_cast<int>(sf.rows.size() + q);
    const std::size_t k = bounded[q];
    const std::size_t j = sf.cols[k];
    trip.emplace_back(ri, static_cast<int>(sf.map[k].pos), 1.0);
    trip.emplace_back(ri, static_cast<int>(n++), 1.0);
    sf.b[ri] = pre.upper(j) - pre.lower(j);
  }
  sf.A.resize(static_cast<Eigen::Index>(m_rows), static_cast<Eigen::Index>(n));
  sf.A.setFromTriplets(trip.begin(), trip.end());
  sf.A.makeCompressed();
  sf.c = Vec::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < sf.cols.size(); ++k) {
    const double cj = p.objective[sf.cols[k]];
    sf.c[sf.map[k].pos] = cj * sf.map[k].sign;
    if (sf.map[k].neg >= 0) sf.c[sf.map[k].neg] = -cj;
  }
  return sf;
}

// Geometric row/column equilibration: A_scaled = R A C.
void ruiz(const SpMat& A, Vec& R, Vec& C) {
  R = Vec::Ones(A.rows());
  C = Vec::Ones(A.cols());
  SpMat S = A;
  for (int pass = 0; pass < kRuizPasses; ++pass) {
    Vec rmax = Vec::Zero(S.rows()), cmax = Vec::Zero(S.cols());
    for (Eigen::Index k = 0; k < S.outerSize(); ++k)
      for (SpMat::InnerIterator it(S, k); it; ++it) {
        const double v = std::abs(it.value());
        rmax[it.row()] = std::max(rmax[it.row()], v);
        cmax[it.col()] = std::max(cmax[it.col()], v);
      }
    for (Eigen::Index i = 0; i < S.rows(); ++i)
      if (rmax[i] > 0.0) R[i] /= std::sqrt(rmax[i]);
    for (Eigen::Index j = 0; j < S.cols(); ++j)
      if (cmax[j] > 0.0) C[j] /= std::sqrt(cmax[j]);
    S = R.asDiagonal() * A * C.asDiagonal();
  }
}

double max_step(const Vec& v, const Vec& dv) {
  double a = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (dv[i] < 0.0) a = std::min(a, -v[i] / dv[i]);
  return a;
}

// Sparse LDL' of a symmetric positive semidefinite matrix with a fill
// reducing ordering computed once. Pivots below `tiny` relative to the
// largest diagonal are replaced by a huge value, which drops the
// corresponding direction from the solve.
class NormalFactor {
 public:
  bool factorize(const SpMat& M) {
    const int n = static_cast<int>(M.rows());
    if (static_cast<int>(perm_.size()) != n) {
      Eigen::AMDOrdering<int> amd;
      Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> p;
      amd(M, p);
      perm_.assign(p.indices().data(), p.indices().data() + n);
      inv_.assign(n, 0);
      for (int k = 0; k < n; ++k) inv_[perm_[k]] = k;
    }
    const int* Ap = M.outerIndexPtr();
    const int* Ai = M.innerIndexPtr();
    const double* Ax = M.valuePtr();

    parent_.assign(n, -1);
    std::vector<int> flag(n), lnz(n, 0);
    for (int k = 0; k < n; ++k) {
      flag[k] = k;
      const int kk = perm_[k];
      for (int p = Ap[kk]; p < Ap[kk + 1]; ++p) {
        for (int i = inv_[Ai[p]]; i < k && flag[i] != k; i = parent_[i]) {
          if (parent_[i] == -1) parent_[i] = k;
          ++lnz[i];
          flag[i] = k;
        }
      }
    }
    lp_.assign(n + 1, 0);
    for (int k = 0; k < n; ++k) lp_[k + 1] = lp_[k] + lnz[k];
    li_.assign(lp_[n], 0);
    lx_.assign(lp_[n], 0.0);
    d_.assign(n, 0.0);

    double dmax = 0.0;
    for (int k = 0; k < n; ++k) {
      for (int p = Ap[k]; p < Ap[k + 1]; ++p)
        if (Ai[p] == k) dmax = std::max(dmax, Ax[p]);
    }
    const double tiny = kPivotTol * std::max(dmax, 1.0);

    std::vector<double> y(n, 0.0);
    std::vector<int> pattern(n);
    std::fill(lnz.begin(), lnz.end(), 0);
    for (int k = 0; k < n; ++k) {
      int top = n;
      flag[k] = k;
      const int kk = perm_[k];
      for (int p = Ap[kk]; p < Ap[kk + 1]; ++p) {
        int i = inv_[Ai[p]];
        if (i > k) continue;
        y[i] += Ax[p];
        int len = 0;
        for (; flag[i] != k; i = parent_[i]) {
          pattern[len++] = i;
          flag[i] = k;
        }
        while (len > 0) pattern[--top] = pattern[--len];
      }
      double dk = y[k];
      y[k] = 0.0;
      for (; top < n; ++top) {
        const int i = pattern[top];
        const double yi = y[i];
        y[i] = 0.0;
        const int end = lp_[i] + lnz[i];
        for (int p = lp_[i]; p < end; ++p) y[li_[p]] -= lx_[p] * yi;
        const double lki = yi / d_[i];
        dk -= lki * yi;
        li_[end] = k;
        lx_[end] = lki;
        ++lnz[i];
      }
      if (!std::isfinite(dk)) return false;
      d_[k] = dk > tiny ? dk : kHugePivot;
    }
    return true;
  }

  Vec solve(const Vec& b) const {
    const int n = static_cast<int>(d_.size());
    Vec x(n);
    for (int k = 0; k < n; ++k) x[k] = b[perm_[k]];
    for (int j = 0; j < n; ++j)
      for (int p = lp_[j]; p < lp_[j + 1]; ++p) x[li_[p]] -= lx_[p] * x[j];
    for (int j = 0; j < n; ++j) x[j] /= d_[j];
    for (int j = n - 1; j >= 0; --j)
      for (int p = lp_[j]; p < lp_[j + 1]; ++p) x[j] -= lx_[p] * x[li_[p]];
    Vec out(n);
    for (int k = 0; k < n; ++k) out[perm_[k]] = x[k];
    return out;
  }

 private:
  static constexpr double kPivotTol = 1e-30;
  static constexpr double kHugePivot = 1e128;
  std::vector<int> perm_, inv_, parent_, lp_, li_;
  std::vector<double> lx_, d_;
};

class HomogeneousIpm {
 public:
  HomogeneousIpm(const SparseProgram& p, const Presolve& pre,
                 const SolveSettings& settings)
      : p_(p), pre_(pre), settings_(settings), sf_(standard_form(p, pre)) {
    if (settings.scaling) {
      ruiz(sf_.A, R_, C_);
    } else {
      R_ = Vec::Ones(sf_.A.rows());
      C_ = Vec::Ones(sf_.A.cols());
    }
    A_ = R_.asDiagonal() * sf_.A * C_.asDiagonal();
    At_ = A_.transpose();
    b_ = R_.cwiseProduct(sf_.b);
    c_ = C_.cwiseProduct(sf_.c);
  }

  Solution run() {
    Solution sol;
    const Eigen::Index n = A_.cols(), m = A_.rows();
    Vec x = Vec::Ones(n), z = Vec::Ones(n), y = Vec::Zero(m);
    double tau = 1.0, kappa = 1.0;
    double step = 0.0;
    const double nn = static_cast<double>(n + 1);
    NormalFactor ldlt;
    for (int iter = 0;; ++iter) {
      const Vec rp = b_ * tau - A_ * x;
      const Vec rd = c_ * tau - At_ * y - z;
      const double rg = c_.dot(x) - b_.dot(y) + kappa;
      const double mu = (x.dot(z) + tau * kappa) / nn;

      Candidate cand = candidate(x, y, tau);
      sol.iterations = iter;
      sol.history.push_back({iter, cand.metrics.pobj, cand.metrics.dobj,
                             cand.metrics.pres, cand.metrics.dres, mu, step});
      if (!std::isfinite(mu) || !std::isfinite(tau)) {
        return finish(std::move(sol), SolveStatus::numerical_failure,
                      std::move(cand), "non-finite iterate");
      }
      if (cand.metrics.pres <= settings_.feasibility_tol &&
          cand.metrics.dres <= settings_.feasibility_tol &&
          cand.metrics.gap <= settings_.optimality_tol) {
        return finish(std::move(sol), SolveStatus::optimal, std::move(cand),
                      "");
      }
      if (tau < 1e-6 * kappa) {
        const double by = b_.dot(y), cx = c_.dot(x);
        const double aty = C_.cwiseInverse()
                               .cwiseProduct(At_ * y + z)
                               .lpNorm<Eigen::Infinity>();
        const double ax =
            R_.cwiseInverse().cwiseProduct(A_ * x).lpNorm<Eigen::Infinity>();
        if (by > 0.0 && aty <= settings_.feasibility_tol * by)
          return finish(std::move(sol), SolveStatus::infeasible,
                        std::move(cand), "primal infeasibility certificate");
        if (cx < 0.0 && ax <= settings_.feasibility_tol * -cx)
          return finish(std::move(sol), SolveStatus::unbounded,
                        std::move(cand), "dual infeasibility certificate");
      }
      if (iter >= settings_.max_iterations)
        return finish(std::move(sol), SolveStatus::iteration_limit,
                      std::move(cand), "iteration limit reached");

      const Vec D = x.cwiseQuotient(z);
      if (!factorize(ldlt, D)) {
        return finish(std::move(sol), SolveStatus::numerical_failure,
                      std::move(cand), "normal equations factorization failed");
      }
      const Vec p = refined_solve(ldlt, A_ * D.cwiseProduct(c_) + b_);
      const Vec w = At_ * p - c_;
      const Vec u = D.cwiseProduct(w);
      // Equals -c'u + b'p + kappa/tau without the cancellation.
      const double denom = w.dot(u) + kappa / tau;
      if (!(denom > 0.0) || !std::isfinite(denom)) {
        return finish(std::move(sol), SolveStatus::numerical_failure,
                      std::move(cand), "degenerate homogeneous direction");
      }

      Direction aff;
      direction(ldlt, D, u, p, denom, x, z, tau, kappa, rp, rd, rg, 1.0,
                -x.cwiseProduct(z), -tau * kappa, aff);
      const double a_aff = std::min(1.0, step_length(x, z, tau, kappa, aff));
      const double mu_aff =
          ((x + a_aff * aff.dx).dot(z + a_aff * aff.dz) +
           (tau + a_aff * aff.dtau) * (kappa + a_aff * aff.dkappa)) /
          nn;
      const double sigma = std::pow(std::clamp(mu_aff / mu, 0.0, 1.0), 3);

      const Vec rxz = -x.cwiseProduct(z) - aff.dx.cwiseProduct(aff.dz) +
                      Vec::Constant(n, sigma * mu);
      const double rk = -tau * kappa - aff.dtau * aff.dkappa + sigma * mu;
      Direction dir;
      direction(ldlt, D, u, p, denom, x, z, tau, kappa, rp, rd, rg,
                1.0 - sigma, rxz, rk, dir);
      step = std::min(1.0,
                      kStepFraction * step_length(x, z, tau, kappa, dir));
      if (!(step > 1e-12)) {
        return finish(std::move(sol), SolveStatus::numerical_failure,
                      std::move(cand), "step length collapsed");
      }
      x += step * dir.dx;
      y += step * dir.dy;
      z += step * dir.dz;
      tau += step * dir.dtau;
      kappa += step * dir.dkappa;
    }
  }

 private:
  struct Direction {
    Vec dx, dy, dz;
    double dtau = 0.0, dkappa = 0.0;
  };
  struct Candidate {
    std::vector<double> x, y;
    Metrics metrics;
  };

  bool factorize(NormalFactor& ldlt, const Vec& D) {
    const SpMat AD = A_ * D.cwiseSqrt().asDiagonal();
    M_ = AD * AD.transpose();
    M_.makeCompressed();
    return ldlt.factorize(M_);
  }

  // Solves M v = rhs, then refines against M.
  Vec refined_solve(const NormalFactor& ldlt,
                    const Vec& rhs) const {
    Vec v = ldlt.solve(rhs);
    double last = (rhs - M_ * v).lpNorm<Eigen::Infinity>();
    for (int k = 0; k < kRefineSteps && last > 0.0; ++k) {
      const Vec next = v + ldlt.solve(rhs - M_ * v);
      const double err = (rhs - M_ * next).lpNorm<Eigen::Infinity>();
      if (!(err < last)) break;
      v = next;
      last = err;
    }
    return v;
  }

  void direction(const NormalFactor& ldlt,
                 const Vec& D, const Vec& u, const Vec& p, double denom,
                 const Vec& x, const Vec& z, double tau, double kappa,
                 const Vec& rp, const Vec& rd, double rg, double eta,
                 const Vec& rxz, double rk, Direction& out) const {
    const Vec f = eta * rd - rxz.cwiseQuotient(x);
    const Vec h = eta * rp + A_ * D.cwiseProduct(f);
    const Vec q = refined_solve(ldlt, h);
    const Vec v = D.cwiseProduct(At_ * q - f);
    out.dtau = (eta * rg + c_.dot(v) - b_.dot(q) + rk / tau) / denom;
    out.dy = p * out.dtau + q;
    out.dx = u * out.dtau + v;
    out.dz = (rxz - z.cwiseProduct(out.dx)).cwiseQuotient(x);
    out.dkappa = (rk - kappa * out.dtau) / tau;
  }

  static double step_length(const Vec& x, const Vec& z, double tau,
                            double kappa, const Direction& d) {
    double a = std::min(max_step(x, d.dx), max_step(z, d.dz));
    if (d.dtau < 0.0) a = std::min(a, -tau / d.dtau);
    if (d.dkappa < 0.0) a = std::min(a, -kappa / d.dkappa);
    return a;
  }

  // Maps the scaled homogeneous iterate to the original program.
  Candidate candidate(const Vec& xs, const Vec& ys, double tau) const {
    Candidate c;
    const Vec x = C_.cwiseProduct(xs) / tau;
    const Vec y = R_.cwiseProduct(ys) / tau;
    c.x.assign(p_.num_cols(), 0.0);
    c.y.assign(p_.num_rows(), 0.0);
    for (std::size_t j = 0; j < p_.num_cols(); ++j)
      if (!pre_.col_active(j)) c.x[j] = pre_.value(j);
    for (std::size_t k = 0; k < sf_.cols.size(); ++k) {
      const auto& m = sf_.map[k];
      double v = m.offset + m.sign * x[m.pos];
      if (m.neg >= 0) v -= x[m.neg];
      c.x[sf_.cols[k]] = v;
    }
    for (std::size_t j = 0; j < p_.num_cols(); ++j)
      c.x[j] = std::clamp(c.x[j], p_.lower[j], p_.upper[j]);
    for (std::size_t r = 0; r < sf_.rows.size(); ++r)
      c.y[sf_.rows[r]] = y[static_cast<Eigen::Index>(r)];
    pre_.recover_duals(c.y);
    c.metrics = evaluate(p_, c.x, c.y);
    return c;
  }

  Solution finish(Solution sol, SolveStatus status, Candidate cand,
                  std::string message) const {
    sol.status = status;
    sol.x = std::move(cand.x);
    sol.y = std::move(cand.y);
    sol.reduced_costs = std::move(cand.metrics.reduced);
    sol.objective = cand.metrics.pobj;
    sol.dual_objective = cand.metrics.dobj;
    sol.primal_residual = cand.metrics.pres;
    sol.dual_residual = cand.metrics.dres;
    sol.gap = cand.metrics.gap;
    sol.message = std::move(message);
    return sol;
  }

  const SparseProgram& p_;
  const Presolve& pre_;
  const SolveSettings& settings_;
  StandardForm sf_;
  SpMat A_, At_;
  SpMat M_;
  Vec b_, c_, R_, C_;
};

Solution presolved_only(const SparseProgram& p, const Presolve& pre) {
  Solution sol;
  sol.x.resize(p.num_cols());
  for (std::size_t j = 0; j < p.num_cols(); ++j)
    sol.x[j] = std::clamp(pre.value(j), p.lower[j], p.upper[j]);
  sol.y.assign(p.num_rows(), 0.0);
  pre.recover_duals(sol.y);
  auto m = evaluate(p, sol.x, sol.y);
  sol.status = SolveStatus::optimal;
  sol.reduced_costs = std::move(m.reduced);
  sol.objective = m.pobj;
  sol.dual_objective = m.dobj;
  sol.primal_residual = m.pres;
  sol.dual_residual = m.dres;
  sol.gap = m.gap;
  sol.message = "solved in presolve";
  return sol;
}

}  // namespace

std::string_view status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unbounded: return "unbounded";
    case SolveStatus::iteration_limit: return "iteration_limit";
    case SolveStatus::numerical_failure: return "numerical_failure";
  }
  return "unknown";
}

void SolveSettings::check() const {
  if (!(feasibility_tol > 0.0) || !(optimality_tol > 0.0))
    throw std::invalid_argument("SolveSettings: tolerances must be positive");
  if (max_iterations < 1)
    throw std::invalid_argument("SolveSettings: max_iterations must be >= 1");
}

bool Solution::same_result(const Solution& o) const {
  return status == o.status && x == o.x && y == o.y &&
         reduced_costs == o.reduced_costs && objective == o.objective &&
         dual_objective == o.dual_objective &&
         primal_residual == o.primal_residual &&
         dual_residual == o.dual_residual && gap == o.gap &&
         iterations == o.iterations && message == o.message &&
         history == o.history;
}

Solution solve(const SparseProgram& program, const SolveSettings& settings) {
  settings.check();
  if (program.num_cols() == 0)
    throw std::invalid_argument("solve: program has no columns");
  const auto start = std::chrono::steady_clock::now();
  Presolve pre(program, settings.presolve);
  pre.run();
  Solution sol;
  if (pre.failed()) {
    sol.status = pre.status();
    sol.message = pre.reason();
    sol.x.resize(program.num_cols());
    for (std::size_t j = 0; j < program.num_cols(); ++j)
      sol.x[j] = std::clamp(0.0, program.lower[j], program.upper[j]);
    sol.y.assign(program.num_rows(), 0.0);
    auto m = evaluate(program, sol.x, sol.y);
    sol.reduced_costs = std::move(m.reduced);
    sol.objective = m.pobj;
    sol.primal_residual = m.pres;
    sol.dual_residual = m.dres;
    sol.gap = m.gap;
  } else if (pre.kept_cols().empty()) {
    sol = presolved_only(program, pre);
  } else {
    sol = HomogeneousIpm(program, pre, settings).run();
  }
  sol.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return sol;
}

}  // namespace gem
