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

#include "gem/lp_format.hpp"

#include <cctype>
#include <cmath>
#include <cstring>
#include <ostream>
#include <sstream>

#include "gem/csv.hpp"

namespace gem {
namespace {

constexpr int kTermsPerLine = 8;

void write_terms(std::ostream& out, const SparseProgram& p,
                 std::size_t begin, std::size_t end,
                 const std::vector<std::string>& names) {
  int on_line = 0;
  if (begin == end) out << " 0 " << names.front();
  for (std::size_t k = begin; k < end; ++k) {
    const auto& t = p.triplets[k];
    out << (t.value < 0 ? " - " : " + ") << format_double(std::abs(t.value))
        << ' ' << names[t.col];
    if (++on_line == kTermsPerLine && k + 1 < end) {
      out << "\n   ";
      on_line = 0;
    }
  }
}

}  // namespace

std::string lp_name(std::string_view raw) {
  static constexpr const char* kAllowed = "!\"#$%&()/,.;?@_`'{}|~";
  std::string s;
  s.reserve(raw.size() + 1);
  for (char ch : raw) {
    if (ch == '[') ch = '(';
    else if (ch == ']') ch = ')';
    else if (!std::isalnum(static_cast<unsigned char>(ch)) &&
             std::strchr(kAllowed, ch) == nullptr)
      ch = '_';
    s.push_back(ch);
  }
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0])) ||
      s[0] == '.' || s[0] == 'e' || s[0] == 'E')
    s.insert(s.begin(), '_');
  return s;
}

void write_lp(const SparseProgram& p, std::ostream& out) {
  std::vector<std::string> names;
  names.reserve(p.num_cols());
  for (const auto& n : p.column_names) names.push_back(lp_name(n));

  out << "\\ gem-fleet program: " << p.num_rows() << " rows, " << p.num_cols()
      << " columns, " << p.triplets.size() << " nonzeros\n";
  out << "Minimize\n obj:";
  int on_line = 0;
  bool any = false;
  for (std::size_t j = 0; j < p.num_cols(); ++j) {
    if (p.objective[j] == 0.0) continue;
    any = true;
    out << (p.objective[j] < 0 ? " - " : " + ")
        << format_double(std::abs(p.objective[j])) << ' ' << names[j];
    if (++on_line == kTermsPerLine) {
      out << "\n   ";
      on_line = 0;
    }
  }
  if (!any) out << " 0 " << names.front();
  out << "\nSubject To\n";
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.num_rows(); ++i) {
    const std::size_t begin = k;
    while (k < p.triplets.size() && p.triplets[k].row == i) ++k;
    out << ' ' << lp_name(p.labels[i].to_string()) << ':';
    write_terms(out, p, begin, k, names);
    const char* op = p.senses[i] == RowSense::less_equal      ? " <= "
                     : p.senses[i] == RowSense::greater_equal ? " >= "
                                                              : " = ";
    out << op << format_double(p.rhs[i]) << '\n';
  }
  out << "Bounds\n";
  for (std::size_t j = 0; j < p.num_cols(); ++j) {
    const double lb = p.lower[j], ub = p.upper[j];
    if (std::isinf(lb) && std::isinf(ub)) {
      out << ' ' << names[j] << " free\n";
    } else if (lb == ub) {
      out << ' ' << names[j] << " = " << format_double(lb) << '\n';
    } else if (lb != 0.0 || !std::isinf(ub)) {
      out << ' ' << (std::isinf(lb) ? "-inf" : format_double(lb)) << " <= "
          << names[j];
      if (!std::isinf(ub)) out << " <= " << format_double(ub);
      out << '\n';
    }
  }
  out << "End\n";
}

std::string to_lp_string(const SparseProgram& program) {
  std::ostringstream os;
  write_lp(program, os);
  return os.str();
}

}  // namespace gem
