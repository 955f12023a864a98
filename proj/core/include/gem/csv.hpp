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

#ifndef GEM_CSV_HPP_
#define GEM_CSV_HPP_

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gem {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // source line of each row

  // Index of `name` in the header, or npos.
  std::size_t column(std::string_view name) const;
};

// Reads a comma-separated file. Blank lines and lines starting with '#' are
// skipped; fields are trimmed. No quoting support: labels must not contain
// commas.
CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(std::istream& in, std::string_view source);

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

// Parses a full-string double or throws ParseError naming `what`.
double parse_double(std::string_view text, std::string_view what);

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

}  // namespace gem

#endif  // GEM_CSV_HPP_
