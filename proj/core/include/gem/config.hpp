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

#ifndef GEM_CONFIG_HPP_
#define GEM_CONFIG_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gem/solver.hpp"

namespace gem {

inline constexpr const char* kVersion = "0.1.0";

// Tool defaults. The shipped config/gem.conf mirrors default_config().
struct Config {
  std::string version = kVersion;
  SolveSettings solve;
  double shared_fraction = 0.5;
  std::vector<double> sweep_fractions{0.0, 0.25, 0.5, 0.75, 1.0};
  std::size_t workers = 0;  // 0: GEM_WORKERS or hardware concurrency
};

Config default_config();

// key = value lines, '#' comments. The file must carry a `version` key
// whose major component matches kVersion. Unknown keys are errors.
// Throws ParseError.
Config load_config(const std::filesystem::path& path);
Config parse_config(std::istream& in, std::string_view source);
void write_config(const Config& config, std::ostream& out);

}  // namespace gem

#endif  // GEM_CONFIG_HPP_
