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

#include "gem/config.hpp"

#include <fstream>
#include <ostream>
#include <set>

#include "gem/csv.hpp"

namespace gem {
namespace {

std::string major(std::string_view v) {
  return std::string(v.substr(0, v.find('.')));
}

bool parse_bool(const std::string& v, const std::string& what) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ParseError(what + ": expected true or false, got '" + v + "'");
}

}  // namespace

Config default_config() { return Config{}; }

Config parse_config(std::istream& in, std::string_view source) {
  Config c;
  std::set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    const std::string where =
        std::string(source) + ":" + std::to_string(lineno);
    if (eq == std::string::npos)
      throw ParseError(where + ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string val = trim(t.substr(eq + 1));
    if (!seen.insert(key).second)
      throw ParseError(where + ": duplicate key " + key);
    const std::string what = where + " " + key;
    if (key == "version") {
      c.version = val;
    } else if (key == "feasibility_tol") {
      c.solve.feasibility_tol = parse_double(val, what);
    } else if (key == "optimality_tol") {
      c.solve.optimality_tol = parse_double(val, what);
    } else if (key == "max_iterations") {
      c.solve.max_iterations = static_cast<int>(parse_double(val, what));
    } else if (key == "scaling") {
      c.solve.scaling = parse_bool(val, what);
    } else if (key == "presolve") {
      c.solve.presolve = parse_bool(val, what);
    } else if (key == "shared_fraction") {
      c.shared_fraction = parse_double(val, what);
    } else if (key == "sweep_fractions") {
      c.sweep_fractions.clear();
      for (const auto& f : split(val, ','))
        c.sweep_fractions.push_back(parse_double(trim(f), what));
    } else if (key == "workers") {
      c.workers = static_cast<std::size_t>(parse_double(val, what));
    } else {
      throw ParseError(where + ": unknown key " + key);
    }
  }
  if (!seen.count("version"))
    throw ParseError(std::string(source) + ": missing version key");
  if (major(c.version) != major(kVersion))
    throw ParseError(std::string(source) + ": config version " + c.version +
                     " is incompatible with " + kVersion);
  try {
    c.solve.check();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string(source) + ": " + e.what());
  }
  return c;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return parse_config(in, path.string());
}

void write_config(const Config& c, std::ostream& out) {
  out << "# gem-fleet tool defaults\n";
  out << "version = " << c.version << '\n';
  out << "feasibility_tol = " << format_double(c.solve.feasibility_tol) << '\n';
  out << "optimality_tol = " << format_double(c.solve.optimality_tol) << '\n';
  out << "max_iterations = " << c.solve.max_iterations << '\n';
  out << "scaling = " << (c.solve.scaling ? "true" : "false") << '\n';
  out << "presolve = " << (c.solve.presolve ? "true" : "false") << '\n';
  out << "shared_fraction = " << format_double(c.shared_fraction) << '\n';
  out << "sweep_fractions = ";
  for (std::size_t k = 0; k < c.sweep_fractions.size(); ++k)
    out << (k ? "," : "") << format_double(c.sweep_fractions[k]);
  out << '\n';
  out << "workers = " << c.workers << '\n';
}

}  // namespace gem
