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

// Regenerates the bundled scenario directories from the test builders.
//
//   gem_make_scenarios <output dir>

#include <filesystem>
#include <iostream>

#include "fixtures.hpp"
#include "gem/scenario_io.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: " << argv[0] << " <output dir>\n";
    return 2;
  }
  const std::filesystem::path root(argv[1]);
  gem::save_scenario(gem::testing::toy_spec(), root / "toy");
  gem::save_scenario(gem::testing::desk_spec(), root / "desk");
  for (const auto& f : gem::testing::tiny_fixtures())
    gem::save_scenario(f.tiny.spec, root / ("tiny_" + f.name));
  return 0;
}
