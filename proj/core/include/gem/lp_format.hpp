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

#ifndef GEM_LP_FORMAT_HPP_
#define GEM_LP_FORMAT_HPP_

#include <iosfwd>
#include <string>
#include <string_view>

#include "gem/program.hpp"

namespace gem {

// Writes `program` in CPLEX LP text format. Row names are the row labels
// with '[' ']' '=' mapped to '(' ')' '_'; any other character outside the
// LP name alphabet becomes '_'.
void write_lp(const SparseProgram& program, std::ostream& out);
std::string to_lp_string(const SparseProgram& program);

std::string lp_name(std::string_view raw);

}  // namespace gem

#endif  // GEM_LP_FORMAT_HPP_
