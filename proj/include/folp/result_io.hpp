// Copyright 2026 The FOLP Authors
//
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

#ifndef FOLP_RESULT_IO_HPP_
#define FOLP_RESULT_IO_HPP_

#include <string>

#include "folp/solver.hpp"

namespace folp {

/// JSON summary: termination reason, objectives, residuals, counters, and
/// the full per-evaluation trace. Serialization is byte-stable for a fixed
/// SolveResult.
std::string result_to_json(const SolveResult& result);

/// Writes summary.json plus plain-text solution vectors
/// (primal_solution.txt, dual_solution.txt, reduced_costs.txt) into
/// output_dir, which must already exist or be creatable.
void write_result(const SolveResult& result, const std::string& output_dir);

}  // namespace folp

#endif  // FOLP_RESULT_IO_HPP_
