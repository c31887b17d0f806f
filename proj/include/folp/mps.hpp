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

#ifndef FOLP_MPS_HPP_
#define FOLP_MPS_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "folp/lp_model.hpp"

namespace folp {

class MpsParseError : public IoError {
 public:
  MpsParseError(const std::string& message, Index line)
      : IoError("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  Index line() const { return line_; }

 private:
  Index line_;
};

struct MpsInstance {
  std::string name;
  LinearProgram lp;
  // MAX objectives are negated into minimization form at parse time; the
  // flag lets reporting restore the original sense.
  bool was_maximization = false;
};

/// Parses fixed- or free-format MPS. Handles N/L/G/E rows, COLUMNS with
/// integrality markers ignored (LP relaxation), RHS (an entry on the
/// objective row is the negated objective constant), RANGES, BOUNDS
/// (LO, UP, FX, FR, MI, PL, BV), and OBJSENSE. L rows are negated into
/// >= form; ranged rows split into two inequality rows.
MpsInstance parse_mps(std::string_view text);
MpsInstance parse_mps_file(const std::string& path);

/// Serializes an LP in the internal >=-then-= form; parse_mps(write_mps(lp))
/// reproduces the LP bit for bit.
std::string write_mps(const LinearProgram& lp, const std::string& name);
void write_mps_file(const LinearProgram& lp, const std::string& name,
                    const std::string& path);

}  // namespace folp

#endif  // FOLP_MPS_HPP_
