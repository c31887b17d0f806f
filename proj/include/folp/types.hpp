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

#ifndef FOLP_TYPES_HPP_
#define FOLP_TYPES_HPP_

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace folp {

using Index = std::int64_t;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Thrown when vector/matrix dimensions do not agree.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EmptyMatrix : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnsupportedNorm : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NonPositiveWeight : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NonPositiveRadius : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The trial step size collapsed below the representable range.
class StepSizeUnderflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterate picked up a NaN or infinity.
class NonFiniteIterate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InfiniteProduct : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace folp

#endif  // FOLP_TYPES_HPP_
