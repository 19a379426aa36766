// Copyright 2026 The cwpotts Authors
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

#ifndef CWPOTTS_TYPES_HPP_
#define CWPOTTS_TYPES_HPP_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cwpotts {

// Absolute tolerance on the coordinate sum of a point of the simplex.
inline constexpr double kSimplexTolerance = 1e-12;

// Raised when an input violates a documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when an iterative procedure fails to converge or to bracket.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Model parameters of the mean-field Potts model: q colors, inverse
// temperature beta, and a field h acting on color 1. Only the quadrant
// beta >= 0, h >= 0 is supported.
struct ModelParams {
  int q = 2;
  double beta = 0.0;
  double h = 0.0;

  // Throws PreconditionError unless q >= 2, beta >= 0 and h >= 0.
  void validate() const;

  static ModelParams make(int q, double beta, double h) {
    ModelParams p{q, beta, h};
    p.validate();
    return p;
  }
};

// A point of the probability simplex in R^q.
class DensityVector {
 public:
  DensityVector() = default;
  // Validates nonnegativity and the unit sum (within kSimplexTolerance).
  explicit DensityVector(std::vector<double> x);

  std::size_t size() const { return x_.size(); }
  int q() const { return static_cast<int>(x_.size()); }
  double operator[](std::size_t i) const { return x_[i]; }
  std::span<const double> values() const { return x_; }
  const std::vector<double>& vec() const { return x_; }

  double min() const;
  double max() const;

  friend bool operator==(const DensityVector&, const DensityVector&) = default;

 private:
  std::vector<double> x_;
};

// Integer color counts N = (N_1, ..., N_q) with sum n.
class CountVector {
 public:
  CountVector() = default;
  explicit CountVector(std::vector<std::int64_t> counts);

  int q() const { return static_cast<int>(counts_.size()); }
  std::int64_t n() const { return n_; }
  std::int64_t operator[](std::size_t i) const { return counts_[i]; }
  std::span<const std::int64_t> counts() const { return counts_; }

  // N / n as a point of the simplex. Requires n > 0.
  DensityVector density() const;

  friend bool operator==(const CountVector&, const CountVector&) = default;

 private:
  std::vector<std::int64_t> counts_;
  std::int64_t n_ = 0;
};

// Euclidean distance between two vectors of equal length.
double distance(std::span<const double> a, std::span<const double> b);

}  // namespace cwpotts

#endif  // CWPOTTS_TYPES_HPP_
