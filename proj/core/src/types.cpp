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

#include "cwpotts/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cwpotts {

void ModelParams::validate() const {
  if (q < 2) {
    throw PreconditionError("ModelParams: q must be >= 2, got " +
                            std::to_string(q));
  }
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw PreconditionError("ModelParams: beta must be finite and >= 0");
  }
  if (!(h >= 0.0) || !std::isfinite(h)) {
    throw PreconditionError("ModelParams: h must be finite and >= 0");
  }
}

DensityVector::DensityVector(std::vector<double> x) : x_(std::move(x)) {
  if (x_.empty()) throw PreconditionError("DensityVector: empty");
  double sum = 0.0;
  for (double v : x_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw PreconditionError("DensityVector: coordinates must be >= 0");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    throw PreconditionError("DensityVector: coordinates must sum to 1");
  }
}

double DensityVector::min() const {
  return *std::min_element(x_.begin(), x_.end());
}

double DensityVector::max() const {
  return *std::max_element(x_.begin(), x_.end());
}

CountVector::CountVector(std::vector<std::int64_t> counts)
    : counts_(std::move(counts)) {
  if (counts_.empty()) throw PreconditionError("CountVector: empty");
  for (auto c : counts_) {
    if (c < 0) throw PreconditionError("CountVector: negative count");
  }
  n_ = std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0});
}

DensityVector CountVector::density() const {
  if (n_ <= 0) throw PreconditionError("CountVector::density: n must be > 0");
  std::vector<double> x(counts_.size());
  const double inv = 1.0 / static_cast<double>(n_);
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    x[i] = static_cast<double>(counts_[i]) * inv;
  }
  return DensityVector(std::move(x));
}

double distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw PreconditionError("distance: dimension mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace cwpotts
