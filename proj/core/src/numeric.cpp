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

#include "cwpotts/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cwpotts/types.hpp"

namespace cwpotts {
namespace {

constexpr std::size_t kPairwiseBlock = 64;

}  // namespace

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= kPairwiseBlock) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double log_sum_exp(std::span<const double> values) {
  if (values.empty()) return -std::numeric_limits<double>::infinity();
  const double mx = *std::max_element(values.begin(), values.end());
  if (!std::isfinite(mx)) return mx;
  std::vector<double> shifted(values.size());
  std::transform(values.begin(), values.end(), shifted.begin(),
                 [mx](double v) { return std::exp(v - mx); });
  return mx + std::log(pairwise_sum(shifted));
}

std::vector<double> log_factorial_table(std::int64_t n) {
  if (n < 0) throw PreconditionError("log_factorial_table: n must be >= 0");
  std::vector<double> t(static_cast<std::size_t>(n) + 1);
  for (std::int64_t k = 0; k <= n; ++k) {
    t[static_cast<std::size_t>(k)] = std::lgamma(static_cast<double>(k) + 1.0);
  }
  return t;
}

std::optional<std::int64_t> composition_count(std::int64_t n, int q) {
  if (n < 0 || q < 1) return std::nullopt;
  // C(n+k, k) with k = q-1, built incrementally; every partial product is
  // itself a binomial coefficient so the division is exact.
  const std::int64_t k = q - 1;
  __extension__ typedef unsigned __int128 Wide;
  Wide c = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    c = c * static_cast<Wide>(n + i) /
        static_cast<Wide>(i);
    if (c > static_cast<Wide>(
                std::numeric_limits<std::int64_t>::max())) {
      return std::nullopt;
    }
  }
  return static_cast<std::int64_t>(c);
}

}  // namespace cwpotts
