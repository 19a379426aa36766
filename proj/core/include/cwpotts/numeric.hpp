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

#ifndef CWPOTTS_NUMERIC_HPP_
#define CWPOTTS_NUMERIC_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cwpotts {

// Sum with fixed-order pairwise reduction; the result does not depend on
// how callers chunk their data as long as the span is the same.
double pairwise_sum(std::span<const double> values);

// log(sum exp(v_i)) with a running maximum and pairwise summation of the
// shifted exponentials. Returns -inf for an empty span.
double log_sum_exp(std::span<const double> values);

// log(n!) for k = 0..n, built once per lattice.
std::vector<double> log_factorial_table(std::int64_t n);

// C(n + q - 1, q - 1), the number of q-part compositions of n, or nullopt
// when it does not fit in 63 bits.
std::optional<std::int64_t> composition_count(std::int64_t n, int q);

}  // namespace cwpotts

#endif  // CWPOTTS_NUMERIC_HPP_
