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

#include "cwpotts/lattice.hpp"

#include <string>

#include "cwpotts/numeric.hpp"
#include "cwpotts/types.hpp"

namespace cwpotts {

CountLattice::CountLattice(std::int64_t n, int q) : n_(n), q_(q) {
  if (n < 0) throw PreconditionError("CountLattice: n must be >= 0");
  if (q < 1) throw PreconditionError("CountLattice: q must be >= 1");
}

std::int64_t CountLattice::size() const {
  const auto c = composition_count(n_, q_);
  if (!c) {
    throw PreconditionError("CountLattice: C(n+q-1, q-1) overflows for n = " +
                            std::to_string(n_) +
                            ", q = " + std::to_string(q_));
  }
  return *c;
}

CountLattice::iterator::iterator(std::int64_t n, int q)
    : current_(static_cast<std::size_t>(q), 0), done_(false) {
  current_[0] = n;
}

CountLattice::iterator& CountLattice::iterator::operator++() {
  const std::size_t last = current_.size() - 1;
  // Rightmost movable unit among the first q-1 parts.
  std::size_t i = last;
  while (i > 0 && current_[i - 1] == 0) --i;
  if (i == 0) {
    done_ = true;
    return *this;
  }
  --i;
  const std::int64_t tail = current_[last];
  current_[last] = 0;
  current_[i] -= 1;
  current_[i + 1] = tail + 1;
  return *this;
}

}  // namespace cwpotts
