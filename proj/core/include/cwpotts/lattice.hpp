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

#ifndef CWPOTTS_LATTICE_HPP_
#define CWPOTTS_LATTICE_HPP_

#include <cstdint>
#include <iterator>
#include <vector>

namespace cwpotts {

// The compositions of n into q ordered nonnegative parts, i.e. the count
// lattice n * Omega^n. Iteration is lexicographic in decreasing order,
// from (n, 0, ..., 0) to (0, ..., 0, n), and visits C(n+q-1, q-1) points.
class CountLattice {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = std::vector<std::int64_t>;
    using difference_type = std::ptrdiff_t;
    using pointer = const value_type*;
    using reference = const value_type&;

    iterator() = default;

    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }

    friend bool operator==(const iterator& a, const iterator& b) {
      return a.done_ == b.done_;
    }

   private:
    friend class CountLattice;
    explicit iterator(std::int64_t n, int q);

    std::vector<std::int64_t> current_;
    bool done_ = true;
  };

  // Throws PreconditionError for n < 0 or q < 1.
  CountLattice(std::int64_t n, int q);

  std::int64_t n() const { return n_; }
  int q() const { return q_; }

  // C(n+q-1, q-1); throws PreconditionError when it overflows 63 bits.
  std::int64_t size() const;

  iterator begin() const { return iterator(n_, q_); }
  iterator end() const { return iterator(); }

 private:
  std::int64_t n_;
  int q_;
};

inline CountLattice enumerate_counts(std::int64_t n, int q) {
  return CountLattice(n, q);
}

}  // namespace cwpotts

#endif  // CWPOTTS_LATTICE_HPP_
