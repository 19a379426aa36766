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

// Monte Carlo sampling of the model through its exact count law, the
// Fortuin-Kasteleyn coupling to the random-cluster model G(n, p, q) on the
// complete graph, and closed forms for the random-cluster partition
// function.

#ifndef CWPOTTS_RC_GRAPH_HPP_
#define CWPOTTS_RC_GRAPH_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "cwpotts/exact_dist.hpp"
#include "cwpotts/types.hpp"

namespace cwpotts {

using Rng = std::mt19937_64;

// Independent stream for replica `replica` of a run seeded with `seed`.
Rng make_stream(std::uint64_t seed, std::uint64_t replica);

// A spin configuration; colors are stored 0-based, in 0..q-1.
struct Coloring {
  int q = 0;
  std::vector<int> colors;

  std::int64_t n() const { return static_cast<std::int64_t>(colors.size()); }
  CountVector counts() const;
};

// Union-find over n vertices with path compression and union by size.
class ComponentForest {
 public:
  explicit ComponentForest(std::int64_t n);

  std::int64_t n() const { return static_cast<std::int64_t>(parent_.size()); }
  std::int64_t find(std::int64_t v);
  // Returns true when the two vertices were in different components.
  bool unite(std::int64_t a, std::int64_t b);

  std::int64_t component_count() const { return components_; }
  std::int64_t largest_component() const { return largest_; }
  std::int64_t component_size(std::int64_t v) { return size_[find(v)]; }
  // Sizes of all components, descending.
  std::vector<std::int64_t> component_sizes();

 private:
  std::vector<std::int64_t> parent_;
  std::vector<std::int64_t> size_;
  std::int64_t components_;
  std::int64_t largest_;
};

// Edge probability p of G(n, p, q), with the second-order coefficient gamma
// when p was built as beta/n + gamma/n^2.
struct RCParams {
  double p = 0.0;
  int q = 1;
  std::int64_t n = 0;
  double gamma = 0.0;

  void validate() const;
  // p_n = beta/n + gamma/n^2.
  static RCParams from_expansion(double beta, double gamma, int q,
                                 std::int64_t n);
  double beta() const;
};

// beta = -n log(1 - p), for p in [0, 1).
double beta_of_p(double p, std::int64_t n);
// p = 1 - exp(-beta/n), for beta >= 0.
double p_of_beta(double beta, std::int64_t n);

// Inverse-CDF sampler over the lattice of an exact distribution.
class CountSampler {
 public:
  explicit CountSampler(const ExactDistribution& dist);

  CountVector sample(Rng& rng) const;
  std::size_t sample_index(Rng& rng) const;

 private:
  const ExactDistribution* dist_;
  std::vector<double> cumulative_;
};

// One draw of N; builds a sampler, so prefer CountSampler for repeated use.
CountVector sample_counts(const ExactDistribution& dist, Rng& rng);

// Uniformly random coloring with exactly N_i vertices of color i.
Coloring assemble_coloring(const CountVector& counts, Rng& rng);

// Opens each same-color edge independently with probability p. Each color
// class of size m draws its number of open edges from Binomial(C(m,2), p)
// and then that many distinct pairs, so the expected work is
// O(sum N_i^2 p + n).
ComponentForest fk_percolate(const Coloring& sigma, double p, Rng& rng);

// One line of a Monte Carlo sample log.
struct SampleRecord {
  std::uint64_t seed = 0;
  std::uint64_t replica = 0;
  std::vector<std::int64_t> counts;
  double giant_fraction = 0.0;
  std::int64_t component_count = 0;
};

// Largest component size over n.
double giant_fraction(const ComponentForest& forest);

// Positive root of x = 1 - exp(-c x); 0 for c <= 1.
double erdos_renyi_giant_fraction(double c);

// Expected giant fraction in an ordered state at (beta_c, 0): the largest
// color class carries density (q-1)/q and mean degree beta_c (q-1)/q.
double expected_asymmetric_giant_fraction(int q);

// Detection cutoff max(floor, 0.3 * expected_asymmetric_giant_fraction(q)).
double giant_threshold(int q, double floor = 0.1);

// Limit probability that G(n, p_n, q) with p_n = beta_c/n + gamma/n^2 has a
// giant component. Requires q > 2.
double giant_component_probability(int q, double gamma);

// log Z^RC_{p,q,n} = log Z_{beta,0,n} - (beta/2)(n-1), beta = beta_of_p(p, n).
// Any integer q >= 1.
double zrc_exact(double p, int q, std::int64_t n,
                 std::int64_t cap = kDefaultLatticeCap);

// log of (1 - beta/q)^{-(q-1)/2} q^n exp(-((2 n beta + 2 gamma + beta^2)/4)
// (q-1)/q). Requires beta < beta_c(q) for q >= 2; identically 0 for q = 1.
double zrc_asymptotic(double beta, double gamma, int q, std::int64_t n);

// exp(-3/4 + beta/2 + beta^2/(4q)).
double ll_discrepancy_ratio(double beta, int q);

}  // namespace cwpotts

#endif  // CWPOTTS_RC_GRAPH_HPP_
