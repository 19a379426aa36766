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

#include "cwpotts/rc_graph.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "cwpotts/free_energy.hpp"

namespace cwpotts {
namespace {

// Vertex pair (a, b), a < b, with index b (b - 1)/2 + a.
std::pair<std::int64_t, std::int64_t> decode_pair(std::int64_t index) {
  auto b = static_cast<std::int64_t>(
      std::floor((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(index))) /
                 2.0));
  while (b * (b - 1) / 2 > index) --b;
  while ((b + 1) * b / 2 <= index) ++b;
  return {index - b * (b - 1) / 2, b};
}

void percolate_class(const std::vector<std::int64_t>& members, double p,
                     Rng& rng, ComponentForest& forest) {
  const auto m = static_cast<std::int64_t>(members.size());
  if (m < 2 || p <= 0.0) return;
  const std::int64_t pairs = m * (m - 1) / 2;
  std::int64_t k = pairs;
  if (p < 1.0) {
    std::binomial_distribution<std::int64_t> binom(pairs, p);
    k = binom(rng);
  }
  auto join = [&](std::int64_t index) {
    const auto [a, b] = decode_pair(index);
    forest.unite(members[static_cast<std::size_t>(a)],
                 members[static_cast<std::size_t>(b)]);
  };
  if (k <= pairs / 2) {
    // Floyd's algorithm: k distinct indices in [0, pairs).
    std::unordered_set<std::int64_t> chosen;
    chosen.reserve(static_cast<std::size_t>(k) * 2);
    for (std::int64_t j = pairs - k; j < pairs; ++j) {
      std::uniform_int_distribution<std::int64_t> pick(0, j);
      std::int64_t t = pick(rng);
      if (!chosen.insert(t).second) {
        t = j;
        chosen.insert(t);
      }
      join(t);
    }
  } else {
    // Selection sampling over every pair.
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::int64_t needed = k;
    for (std::int64_t index = 0; index < pairs && needed > 0; ++index) {
      const double remaining = static_cast<double>(pairs - index);
      if (unif(rng) * remaining < static_cast<double>(needed)) {
        join(index);
        --needed;
      }
    }
  }
}

void check_q_rc(int q) {
  if (q < 1) throw PreconditionError("random-cluster q must be >= 1");
}

}  // namespace

Rng make_stream(std::uint64_t seed, std::uint64_t replica) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(replica),
                    static_cast<std::uint32_t>(replica >> 32)};
  return Rng(seq);
}

CountVector Coloring::counts() const {
  std::vector<std::int64_t> out(static_cast<std::size_t>(q), 0);
  for (int c : colors) ++out[static_cast<std::size_t>(c)];
  return CountVector(std::move(out));
}

ComponentForest::ComponentForest(std::int64_t n)
    : parent_(static_cast<std::size_t>(n)),
      size_(static_cast<std::size_t>(n), 1),
      components_(n),
      largest_(n > 0 ? 1 : 0) {
  if (n < 0) throw PreconditionError("ComponentForest: n must be >= 0");
  std::iota(parent_.begin(), parent_.end(), std::int64_t{0});
}

std::int64_t ComponentForest::find(std::int64_t v) {
  std::int64_t root = v;
  while (parent_[static_cast<std::size_t>(root)] != root) {
    root = parent_[static_cast<std::size_t>(root)];
  }
  while (parent_[static_cast<std::size_t>(v)] != root) {
    const std::int64_t next = parent_[static_cast<std::size_t>(v)];
    parent_[static_cast<std::size_t>(v)] = root;
    v = next;
  }
  return root;
}

bool ComponentForest::unite(std::int64_t a, std::int64_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  auto& sa = size_[static_cast<std::size_t>(a)];
  auto& sb = size_[static_cast<std::size_t>(b)];
  if (sa < sb) {
    parent_[static_cast<std::size_t>(a)] = b;
    sb += sa;
    largest_ = std::max(largest_, sb);
  } else {
    parent_[static_cast<std::size_t>(b)] = a;
    sa += sb;
    largest_ = std::max(largest_, sa);
  }
  --components_;
  return true;
}

std::vector<std::int64_t> ComponentForest::component_sizes() {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(components_));
  for (std::int64_t v = 0; v < n(); ++v) {
    if (find(v) == v) out.push_back(size_[static_cast<std::size_t>(v)]);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

void RCParams::validate() const {
  check_q_rc(q);
  if (n < 1) throw PreconditionError("RCParams: n must be >= 1");
  if (!(p >= 0.0 && p < 1.0)) {
    throw PreconditionError("RCParams: p must lie in [0, 1)");
  }
}

RCParams RCParams::from_expansion(double beta, double gamma, int q,
                                  std::int64_t n) {
  const auto nd = static_cast<double>(n);
  RCParams params{beta / nd + gamma / (nd * nd), q, n, gamma};
  params.validate();
  return params;
}

double RCParams::beta() const { return beta_of_p(p, n); }

double beta_of_p(double p, std::int64_t n) {
  if (!(p >= 0.0 && p < 1.0)) {
    throw PreconditionError("beta_of_p: p must lie in [0, 1)");
  }
  if (n < 1) throw PreconditionError("beta_of_p: n must be >= 1");
  return -static_cast<double>(n) * std::log1p(-p);
}

double p_of_beta(double beta, std::int64_t n) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw PreconditionError("p_of_beta: beta must be finite and >= 0");
  }
  if (n < 1) throw PreconditionError("p_of_beta: n must be >= 1");
  return -std::expm1(-beta / static_cast<double>(n));
}

CountSampler::CountSampler(const ExactDistribution& dist)
    : dist_(&dist), cumulative_(dist.size()) {
  const auto lw = dist.log_weights();
  double running = 0.0;
  for (std::size_t i = 0; i < lw.size(); ++i) {
    running += std::exp(lw[i] - dist.log_z());
    cumulative_[i] = running;
  }
}

std::size_t CountSampler::sample_index(Rng& rng) const {
  std::uniform_real_distribution<double> unif(0.0, cumulative_.back());
  const double u = unif(rng);
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  const auto index = static_cast<std::size_t>(it - cumulative_.begin());
  return std::min(index, cumulative_.size() - 1);
}

CountVector CountSampler::sample(Rng& rng) const {
  return dist_->count_vector(sample_index(rng));
}

CountVector sample_counts(const ExactDistribution& dist, Rng& rng) {
  return CountSampler(dist).sample(rng);
}

Coloring assemble_coloring(const CountVector& counts, Rng& rng) {
  Coloring out;
  out.q = counts.q();
  out.colors.reserve(static_cast<std::size_t>(counts.n()));
  for (int c = 0; c < counts.q(); ++c) {
    out.colors.insert(out.colors.end(),
                      static_cast<std::size_t>(counts[static_cast<std::size_t>(c)]),
                      c);
  }
  std::shuffle(out.colors.begin(), out.colors.end(), rng);
  return out;
}

ComponentForest fk_percolate(const Coloring& sigma, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw PreconditionError("fk_percolate: p must lie in [0, 1]");
  }
  std::vector<std::vector<std::int64_t>> classes(
      static_cast<std::size_t>(sigma.q));
  for (std::int64_t v = 0; v < sigma.n(); ++v) {
    const int c = sigma.colors[static_cast<std::size_t>(v)];
    if (c < 0 || c >= sigma.q) {
      throw PreconditionError("fk_percolate: color out of range");
    }
    classes[static_cast<std::size_t>(c)].push_back(v);
  }
  ComponentForest forest(sigma.n());
  for (const auto& members : classes) percolate_class(members, p, rng, forest);
  return forest;
}

double giant_fraction(const ComponentForest& forest) {
  if (forest.n() == 0) return 0.0;
  return static_cast<double>(forest.largest_component()) /
         static_cast<double>(forest.n());
}

double erdos_renyi_giant_fraction(double c) {
  if (c <= 1.0) return 0.0;
  auto g = [c](double x) { return x - 1.0 + std::exp(-c * x); };
  std::uintmax_t max_iter = 200;
  const auto r = boost::math::tools::toms748_solve(
      g, 1e-12, 1.0, boost::math::tools::eps_tolerance<double>(50), max_iter);
  return 0.5 * (r.first + r.second);
}

double expected_asymmetric_giant_fraction(int q) {
  if (q < 2) throw PreconditionError("giant fraction: q must be >= 2");
  const double share = (q - 1.0) / q;
  const double c = phase_boundaries(q).beta_c * share;
  return share * erdos_renyi_giant_fraction(c);
}

double giant_threshold(int q, double floor) {
  return std::max(floor, 0.3 * expected_asymmetric_giant_fraction(q));
}

double giant_component_probability(int q, double gamma) {
  if (q <= 2) {
    throw PreconditionError("giant_component_probability: q must be > 2");
  }
  const double qd = q;
  const double bc = phase_boundaries(q).beta_c;
  const double ratio = (1.0 - bc / qd) / (1.0 - bc / (qd * (qd - 1.0)));
  const double second = (1.0 / qd) * std::pow(ratio, (2.0 - qd) / 2.0) *
                        std::exp(-(bc * bc / 4.0 + gamma / 2.0) * (qd - 2.0) *
                                 (qd - 2.0) / (qd * (qd - 1.0)));
  return 1.0 / (1.0 + second);
}

double zrc_exact(double p, int q, std::int64_t n, std::int64_t cap) {
  check_q_rc(q);
  const double beta = beta_of_p(p, n);
  const ExactDistribution dist = exact_distribution_raw(q, beta, 0.0, n, cap);
  return dist.log_z() - 0.5 * beta * static_cast<double>(n - 1);
}

double zrc_asymptotic(double beta, double gamma, int q, std::int64_t n) {
  check_q_rc(q);
  if (!(beta >= 0.0)) {
    throw PreconditionError("zrc_asymptotic: beta must be >= 0");
  }
  if (q == 1) return 0.0;
  const double bc = phase_boundaries(q).beta_c;
  if (!(beta < bc)) {
    throw PreconditionError("zrc_asymptotic: beta must be < beta_c(q)");
  }
  const double qd = q;
  const auto nd = static_cast<double>(n);
  return -(qd - 1.0) / 2.0 * std::log1p(-beta / qd) + nd * std::log(qd) -
         (2.0 * nd * beta + 2.0 * gamma + beta * beta) / 4.0 * (qd - 1.0) / qd;
}

double ll_discrepancy_ratio(double beta, int q) {
  if (!(beta >= 0.0)) {
    throw PreconditionError("ll_discrepancy_ratio: beta must be >= 0");
  }
  check_q_rc(q);
  return std::exp(-0.75 + beta / 2.0 + beta * beta / (4.0 * q));
}

}  // namespace cwpotts
