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

#include "cwpotts/exact_dist.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cwpotts/free_energy.hpp"
#include "cwpotts/lattice.hpp"
#include "cwpotts/numeric.hpp"

namespace cwpotts {
namespace {

void check_cap(std::int64_t size, std::int64_t cap, const char* what) {
  if (size > cap) {
    throw CapacityError(std::string(what) + ": " + std::to_string(size) +
                        " points exceed the lattice cap " +
                        std::to_string(cap));
  }
}

double pair_term(std::int64_t c) {
  return 0.5 * static_cast<double>(c) * static_cast<double>(c - 1);
}

// Merges (value, prob) pairs with equal values into an ascending marginal.
Marginal collapse(std::vector<std::pair<double, double>>& pairs) {
  std::sort(pairs.begin(), pairs.end());
  Marginal m;
  for (const auto& [v, p] : pairs) {
    if (!m.values.empty() &&
        std::abs(v - m.values.back()) <= 1e-12 * (1.0 + std::abs(v))) {
      m.probs.back() += p;
    } else {
      m.values.push_back(v);
      m.probs.push_back(p);
    }
  }
  return m;
}

}  // namespace

double log_weight(const ModelParams& params, std::int64_t n,
                  const CountVector& counts) {
  params.validate();
  if (counts.q() != params.q) {
    throw PreconditionError("log_weight: count vector has wrong length");
  }
  if (counts.n() != n || n < 1) {
    throw PreconditionError("log_weight: counts must sum to n >= 1");
  }
  double lw = std::lgamma(static_cast<double>(n) + 1.0);
  double pairs = 0.0;
  for (auto c : counts.counts()) {
    lw -= std::lgamma(static_cast<double>(c) + 1.0);
    pairs += pair_term(c);
  }
  return lw + params.beta / static_cast<double>(n) * pairs +
         params.h * static_cast<double>(counts[0]);
}

ExactDistribution::ExactDistribution(int q, std::int64_t n, double beta,
                                     double h,
                                     std::vector<std::int64_t> counts,
                                     std::vector<double> log_weights)
    : q_(q),
      n_(n),
      beta_(beta),
      h_(h),
      counts_(std::move(counts)),
      log_weights_(std::move(log_weights)) {
  if (counts_.size() != log_weights_.size() * static_cast<std::size_t>(q_)) {
    throw PreconditionError("ExactDistribution: table size mismatch");
  }
  log_z_ = log_sum_exp(log_weights_);
}

CountVector ExactDistribution::count_vector(std::size_t i) const {
  const auto p = point(i);
  return CountVector(std::vector<std::int64_t>(p.begin(), p.end()));
}

double ExactDistribution::probability(std::size_t i) const {
  return std::exp(log_weights_[i] - log_z_);
}

std::vector<double> ExactDistribution::probabilities() const {
  std::vector<double> p(log_weights_.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = probability(i);
  return p;
}

ExactDistribution exact_distribution_raw(int q, double beta, double h,
                                         std::int64_t n, std::int64_t cap) {
  if (q < 1) throw PreconditionError("exact_distribution: q must be >= 1");
  if (n < 1) throw PreconditionError("exact_distribution: n must be >= 1");
  if (!(beta >= 0.0) || !(h >= 0.0)) {
    throw PreconditionError("exact_distribution: beta and h must be >= 0");
  }
  const CountLattice lattice(n, q);
  const std::int64_t size = lattice.size();
  check_cap(size, cap, "exact_distribution");

  const std::vector<double> lf = log_factorial_table(n);
  const double coupling = beta / static_cast<double>(n);
  std::vector<std::int64_t> counts;
  std::vector<double> lw;
  counts.reserve(static_cast<std::size_t>(size) * static_cast<std::size_t>(q));
  lw.reserve(static_cast<std::size_t>(size));
  for (const auto& c : lattice) {
    double w = lf[static_cast<std::size_t>(n)];
    double pairs = 0.0;
    for (auto ci : c) {
      w -= lf[static_cast<std::size_t>(ci)];
      pairs += pair_term(ci);
    }
    lw.push_back(w + coupling * pairs + h * static_cast<double>(c[0]));
    counts.insert(counts.end(), c.begin(), c.end());
  }
  return ExactDistribution(q, n, beta, h, std::move(counts), std::move(lw));
}

ExactDistribution exact_distribution(const ModelParams& params, std::int64_t n,
                                     std::int64_t cap) {
  params.validate();
  return exact_distribution_raw(params.q, params.beta, params.h, n, cap);
}

double brute_force_log_Z(const ModelParams& params, std::int64_t n,
                         std::int64_t cap) {
  params.validate();
  if (n < 1) throw PreconditionError("brute_force_log_Z: n must be >= 1");
  const double configs =
      std::pow(static_cast<double>(params.q), static_cast<double>(n));
  if (configs > static_cast<double>(cap)) {
    throw CapacityError("brute_force_log_Z: q^n = " + std::to_string(configs) +
                        " exceeds the cap " + std::to_string(cap));
  }
  const auto total = static_cast<std::size_t>(configs);
  const double coupling = params.beta / static_cast<double>(n);

  // Odometer over sigma in {0..q-1}^n with running color counts.
  std::vector<int> sigma(static_cast<std::size_t>(n), 0);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(params.q), 0);
  counts[0] = n;
  std::vector<double> energies;
  energies.reserve(total);
  for (std::size_t k = 0; k < total; ++k) {
    double pairs = 0.0;
    for (auto c : counts) pairs += pair_term(c);
    energies.push_back(coupling * pairs +
                       params.h * static_cast<double>(counts[0]));
    for (auto& s : sigma) {
      --counts[static_cast<std::size_t>(s)];
      s = (s + 1) % params.q;
      ++counts[static_cast<std::size_t>(s)];
      if (s != 0) break;
    }
  }
  return log_sum_exp(energies);
}

double stirling_remainder(const ModelParams& params, std::int64_t n,
                          const CountVector& counts) {
  params.validate();
  for (auto c : counts.counts()) {
    if (c < 1) {
      throw PreconditionError(
          "stirling_remainder: every count must be >= 1");
    }
  }
  const DensityVector x = counts.density();
  const int q = params.q;
  double log_a = -0.5 * (q - 1) * std::log(2.0 * std::numbers::pi) -
                 0.5 * params.beta;
  for (double xi : x.values()) log_a -= 0.5 * std::log(xi);
  const double log_equiv = -0.5 * (q - 1) * std::log(static_cast<double>(n)) +
                           log_a -
                           static_cast<double>(n) * free_energy(params, x);
  return std::expm1(log_weight(params, n, counts) - log_equiv);
}

FluctuationStatistics fluctuation_statistics(const ExactDistribution& dist,
                                             const DensityVector& center,
                                             const CenteringCorrection& d,
                                             FluctuationMode mode,
                                             double window) {
  const int q = dist.q();
  const auto qs = static_cast<std::size_t>(q);
  if (center.q() != q) {
    throw PreconditionError("fluctuation_statistics: center has wrong length");
  }
  if (!d.d.empty() && d.d.size() != qs) {
    throw PreconditionError("fluctuation_statistics: d has wrong length");
  }
  if (!(window > 0.0)) {
    throw PreconditionError("fluctuation_statistics: window must be > 0");
  }
  std::vector<double> shifted(qs);
  for (std::size_t i = 0; i < qs; ++i) {
    shifted[i] = center[i] + (d.d.empty() ? 0.0 : d.d[i]);
    if (!(shifted[i] > 0.0)) {
      throw PreconditionError(
          "fluctuation_statistics: center + d must be interior");
    }
  }

  const double n = static_cast<double>(dist.n());
  const double sqrt_n = std::sqrt(n);
  const double n34 = std::pow(n, 0.75);
  const bool tri = mode == FluctuationMode::kTricritical;
  const std::size_t dim = tri ? qs + 1 : qs;

  // u = (1-q, 1, ..., 1), |u|^2 = q(q-1).
  std::vector<double> u(qs, 1.0);
  u[0] = 1.0 - q;
  const double u2 = static_cast<double>(q) * (q - 1);
  double center_dot_u = 0.0;
  for (std::size_t i = 0; i < qs; ++i) center_dot_u += n * center[i] * u[i];

  std::vector<double> y(dim);
  auto fill = [&](std::span<const std::int64_t> c) {
    if (!tri) {
      for (std::size_t i = 0; i < qs; ++i) {
        y[i] = (static_cast<double>(c[i]) - n * shifted[i]) / sqrt_n;
      }
      return;
    }
    std::int64_t dot = 0;
    for (std::size_t i = 0; i < qs; ++i) {
      dot += c[i] * static_cast<std::int64_t>(u[i]);
    }
    const double t = (static_cast<double>(dot) - center_dot_u) / (u2 * n34);
    y[0] = t;
    for (std::size_t i = 0; i < qs; ++i) {
      y[i + 1] = (static_cast<double>(c[i]) - n * center[i] - n34 * t * u[i]) /
                 sqrt_n;
    }
  };
  auto in_window = [&](std::span<const std::int64_t> c) {
    double s = 0.0;
    for (std::size_t i = 0; i < qs; ++i) {
      const double e = static_cast<double>(c[i]) / n - shifted[i];
      s += e * e;
    }
    return std::sqrt(s) <= window;
  };

  std::vector<std::size_t> members;
  std::vector<double> probs;
  for (std::size_t k = 0; k < dist.size(); ++k) {
    if (in_window(dist.point(k))) {
      members.push_back(k);
      probs.push_back(dist.probability(k));
    }
  }
  const double mass = pairwise_sum(probs);
  if (members.empty() || !(mass > 0.0)) {
    throw PreconditionError("fluctuation_statistics: empty window");
  }

  FluctuationStatistics out;
  out.window_mass = mass;
  out.mean = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < members.size(); ++k) {
    fill(dist.point(members[k]));
    const double w = probs[k] / mass;
    for (std::size_t i = 0; i < dim; ++i) {
      out.mean[static_cast<Eigen::Index>(i)] += w * y[i];
    }
  }
  out.covariance = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                         static_cast<Eigen::Index>(dim));
  std::vector<std::vector<std::pair<double, double>>> marg(dim);
  for (auto& m : marg) m.reserve(members.size());
  Eigen::VectorXd dev(static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < members.size(); ++k) {
    fill(dist.point(members[k]));
    const double w = probs[k] / mass;
    for (std::size_t i = 0; i < dim; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      dev[ii] = y[i] - out.mean[ii];
      marg[i].emplace_back(y[i], w);
    }
    out.covariance.noalias() += w * dev * dev.transpose();
  }
  out.marginals.reserve(dim);
  for (auto& m : marg) out.marginals.push_back(collapse(m));
  return out;
}

double ball_probability(const ExactDistribution& dist, const DensityVector& x,
                        double eps) {
  if (x.q() != dist.q()) {
    throw PreconditionError("ball_probability: dimension mismatch");
  }
  if (!(eps > 0.0)) throw PreconditionError("ball_probability: eps must be > 0");
  const double n = static_cast<double>(dist.n());
  std::vector<double> inside;
  for (std::size_t k = 0; k < dist.size(); ++k) {
    const auto c = dist.point(k);
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const double e = static_cast<double>(c[i]) / n - x[i];
      s += e * e;
    }
    if (std::sqrt(s) < eps) inside.push_back(dist.probability(k));
  }
  return pairwise_sum(inside);
}

std::vector<double> state_probabilities(const ExactDistribution& dist,
                                        std::span<const DensityVector> centers,
                                        double eps) {
  if (!(eps > 0.0)) {
    throw PreconditionError("state_probabilities: eps must be > 0");
  }
  for (const auto& c : centers) {
    if (c.q() != dist.q()) {
      throw PreconditionError("state_probabilities: dimension mismatch");
    }
  }
  const double n = static_cast<double>(dist.n());
  std::vector<std::vector<double>> mass(centers.size());
  for (std::size_t k = 0; k < dist.size(); ++k) {
    const auto c = dist.point(k);
    std::size_t best = centers.size();
    double best_dist = eps;
    for (std::size_t s = 0; s < centers.size(); ++s) {
      double sq = 0.0;
      for (std::size_t i = 0; i < c.size(); ++i) {
        const double e = static_cast<double>(c[i]) / n - centers[s][i];
        sq += e * e;
      }
      const double r = std::sqrt(sq);
      if (r < best_dist) {
        best = s;
        best_dist = r;
      }
    }
    if (best < centers.size()) mass[best].push_back(dist.probability(k));
  }
  std::vector<double> out;
  out.reserve(centers.size());
  for (const auto& m : mass) out.push_back(pairwise_sum(m));
  return out;
}

}  // namespace cwpotts
