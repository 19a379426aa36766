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

// Exact finite-n law of the color-count vector N over the lattice of
// compositions of n, in the log domain.

#ifndef CWPOTTS_EXACT_DIST_HPP_
#define CWPOTTS_EXACT_DIST_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "cwpotts/minimizers.hpp"
#include "cwpotts/types.hpp"

namespace cwpotts {

// Default bound on the number of lattice points (or spin configurations)
// an exact computation may visit. q = 3 supports n up to about 4470,
// q = 4 up to about 390.
inline constexpr std::int64_t kDefaultLatticeCap = 10'000'000;

// Raised when a lattice or configuration space exceeds the configured cap.
class CapacityError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// log(Z * mu(N)) = log multinomial(n; N) + (beta/n) sum N_i(N_i-1)/2 + h N_1.
double log_weight(const ModelParams& params, std::int64_t n,
                  const CountVector& counts);

// Full table of lattice points and their log-weights. Immutable once built.
class ExactDistribution {
 public:
  ExactDistribution(int q, std::int64_t n, double beta, double h,
                    std::vector<std::int64_t> counts,
                    std::vector<double> log_weights);

  int q() const { return q_; }
  std::int64_t n() const { return n_; }
  double beta() const { return beta_; }
  double h() const { return h_; }
  std::size_t size() const { return log_weights_.size(); }

  // Counts of lattice point i, q entries.
  std::span<const std::int64_t> point(std::size_t i) const {
    return {counts_.data() + i * static_cast<std::size_t>(q_),
            static_cast<std::size_t>(q_)};
  }
  CountVector count_vector(std::size_t i) const;

  std::span<const double> log_weights() const { return log_weights_; }
  double log_z() const { return log_z_; }
  double probability(std::size_t i) const;
  // exp(log_weight - log_Z) for every point, in lattice order.
  std::vector<double> probabilities() const;

 private:
  int q_;
  std::int64_t n_;
  double beta_;
  double h_;
  std::vector<std::int64_t> counts_;
  std::vector<double> log_weights_;
  double log_z_;
};

// Builds the exact law of N under the model; throws CapacityError when
// C(n+q-1, q-1) exceeds cap.
ExactDistribution exact_distribution(const ModelParams& params, std::int64_t n,
                                     std::int64_t cap = kDefaultLatticeCap);

// Same table for any q >= 1 (q = 1 is the one-point lattice used by the
// random-cluster identities).
ExactDistribution exact_distribution_raw(int q, double beta, double h,
                                         std::int64_t n,
                                         std::int64_t cap = kDefaultLatticeCap);

// log Z by direct summation over all q^n spin configurations.
double brute_force_log_Z(const ModelParams& params, std::int64_t n,
                         std::int64_t cap = kDefaultLatticeCap);

// Remainder r of the Stirling equivalent
//   Z mu(N) = (1 + r) n^{-(q-1)/2} A_beta(x) exp(-n f(x)),  x = N/n,
// A_beta(x) = (2 pi)^{-(q-1)/2} prod x_i^{-1/2} e^{-beta/2}.
// Requires every N_i >= 1.
double stirling_remainder(const ModelParams& params, std::int64_t n,
                          const CountVector& counts);

enum class FluctuationMode { kGaussian, kTricritical };

struct Marginal {
  std::vector<double> values;  // ascending
  std::vector<double> probs;
};

// Exact moments of the rescaled fluctuations under the law restricted to
// the window |N/n - center - d| <= window.
//
// Gaussian mode: W = (N - n center - n d)/sqrt(n), q coordinates.
// Tricritical mode: the vector (T, V_1, ..., V_q) with
//   T = (N - n center).u / (|u|^2 n^{3/4}),  u = (1-q, 1, ..., 1),
//   V = (N - n center - n^{3/4} T u) / sqrt(n).
struct FluctuationStatistics {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
  std::vector<Marginal> marginals;
  double window_mass = 0.0;  // unconditional probability of the window
};

FluctuationStatistics fluctuation_statistics(const ExactDistribution& dist,
                                             const DensityVector& center,
                                             const CenteringCorrection& d,
                                             FluctuationMode mode,
                                             double window);

// mu(|N/n - x|_2 < eps).
double ball_probability(const ExactDistribution& dist, const DensityVector& x,
                        double eps);

// Mass of each state's ball, with points that fall into several balls
// assigned to the nearest center (first listed on exact ties). Equal to the
// plain ball masses whenever the balls are disjoint.
std::vector<double> state_probabilities(const ExactDistribution& dist,
                                        std::span<const DensityVector> centers,
                                        double eps);

}  // namespace cwpotts

#endif  // CWPOTTS_EXACT_DIST_HPP_
