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

// Finite-n experiments that compare exact or sampled statistics with their
// limiting counterparts. Shared by the command-line tool and the
// acceptance suite.

#ifndef CWPOTTS_EXPERIMENTS_HPP_
#define CWPOTTS_EXPERIMENTS_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cwpotts/exact_dist.hpp"
#include "cwpotts/limit_laws.hpp"
#include "cwpotts/minimizers.hpp"
#include "cwpotts/rc_graph.hpp"
#include "cwpotts/types.hpp"

namespace cwpotts {

// Geometric schedule {100, 200, 400, 800}.
std::vector<std::int64_t> default_n_schedule();

// Largest |a_ij - b_ij| / |b_ij| over entries with |b_ij| > floor.
double max_relative_error(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                          double floor = 1e-12);
double max_abs_error(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

// sup_t |G(t) - F(t)| between the step cdf G of a discrete marginal and a
// continuous cdf F, checked on both sides of every atom.
double ks_distance(const Marginal& marginal,
                   const std::function<double(double)>& cdf);

// Row per (state, n): the exact covariance of W = (N - n x - n d_n)/sqrt(n)
// restricted to the window around x, against K(x). The law is taken at
// (beta + lambda/n, h + nu/n) and d_n is the shift to its nearest local
// minimizer.
struct FluctRow {
  std::size_t state = 0;
  std::int64_t n = 0;
  Eigen::MatrixXd covariance;
  double max_rel_error = 0.0;
  double max_abs_error = 0.0;
  double window_mass = 0.0;
  double d_norm = 0.0;
};

struct FluctReport {
  ModelParams params;
  double lambda = 0.0;
  double nu = 0.0;
  double window = 0.0;  // +inf for a single state
  MinimizerSet states;
  std::vector<CovarianceMatrix> limits;  // one per state
  std::vector<FluctRow> rows;
};

struct FluctConfig {
  ModelParams params;
  std::vector<std::int64_t> ns;
  double lambda = 0.0;
  double nu = 0.0;
  std::optional<double> window;  // default: default_ball_radius
  std::int64_t cap = kDefaultLatticeCap;
};

FluctReport run_fluct(const FluctConfig& config);

// Ball masses around each state against the normalized coexistence
// weights, at (beta + lambda/n, h + nu/n). Masses of points inside several
// balls go to the nearest state.
struct CoexistRow {
  std::int64_t n = 0;
  std::vector<double> ball_mass;         // plain mu(|N/n - x| < eps)
  std::vector<double> state_mass;        // overlap resolved by nearest state
  std::vector<double> error;             // state_mass - prediction
};

struct CoexistReport {
  ModelParams params;
  double lambda = 0.0;
  double nu = 0.0;
  double eps = 0.0;
  bool balls_overlap = false;
  MinimizerSet states;
  CoexistenceWeights prediction;
  std::vector<CoexistRow> rows;
};

struct CoexistConfig {
  ModelParams params;
  std::vector<std::int64_t> ns;
  double lambda = 0.0;
  double nu = 0.0;
  std::optional<double> eps;
  std::int64_t cap = kDefaultLatticeCap;
};

CoexistReport run_coexist(const CoexistConfig& config);

// Exact (T, V) statistics at (beta_0, h_0) against the quartic law of T and
// the Gaussian limit of V.
struct TricriticalRow {
  std::int64_t n = 0;
  double ks = 0.0;
  double t_variance = 0.0;
  double t_fourth_moment = 0.0;
  std::vector<double> corr_tv;  // corr(T, V_j); 0 when V_j is degenerate
  double max_abs_corr = 0.0;
  Eigen::MatrixXd v_covariance;
  double v_max_rel_error = 0.0;
  Marginal t_marginal;
};

struct TricriticalReport {
  int q = 3;
  double beta_0 = 0.0;
  double h_0 = 0.0;
  double quartic_coefficient = 0.0;
  double limit_t_variance = 0.0;
  double limit_t_fourth_moment = 0.0;
  CovarianceMatrix v_limit;
  std::vector<TricriticalRow> rows;
};

TricriticalReport run_tricritical(int q, std::span<const std::int64_t> ns,
                                  std::int64_t cap = kDefaultLatticeCap);

// Monte Carlo giant-component frequency of G(n, p_n, q) at
// p_n = beta_c/n + gamma/n^2 through the Fortuin-Kasteleyn coupling, with
// the exact probability that N/n avoids the ball around the uniform state.
struct GiantRow {
  std::int64_t n = 0;
  double p = 0.0;
  double beta_n = 0.0;
  int replicas = 0;
  int giant_count = 0;
  double frequency = 0.0;
  double std_error = 0.0;  // binomial, at the predicted probability
  double exact_ordered_mass = 0.0;
  double exact_bias = 0.0;  // exact_ordered_mass - prediction
  double mc_bias = 0.0;     // frequency - prediction
  double mean_giant_fraction = 0.0;
};

struct GiantReport {
  int q = 3;
  double gamma = 0.0;
  double prediction = 0.0;
  double threshold = 0.0;
  double eps = 0.0;
  std::vector<GiantRow> rows;
  std::vector<SampleRecord> samples;  // kept when requested
};

struct GiantConfig {
  int q = 3;
  double gamma = 0.0;
  std::vector<std::int64_t> ns;
  int replicas = 400;
  std::uint64_t seed = 1;
  int threads = 1;
  std::optional<double> threshold;  // default: giant_threshold(q)
  std::optional<double> eps;        // default: default_ball_radius
  bool keep_samples = false;
  std::int64_t cap = kDefaultLatticeCap;
};

GiantReport run_rc_giant(const GiantConfig& config);

// zrc_exact at p_n = beta/n + gamma/n^2 against zrc_asymptotic(beta, gamma).
struct RczRow {
  std::int64_t n = 0;
  double p = 0.0;
  double exact = 0.0;
  double asymptotic = 0.0;
  double difference = 0.0;  // exact - asymptotic
};

struct RczReport {
  int q = 3;
  double beta = 0.0;
  double gamma = 0.0;
  double ll_ratio = 0.0;
  std::vector<RczRow> rows;
};

RczReport run_rc_z(int q, double beta, double gamma,
                   std::span<const std::int64_t> ns,
                   std::int64_t cap = kDefaultLatticeCap);

// (beta_z, h_z) along the critical line with the coexistence split of the
// pair and a check that h_T(beta_z) = h_z.
struct CriticalLineRow {
  double z = 0.0;
  double beta_z = 0.0;
  double h_z = 0.0;
  double h_t = 0.0;
  double prob_plus = 0.0;   // weight of x_z at lambda = nu = 0
  double prob_minus = 0.0;  // weight of x_{-z}
};

std::vector<CriticalLineRow> critical_line_table(int q,
                                                 std::span<const double> zs);

// z equally spaced strictly inside (0, (q-2)/q).
std::vector<double> critical_line_grid(int q, int points);

}  // namespace cwpotts

#endif  // CWPOTTS_EXPERIMENTS_HPP_
