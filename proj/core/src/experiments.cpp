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

#include "cwpotts/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "cwpotts/free_energy.hpp"

namespace cwpotts {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ModelParams perturbed(const ModelParams& params, double lambda, double nu,
                      std::int64_t n) {
  const auto nd = static_cast<double>(n);
  return ModelParams::make(params.q, params.beta + lambda / nd,
                           params.h + nu / nd);
}

double min_pairwise_distance(const MinimizerSet& set) {
  double out = kInf;
  for (std::size_t i = 0; i < set.minimizers.size(); ++i) {
    for (std::size_t j = i + 1; j < set.minimizers.size(); ++j) {
      out = std::min(out, distance(set.minimizers[i].values(),
                                   set.minimizers[j].values()));
    }
  }
  return out;
}

void check_schedule(std::span<const std::int64_t> ns) {
  if (ns.empty()) throw PreconditionError("empty n schedule");
  for (std::int64_t n : ns) {
    if (n < 1) throw PreconditionError("schedule entries must be >= 1");
  }
}

}  // namespace

std::vector<std::int64_t> default_n_schedule() { return {100, 200, 400, 800}; }

double max_relative_error(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                          double floor) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw PreconditionError("max_relative_error: shape mismatch");
  }
  double out = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (std::abs(b(i, j)) > floor) {
        out = std::max(out, std::abs(a(i, j) - b(i, j)) / std::abs(b(i, j)));
      }
    }
  }
  return out;
}

double max_abs_error(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw PreconditionError("max_abs_error: shape mismatch");
  }
  return (a - b).cwiseAbs().maxCoeff();
}

double ks_distance(const Marginal& marginal,
                   const std::function<double(double)>& cdf) {
  double below = 0.0;
  double out = 0.0;
  for (std::size_t k = 0; k < marginal.values.size(); ++k) {
    const double f = cdf(marginal.values[k]);
    const double above = below + marginal.probs[k];
    out = std::max({out, std::abs(below - f), std::abs(above - f)});
    below = above;
  }
  return out;
}

FluctReport run_fluct(const FluctConfig& config) {
  check_schedule(config.ns);
  FluctReport report;
  report.params = config.params;
  report.lambda = config.lambda;
  report.nu = config.nu;
  report.states = find_global_minimizers(config.params);
  report.window = config.window.value_or(default_ball_radius(report.states));
  for (const auto& x : report.states.minimizers) {
    report.limits.push_back(covariance_matrix(x, config.params.beta));
  }
  for (std::int64_t n : config.ns) {
    const ModelParams params_n =
        perturbed(config.params, config.lambda, config.nu, n);
    const ExactDistribution dist = exact_distribution(params_n, n, config.cap);
    for (std::size_t s = 0; s < report.states.minimizers.size(); ++s) {
      const DensityVector& x = report.states.minimizers[s];
      const CenteringCorrection d = refine_local_minimizer(params_n, x);
      const FluctuationStatistics stats = fluctuation_statistics(
          dist, x, d, FluctuationMode::kGaussian, report.window);
      FluctRow row;
      row.state = s;
      row.n = n;
      row.covariance = stats.covariance;
      row.max_rel_error =
          max_relative_error(stats.covariance, report.limits[s].entries);
      row.max_abs_error =
          max_abs_error(stats.covariance, report.limits[s].entries);
      row.window_mass = stats.window_mass;
      row.d_norm = d.norm;
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

CoexistReport run_coexist(const CoexistConfig& config) {
  check_schedule(config.ns);
  CoexistReport report;
  report.params = config.params;
  report.lambda = config.lambda;
  report.nu = config.nu;
  report.states = find_global_minimizers(config.params);
  if (report.states.minimizers.size() < 2) {
    throw PreconditionError(
        "coexist: (beta, h) has a single minimizer; use a point of the "
        "critical line or (beta_c, 0)");
  }
  report.eps = config.eps.value_or(default_ball_radius(report.states));
  report.balls_overlap = 2.0 * report.eps > min_pairwise_distance(report.states);
  report.prediction = coexistence_probabilities(
      report.states, config.params.beta, config.lambda, config.nu);
  for (std::int64_t n : config.ns) {
    const ExactDistribution dist = exact_distribution(
        perturbed(config.params, config.lambda, config.nu, n), n, config.cap);
    CoexistRow row;
    row.n = n;
    for (const auto& x : report.states.minimizers) {
      row.ball_mass.push_back(ball_probability(dist, x, report.eps));
    }
    row.state_mass =
        state_probabilities(dist, report.states.minimizers, report.eps);
    for (std::size_t s = 0; s < row.state_mass.size(); ++s) {
      row.error.push_back(row.state_mass[s] - report.prediction.probs[s]);
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

TricriticalReport run_tricritical(int q, std::span<const std::int64_t> ns,
                                  std::int64_t cap) {
  check_schedule(ns);
  const PhaseBoundaries pb = phase_boundaries(q);
  const ModelParams params = ModelParams::make(q, pb.beta_0, pb.h_0);
  const QuarticLaw law(q);
  const DensityVector center = x_from_z(q, 0.0);

  TricriticalReport report;
  report.q = q;
  report.beta_0 = pb.beta_0;
  report.h_0 = pb.h_0;
  report.quartic_coefficient = law.coefficient();
  report.limit_t_variance = law.second_moment();
  report.limit_t_fourth_moment = law.fourth_moment();
  report.v_limit = tricritical_V_covariance(q);

  const auto cdf = [&law](double t) { return law.cdf(t); };
  for (std::int64_t n : ns) {
    const ExactDistribution dist = exact_distribution(params, n, cap);
    const FluctuationStatistics stats = fluctuation_statistics(
        dist, center, CenteringCorrection{}, FluctuationMode::kTricritical,
        kInf);
    TricriticalRow row;
    row.n = n;
    row.t_marginal = stats.marginals[0];
    row.ks = ks_distance(row.t_marginal, cdf);
    row.t_variance = stats.covariance(0, 0);
    for (std::size_t k = 0; k < row.t_marginal.values.size(); ++k) {
      const double dev = row.t_marginal.values[k] - stats.mean[0];
      row.t_fourth_moment += row.t_marginal.probs[k] * std::pow(dev, 4);
    }
    const double var_t = stats.covariance(0, 0);
    for (int j = 1; j <= q; ++j) {
      const double var_v = stats.covariance(j, j);
      double corr = 0.0;
      if (var_v > 1e-20 && var_t > 0.0) {
        corr = stats.covariance(0, j) / std::sqrt(var_t * var_v);
      }
      row.corr_tv.push_back(corr);
      row.max_abs_corr = std::max(row.max_abs_corr, std::abs(corr));
    }
    row.v_covariance = stats.covariance.bottomRightCorner(q, q);
    row.v_max_rel_error =
        max_relative_error(row.v_covariance, report.v_limit.entries);
    report.rows.push_back(std::move(row));
  }
  return report;
}

GiantReport run_rc_giant(const GiantConfig& config) {
  check_schedule(config.ns);
  if (config.replicas < 1) {
    throw PreconditionError("rc-giant: replicas must be >= 1");
  }
  if (config.threads < 1) {
    throw PreconditionError("rc-giant: threads must be >= 1");
  }
  const int q = config.q;
  const double beta_c = phase_boundaries(q).beta_c;

  GiantReport report;
  report.q = q;
  report.gamma = config.gamma;
  report.prediction = giant_component_probability(q, config.gamma);
  report.threshold = config.threshold.value_or(giant_threshold(q));
  const MinimizerSet states =
      find_global_minimizers(ModelParams::make(q, beta_c, 0.0));
  report.eps = config.eps.value_or(default_ball_radius(states));
  const DensityVector uniform(
      std::vector<double>(static_cast<std::size_t>(q), 1.0 / q));

  for (std::int64_t n : config.ns) {
    const RCParams rc = RCParams::from_expansion(beta_c, config.gamma, q, n);
    const double beta_n = rc.beta();
    const ExactDistribution dist =
        exact_distribution(ModelParams::make(q, beta_n, 0.0), n, config.cap);
    const CountSampler sampler(dist);

    std::vector<SampleRecord> records(static_cast<std::size_t>(config.replicas));
    const int workers = std::min(config.threads, config.replicas);
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    auto work = [&](int worker) {
      try {
        for (int r = worker; r < config.replicas; r += workers) {
          Rng rng = make_stream(config.seed, static_cast<std::uint64_t>(r));
          const CountVector counts = sampler.sample(rng);
          const Coloring sigma = assemble_coloring(counts, rng);
          const ComponentForest forest = fk_percolate(sigma, rc.p, rng);
          SampleRecord& rec = records[static_cast<std::size_t>(r)];
          rec.seed = config.seed;
          rec.replica = static_cast<std::uint64_t>(r);
          rec.counts.assign(counts.counts().begin(), counts.counts().end());
          rec.giant_fraction = giant_fraction(forest);
          rec.component_count = forest.component_count();
        }
      } catch (...) {
        errors[static_cast<std::size_t>(worker)] = std::current_exception();
      }
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
      for (auto& t : pool) t.join();
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }

    GiantRow row;
    row.n = n;
    row.p = rc.p;
    row.beta_n = beta_n;
    row.replicas = config.replicas;
    double fraction_sum = 0.0;
    for (const auto& rec : records) {
      if (rec.giant_fraction >= report.threshold) ++row.giant_count;
      fraction_sum += rec.giant_fraction;
    }
    const double reps = config.replicas;
    row.frequency = row.giant_count / reps;
    row.mean_giant_fraction = fraction_sum / reps;
    row.std_error =
        std::sqrt(report.prediction * (1.0 - report.prediction) / reps);
    row.exact_ordered_mass = 1.0 - ball_probability(dist, uniform, report.eps);
    row.exact_bias = row.exact_ordered_mass - report.prediction;
    row.mc_bias = row.frequency - report.prediction;
    report.rows.push_back(row);
    if (config.keep_samples) {
      report.samples.insert(report.samples.end(), records.begin(),
                            records.end());
    }
  }
  return report;
}

RczReport run_rc_z(int q, double beta, double gamma,
                   std::span<const std::int64_t> ns, std::int64_t cap) {
  check_schedule(ns);
  RczReport report;
  report.q = q;
  report.beta = beta;
  report.gamma = gamma;
  report.ll_ratio = ll_discrepancy_ratio(beta, q);
  for (std::int64_t n : ns) {
    const RCParams rc = RCParams::from_expansion(beta, gamma, q, n);
    RczRow row;
    row.n = n;
    row.p = rc.p;
    row.exact = zrc_exact(rc.p, q, n, cap);
    row.asymptotic = zrc_asymptotic(beta, gamma, q, n);
    row.difference = row.exact - row.asymptotic;
    report.rows.push_back(row);
  }
  return report;
}

std::vector<CriticalLineRow> critical_line_table(int q,
                                                 std::span<const double> zs) {
  std::vector<CriticalLineRow> out;
  for (double z : zs) {
    const CriticalPoint cp = critical_point_from_z(q, z);
    const std::vector<DensityVector> pair{x_from_z(q, z), x_from_z(q, -z)};
    const CoexistenceWeights w =
        coexistence_probabilities(pair, cp.beta_z, 0.0, 0.0);
    CriticalLineRow row;
    row.z = z;
    row.beta_z = cp.beta_z;
    row.h_z = cp.h_z;
    row.h_t = critical_field(q, cp.beta_z).h;
    row.prob_plus = w.probs[0];
    row.prob_minus = w.probs[1];
    out.push_back(row);
  }
  return out;
}

std::vector<double> critical_line_grid(int q, int points) {
  if (q < 3) throw PreconditionError("critical line requires q >= 3");
  if (points < 1) throw PreconditionError("critical line needs >= 1 point");
  const double zmax = static_cast<double>(q - 2) / q;
  std::vector<double> out;
  for (int k = 1; k <= points; ++k) out.push_back(zmax * k / (points + 1));
  return out;
}

}  // namespace cwpotts
