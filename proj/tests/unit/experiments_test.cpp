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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "cwpotts/experiments.hpp"
#include "cwpotts/free_energy.hpp"

namespace cwpotts {
namespace {

TEST(ErrorMetricsTest, RelativeAndAbsolute) {
  Eigen::MatrixXd a(2, 2);
  Eigen::MatrixXd b(2, 2);
  a << 1.1, 0.0, 0.5, 2.0;
  b << 1.0, 0.0, 0.4, 2.0;
  EXPECT_NEAR(max_relative_error(a, b), 0.25, 1e-12);
  EXPECT_NEAR(max_abs_error(a, b), 0.1, 1e-12);
  EXPECT_THROW(max_abs_error(a, Eigen::MatrixXd(3, 3)), PreconditionError);
}

TEST(KsDistanceTest, AtomsAndContinuous) {
  // A fair coin on {0, 1} against Uniform(0, 1).
  const Marginal coin{{0.0, 1.0}, {0.5, 0.5}};
  auto uniform = [](double t) { return std::clamp(t, 0.0, 1.0); };
  EXPECT_NEAR(ks_distance(coin, uniform), 0.5, 1e-15);
  // A fine lattice approximates the uniform law.
  Marginal fine;
  const int m = 1000;
  for (int k = 1; k <= m; ++k) {
    fine.values.push_back(static_cast<double>(k) / m);
    fine.probs.push_back(1.0 / m);
  }
  EXPECT_NEAR(ks_distance(fine, uniform), 1.0 / m, 1e-12);
}

TEST(RunFluctTest, SubcriticalRowsConverge) {
  FluctConfig config;
  config.params = ModelParams::make(3, 1.0, 0.0);
  config.ns = {100, 400};
  const FluctReport report = run_fluct(config);
  ASSERT_EQ(report.rows.size(), 2u);
  EXPECT_LT(report.rows[1].max_rel_error, report.rows[0].max_rel_error);
  EXPECT_LT(report.rows[1].max_rel_error, 0.02);
  EXPECT_TRUE(std::isinf(report.window));
  config.ns = {};
  EXPECT_THROW(run_fluct(config), PreconditionError);
}

TEST(RunCoexistTest, CriticalLineSmall) {
  const CriticalPoint cp = critical_point_from_z(3, 0.2);
  CoexistConfig config;
  config.params = cp.params(3);
  config.ns = {100, 800};
  config.eps = 0.15;
  const CoexistReport report = run_coexist(config);
  ASSERT_EQ(report.states.minimizers.size(), 2u);
  double total = 0.0;
  for (double p : report.prediction.probs) total += p;
  EXPECT_NEAR(total, 1.0, 1e-14);
  EXPECT_LT(std::abs(report.rows[1].error[0]), std::abs(report.rows[0].error[0]));
  config.params = ModelParams::make(3, 1.0, 0.0);
  EXPECT_THROW(run_coexist(config), PreconditionError);
}

TEST(RunRcZTest, RowsMatchFormulas) {
  const std::vector<std::int64_t> ns{100, 200};
  const RczReport report = run_rc_z(3, 1.0, 0.0, ns);
  ASSERT_EQ(report.rows.size(), 2u);
  for (const auto& row : report.rows) {
    EXPECT_DOUBLE_EQ(row.difference, row.exact - row.asymptotic);
    EXPECT_DOUBLE_EQ(row.exact, zrc_exact(row.p, 3, row.n));
  }
  EXPECT_LT(std::abs(report.rows[1].difference),
            std::abs(report.rows[0].difference));
}

TEST(RunRcGiantTest, ThreadCountDoesNotChangeResults) {
  GiantConfig config;
  config.ns = {300};
  config.replicas = 40;
  config.seed = 9;
  config.keep_samples = true;
  const GiantReport one = run_rc_giant(config);
  config.threads = 3;
  const GiantReport three = run_rc_giant(config);
  EXPECT_EQ(one.rows[0].giant_count, three.rows[0].giant_count);
  ASSERT_EQ(one.samples.size(), 40u);
  ASSERT_EQ(three.samples.size(), 40u);
  for (std::size_t i = 0; i < one.samples.size(); ++i) {
    EXPECT_EQ(one.samples[i].counts, three.samples[i].counts);
    EXPECT_EQ(one.samples[i].giant_fraction, three.samples[i].giant_fraction);
  }
  EXPECT_NEAR(one.prediction, giant_component_probability(3, 0.0), 1e-15);
  config.replicas = 0;
  EXPECT_THROW(run_rc_giant(config), PreconditionError);
}

TEST(CriticalLineTest, TableAndGrid) {
  const std::vector<double> zs{0.1, 0.4};
  const auto rows = critical_line_table(4, zs);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) {
    EXPECT_NEAR(r.prob_plus + r.prob_minus, 1.0, 1e-14);
    EXPECT_GT(r.h_z, 0.0);
  }
  const auto grid = critical_line_grid(3, 5);
  EXPECT_EQ(grid.size(), 5u);
  EXPECT_THROW(critical_line_grid(2, 5), PreconditionError);
}

}  // namespace
}  // namespace cwpotts
