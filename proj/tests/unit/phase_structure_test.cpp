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
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "cwpotts/free_energy.hpp"
#include "cwpotts/minimizers.hpp"

namespace cwpotts {
namespace {

// Least free energy over the grid {k/res} of the whole simplex.
double grid_minimum(const ModelParams& p, int res) {
  const int q = p.q;
  std::vector<int> k(static_cast<std::size_t>(q), 0);
  double best = std::numeric_limits<double>::infinity();
  // Odometer over the first q-1 coordinates, the last one fills the rest.
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == q - 1) {
      k[static_cast<std::size_t>(i)] = left;
      double e = 0.0;
      double sq = 0.0;
      for (int j = 0; j < q; ++j) {
        const double v = static_cast<double>(k[static_cast<std::size_t>(j)]) / res;
        if (v > 0.0) e += v * std::log(v);
        sq += v * v;
      }
      const double f = e - 0.5 * p.beta * sq -
                       p.h * static_cast<double>(k[0]) / res;
      best = std::min(best, f);
      return;
    }
    for (int c = 0; c <= left; ++c) {
      k[static_cast<std::size_t>(i)] = c;
      rec(i + 1, left - c);
    }
  };
  rec(0, res);
  return best;
}

bool is_permutation_of(const DensityVector& a, const DensityVector& b) {
  std::vector<double> x(a.values().begin(), a.values().end());
  std::vector<double> y(b.values().begin(), b.values().end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i] - y[i]) > 1e-9) return false;
  }
  return true;
}

void expect_structure(const ModelParams& p, const MinimizerSet& set) {
  const PhaseBoundaries pb = phase_boundaries(p.q);
  const bool special =
      set.regime == Regime::kTricritical ||
      (p.q == 2 && std::abs(p.beta - pb.beta_c) < 1e-9 && p.h == 0.0);
  for (const auto& x : set.minimizers) {
    const double lo = x.min();
    int repeats = 0;
    for (double v : x.values()) repeats += std::abs(v - lo) < 1e-9 ? 1 : 0;
    EXPECT_GE(repeats, p.q - 1);
    EXPECT_GT(lo, 0.0);
    if (!special) EXPECT_LT(lo, 1.0 / p.beta);
    if (p.h > 0.0) {
      for (int i = 1; i < p.q; ++i) EXPECT_GT(x[0], x[static_cast<std::size_t>(i)] + 1e-10);
    }
    EXPECT_LE(stationarity_residual(p, x), 1e-8);
  }
}

TEST(FindGlobalMinimizersTest, SubcriticalZeroField) {
  const ModelParams p = ModelParams::make(3, 1.0, 0.0);
  const MinimizerSet set = find_global_minimizers(p);
  ASSERT_EQ(set.minimizers.size(), 1u);
  EXPECT_EQ(set.regime, Regime::kSubcriticalZeroField);
  for (double v : set.minimizers[0].values()) EXPECT_NEAR(v, 1.0 / 3.0, 1e-12);
  EXPECT_EQ(to_string(set.regime), "SubcriticalZeroField");
}

TEST(FindGlobalMinimizersTest, CriticalLinePair) {
  const CriticalPoint cp = critical_point_from_z(3, 0.2);
  const MinimizerSet set = find_global_minimizers(cp.params(3));
  ASSERT_EQ(set.minimizers.size(), 2u);
  EXPECT_EQ(set.regime, Regime::kCriticalLinePair);
  EXPECT_FALSE(set.boundary_warning);
  const std::vector<double> plus{0.6, 0.2, 0.2};
  const std::vector<double> minus{0.4, 0.3, 0.3};
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(set.minimizers[0][i], plus[i], 1e-9);
    EXPECT_NEAR(set.minimizers[1][i], minus[i], 1e-9);
  }
  EXPECT_NEAR(set.z_values[0], 0.2, 1e-8);
  EXPECT_NEAR(set.z_values[1], -0.2, 1e-8);
}

TEST(FindGlobalMinimizersTest, CriticalZeroFieldHasQPlusOneStates) {
  const double bc = phase_boundaries(3).beta_c;
  const MinimizerSet set = find_global_minimizers(ModelParams::make(3, bc, 0.0));
  ASSERT_EQ(set.minimizers.size(), 4u);
  EXPECT_EQ(set.regime, Regime::kCriticalZeroField);
  int uniform = 0;
  int ordered = 0;
  const DensityVector ordered_state({2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0});
  for (const auto& x : set.minimizers) {
    if (std::abs(x.max() - 1.0 / 3.0) < 1e-9) ++uniform;
    if (is_permutation_of(x, ordered_state)) ++ordered;
  }
  EXPECT_EQ(uniform, 1);
  EXPECT_EQ(ordered, 3);
}

TEST(FindGlobalMinimizersTest, SupercriticalZeroFieldPermutations) {
  const MinimizerSet set = find_global_minimizers(ModelParams::make(4, 3.5, 0.0));
  ASSERT_EQ(set.minimizers.size(), 4u);
  EXPECT_EQ(set.regime, Regime::kSupercriticalZeroField);
  for (const auto& x : set.minimizers) {
    EXPECT_TRUE(is_permutation_of(x, set.minimizers[0]));
  }
  std::vector<int> argmax_seen(4, 0);
  for (const auto& x : set.minimizers) {
    for (std::size_t i = 0; i < 4; ++i) {
      if (x[i] == x.max()) ++argmax_seen[i];
    }
  }
  for (int seen : argmax_seen) EXPECT_EQ(seen, 1);
}

TEST(FindGlobalMinimizersTest, Tricritical) {
  for (int q : {3, 5}) {
    const PhaseBoundaries pb = phase_boundaries(q);
    const MinimizerSet set =
        find_global_minimizers(ModelParams::make(q, pb.beta_0, pb.h_0));
    ASSERT_EQ(set.minimizers.size(), 1u);
    EXPECT_EQ(set.regime, Regime::kTricritical);
    EXPECT_EQ(set.minimizers[0], x_from_z(q, 0.0));
  }
}

TEST(FindGlobalMinimizersTest, UniqueOffLine) {
  const MinimizerSet set = find_global_minimizers(ModelParams::make(3, 1.0, 0.2));
  ASSERT_EQ(set.minimizers.size(), 1u);
  EXPECT_EQ(set.regime, Regime::kUniqueOffLine);
}

TEST(FindGlobalMinimizersTest, ContinuityAcrossCriticalLine) {
  for (double z : {0.1, 0.2, 0.3}) {
    const CriticalPoint cp = critical_point_from_z(3, z);
    const auto above =
        find_global_minimizers(ModelParams::make(3, cp.beta_z, cp.h_z + 1e-4));
    const auto below =
        find_global_minimizers(ModelParams::make(3, cp.beta_z, cp.h_z - 1e-4));
    ASSERT_EQ(above.minimizers.size(), 1u);
    ASSERT_EQ(below.minimizers.size(), 1u);
    EXPECT_LT(distance(above.minimizers[0].values(), x_from_z(3, z).values()),
              1e-2);
    EXPECT_LT(distance(below.minimizers[0].values(), x_from_z(3, -z).values()),
              1e-2);
  }
}

TEST(FindGlobalMinimizersTest, StructureAndGridOracle) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> beta(0.0, 5.0), h(0.0, 1.0);
  for (int q : {2, 3, 4}) {
    const int res = q == 2 ? 2000 : q == 3 ? 200 : 80;
    for (int trial = 0; trial < 50; ++trial) {
      const ModelParams p = ModelParams::make(q, beta(rng), h(rng));
      const MinimizerSet set = find_global_minimizers(p);
      ASSERT_FALSE(set.minimizers.empty());
      expect_structure(p, set);
      const double fmin = free_energy(p, set.minimizers[0]);
      for (const auto& x : set.minimizers) {
        EXPECT_NEAR(free_energy(p, x), fmin, 1e-9);
      }
      EXPECT_LE(fmin, grid_minimum(p, res) + 1e-9)
          << "q=" << q << " beta=" << p.beta << " h=" << p.h;
    }
  }
}

TEST(FindGlobalMinimizersTest, RejectsBadOptions) {
  MinimizerOptions opts;
  opts.grid_points = 10;
  EXPECT_THROW(find_global_minimizers(ModelParams::make(3, 1.0, 0.0), opts),
               PreconditionError);
}

TEST(StationarityResidualTest, Examples) {
  const DensityVector u({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  EXPECT_NEAR(stationarity_residual(ModelParams::make(3, 1.0, 0.0), u), 0.0,
              1e-15);
  EXPECT_NEAR(stationarity_residual(ModelParams::make(3, 1.0, 0.5), u), 0.5,
              1e-15);
  EXPECT_THROW(stationarity_residual(ModelParams::make(3, 1.0, 0.0),
                                     DensityVector({1.0, 0.0, 0.0})),
               PreconditionError);
}

TEST(RefineLocalMinimizerTest, UniformIsExactlyZero) {
  const DensityVector u({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  const CenteringCorrection d =
      refine_local_minimizer(ModelParams::make(3, 1.7, 0.0), u);
  EXPECT_EQ(d.norm, 0.0);
  for (double v : d.d) EXPECT_EQ(v, 0.0);
}

TEST(RefineLocalMinimizerTest, FixedPointUnperturbed) {
  const ModelParams p = ModelParams::make(3, 1.0, 0.2);
  const MinimizerSet set = find_global_minimizers(p);
  const CenteringCorrection d = refine_local_minimizer(p, set.minimizers[0]);
  EXPECT_LT(d.norm, 1e-10);
}

TEST(RefineLocalMinimizerTest, LinearScalingNearCriticalLine) {
  const CriticalPoint cp = critical_point_from_z(3, 0.2);
  const MinimizerSet set = find_global_minimizers(cp.params(3));
  for (const auto& x0 : set.minimizers) {
    const CenteringCorrection a = refine_local_minimizer(
        ModelParams::make(3, cp.beta_z + 2e-5, cp.h_z), x0);
    const CenteringCorrection b = refine_local_minimizer(
        ModelParams::make(3, cp.beta_z + 1e-5, cp.h_z), x0);
    double sum = 0.0;
    for (double v : a.d) sum += v;
    EXPECT_NEAR(sum, 0.0, 1e-12);
    EXPECT_GT(a.norm, 0.0);
    EXPECT_LT(a.norm, 0.1);
    EXPECT_NEAR(a.norm / b.norm, 2.0, 0.02);
  }
}

TEST(RefineLocalMinimizerTest, PermutedStateWithField) {
  const ModelParams p = ModelParams::make(3, 3.5, 0.0);
  const MinimizerSet set = find_global_minimizers(p);
  const ModelParams pn = ModelParams::make(3, 3.5, 1e-3);
  for (const auto& x0 : set.minimizers) {
    const CenteringCorrection d = refine_local_minimizer(pn, x0);
    std::vector<double> x(3);
    for (std::size_t i = 0; i < 3; ++i) x[i] = x0[i] + d.d[i];
    EXPECT_LT(stationarity_residual(pn, DensityVector(x)), 1e-9);
    EXPECT_LT(d.norm, 1e-2);
  }
}

TEST(RefineLocalMinimizerTest, LeavingTheBasinFails) {
  EXPECT_ANY_THROW(refine_local_minimizer(
      ModelParams::make(3, 1.0, 0.0), x_from_z(3, 0.2)));
}

TEST(DefaultBallRadiusTest, OneThirdOfMinimalDistance) {
  const CriticalPoint cp = critical_point_from_z(3, 0.2);
  const MinimizerSet set = find_global_minimizers(cp.params(3));
  const double dist = distance(set.minimizers[0].values(),
                               set.minimizers[1].values());
  EXPECT_NEAR(default_ball_radius(set), dist / 3.0, 1e-12);
  const MinimizerSet single =
      find_global_minimizers(ModelParams::make(3, 1.0, 0.0));
  EXPECT_TRUE(std::isinf(default_ball_radius(single)));
}

}  // namespace
}  // namespace cwpotts
