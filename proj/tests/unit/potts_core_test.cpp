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
#include <random>
#include <vector>

#include "cwpotts/free_energy.hpp"
#include "cwpotts/types.hpp"

namespace cwpotts {
namespace {

// Independent evaluation, one sum at a time.
double free_energy_oracle(double beta, double h, const std::vector<double>& x) {
  double entropy = 0.0;
  for (double v : x) {
    if (v > 0.0) entropy += v * std::log(v);
  }
  double squares = 0.0;
  for (double v : x) squares += v * v;
  return entropy - 0.5 * beta * squares - h * x[0];
}

TEST(ModelParamsTest, RejectsOutsideQuadrant) {
  EXPECT_THROW(ModelParams::make(1, 1.0, 0.0), PreconditionError);
  EXPECT_THROW(ModelParams::make(3, -0.1, 0.0), PreconditionError);
  EXPECT_THROW(ModelParams::make(3, 1.0, -1e-3), PreconditionError);
  EXPECT_THROW(ModelParams::make(3, NAN, 0.0), PreconditionError);
  EXPECT_NO_THROW(ModelParams::make(2, 0.0, 0.0));
}

TEST(DensityVectorTest, ValidatesSimplex) {
  EXPECT_THROW(DensityVector({0.5, 0.6}), PreconditionError);
  EXPECT_THROW(DensityVector({1.2, -0.2}), PreconditionError);
  EXPECT_THROW(DensityVector(std::vector<double>{}), PreconditionError);
  EXPECT_NO_THROW(DensityVector({0.5, 0.5 + 5e-13}));
  const DensityVector x({0.2, 0.5, 0.3});
  EXPECT_EQ(x.min(), 0.2);
  EXPECT_EQ(x.max(), 0.5);
}

TEST(CountVectorTest, SumsAndDensity) {
  const CountVector c({3, 0, 7});
  EXPECT_EQ(c.n(), 10);
  EXPECT_DOUBLE_EQ(c.density()[2], 0.7);
  EXPECT_THROW(CountVector({1, -1}), PreconditionError);
  EXPECT_THROW(CountVector({0, 0}).density(), PreconditionError);
}

TEST(FreeEnergyTest, ZeroLogZeroConvention) {
  const ModelParams p = ModelParams::make(3, 0.0, 0.0);
  EXPECT_EQ(free_energy(p, DensityVector({1.0, 0.0, 0.0})), 0.0);
}

TEST(FreeEnergyTest, UniformClosedForm) {
  for (int q : {2, 3, 7}) {
    for (double beta : {0.0, 1.5, 4.0}) {
      const ModelParams p = ModelParams::make(q, beta, 0.0);
      const DensityVector x(std::vector<double>(q, 1.0 / q));
      EXPECT_NEAR(free_energy(p, x), -std::log(q) - beta / (2.0 * q), 1e-12);
    }
  }
}

TEST(FreeEnergyTest, MatchesTermByTermOracle) {
  const ModelParams p = ModelParams::make(3, 1.0, 0.2);
  const std::vector<double> x{0.5, 0.3, 0.2};
  EXPECT_NEAR(free_energy(p, DensityVector(x)),
              free_energy_oracle(1.0, 0.2, x), 1e-14);
}

TEST(FreeEnergyTest, RejectsWrongDimension) {
  const ModelParams p = ModelParams::make(3, 1.0, 0.0);
  EXPECT_THROW(free_energy(p, DensityVector({0.5, 0.5})), PreconditionError);
}

TEST(FreeEnergyTest, PermutationSymmetry) {
  const ModelParams field = ModelParams::make(4, 2.1, 0.3);
  const ModelParams zero = ModelParams::make(4, 2.1, 0.0);
  std::vector<double> x{0.4, 0.1, 0.2, 0.3};
  const double base_field = free_energy(field, DensityVector(x));
  const double base_zero = free_energy(zero, DensityVector(x));
  std::sort(x.begin() + 1, x.end());
  do {
    EXPECT_NEAR(free_energy(field, DensityVector(x)), base_field, 1e-14);
  } while (std::next_permutation(x.begin() + 1, x.end()));
  std::sort(x.begin(), x.end());
  do {
    EXPECT_NEAR(free_energy(zero, DensityVector(x)), base_zero, 1e-14);
  } while (std::next_permutation(x.begin(), x.end()));
}

TEST(XFromZTest, KnownPoints) {
  const DensityVector a = x_from_z(3, 1.0 / 3.0);
  EXPECT_NEAR(a[0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(a[1], 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(a[2], 1.0 / 6.0, 1e-15);
  const DensityVector u = x_from_z(3, -1.0 / 3.0);
  for (double v : u.values()) EXPECT_NEAR(v, 1.0 / 3.0, 1e-15);
  const DensityVector t = x_from_z(5, 0.0);
  EXPECT_DOUBLE_EQ(t[0], 0.5);
  EXPECT_DOUBLE_EQ(t[4], 1.0 / 8.0);
  EXPECT_THROW(x_from_z(3, 1.0 + 1e-9), PreconditionError);
  EXPECT_NEAR(z_of(x_from_z(4, 0.37)), 0.37, 1e-15);
}

TEST(XFromZTest, SimplexClosure) {
  for (int q : {2, 3, 6}) {
    for (int k = 0; k <= 200; ++k) {
      const double z = -1.0 + k / 100.0;
      EXPECT_NO_THROW(x_from_z(q, z));
    }
  }
}

TEST(FreeEnergyZTest, EndpointsFinite) {
  const ModelParams p = ModelParams::make(3, 2.0, 0.5);
  EXPECT_TRUE(std::isfinite(free_energy_z(p, 1.0).value));
  EXPECT_TRUE(std::isfinite(free_energy_z(p, -1.0).value));
}

TEST(FreeEnergyZTest, AgreesWithFreeEnergy) {
  const ModelParams p = ModelParams::make(3, 2.0, 0.1);
  EXPECT_NEAR(free_energy_z(p, 0.4).value, free_energy(p, x_from_z(3, 0.4)),
              1e-14);
}

TEST(FreeEnergyZTest, OddPartIsLinear) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> beta(0.0, 5.0), h(0.0, 1.0),
      z(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    for (int q : {2, 3, 5}) {
      const ModelParams p = ModelParams::make(q, beta(rng), h(rng));
      const double zz = z(rng);
      const double slope = std::log(q - 1.0) -
                           p.beta * (q - 2.0) / (2.0 * (q - 1.0)) - p.h;
      EXPECT_NEAR(free_energy_z(p, zz).value - free_energy_z(p, -zz).value,
                  zz * slope, 1e-10);
      const ZFreeEnergy split = free_energy_z(p, zz);
      EXPECT_NEAR(split.even + split.odd, split.value, 1e-12);
      EXPECT_NEAR(split.odd, 0.5 * zz * slope, 1e-12);
    }
  }
}

TEST(FreeEnergyZTest, EvenOnCriticalLine) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> z(-1.0, 1.0);
  const CriticalPoint cp = critical_point_from_z(4, 0.3);
  const ModelParams p = cp.params(4);
  for (int i = 0; i < 100; ++i) {
    const double zz = z(rng);
    EXPECT_NEAR(free_energy_z(p, zz).value, free_energy_z(p, -zz).value,
                1e-10);
  }
  EXPECT_NEAR(free_energy_z(p, 0.3).value, free_energy_z(p, -0.3).value,
              1e-10);
}

TEST(DerivativeTest, SecondDerivativeExamples) {
  for (int q : {2, 3, 6}) {
    const double b0 = phase_boundaries(q).beta_0;
    EXPECT_NEAR(d2f_dz2(ModelParams::make(q, b0, 0.0), 0.0), 0.0, 1e-14);
  }
  EXPECT_NEAR(d2f_dz2(ModelParams::make(3, 8.0 / 3.0, 0.0), 0.5), 1.0 / 3.0,
              1e-14);
  EXPECT_THROW(d2f_dz2(ModelParams::make(3, 1.0, 0.0), 1.0),
               PreconditionError);
}

TEST(DerivativeTest, MatchFiniteDifferences) {
  const double step = 1e-4;
  for (int q : {2, 3, 5}) {
    for (double beta : {0.5, 2.5, 4.0}) {
      const ModelParams p = ModelParams::make(q, beta, 0.15);
      for (double z = -0.9; z <= 0.9 + 1e-12; z += 0.05) {
        auto f = [&](double t) { return free_energy_z(p, t).value; };
        const double fd2 = (f(z + step) - 2.0 * f(z) + f(z - step)) /
                           (step * step);
        EXPECT_NEAR(d2f_dz2(p, z), fd2, 1e-5) << "q=" << q << " z=" << z;
        const double fd1 = (f(z + step) - f(z - step)) / (2.0 * step);
        EXPECT_NEAR(df_dz(p, z), fd1, 1e-6);
      }
      auto f = [&](double t) { return free_energy_z(p, t).value; };
      const double at_zero = (f(step) - 2.0 * f(0.0) + f(-step)) / (step * step);
      EXPECT_NEAR(1.0 - beta * q / (4.0 * (q - 1.0)), at_zero, 1e-6);
    }
  }
}

TEST(DerivativeTest, InflectionPoints) {
  const int q = 3;
  const double beta = 3.5;
  const ModelParams p = ModelParams::make(q, beta, 0.0);
  const double zi = inflection_z(q, beta);
  EXPECT_NEAR(zi, std::sqrt(1.0 - (8.0 / 3.0) / beta), 1e-15);
  EXPECT_NEAR(d2f_dz2(p, zi), 0.0, 1e-12);
  EXPECT_GT(d2f_dz2(p, zi + 1e-6), 0.0);
  EXPECT_LT(d2f_dz2(p, zi - 1e-6), 0.0);
  EXPECT_LT(d2f_dz2(p, -zi + 1e-6), 0.0);
  EXPECT_GT(d2f_dz2(p, -zi - 1e-6), 0.0);
  EXPECT_EQ(inflection_z(q, 2.0), 0.0);
}

TEST(PhaseBoundariesTest, ClosedForms) {
  const PhaseBoundaries two = phase_boundaries(2);
  EXPECT_DOUBLE_EQ(two.beta_c, 2.0);
  EXPECT_DOUBLE_EQ(two.beta_0, 2.0);
  EXPECT_NEAR(two.h_0, 0.0, 1e-15);
  const PhaseBoundaries three = phase_boundaries(3);
  EXPECT_NEAR(three.beta_c, 4.0 * std::log(2.0), 1e-14);
  EXPECT_NEAR(three.beta_c, 2.772589, 1e-6);
  EXPECT_NEAR(three.beta_0, 8.0 / 3.0, 1e-15);
  EXPECT_NEAR(three.h_0, std::log(2.0) - 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(three.h_0, 0.026481, 1e-6);
  EXPECT_THROW(phase_boundaries(1), PreconditionError);
}

TEST(CriticalPointTest, Examples) {
  const CriticalPoint cp = critical_point_from_z(3, 0.2);
  EXPECT_NEAR(cp.beta_z, 20.0 / 3.0 * std::log(1.5), 1e-14);
  EXPECT_NEAR(cp.beta_z, 2.703100, 1e-6);
  EXPECT_NEAR(cp.h_z, 0.017372, 1e-6);
  const CriticalPoint near0 = critical_point_from_z(3, 1e-7);
  EXPECT_NEAR(near0.beta_z, 8.0 / 3.0, 1e-9);
  EXPECT_NEAR(near0.h_z, std::log(2.0) - 2.0 / 3.0, 1e-9);
  const CriticalPoint near_end = critical_point_from_z(3, 1.0 / 3.0 - 1e-9);
  EXPECT_NEAR(near_end.beta_z, 4.0 * std::log(2.0), 1e-7);
  EXPECT_NEAR(near_end.h_z, 0.0, 1e-7);
  EXPECT_THROW(critical_point_from_z(3, 0.0), PreconditionError);
  EXPECT_THROW(critical_point_from_z(3, 1.0 / 3.0), PreconditionError);
  EXPECT_THROW(critical_point_from_z(2, 0.1), PreconditionError);
}

TEST(CriticalPointTest, LiesOnCriticalLine) {
  for (int q : {3, 4, 8}) {
    for (double frac : {0.1, 0.5, 0.9}) {
      const CriticalPoint cp = critical_point_from_z(q, frac * (q - 2.0) / q);
      EXPECT_NEAR(cp.h_z,
                  std::log(q - 1.0) - cp.beta_z * (q - 2.0) / (2.0 * (q - 1.0)),
                  1e-12);
      const CriticalField cf = critical_field(q, cp.beta_z);
      EXPECT_NEAR(cf.h, cp.h_z, 1e-12);
      EXPECT_TRUE(cf.on_segment);
    }
  }
}

TEST(CriticalFieldTest, EndpointsAndFlag) {
  const PhaseBoundaries pb = phase_boundaries(3);
  EXPECT_NEAR(critical_field(3, pb.beta_c).h, 0.0, 1e-15);
  EXPECT_NEAR(critical_field(3, pb.beta_0).h, pb.h_0, 1e-15);
  EXPECT_NEAR(critical_field(3, 2.703100).h, 0.017372, 1e-6);
  const CriticalField off = critical_field(3, 2.0);
  EXPECT_FALSE(off.on_segment);
  EXPECT_NEAR(off.h, std::log(2.0) - 0.5, 1e-15);
  EXPECT_THROW(critical_field(2, 1.0), PreconditionError);
}

}  // namespace
}  // namespace cwpotts
