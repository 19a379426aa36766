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

// Free energy of the mean-field Potts model on the simplex, its restriction
// to the one-parameter family x_z, and the closed-form phase boundaries.

#ifndef CWPOTTS_FREE_ENERGY_HPP_
#define CWPOTTS_FREE_ENERGY_HPP_

#include "cwpotts/types.hpp"

namespace cwpotts {

// f(x) = sum x_i log x_i - (beta/2) sum x_i^2 - h x_1, with 0 log 0 = 0.
double free_energy(const ModelParams& params, const DensityVector& x);

// The free energy along x_z split as value = even + odd, where
// odd = (z/2) [log(q-1) - beta (q-2)/(2(q-1)) - h] is the whole odd part.
struct ZFreeEnergy {
  double value = 0.0;
  double even = 0.0;
  double odd = 0.0;
};

// x_z = ((1+z)/2, (1-z)/(2(q-1)), ..., (1-z)/(2(q-1))) for z in [-1, 1].
DensityVector x_from_z(int q, double z);

// Inverse of x_from_z on the first coordinate: z = 2 x_1 - 1.
double z_of(const DensityVector& x);

ZFreeEnergy free_energy_z(const ModelParams& params, double z);

// First derivative of z -> f(x_z) on (-1, 1):
//   (1/2) log(x_1/x_2) - (beta/2)(x_1 - x_2) - h/2.
double df_dz(const ModelParams& params, double z);

// Second derivative 1/(1-z^2) - beta q / (4(q-1)) on (-1, 1).
double d2f_dz2(const ModelParams& params, double z);

struct PhaseBoundaries {
  double beta_c = 0.0;  // critical inverse temperature at h = 0
  double beta_0 = 0.0;  // tricritical inverse temperature
  double h_0 = 0.0;     // tricritical field
};

PhaseBoundaries phase_boundaries(int q);

// A point (beta_z, h_z) of the critical line, parametrized by the
// magnetization z in (0, (q-2)/q) of its two coexisting states x_{+-z}.
struct CriticalPoint {
  double beta_z = 0.0;
  double h_z = 0.0;
  double z = 0.0;

  ModelParams params(int q) const { return ModelParams::make(q, beta_z, h_z); }
};

CriticalPoint critical_point_from_z(int q, double z);

// Affine critical field h_T(beta) = log(q-1) - beta (q-2)/(2(q-1)). The
// formula is returned everywhere; on_segment reports whether beta lies in
// [beta_c, beta_0], i.e. whether (beta, h) is on the coexistence line.
struct CriticalField {
  double h = 0.0;
  bool on_segment = false;
};

CriticalField critical_field(int q, double beta);

// Inflection point z_i = sqrt(1 - beta_0/beta) of the z-profile; 0 when
// beta <= beta_0 (the profile is then convex).
double inflection_z(int q, double beta);

}  // namespace cwpotts

#endif  // CWPOTTS_FREE_ENERGY_HPP_
