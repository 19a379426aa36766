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

#include "cwpotts/free_energy.hpp"

#include <cmath>
#include <string>

namespace cwpotts {
namespace {

double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

void check_q(int q, int min_q) {
  if (q < min_q) {
    throw PreconditionError("q must be >= " + std::to_string(min_q) +
                            ", got " + std::to_string(q));
  }
}

void check_closed_z(double z) {
  if (!(z >= -1.0 && z <= 1.0)) {
    throw PreconditionError("z must lie in [-1, 1]");
  }
}

void check_open_z(double z) {
  if (!(z > -1.0 && z < 1.0)) {
    throw PreconditionError("z must lie in (-1, 1)");
  }
}

}  // namespace

double free_energy(const ModelParams& params, const DensityVector& x) {
  params.validate();
  if (x.q() != params.q) {
    throw PreconditionError("free_energy: x has " + std::to_string(x.q()) +
                            " coordinates, expected q = " +
                            std::to_string(params.q));
  }
  double entropy = 0.0;
  double square = 0.0;
  for (double v : x.values()) {
    entropy += xlogx(v);
    square += v * v;
  }
  return entropy - 0.5 * params.beta * square - params.h * x[0];
}

DensityVector x_from_z(int q, double z) {
  check_q(q, 2);
  check_closed_z(z);
  std::vector<double> x(static_cast<std::size_t>(q),
                        (1.0 - z) / (2.0 * (q - 1)));
  x[0] = (1.0 + z) / 2.0;
  return DensityVector(std::move(x));
}

double z_of(const DensityVector& x) { return 2.0 * x[0] - 1.0; }

ZFreeEnergy free_energy_z(const ModelParams& params, double z) {
  params.validate();
  check_closed_z(z);
  const int q = params.q;
  const double beta = params.beta;
  const double qm1 = static_cast<double>(q - 1);
  ZFreeEnergy out;
  out.value = free_energy(params, x_from_z(q, z));
  out.odd = 0.5 * z *
            (std::log(qm1) - beta * (q - 2) / (2.0 * qm1) - params.h);
  out.even = xlogx((1.0 + z) / 2.0) + xlogx((1.0 - z) / 2.0) -
             0.5 * std::log(qm1) -
             beta * (1.0 + z * z) / 8.0 * (1.0 + 1.0 / qm1) - 0.5 * params.h;
  return out;
}

double df_dz(const ModelParams& params, double z) {
  check_open_z(z);
  const double x1 = (1.0 + z) / 2.0;
  const double x2 = (1.0 - z) / (2.0 * (params.q - 1));
  return 0.5 * (std::log(x1) - std::log(x2)) - 0.5 * params.beta * (x1 - x2) -
         0.5 * params.h;
}

double d2f_dz2(const ModelParams& params, double z) {
  params.validate();
  check_open_z(z);
  return 1.0 / (1.0 - z * z) -
         params.beta * params.q / (4.0 * (params.q - 1));
}

PhaseBoundaries phase_boundaries(int q) {
  check_q(q, 2);
  PhaseBoundaries pb;
  const double qd = q;
  pb.beta_c = q <= 2 ? qd : 2.0 * (qd - 1) / (qd - 2) * std::log(qd - 1);
  pb.beta_0 = 4.0 * (qd - 1) / qd;
  pb.h_0 = std::log(qd - 1) - 2.0 * (qd - 2) / qd;
  return pb;
}

CriticalPoint critical_point_from_z(int q, double z) {
  check_q(q, 3);
  const double zmax = static_cast<double>(q - 2) / q;
  if (!(z > 0.0 && z < zmax)) {
    throw PreconditionError("critical_point_from_z: z must lie in (0, " +
                            std::to_string(zmax) + ")");
  }
  CriticalPoint cp;
  cp.z = z;
  cp.beta_z = 4.0 * (q - 1.0) / q * (std::atanh(z) / z);
  cp.h_z = std::log(q - 1.0) - (q - 2.0) / (2.0 * (q - 1.0)) * cp.beta_z;
  return cp;
}

CriticalField critical_field(int q, double beta) {
  check_q(q, 3);
  const PhaseBoundaries pb = phase_boundaries(q);
  CriticalField cf;
  cf.h = std::log(q - 1.0) - beta * (q - 2.0) / (2.0 * (q - 1.0));
  cf.on_segment = beta >= pb.beta_0 && beta <= pb.beta_c;
  return cf;
}

double inflection_z(int q, double beta) {
  const double beta_0 = phase_boundaries(q).beta_0;
  if (beta <= beta_0) return 0.0;
  return std::sqrt(1.0 - beta_0 / beta);
}

}  // namespace cwpotts
