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

#ifndef CWPOTTS_MINIMIZERS_HPP_
#define CWPOTTS_MINIMIZERS_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "cwpotts/types.hpp"

namespace cwpotts {

enum class Regime {
  kUniqueOffLine,             // h > 0, off the critical line
  kCriticalLinePair,          // h > 0 on the critical line: x_z and x_{-z}
  kSubcriticalZeroField,      // h = 0, beta < beta_c: the uniform state
  kSupercriticalZeroField,    // h = 0, beta > beta_c: q permuted states
  kCriticalZeroField,         // h = 0, beta = beta_c: q + 1 states
  kTricritical,               // (beta, h) = (beta_0, h_0)
};

std::string_view to_string(Regime regime);

struct MinimizerSet {
  std::vector<DensityVector> minimizers;
  // z-coordinate of the canonical (first-coordinate-largest) form of each
  // minimizer; permuted states share the z of the state they permute.
  std::vector<double> z_values;
  Regime regime = Regime::kUniqueOffLine;
  // Set when the multiplicity was decided by the value tolerance near a
  // phase boundary rather than by the analytic boundary formulas.
  bool boundary_warning = false;
  std::string note;
};

struct MinimizerOptions {
  double z_tolerance = 1e-10;
  double value_tolerance = 1e-9;
  int grid_points = 2048;
};

// Global minimizers of f over the simplex. The search runs on the
// one-dimensional profile z -> f(x_z): roots of the analytic derivative are
// bracketed on a grid that includes the inflection points +-z_i (so the
// derivative is monotone between nodes) and refined by bisection.
// At h = 0 the coordinate permutations of each state are emitted as well.
MinimizerSet find_global_minimizers(const ModelParams& params,
                                    const MinimizerOptions& options = {});

// All local minimizers of the z-profile, ascending in z.
std::vector<double> profile_local_minima(const ModelParams& params,
                                         const MinimizerOptions& options = {});

// max_{i,j} |g(x_i) - g(x_j) - h (1{i=1} - 1{j=1})| with g(t) = log t - beta t.
double stationarity_residual(const ModelParams& params, const DensityVector& x);

// Shift d in the hyperplane sum(d) = 0 from a limit minimizer x0 to the
// nearest local minimizer of f at the perturbed parameters.
struct CenteringCorrection {
  std::vector<double> d;
  double norm = 0.0;
  // Two local minimizers lie at the same distance from x0 (within 1e-9).
  bool ambiguous = false;
};

CenteringCorrection refine_local_minimizer(const ModelParams& params_n,
                                           const DensityVector& x0);

// One third of the smallest pairwise distance between the minimizers, the
// default radius of balls and conditioning windows. A single minimizer has
// no competitor and yields +infinity (no restriction).
double default_ball_radius(const MinimizerSet& set);

}  // namespace cwpotts

#endif  // CWPOTTS_MINIMIZERS_HPP_
