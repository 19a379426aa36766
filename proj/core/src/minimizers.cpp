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

#include "cwpotts/minimizers.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "cwpotts/free_energy.hpp"

namespace cwpotts {
namespace {

constexpr double kTricriticalTolerance = 1e-9;
constexpr double kAnalyticLineTolerance = 1e-12;
// Separates the symmetric state z = -(q-2)/q from asymmetric ones.
constexpr double kStateSeparation = 1e-6;

// Derivative of the profile with the endpoint limits -inf / +inf.
double profile_slope(const ModelParams& params, double z) {
  if (z <= -1.0) return -std::numeric_limits<double>::infinity();
  if (z >= 1.0) return std::numeric_limits<double>::infinity();
  return df_dz(params, z);
}

double bisect_root(const ModelParams& params, double lo, double hi,
                   double tol) {
  // Invariant: slope(lo) < 0 <= slope(hi).
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (profile_slope(params, mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double profile_value(const ModelParams& params, double z) {
  return free_energy_z(params, z).value;
}

// Moves coordinate 0 of x to position j (and x_j to position 0).
DensityVector swap_first(const DensityVector& x, int j) {
  std::vector<double> v = x.vec();
  std::swap(v[0], v[static_cast<std::size_t>(j)]);
  return DensityVector(std::move(v));
}

DensityVector uniform(int q) {
  return DensityVector(
      std::vector<double>(static_cast<std::size_t>(q), 1.0 / q));
}

// Index of the coordinate that is not part of the repeated minimum, or 0
// when all coordinates coincide.
int distinguished_index(const DensityVector& x) {
  const double lo = x.min();
  const double hi = x.max();
  if (hi - lo <= 1e-12) return 0;
  int j = 0;
  for (int i = 0; i < x.q(); ++i) {
    if (x[static_cast<std::size_t>(i)] == hi) {
      j = i;
      break;
    }
  }
  return j;
}

// Newton iteration for the local minimizer of f in the hyperplane
// sum(d) = 0, used when the field breaks the permutation pattern of x0.
std::vector<double> newton_in_hyperplane(const ModelParams& p,
                                         std::vector<double> x) {
  const int q = p.q;
  const int m = q - 1;
  for (int it = 0; it < 100; ++it) {
    Eigen::VectorXd grad(q);
    Eigen::VectorXd diag(q);
    for (int i = 0; i < q; ++i) {
      const double xi = x[static_cast<std::size_t>(i)];
      grad[i] = std::log(xi) + 1.0 - p.beta * xi - (i == 0 ? p.h : 0.0);
      diag[i] = 1.0 / xi - p.beta;
    }
    // Basis e_i - e_{q-1}, i < q-1.
    Eigen::VectorXd g(m);
    Eigen::MatrixXd hess(m, m);
    for (int i = 0; i < m; ++i) {
      g[i] = grad[i] - grad[q - 1];
      for (int k = 0; k < m; ++k) {
        hess(i, k) = (i == k ? diag[i] : 0.0) + diag[q - 1];
      }
    }
    Eigen::LLT<Eigen::MatrixXd> llt(hess);
    if (llt.info() != Eigen::Success) {
      throw NumericalError(
          "refine_local_minimizer: Hessian not positive definite on the "
          "hyperplane");
    }
    const Eigen::VectorXd step = llt.solve(g);
    double last = 0.0;
    for (int i = 0; i < m; ++i) {
      x[static_cast<std::size_t>(i)] -= step[i];
      last += step[i];
    }
    x[static_cast<std::size_t>(m)] += last;
    for (double v : x) {
      if (!(v > 0.0)) {
        throw NumericalError("refine_local_minimizer: left the simplex");
      }
    }
    if (step.lpNorm<Eigen::Infinity>() < 1e-13) return x;
  }
  throw NumericalError(
      "refine_local_minimizer: Newton did not converge in 100 iterations");
}

double newton_on_profile(const ModelParams& p, double z) {
  for (int it = 0; it < 100; ++it) {
    const double g = df_dz(p, z);
    const double curv = d2f_dz2(p, z);
    if (!(curv > 0.0)) {
      throw NumericalError(
          "refine_local_minimizer: non-positive curvature on the profile");
    }
    const double step = g / curv;
    const double next = z - step;
    if (!(next > -1.0 && next < 1.0)) {
      throw NumericalError("refine_local_minimizer: left the simplex");
    }
    z = next;
    if (std::abs(step) <= 1e-13 || g == 0.0) return z;
  }
  throw NumericalError(
      "refine_local_minimizer: Newton did not converge in 100 iterations");
}

}  // namespace

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::kUniqueOffLine:
      return "UniqueOffLine";
    case Regime::kCriticalLinePair:
      return "CriticalLinePair";
    case Regime::kSubcriticalZeroField:
      return "SubcriticalZeroField";
    case Regime::kSupercriticalZeroField:
      return "SupercriticalZeroField_qStates";
    case Regime::kCriticalZeroField:
      return "CriticalZeroField_qPlus1States";
    case Regime::kTricritical:
      return "Tricritical";
  }
  return "Unknown";
}

std::vector<double> profile_local_minima(const ModelParams& params,
                                         const MinimizerOptions& options) {
  params.validate();
  if (options.grid_points < 1000) {
    throw PreconditionError("profile search needs at least 1000 grid points");
  }
  if (!(options.z_tolerance > 0.0)) {
    throw PreconditionError("z tolerance must be > 0");
  }
  std::vector<double> nodes;
  nodes.reserve(static_cast<std::size_t>(options.grid_points) + 4);
  nodes.push_back(-1.0);
  const int k = options.grid_points;
  for (int i = 0; i < k; ++i) {
    nodes.push_back(-1.0 + 2.0 * (i + 0.5) / k);
  }
  const double zi = inflection_z(params.q, params.beta);
  if (zi > 0.0) {
    nodes.push_back(-zi);
    nodes.push_back(zi);
  }
  nodes.push_back(1.0);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  // Bisection runs two orders below the requested tolerance.
  const double bisect_tol = options.z_tolerance * 1e-2;
  std::vector<double> minima;
  double prev = profile_slope(params, nodes.front());
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const double cur = profile_slope(params, nodes[i]);
    if (prev < 0.0 && cur >= 0.0) {
      minima.push_back(bisect_root(params, nodes[i - 1], nodes[i], bisect_tol));
    }
    prev = cur;
  }
  if (minima.empty()) {
    throw NumericalError("find_global_minimizers: failed to bracket a minimum");
  }
  return minima;
}

MinimizerSet find_global_minimizers(const ModelParams& params,
                                    const MinimizerOptions& options) {
  params.validate();
  const int q = params.q;
  const PhaseBoundaries pb = phase_boundaries(q);
  const double z_sym = -static_cast<double>(q - 2) / q;

  MinimizerSet out;
  if (std::abs(params.beta - pb.beta_0) <= kTricriticalTolerance &&
      std::abs(params.h - pb.h_0) <= kTricriticalTolerance) {
    out.regime = Regime::kTricritical;
    out.minimizers.push_back(x_from_z(q, 0.0));
    out.z_values.push_back(0.0);
    return out;
  }

  // Canonical states have x_1 >= x_i; the others are permutations or
  // saddles of the full simplex.
  std::vector<double> local;
  for (double z : profile_local_minima(params, options)) {
    if (z >= z_sym - kStateSeparation) local.push_back(z);
  }
  if (local.empty()) {
    throw NumericalError("find_global_minimizers: no canonical minimum found");
  }
  std::vector<double> values;
  double best = std::numeric_limits<double>::infinity();
  for (double z : local) {
    values.push_back(profile_value(params, z));
    best = std::min(best, values.back());
  }
  std::vector<double> candidates;
  for (std::size_t i = 0; i < local.size(); ++i) {
    if (values[i] <= best + options.value_tolerance) {
      candidates.push_back(local[i]);
    }
  }

  if (params.h == 0.0) {
    const bool analytic_critical =
        q >= 3 && std::abs(params.beta - pb.beta_c) <=
                      kAnalyticLineTolerance * std::max(1.0, pb.beta_c);
    if (analytic_critical && local.size() >= 2) {
      candidates = {local.front(), local.back()};
    }
    bool has_sym = false;
    double z_asym = std::numeric_limits<double>::quiet_NaN();
    for (double z : candidates) {
      if (std::abs(z - z_sym) <= kStateSeparation) {
        has_sym = true;
      } else if (z > z_sym) {
        z_asym = z;
      }
    }
    const bool has_asym = !std::isnan(z_asym);
    if (has_sym) {
      out.minimizers.push_back(uniform(q));
      out.z_values.push_back(z_sym);
    }
    if (has_asym) {
      const DensityVector base = x_from_z(q, z_asym);
      for (int j = 0; j < q; ++j) {
        out.minimizers.push_back(swap_first(base, j));
        out.z_values.push_back(z_asym);
      }
    }
    if (has_sym && has_asym) {
      out.regime = Regime::kCriticalZeroField;
    } else if (has_asym) {
      out.regime = Regime::kSupercriticalZeroField;
    } else {
      out.regime = Regime::kSubcriticalZeroField;
    }
    if ((out.regime == Regime::kCriticalZeroField) != analytic_critical) {
      out.boundary_warning = true;
      out.note = "multiplicity decided by value tolerance near beta_c";
    }
    return out;
  }

  bool analytic_line = false;
  if (q >= 3) {
    const CriticalField cf = critical_field(q, params.beta);
    analytic_line = cf.on_segment && params.beta > pb.beta_0 &&
                    std::abs(params.h - cf.h) <= kAnalyticLineTolerance;
  }
  if (analytic_line && local.size() >= 2) {
    candidates = {local.back(), local.front()};
  } else if (candidates.size() >= 2) {
    std::sort(candidates.begin(), candidates.end(), std::greater<>());
    candidates = {candidates.front(), candidates.back()};
  }
  for (double z : candidates) {
    out.minimizers.push_back(x_from_z(q, z));
    out.z_values.push_back(z);
  }
  out.regime = candidates.size() >= 2 ? Regime::kCriticalLinePair
                                      : Regime::kUniqueOffLine;
  if ((out.regime == Regime::kCriticalLinePair) != analytic_line) {
    out.boundary_warning = true;
    out.note = "multiplicity decided by value tolerance near the critical line";
  }
  return out;
}

double stationarity_residual(const ModelParams& params,
                             const DensityVector& x) {
  params.validate();
  if (x.q() != params.q) {
    throw PreconditionError("stationarity_residual: dimension mismatch");
  }
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      throw PreconditionError(
          "stationarity_residual: x must lie in the simplex interior");
    }
    // Field folded in so that the residual is a spread of g values.
    g[i] = std::log(x[i]) - params.beta * x[i] - (i == 0 ? params.h : 0.0);
  }
  const auto [lo, hi] = std::minmax_element(g.begin(), g.end());
  return *hi - *lo;
}

CenteringCorrection refine_local_minimizer(const ModelParams& params_n,
                                           const DensityVector& x0) {
  params_n.validate();
  const int q = params_n.q;
  if (x0.q() != q) {
    throw PreconditionError("refine_local_minimizer: dimension mismatch");
  }
  if (x0.min() <= 0.0) {
    throw PreconditionError(
        "refine_local_minimizer: x0 must lie in the simplex interior");
  }
  CenteringCorrection out;
  out.d.assign(static_cast<std::size_t>(q), 0.0);
  if (params_n.h == 0.0 && x0.max() - x0.min() <= 1e-12) {
    // The uniform vector is stationary for every beta at zero field.
    return out;
  }

  const int j = distinguished_index(x0);
  std::vector<double> target;
  if (j == 0 || params_n.h == 0.0) {
    const double z = newton_on_profile(params_n, 2.0 * x0[static_cast<std::size_t>(j)] - 1.0);
    target = swap_first(x_from_z(q, z), j).vec();

    // Competing profile minima at the same distance make d ill-defined.
    std::vector<double> dists;
    for (double zm : profile_local_minima(params_n)) {
      dists.push_back(distance(swap_first(x_from_z(q, zm), j).values(),
                               x0.values()));
    }
    std::sort(dists.begin(), dists.end());
    out.ambiguous = dists.size() >= 2 && dists[1] - dists[0] <= 1e-9;
  } else {
    target = newton_in_hyperplane(params_n, x0.vec());
  }

  double sq = 0.0;
  for (std::size_t i = 0; i < out.d.size(); ++i) {
    out.d[i] = target[i] - x0[i];
    sq += out.d[i] * out.d[i];
  }
  out.norm = std::sqrt(sq);
  if (out.norm > 0.1) {
    throw NumericalError(
        "refine_local_minimizer: local minimizer is farther than 0.1 from x0");
  }
  return out;
}

double default_ball_radius(const MinimizerSet& set) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < set.minimizers.size(); ++a) {
    for (std::size_t b = a + 1; b < set.minimizers.size(); ++b) {
      best = std::min(best, distance(set.minimizers[a].values(),
                                     set.minimizers[b].values()));
    }
  }
  return best / 3.0;
}

}  // namespace cwpotts
