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

#include "cwpotts/limit_laws.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <string>

#include "cwpotts/free_energy.hpp"

namespace cwpotts {
namespace {

constexpr double kPatternTolerance = 1e-9;

void check_interior(const DensityVector& x, const char* what) {
  if (!(x.min() > 0.0)) {
    throw PreconditionError(std::string(what) +
                            ": x must lie in the simplex interior");
  }
}

// The minimum of a minimizer-shaped x is repeated at least q-1 times.
void check_minimizer_shape(const DensityVector& x, const char* what) {
  const double lo = x.min();
  int repeats = 0;
  for (double v : x.values()) {
    if (v - lo <= kPatternTolerance) ++repeats;
  }
  if (repeats < x.q() - 1) {
    throw PreconditionError(std::string(what) +
                            ": x must have its minimum repeated q-1 times");
  }
}

std::size_t first_max_index(const DensityVector& x) {
  const auto v = x.values();
  return static_cast<std::size_t>(
      std::distance(v.begin(), std::max_element(v.begin(), v.end())));
}

// Completes a covariance known on all coordinates but `skip` using the
// linear constraint sum = 0.
Eigen::MatrixXd complete_with_constraint(const StructuredMatrix& block,
                                         int dim, std::size_t skip) {
  const int m = block.m;
  const double row_sum = block.b + m * block.a;
  const double total = m * block.b + static_cast<double>(m) * m * block.a;
  Eigen::MatrixXd out(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const bool si = static_cast<std::size_t>(i) == skip;
      const bool sj = static_cast<std::size_t>(j) == skip;
      if (si && sj) {
        out(i, j) = total;
      } else if (si || sj) {
        out(i, j) = -row_sum;
      } else {
        out(i, j) = block.a + (i == j ? block.b : 0.0);
      }
    }
  }
  return out;
}

}  // namespace

double quadratic_form(const DensityVector& x, double beta,
                      std::span<const double> w) {
  check_interior(x, "quadratic_form");
  if (w.size() != x.size()) {
    throw PreconditionError("quadratic_form: dimension mismatch");
  }
  double sum = 0.0;
  double scale = 0.0;
  for (double v : w) {
    sum += v;
    scale = std::max(scale, std::abs(v));
  }
  if (std::abs(sum) > 1e-9 * std::max(1.0, scale)) {
    throw PreconditionError("quadratic_form: w must satisfy sum(w) = 0");
  }
  double out = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    out += (1.0 / x[i] - beta) * w[i] * w[i];
  }
  return out;
}

bool is_positive_definite_on_H(const DensityVector& x, double beta) {
  check_interior(x, "is_positive_definite_on_H");
  check_minimizer_shape(x, "is_positive_definite_on_H");
  const double lo = x.min();
  const double hi = x.max();
  return 1.0 / lo - beta > 0.0 && 1.0 - x.q() * beta * lo * hi > 0.0;
}

int numerical_rank(const Eigen::MatrixXd& symmetric, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetric,
                                                    Eigen::EigenvaluesOnly);
  int rank = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()[i] > tol) ++rank;
  }
  return rank;
}

CovarianceMatrix covariance_matrix(const DensityVector& x, double beta) {
  if (!is_positive_definite_on_H(x, beta)) {
    throw PreconditionError(
        "covariance_matrix: quadratic form is degenerate at this point");
  }
  const int q = x.q();
  const std::size_t j = first_max_index(x);
  const StructuredMatrix hessian{1.0 / x.max() - beta, 1.0 / x.min() - beta,
                                 q - 1};
  CovarianceMatrix out;
  out.entries = complete_with_constraint(structured_inverse(hessian), q, j);
  out.rank = q - 1;
  return out;
}

Eigen::MatrixXd covariance_symmetric_form(const DensityVector& x,
                                          double beta) {
  check_interior(x, "covariance_symmetric_form");
  const int q = x.q();
  const double lo = x.min();
  const double hi = x.max();
  const double scale = 1.0 / (1.0 / (lo * hi) - q * beta);
  auto alpha = [&](double a, double b) {
    return (1.0 / hi - beta) / (1.0 / std::max(a, b) - beta);
  };
  Eigen::MatrixXd k(q, q);
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) {
      const double xi = x[static_cast<std::size_t>(i)];
      const double xj = x[static_cast<std::size_t>(j)];
      k(i, j) = i == j ? 1.0 + (q - 2) * alpha(xi, xi) : -alpha(xi, xj);
    }
  }
  return scale * k;
}

Eigen::MatrixXd covariance_first_coordinate_form(const DensityVector& x,
                                                 double beta) {
  check_interior(x, "covariance_first_coordinate_form");
  const int q = x.q();
  for (int i = 2; i < q; ++i) {
    if (std::abs(x[static_cast<std::size_t>(i)] - x[1]) > kPatternTolerance) {
      throw PreconditionError(
          "covariance_first_coordinate_form: requires x_2 = ... = x_q");
    }
  }
  const double x1 = x[0];
  const double xq = x[1];
  const double scale = 1.0 / (1.0 / (x1 * xq) - q * beta);
  const double r = (1.0 / x1 - beta) / (1.0 / xq - beta);
  Eigen::MatrixXd k(q, q);
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) {
      if (i == 0 && j == 0) {
        k(i, j) = q - 1;
      } else if (i == 0 || j == 0) {
        k(i, j) = -1.0;
      } else {
        k(i, j) = i == j ? 1.0 + (q - 2) * r : -r;
      }
    }
  }
  return scale * k;
}

double coexistence_weight(const DensityVector& x, double beta, double lambda,
                          double nu) {
  const double base = 1.0 - beta * x.min();
  if (!(base > 0.0)) {
    throw PreconditionError("coexistence_weight: requires 1 - beta min(x) > 0");
  }
  double sq = 0.0;
  for (double v : x.values()) sq += v * v;
  return std::pow(base, (2.0 - x.q()) / 2.0) *
         std::exp(0.5 * lambda * sq + nu * x[0]);
}

CoexistenceWeights coexistence_probabilities(
    std::span<const DensityVector> minimizers, double beta, double lambda,
    double nu) {
  if (minimizers.size() < 2) {
    throw PreconditionError(
        "coexistence_probabilities: needs at least two minimizers");
  }
  CoexistenceWeights out;
  double total = 0.0;
  for (const auto& x : minimizers) {
    out.taus.push_back(coexistence_weight(x, beta, lambda, nu));
    total += out.taus.back();
  }
  for (double t : out.taus) out.probs.push_back(t / total);
  return out;
}

CoexistenceWeights coexistence_probabilities(const MinimizerSet& minimizers,
                                             double beta, double lambda,
                                             double nu) {
  return coexistence_probabilities(minimizers.minimizers, beta, lambda, nu);
}

QuarticLaw::QuarticLaw(int q) : q_(q) {
  if (q < 2) throw PreconditionError("QuarticLaw: q must be >= 2");
  const double qm1 = q - 1.0;
  coefficient_ = 4.0 * std::pow(qm1, 4) / 3.0;
  normalization_ = std::pow(coefficient_, 0.25) / (2.0 * std::tgamma(1.25));
  // exp(-40) / (4 a r^3) is far below 1e-12 for every q >= 2.
  support_radius_ = std::pow(40.0 / coefficient_, 0.25);
}

double QuarticLaw::pdf(double t) const {
  const double t2 = t * t;
  return normalization_ * std::exp(-coefficient_ * t2 * t2);
}

double QuarticLaw::cdf(double t) const {
  if (t == 0.0) return 0.5;
  const double upper = std::min(std::abs(t), support_radius_);
  const double half = boost::math::quadrature::gauss_kronrod<double, 15>::
      integrate([this](double s) { return pdf(s); }, 0.0, upper, 15, 1e-10);
  return t > 0.0 ? 0.5 + half : 0.5 - half;
}

double QuarticLaw::second_moment() const {
  return std::tgamma(0.75) / std::tgamma(0.25) / std::sqrt(coefficient_);
}

double QuarticLaw::fourth_moment() const { return 0.25 / coefficient_; }

std::vector<std::pair<double, double>> QuarticLaw::cdf_table(
    double radius, int points) const {
  if (points < 2 || !(radius > 0.0)) {
    throw PreconditionError("cdf_table: needs radius > 0 and >= 2 points");
  }
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double t = -radius + 2.0 * radius * i / (points - 1);
    out.emplace_back(t, cdf(t));
  }
  return out;
}

CovarianceMatrix tricritical_V_covariance(int q) {
  if (q < 2) throw PreconditionError("tricritical_V_covariance: q must be >= 2");
  CovarianceMatrix out;
  if (q == 2) {
    out.entries = Eigen::MatrixXd::Zero(2, 2);
    out.rank = 0;
    out.degenerate = true;
    return out;
  }
  // Density of (V_3..V_q) is exp(-(1/2) v^T H v), H = s (A + I), and
  // V_2 = -sum V_3..V_q; V_1 = 0.
  const double s = 2.0 * (q - 1.0) * (q - 2.0) / q;
  const StructuredMatrix inv = structured_inverse({s, s, q - 2});
  const Eigen::MatrixXd block = complete_with_constraint(inv, q - 1, 0);
  out.entries = Eigen::MatrixXd::Zero(q, q);
  out.entries.bottomRightCorner(q - 1, q - 1) = block;
  out.rank = q - 2;
  return out;
}

TaylorConstants t4_coefficient_check(int q, double t, double s) {
  if (q < 2) throw PreconditionError("t4_coefficient_check: q must be >= 2");
  const PhaseBoundaries pb = phase_boundaries(q);
  const ModelParams params = ModelParams::make(q, pb.beta_0, pb.h_0);
  const DensityVector x0 = x_from_z(q, 0.0);
  const double f0 = free_energy(params, x0);
  const auto qs = static_cast<std::size_t>(q);

  std::vector<double> u(qs, 1.0);
  u[0] = 1.0 - q;

  TaylorConstants out;
  for (std::size_t i = 0; i < qs; ++i) {
    out.quartic_coeff += std::pow(u[i], 4) / std::pow(x0[i], 3);
  }
  out.quartic_coeff /= 12.0;

  std::vector<double> xt(qs);
  for (std::size_t i = 0; i < qs; ++i) xt[i] = x0[i] + t * u[i];
  out.fd_quartic =
      (free_energy(params, DensityVector(xt)) - f0) / std::pow(t, 4);
  out.quartic_rel_err =
      std::abs(out.fd_quartic - out.quartic_coeff) / out.quartic_coeff;

  if (q >= 3) {
    // v = e_2 - e_3 lies in the hyperplane and is orthogonal to u.
    std::vector<double> v(qs, 0.0);
    v[1] = 1.0;
    v[2] = -1.0;
    const double v2 = 2.0;
    out.v_quad_coeff = 0.5 * quadratic_form(x0, pb.beta_0, v) / v2;
    std::vector<double> xs(qs);
    for (std::size_t i = 0; i < qs; ++i) xs[i] = x0[i] + s * v[i];
    out.fd_quadratic =
        (free_energy(params, DensityVector(xs)) - f0) / (s * s * v2);
    out.quadratic_rel_err =
        std::abs(out.fd_quadratic - out.v_quad_coeff) / out.v_quad_coeff;
  }
  return out;
}

}  // namespace cwpotts
