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

// Closed-form limiting objects for the count vector: the Hessian quadratic
// form on the hyperplane sum(w) = 0, Gaussian covariances, coexistence
// weights of competing states, and the quartic law at the tricritical
// point.

#ifndef CWPOTTS_LIMIT_LAWS_HPP_
#define CWPOTTS_LIMIT_LAWS_HPP_

#include <Eigen/Core>
#include <span>
#include <utility>
#include <vector>

#include "cwpotts/minimizers.hpp"
#include "cwpotts/structured_matrix.hpp"
#include "cwpotts/types.hpp"

namespace cwpotts {

// Q(w) = sum (1/x_i - beta) w_i^2 for w with sum(w) = 0 (within 1e-9).
double quadratic_form(const DensityVector& x, double beta,
                      std::span<const double> w);

// Positive definiteness of Q on the hyperplane for x with its minimum
// repeated at least q-1 times:
//   1/min(x) - beta > 0  and  1 - q beta min(x) max(x) > 0.
bool is_positive_definite_on_H(const DensityVector& x, double beta);

struct CovarianceMatrix {
  Eigen::MatrixXd entries;
  int rank = 0;
  bool degenerate = false;
};

// Number of eigenvalues of a symmetric matrix above tol.
int numerical_rank(const Eigen::MatrixXd& symmetric, double tol = 1e-9);

// Limiting covariance K(x) of W. Built from the structured inverse of the
// (q-1) x (q-1) Hessian block on the coordinates other than the largest one,
// then completed with W_j = -sum of the others. Rank q-1.
CovarianceMatrix covariance_matrix(const DensityVector& x, double beta);

// The same matrix written entrywise in the symmetric alpha(x_i, x_j) form,
// valid for any minimizer shape.
Eigen::MatrixXd covariance_symmetric_form(const DensityVector& x, double beta);

// The same matrix in the first-coordinate form; requires x_2 = ... = x_q.
Eigen::MatrixXd covariance_first_coordinate_form(const DensityVector& x,
                                                 double beta);

// tau(x) = (1 - beta min x)^{(2-q)/2} exp((lambda/2) sum x_i^2 + nu x_1).
double coexistence_weight(const DensityVector& x, double beta, double lambda,
                          double nu);

struct CoexistenceWeights {
  std::vector<double> taus;
  std::vector<double> probs;
};

// Normalized tau over all minimizers of the set (at least two).
CoexistenceWeights coexistence_probabilities(const MinimizerSet& minimizers,
                                             double beta, double lambda,
                                             double nu);
CoexistenceWeights coexistence_probabilities(
    std::span<const DensityVector> minimizers, double beta, double lambda,
    double nu);

// Probability density proportional to exp(-coefficient t^4) with
// coefficient = 4 (q-1)^4 / 3, the limit law of the tricritical T.
class QuarticLaw {
 public:
  explicit QuarticLaw(int q);

  int q() const { return q_; }
  double coefficient() const { return coefficient_; }
  // c = coefficient^{1/4} / (2 Gamma(5/4)).
  double normalization() const { return normalization_; }

  double pdf(double t) const;
  // Adaptive Gauss-Kronrod quadrature of the pdf from 0, tolerance 1e-10.
  double cdf(double t) const;
  double second_moment() const;
  double fourth_moment() const;
  // Radius beyond which the two-sided tail mass is below 1e-12.
  double support_radius() const { return support_radius_; }

  // (t, cdf(t)) at `points` equally spaced abscissae on [-radius, radius].
  std::vector<std::pair<double, double>> cdf_table(double radius,
                                                   int points) const;

 private:
  int q_;
  double coefficient_;
  double normalization_;
  double support_radius_;
};

inline QuarticLaw quartic_law(int q) { return QuarticLaw(q); }

// Limiting covariance of V at the tricritical point: first row and column
// zero, the remaining block q/(2(q-1)^2(q-2)) [(q-2) on the diagonal, -1
// off it], rank q-2. For q = 2 V vanishes: the zero matrix, flagged
// degenerate.
CovarianceMatrix tricritical_V_covariance(int q);

// Taylor constants at the tricritical minimizer x_0 along u = (1-q, 1, ...)
// and along v orthogonal to u in the hyperplane, with finite-difference
// estimates of both.
struct TaylorConstants {
  double quartic_coeff = 0.0;      // (1/12) sum u_i^4 / x_i^3
  double v_quad_coeff = 0.0;       // (1/2) Q_{x_0}(v) / |v|^2
  double fd_quartic = 0.0;         // [f(x_0 + t u) - f(x_0)] / t^4
  double fd_quadratic = 0.0;       // [f(x_0 + s v) - f(x_0)] / (s^2 |v|^2)
  double quartic_rel_err = 0.0;
  double quadratic_rel_err = 0.0;  // 0 when q = 2 (no such v)
};

TaylorConstants t4_coefficient_check(int q, double t = 1e-2, double s = 1e-3);

}  // namespace cwpotts

#endif  // CWPOTTS_LIMIT_LAWS_HPP_
