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

#include "cwpotts/structured_matrix.hpp"

#include <cmath>

#include "cwpotts/types.hpp"

namespace cwpotts {

double StructuredMatrix::determinant() const {
  if (m < 1) throw PreconditionError("StructuredMatrix: m must be >= 1");
  return std::pow(b, m - 1) * (b + m * a);
}

Eigen::MatrixXd StructuredMatrix::dense() const {
  if (m < 1) throw PreconditionError("StructuredMatrix: m must be >= 1");
  Eigen::MatrixXd out = Eigen::MatrixXd::Constant(m, m, a);
  out.diagonal().array() += b;
  return out;
}

StructuredMatrix structured_inverse(const StructuredMatrix& matrix) {
  const double a = matrix.a;
  const double b = matrix.b;
  const int m = matrix.m;
  if (m < 1) throw PreconditionError("structured_inverse: m must be >= 1");
  if (m == 1) {
    if (a + b == 0.0) throw PreconditionError("structured_inverse: singular");
    return {0.0, 1.0 / (a + b), 1};
  }
  if (b == 0.0 || m * a + b == 0.0) {
    throw PreconditionError("structured_inverse: singular");
  }
  return {-a / (b * (m * a + b)), 1.0 / b, m};
}

}  // namespace cwpotts
