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

#ifndef CWPOTTS_STRUCTURED_MATRIX_HPP_
#define CWPOTTS_STRUCTURED_MATRIX_HPP_

#include <Eigen/Core>

namespace cwpotts {

// a * A_m + b * I_m, where A_m is the m x m all-ones matrix.
struct StructuredMatrix {
  double a = 0.0;
  double b = 0.0;
  int m = 1;

  // b^{m-1} (b + m a).
  double determinant() const;
  Eigen::MatrixXd dense() const;
};

// (1/b)(I - a/(m a + b) A) for m >= 2, (a + b)^{-1} for m = 1. Throws
// PreconditionError when the matrix is singular.
StructuredMatrix structured_inverse(const StructuredMatrix& matrix);

}  // namespace cwpotts

#endif  // CWPOTTS_STRUCTURED_MATRIX_HPP_
