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

// Plain comma-separated writers. Reals are printed with 17 significant
// digits so tables round-trip.

#ifndef CWPOTTS_CSV_HPP_
#define CWPOTTS_CSV_HPP_

#include <Eigen/Core>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cwpotts/exact_dist.hpp"
#include "cwpotts/rc_graph.hpp"

namespace cwpotts {

// A header and rows of reals.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

void write_csv(std::ostream& out, const CsvTable& table);

// Columns n1..nq, log_weight, prob; one row per lattice point.
void write_distribution_csv(std::ostream& out, const ExactDistribution& dist);

// Columns c1..cq; one row per matrix row.
void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& matrix);

// Columns value, prob.
void write_marginal_csv(std::ostream& out, const Marginal& marginal);

// Columns t, cdf.
void write_cdf_table_csv(std::ostream& out,
                         std::span<const std::pair<double, double>> table);

// Columns seed, replica, N1..Nq, giant_fraction, component_count.
void write_sample_log_csv(std::ostream& out, int q,
                          std::span<const SampleRecord> records);

}  // namespace cwpotts

#endif  // CWPOTTS_CSV_HPP_
