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

#include "cwpotts/csv.hpp"

#include <iomanip>
#include <limits>

namespace cwpotts {
namespace {

class PrecisionGuard {
 public:
  explicit PrecisionGuard(std::ostream& out)
      : out_(out), precision_(out.precision()) {
    out_ << std::setprecision(std::numeric_limits<double>::max_digits10);
  }
  ~PrecisionGuard() { out_.precision(precision_); }

 private:
  std::ostream& out_;
  std::streamsize precision_;
};

void write_header(std::ostream& out, std::span<const std::string> names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    out << (i ? "," : "") << names[i];
  }
  out << '\n';
}

std::vector<std::string> indexed(const std::string& prefix, int count) {
  std::vector<std::string> out;
  for (int i = 1; i <= count; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace

void write_csv(std::ostream& out, const CsvTable& table) {
  PrecisionGuard guard(out);
  write_header(out, table.header);
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << row[i];
    }
    out << '\n';
  }
}

void write_distribution_csv(std::ostream& out, const ExactDistribution& dist) {
  PrecisionGuard guard(out);
  auto header = indexed("n", dist.q());
  header.emplace_back("log_weight");
  header.emplace_back("prob");
  write_header(out, header);
  const auto lw = dist.log_weights();
  for (std::size_t i = 0; i < dist.size(); ++i) {
    for (std::int64_t c : dist.point(i)) out << c << ',';
    out << lw[i] << ',' << dist.probability(i) << '\n';
  }
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& matrix) {
  PrecisionGuard guard(out);
  write_header(out, indexed("c", static_cast<int>(matrix.cols())));
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      out << (j ? "," : "") << matrix(i, j);
    }
    out << '\n';
  }
}

void write_marginal_csv(std::ostream& out, const Marginal& marginal) {
  PrecisionGuard guard(out);
  out << "value,prob\n";
  for (std::size_t i = 0; i < marginal.values.size(); ++i) {
    out << marginal.values[i] << ',' << marginal.probs[i] << '\n';
  }
}

void write_cdf_table_csv(std::ostream& out,
                         std::span<const std::pair<double, double>> table) {
  PrecisionGuard guard(out);
  out << "t,cdf\n";
  for (const auto& [t, f] : table) out << t << ',' << f << '\n';
}

void write_sample_log_csv(std::ostream& out, int q,
                          std::span<const SampleRecord> records) {
  PrecisionGuard guard(out);
  std::vector<std::string> header{"seed", "replica"};
  for (auto& name : indexed("N", q)) header.push_back(std::move(name));
  header.emplace_back("giant_fraction");
  header.emplace_back("component_count");
  write_header(out, header);
  for (const auto& r : records) {
    out << r.seed << ',' << r.replica;
    for (std::int64_t c : r.counts) out << ',' << c;
    out << ',' << r.giant_fraction << ',' << r.component_count << '\n';
  }
}

}  // namespace cwpotts
