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

#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "cwpotts/csv.hpp"
#include "cwpotts/exact_dist.hpp"
#include "cwpotts/types.hpp"

namespace cwpotts {
namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(CsvTest, GenericTable) {
  std::ostringstream out;
  write_csv(out, CsvTable{{"a", "b"}, {{1.0, 0.5}, {2.0, 0.25}}});
  EXPECT_EQ(out.str(), "a,b\n1,0.5\n2,0.25\n");
}

TEST(CsvTest, FullPrecisionRoundTrips) {
  std::ostringstream out;
  const double x = 0.1 + 0.2;
  write_csv(out, CsvTable{{"x"}, {{x}}});
  EXPECT_EQ(std::stod(lines(out.str())[1]), x);
  EXPECT_EQ(out.precision(), 6);
}

TEST(CsvTest, Distribution) {
  const auto dist = exact_distribution(ModelParams::make(2, 0.0, 0.0), 2);
  std::ostringstream out;
  write_distribution_csv(out, dist);
  const auto rows = lines(out.str());
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], "n1,n2,log_weight,prob");
  EXPECT_EQ(rows[1].substr(0, 4), "2,0,");
  EXPECT_EQ(rows[2].substr(rows[2].rfind(',') + 1), "0.5");
}

TEST(CsvTest, MatrixMarginalAndCdf) {
  Eigen::MatrixXd m(2, 2);
  m << 1, -1, -1, 1;
  std::ostringstream a;
  write_matrix_csv(a, m);
  EXPECT_EQ(a.str(), "c1,c2\n1,-1\n-1,1\n");
  std::ostringstream b;
  write_marginal_csv(b, Marginal{{-1.0, 1.0}, {0.5, 0.5}});
  EXPECT_EQ(b.str(), "value,prob\n-1,0.5\n1,0.5\n");
  std::ostringstream c;
  const std::vector<std::pair<double, double>> table{{0.0, 0.5}};
  write_cdf_table_csv(c, table);
  EXPECT_EQ(c.str(), "t,cdf\n0,0.5\n");
}

TEST(CsvTest, SampleLog) {
  std::ostringstream out;
  const std::vector<SampleRecord> records{{7, 2, {3, 1, 0}, 0.75, 2}};
  write_sample_log_csv(out, 3, records);
  EXPECT_EQ(out.str(),
            "seed,replica,N1,N2,N3,giant_fraction,component_count\n"
            "7,2,3,1,0,0.75,2\n");
}

}  // namespace
}  // namespace cwpotts
