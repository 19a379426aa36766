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

#ifndef CWPOTTS_TOOLS_CLI_HPP_
#define CWPOTTS_TOOLS_CLI_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace cwpotts::cli {

// Parameters for every subcommand. Fields a command does not read keep
// their defaults and are still serialized.
struct ExperimentConfig {
  std::string command;
  int q = 3;
  double beta = 0.0;
  double h = 0.0;
  // When set, (beta, h) is replaced by the critical-line point of this z.
  std::optional<double> z;
  std::vector<std::int64_t> n;
  double gamma = 0.0;
  double lambda = 0.0;
  double nu = 0.0;
  std::optional<double> eps;
  std::optional<double> threshold;
  std::vector<double> zs;
  int points = 9;
  std::uint64_t seed = 1;
  int replicas = 400;
  int threads = 1;
  std::string output;
  std::string format = "json";
  std::string sample_log;
  std::optional<std::int64_t> lattice_cap;

  friend bool operator==(const ExperimentConfig&,
                         const ExperimentConfig&) = default;
};

void to_json(nlohmann::json& j, const ExperimentConfig& c);
void from_json(const nlohmann::json& j, ExperimentConfig& c);

// Lattice cap from POTTS_LATTICE_CAP, or the library default.
std::int64_t lattice_cap_from_env();

// Entry point shared by the `potts` binary and the tests. Returns the
// process exit code.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace cwpotts::cli

#endif  // CWPOTTS_TOOLS_CLI_HPP_
