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

#ifndef CWPOTTS_INVARIANTS_HPP_
#define CWPOTTS_INVARIANTS_HPP_

#include <string>
#include <vector>

namespace cwpotts {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

// Fast internal-consistency checks of every module, a few seconds in total.
std::vector<CheckResult> run_invariant_suite();

}  // namespace cwpotts

#endif  // CWPOTTS_INVARIANTS_HPP_
