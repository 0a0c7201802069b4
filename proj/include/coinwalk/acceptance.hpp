// Copyright 2026 The coinwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COINWALK_ACCEPTANCE_HPP
#define COINWALK_ACCEPTANCE_HPP

#include <string>
#include <vector>

namespace coinwalk::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Identifiers of every acceptance criterion, in order.
std::vector<int> criterion_ids();

/// Runs one criterion. Throws std::out_of_range for an unknown id.
CriterionResult run_criterion(int id, int threads = 1);

/// "PASS  3 variance anchors: ..." style line.
std::string format_line(const CriterionResult &result);

}  // namespace coinwalk::acceptance

#endif  // COINWALK_ACCEPTANCE_HPP
