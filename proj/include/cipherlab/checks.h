// Copyright 2026 The Cipherlab Authors
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
#ifndef CIPHERLAB_CHECKS_H_
#define CIPHERLAB_CHECKS_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "cipherlab/core_model.h"

namespace cipherlab {

struct CheckOutcome {
  std::string name;
  bool passed = false;
  std::string detail;
};

// The 4x8 example bin over {0,1,2}: eight distinct columns of type (2,1,1)
// whose every row has type (4,2,2).
std::vector<SymbolSequence> ExampleBinColumns();

// Exhaustive combinatorial checks: row types of full type classes (n <= 8,
// |X| <= 3), sampling without replacement (urns of <= 8 balls over <= 3
// symbols), and the class-size lower bound (n <= 20, |X| <= 4).
std::vector<CheckOutcome> RunCombinatoricsChecks();

// Brute-force oracle against the exact engine for every small binary
// instance (n <= 4, k in {1,2,4}, two seeds, both observation modes).
std::vector<CheckOutcome> RunOracleChecks();

// The example bin as a one-bin codebook: Eve's reply is all zeros and her
// expected Hamming distortion equals D_max = 1/2.
std::vector<CheckOutcome> RunExampleBinChecks();

// suite is one of "lemmas", "oracle", "figure2".
absl::StatusOr<std::vector<CheckOutcome>> RunCheckSuite(std::string_view suite);

}  // namespace cipherlab

#endif  // CIPHERLAB_CHECKS_H_
