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
#ifndef CIPHERLAB_ADVERSARY_H_
#define CIPHERLAB_ADVERSARY_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "absl/status/statusor.h"
#include "cipherlab/cipher_system.h"
#include "cipherlab/codebook.h"
#include "cipherlab/core_model.h"

namespace cipherlab {

// What Eve conditions on: the whole message (J, C), or only J.
enum class Observation { kFullMessage, kBinOnly };

// kFull: Eve models the uniform random message sent for uncoded inputs.
// kTypicalOnly: Eve assumes the input was coded; distortions are then
// conditional on X^n being coded and the report carries the mass deficit.
enum class EveModel { kFull, kTypicalOnly };

const char* ObservationName(Observation observe);
absl::StatusOr<Observation> ParseObservation(std::string_view name);

struct AdversaryOptions {
  Observation observe = Observation::kFullMessage;
  EveModel model = EveModel::kFull;
  // Must match the encoder Eve is attacking.
  PadMode pad = PadMode::kOneTimePad;

  // Exact engines enumerate every type of length n.
  std::size_t max_exact_n = 24;
  // Exact engines enumerate every observation.
  std::uint64_t max_messages = std::uint64_t{1} << 22;
  // Materialized posteriors.
  std::uint64_t max_support = std::uint64_t{1} << 22;
  // Brute force: observations * |Z|^n * |X|^n * n.
  std::uint64_t max_oracle_work = std::uint64_t{1} << 30;
};

// Eve's normalized posterior over source blocks.
struct PosteriorTable {
  std::vector<SymbolSequence> support;
  std::vector<double> weights;
};

absl::StatusOr<PosteriorTable> PosteriorGivenMessage(
    const Codebook& codebook, Message message,
    const AdversaryOptions& options = {});

absl::StatusOr<PosteriorTable> PosteriorGivenBin(
    const Codebook& codebook, std::uint64_t bin,
    const AdversaryOptions& options = {});

// Position by position, the reproduction symbol minimizing posterior expected
// distortion; ties go to the lowest symbol.
absl::StatusOr<SymbolSequence> OptimalReproduction(
    const PosteriorTable& posterior, const DistortionMeasure& distortion);

// E[d^n(X^n, z^n) | observation] under the posterior.
absl::StatusOr<double> ConditionalExpectedDistortion(
    const PosteriorTable& posterior, std::span<const Symbol> z,
    const DistortionMeasure& distortion);

struct DistortionReport {
  std::size_t n = 0;
  std::uint64_t k = 0;
  std::optional<double> epsilon;
  std::optional<std::uint64_t> seed;
  Observation observe = Observation::kFullMessage;
  std::string engine;
  double distortion = 0.0;
  double std_error = 0.0;
  double dmax = 0.0;
  double gap = 0.0;
  double p_err = 0.0;
  double rate = 0.0;
  // P[X^n not coded]; reported for the typical-only model.
  double mass_deficit = 0.0;

  static std::string CsvHeader();
  // n,k,epsilon,seed,observe_mode,engine,distortion,stderr,dmax,gap,p_err,rate
  std::string ToCsvRow() const;
};

// Eve's optimal map from observations to reproductions, computed on demand
// and memoized. Keeps a pointer to the codebook, which must outlive it. Not
// thread-safe.
class AdversaryStrategy {
 public:
  static absl::StatusOr<AdversaryStrategy> Create(
      const Codebook& codebook, const DistortionMeasure& distortion,
      const AdversaryOptions& options = {});

  // For kBinOnly only message.bin is read.
  const SymbolSequence& Respond(Message message);

 private:
  AdversaryStrategy(const Codebook& codebook,
                    const DistortionMeasure& distortion,
                    const AdversaryOptions& options,
                    std::vector<double> uncoded_mass)
      : codebook_(&codebook),
        distortion_(distortion),
        options_(options),
        uncoded_mass_(std::move(uncoded_mass)) {}

  const Codebook* codebook_;
  DistortionMeasure distortion_;
  AdversaryOptions options_;
  std::vector<double> uncoded_mass_;
  std::unordered_map<std::uint64_t, SymbolSequence> cache_;
};

// Sum over observations of p(o) * min_{z^n} E[d^n | o], using per-position
// accumulators: O(observations * k * n * |X| * |Z|).
absl::StatusOr<DistortionReport> ExactAdversaryDistortion(
    const Codebook& codebook, const DistortionMeasure& distortion,
    const AdversaryOptions& options = {});

// Samples (X^n, K), encodes, and scores Eve's optimal response.
absl::StatusOr<DistortionReport> MonteCarloAdversaryDistortion(
    const Codebook& codebook, const DistortionMeasure& distortion,
    std::uint64_t trials, std::uint64_t seed,
    const AdversaryOptions& options = {});

struct DistortionQuery {
  EstimateMode mode = EstimateMode::kExact;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  AdversaryOptions options;
};

absl::StatusOr<DistortionReport> ExpectedAdversaryDistortion(
    const Codebook& codebook, const DistortionMeasure& distortion,
    const DistortionQuery& query);

// Independent of the per-position machinery: enumerates every (x^n, K) pair
// through Encode to build the joint law of (X^n, observation), then scans all
// |Z|^n reproductions per observation for the true minimizer.
absl::StatusOr<DistortionReport> BruteForceOracle(
    const Codebook& codebook, const DistortionMeasure& distortion,
    const AdversaryOptions& options = {});

inline constexpr double kEquivalenceTolerance = 1e-12;

// Exact distortion seen through the whole message equals that seen through
// the bin number alone, within kEquivalenceTolerance.
absl::StatusOr<bool> SuffstatEquivalenceCheck(
    const Codebook& codebook, const DistortionMeasure& distortion,
    const AdversaryOptions& options = {});

}  // namespace cipherlab

#endif  // CIPHERLAB_ADVERSARY_H_
