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
#ifndef CIPHERLAB_CORE_MODEL_H_
#define CIPHERLAB_CORE_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "cipherlab/random_stream.h"

namespace cipherlab {

using Symbol = std::uint32_t;
using SymbolSequence = std::vector<Symbol>;

// Probability vector over a finite source alphabet {0, ..., size() - 1}.
class SourceDistribution {
 public:
  static constexpr double kSumTolerance = 1e-12;

  // Entries must be finite and nonnegative, summing to 1 within
  // kSumTolerance, with at least two symbols.
  static absl::StatusOr<SourceDistribution> Create(std::vector<double> probs);

  std::size_t size() const { return probs_.size(); }
  double prob(Symbol x) const { return probs_[x]; }
  std::span<const double> probs() const { return probs_; }

  // Natural log of each probability, -inf for zero entries.
  std::span<const double> log_probs() const { return log_probs_; }

  // Entropy in the given logarithm base.
  double Entropy(double base = 2.0) const;

 private:
  explicit SourceDistribution(std::vector<double> probs);

  std::vector<double> probs_;
  std::vector<double> log_probs_;
  std::vector<double> cdf_;

  friend SymbolSequence SampleSource(const SourceDistribution&, std::size_t,
                                     SeededStream&);
};

// Per-letter distortion d(x, z) as a |X| x |Z| matrix. Every entry is finite
// and nonnegative and every row has a zero.
class DistortionMeasure {
 public:
  static absl::StatusOr<DistortionMeasure> Create(
      std::vector<std::vector<double>> rows);

  // d(x, z) = 1{x != z} on a square alphabet.
  static DistortionMeasure Hamming(std::size_t alphabet_size);

  std::size_t source_size() const { return source_size_; }
  std::size_t reproduction_size() const { return reproduction_size_; }
  double operator()(Symbol x, Symbol z) const {
    return matrix_[x * reproduction_size_ + z];
  }

 private:
  DistortionMeasure(std::size_t source_size, std::size_t reproduction_size,
                    std::vector<double> matrix)
      : source_size_(source_size),
        reproduction_size_(reproduction_size),
        matrix_(std::move(matrix)) {}

  std::size_t source_size_;
  std::size_t reproduction_size_;
  std::vector<double> matrix_;
};

struct ConstantReproduction {
  Symbol z_star;
  double value;
};

// The best message-blind reproduction: argmin_z sum_x P(x) d(x, z), ties to
// the lowest z. value is D_max.
absl::StatusOr<ConstantReproduction> Dmax(const SourceDistribution& source,
                                          const DistortionMeasure& distortion);

// (1/n) sum_i d(x_i, z_i).
absl::StatusOr<double> SequenceDistortion(std::span<const Symbol> x,
                                          std::span<const Symbol> z,
                                          const DistortionMeasure& distortion);

// sum_i log P(x_i); -inf when some symbol has probability zero.
double SequenceLogProbability(const SourceDistribution& source,
                              std::span<const Symbol> x);

// n i.i.d. draws by inverse-CDF lookup on UniformUnit().
SymbolSequence SampleSource(const SourceDistribution& source, std::size_t n,
                            SeededStream& stream);

// Checks that every symbol is below alphabet_size.
absl::Status ValidateSequence(std::span<const Symbol> x,
                              std::size_t alphabet_size);

}  // namespace cipherlab

#endif  // CIPHERLAB_CORE_MODEL_H_
