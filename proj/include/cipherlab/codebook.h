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
#ifndef CIPHERLAB_CODEBOOK_H_
#define CIPHERLAB_CODEBOOK_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "cipherlab/core_model.h"
#include "cipherlab/types_method.h"

namespace cipherlab {

// Position of a coded sequence: the offset-th member of bin number bin.
struct BinAddress {
  std::uint64_t bin = 0;
  std::uint64_t offset = 0;

  friend bool operator==(const BinAddress&, const BinAddress&) = default;
};

struct CodebookOptions {
  // Largest type class that may be materialized as a permutation.
  std::uint64_t max_class_size = std::uint64_t{1} << 24;
};

// A partition of a set of coded sequences into bins of at most k sequences,
// every bin holding a single type.
//
// Seeded codebooks (Build) code exactly the epsilon-typical set. For each
// typical type, in EnumerateTypes order, the class ranks are shuffled with a
// SeededStream and cut into consecutive chunks of k; the last chunk of a type
// may be short. Bin numbers run type-major, then chunk order. The same
// (source, n, epsilon, k, seed) always yields the same bins.
//
// Explicit codebooks (FromBins) code exactly the sequences listed in their
// bins. Everything outside the codebook is "atypical" from the encoder's
// point of view.
class Codebook {
 public:
  // One type's share of the codebook. members lists class ranks in bin order,
  // and position inverts it (kAbsent for uncoded ranks).
  struct TypeBlock {
    static constexpr std::uint32_t kAbsent = 0xffffffffu;

    TypeClassRanker ranker;
    double log_sequence_probability = 0.0;
    std::vector<std::uint32_t> members = {};
    std::vector<std::uint32_t> position = {};
    // Parallel arrays: bin number and first index into members.
    std::vector<std::uint64_t> bin_ids = {};
    std::vector<std::uint64_t> bin_starts = {};

    const TypeVector& type() const { return ranker.type(); }
    bool covers_class() const { return members.size() == ranker.size(); }
  };

  static absl::StatusOr<Codebook> Build(const SourceDistribution& source,
                                        std::size_t n, double epsilon,
                                        std::uint64_t k, std::uint64_t seed,
                                        const CodebookOptions& options = {});

  // Each bin must be nonempty, hold at most k distinct sequences of a single
  // type, and share no sequence with another bin.
  static absl::StatusOr<Codebook> FromBins(
      const SourceDistribution& source, std::uint64_t k,
      const std::vector<std::vector<SymbolSequence>>& bins,
      const CodebookOptions& options = {});

  const SourceDistribution& source() const { return source_; }
  std::size_t n() const { return n_; }
  std::uint64_t k() const { return k_; }
  // Unset for explicit codebooks.
  std::optional<double> epsilon() const { return epsilon_; }
  std::optional<std::uint64_t> seed() const { return seed_; }

  std::uint64_t num_bins() const { return bins_.size(); }
  // Every bin is padded to k offsets in the message space.
  std::uint64_t message_count() const { return num_bins() * k_; }
  std::uint64_t coded_count() const { return coded_count_; }
  // P[X^n is coded]; for seeded codebooks, P[X^n in T^n_eps].
  double coded_mass() const { return coded_mass_; }

  std::span<const TypeBlock> blocks() const { return blocks_; }
  // nullptr when no sequence of this type is coded.
  const TypeBlock* FindBlock(const TypeVector& type) const;
  std::uint64_t BinSize(std::uint64_t bin) const { return bins_[bin].size; }
  const TypeBlock& BinBlock(std::uint64_t bin) const {
    return blocks_[bins_[bin].block];
  }

  // nullopt when x is not coded (including malformed x).
  std::optional<BinAddress> Locate(std::span<const Symbol> x) const;

  absl::StatusOr<std::vector<SymbolSequence>> BinContents(
      std::uint64_t bin) const;

  // Unchecked: bin < num_bins(), offset < BinSize(bin), out.size() == n().
  void SequenceAt(std::uint64_t bin, std::uint64_t offset,
                  std::span<Symbol> out) const;

  // FNV-1a over the ordered bin contents (as class ranks) and parameters.
  std::uint64_t ContentHash() const;

  // Plain-text key=value header for experiment logs.
  std::string Manifest() const;

 private:
  struct BinRecord {
    std::uint32_t block;
    std::uint64_t start;
    std::uint64_t size;
  };

  explicit Codebook(const SourceDistribution& source) : source_(source) {}
  void Finalize();

  SourceDistribution source_;
  std::size_t n_ = 0;
  std::uint64_t k_ = 1;
  std::optional<double> epsilon_;
  std::optional<std::uint64_t> seed_;
  std::vector<TypeBlock> blocks_;
  std::map<TypeVector, std::size_t> block_index_;
  std::vector<BinRecord> bins_;
  std::uint64_t coded_count_ = 0;
  double coded_mass_ = 0.0;
};

struct CodebookRates {
  std::uint64_t num_bins = 0;
  std::uint64_t message_count = 0;
  // log2(message_count) / n.
  double rate = 0.0;
  double typical_mass = 0.0;
};

CodebookRates RateAndCounts(const Codebook& codebook);

struct BinUniformity {
  std::uint64_t bin = 0;
  std::uint64_t size = 0;
  // max / min of p(x^n) over the bin; 1 for single-type bins.
  double posterior_ratio = 1.0;
  // row_distributions[i][x]: fraction of bin members with x at position i.
  std::vector<std::vector<double>> row_distributions;
  // max_i || Q_i - P_X ||.
  double max_row_distance = 0.0;
};

// Per-bin check of how far each bin is from "uniform posterior, rows
// distributed as the source".
std::vector<BinUniformity> UniformityDiagnostics(const Codebook& codebook);

}  // namespace cipherlab

#endif  // CIPHERLAB_CODEBOOK_H_
