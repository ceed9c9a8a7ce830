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
#include "cipherlab/codebook.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "cipherlab/random_stream.h"

namespace cipherlab {
namespace {

absl::Status CheckClassCap(const TypeVector& type, std::uint64_t cap) {
  if (cap > 0xffffffffull) {
    return absl::InvalidArgumentError(
        "max_class_size above 2^32 is not supported");
  }
  if (TypeClassSize(type) > cap) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "type class ", type.ToString(), " has ", TypeClassSize(type).str(),
        " members, above the materialization cap of ", cap));
  }
  return absl::OkStatus();
}

void HashBytes(std::uint64_t& h, std::uint64_t value) {
  for (int i = 0; i < 8; ++i) {
    h ^= (value >> (8 * i)) & 0xff;
    h *= 0x100000001b3ull;
  }
}

}  // namespace

absl::StatusOr<Codebook> Codebook::Build(const SourceDistribution& source,
                                         std::size_t n, double epsilon,
                                         std::uint64_t k, std::uint64_t seed,
                                         const CodebookOptions& options) {
  if (n == 0) return absl::InvalidArgumentError("blocklength must be positive");
  if (k == 0) return absl::InvalidArgumentError("bin capacity k must be >= 1");
  std::vector<TypeVector> types = TypicalTypes(source, n, epsilon);
  if (types.empty()) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "no type of length %d is %g-typical; increase epsilon or n", n,
        epsilon));
  }
  for (const TypeVector& t : types) {
    if (auto status = CheckClassCap(t, options.max_class_size); !status.ok()) {
      return status;
    }
  }

  Codebook cb(source);
  cb.n_ = n;
  cb.k_ = k;
  cb.epsilon_ = epsilon;
  cb.seed_ = seed;
  SeededStream stream(seed);
  for (TypeVector& t : types) {
    auto ranker = TypeClassRanker::Create(std::move(t));
    if (!ranker.ok()) return ranker.status();
    TypeBlock block{.ranker = *std::move(ranker)};
    const std::uint64_t size = block.ranker.size();
    block.members.resize(size);
    std::iota(block.members.begin(), block.members.end(), 0u);
    stream.Shuffle(std::span<std::uint32_t>(block.members));
    for (std::uint64_t start = 0; start < size; start += k) {
      block.bin_ids.push_back(cb.bins_.size());
      block.bin_starts.push_back(start);
      cb.bins_.push_back({static_cast<std::uint32_t>(cb.blocks_.size()), start,
                          std::min(k, size - start)});
    }
    cb.blocks_.push_back(std::move(block));
  }
  cb.Finalize();
  return cb;
}

absl::StatusOr<Codebook> Codebook::FromBins(
    const SourceDistribution& source, std::uint64_t k,
    const std::vector<std::vector<SymbolSequence>>& bins,
    const CodebookOptions& options) {
  if (k == 0) return absl::InvalidArgumentError("bin capacity k must be >= 1");
  if (bins.empty()) return absl::InvalidArgumentError("no bins given");
  Codebook cb(source);
  cb.k_ = k;
  cb.n_ = bins.front().empty() ? 0 : bins.front().front().size();
  if (cb.n_ == 0) return absl::InvalidArgumentError("empty first bin");

  for (std::size_t j = 0; j < bins.size(); ++j) {
    const auto& bin = bins[j];
    if (bin.empty() || bin.size() > k) {
      return absl::InvalidArgumentError(absl::StrCat(
          "bin ", j, " holds ", bin.size(), " sequences; need 1..", k));
    }
    std::optional<std::size_t> block_id;
    for (const SymbolSequence& x : bin) {
      if (x.size() != cb.n_) {
        return absl::InvalidArgumentError(
            absl::StrCat("bin ", j, " has a sequence of length ", x.size(),
                         ", expected ", cb.n_));
      }
      auto type = EmpiricalType(x, source.size());
      if (!type.ok()) return type.status();
      auto it = cb.block_index_.find(*type);
      if (it == cb.block_index_.end()) {
        if (auto s = CheckClassCap(*type, options.max_class_size); !s.ok()) {
          return s;
        }
        auto ranker = TypeClassRanker::Create(*type);
        if (!ranker.ok()) return ranker.status();
        TypeBlock block{.ranker = *std::move(ranker)};
        block.position.assign(block.ranker.size(), TypeBlock::kAbsent);
        it = cb.block_index_.emplace(*type, cb.blocks_.size()).first;
        cb.blocks_.push_back(std::move(block));
      }
      if (!block_id.has_value()) {
        block_id = it->second;
        TypeBlock& block = cb.blocks_[*block_id];
        block.bin_ids.push_back(j);
        block.bin_starts.push_back(block.members.size());
        cb.bins_.push_back({static_cast<std::uint32_t>(*block_id),
                            block.members.size(), bin.size()});
      } else if (*block_id != it->second) {
        return absl::InvalidArgumentError(
            absl::StrCat("bin ", j, " mixes types ",
                         cb.blocks_[*block_id].type().ToString(), " and ",
                         type->ToString()));
      }
      TypeBlock& block = cb.blocks_[*block_id];
      const std::uint64_t rank = block.ranker.Rank(x);
      if (block.position[rank] != TypeBlock::kAbsent) {
        return absl::InvalidArgumentError(absl::StrCat(
            "sequence of type ", type->ToString(), " appears twice (bin ", j,
            ")"));
      }
      block.position[rank] = static_cast<std::uint32_t>(block.members.size());
      block.members.push_back(static_cast<std::uint32_t>(rank));
    }
  }
  cb.Finalize();
  return cb;
}

void Codebook::Finalize() {
  coded_count_ = 0;
  coded_mass_ = 0.0;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    TypeBlock& block = blocks_[b];
    block_index_[block.type()] = b;
    block.log_sequence_probability =
        LogSequenceProbability(block.type(), source_);
    if (block.position.empty()) {
      block.position.assign(block.ranker.size(), TypeBlock::kAbsent);
      for (std::size_t i = 0; i < block.members.size(); ++i) {
        block.position[block.members[i]] = static_cast<std::uint32_t>(i);
      }
    }
    coded_count_ += block.members.size();
    coded_mass_ += static_cast<double>(block.members.size()) *
                   std::exp(block.log_sequence_probability);
  }
}

const Codebook::TypeBlock* Codebook::FindBlock(const TypeVector& type) const {
  auto it = block_index_.find(type);
  return it == block_index_.end() ? nullptr : &blocks_[it->second];
}

std::optional<BinAddress> Codebook::Locate(std::span<const Symbol> x) const {
  if (x.size() != n_) return std::nullopt;
  auto type = EmpiricalType(x, source_.size());
  if (!type.ok()) return std::nullopt;
  auto it = block_index_.find(*type);
  if (it == block_index_.end()) return std::nullopt;
  const TypeBlock& block = blocks_[it->second];
  const std::uint32_t pos = block.position[block.ranker.Rank(x)];
  if (pos == TypeBlock::kAbsent) return std::nullopt;
  auto chunk =
      std::upper_bound(block.bin_starts.begin(), block.bin_starts.end(), pos) -
      block.bin_starts.begin() - 1;
  return BinAddress{block.bin_ids[chunk], pos - block.bin_starts[chunk]};
}

absl::StatusOr<std::vector<SymbolSequence>> Codebook::BinContents(
    std::uint64_t bin) const {
  if (bin >= num_bins()) {
    return absl::OutOfRangeError(
        absl::StrCat("bin ", bin, " out of range; codebook has ", num_bins()));
  }
  std::vector<SymbolSequence> out(bins_[bin].size, SymbolSequence(n_));
  for (std::uint64_t l = 0; l < out.size(); ++l) SequenceAt(bin, l, out[l]);
  return out;
}

void Codebook::SequenceAt(std::uint64_t bin, std::uint64_t offset,
                          std::span<Symbol> out) const {
  const BinRecord& rec = bins_[bin];
  const TypeBlock& block = blocks_[rec.block];
  block.ranker.Unrank(block.members[rec.start + offset], out);
}

std::uint64_t Codebook::ContentHash() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  HashBytes(h, n_);
  HashBytes(h, k_);
  for (const BinRecord& rec : bins_) {
    const TypeBlock& block = blocks_[rec.block];
    for (std::uint32_t c : block.type().counts()) HashBytes(h, c);
    HashBytes(h, rec.size);
    for (std::uint64_t i = 0; i < rec.size; ++i) {
      HashBytes(h, block.members[rec.start + i]);
    }
  }
  return h;
}

std::string Codebook::Manifest() const {
  std::string out = "# cipherlab codebook manifest\nformat=1\n";
  absl::StrAppend(&out, "origin=", seed_.has_value() ? "seeded" : "explicit",
                  "\n");
  absl::StrAppend(&out, "stream=", SeededStream::kName, "\n");
  absl::StrAppend(&out, "n=", n_, "\n");
  if (epsilon_.has_value()) {
    absl::StrAppend(&out, absl::StrFormat("epsilon=%.17g\n", *epsilon_));
  }
  absl::StrAppend(&out, "k=", k_, "\n");
  if (seed_.has_value()) absl::StrAppend(&out, "seed=", *seed_, "\n");
  std::vector<std::string> probs;
  for (double p : source_.probs()) probs.push_back(absl::StrFormat("%.17g", p));
  absl::StrAppend(&out, "source=", absl::StrJoin(probs, ","), "\n");
  absl::StrAppend(&out, "num_types=", blocks_.size(), "\n");
  for (const TypeBlock& block : blocks_) {
    absl::StrAppend(&out, "type=", block.type().ToString(),
                    " class_size=", block.ranker.size(),
                    " coded=", block.members.size(),
                    " bins=", block.bin_ids.size(), "\n");
  }
  absl::StrAppend(&out, "num_bins=", num_bins(), "\n");
  absl::StrAppend(&out, "message_count=", message_count(), "\n");
  absl::StrAppend(&out, absl::StrFormat("content_hash=%016x\n", ContentHash()));
  return out;
}

CodebookRates RateAndCounts(const Codebook& codebook) {
  CodebookRates r;
  r.num_bins = codebook.num_bins();
  r.message_count = codebook.message_count();
  r.rate = std::log2(static_cast<double>(r.message_count)) /
           static_cast<double>(codebook.n());
  r.typical_mass = codebook.coded_mass();
  return r;
}

std::vector<BinUniformity> UniformityDiagnostics(const Codebook& codebook) {
  const SourceDistribution& source = codebook.source();
  std::vector<BinUniformity> out;
  out.reserve(codebook.num_bins());
  for (std::uint64_t j = 0; j < codebook.num_bins(); ++j) {
    auto contents = codebook.BinContents(j);
    BinUniformity report;
    report.bin = j;
    report.size = contents->size();
    double lo = 0.0;
    double hi = 0.0;
    for (std::size_t m = 0; m < contents->size(); ++m) {
      // Via the type, so equal-type members get bit-identical values.
      const double lp = LogSequenceProbability(
          *EmpiricalType((*contents)[m], source.size()), source);
      lo = m == 0 ? lp : std::min(lo, lp);
      hi = m == 0 ? lp : std::max(hi, lp);
    }
    report.posterior_ratio = hi == lo ? 1.0 : std::exp(hi - lo);
    auto rows = RowTypes(*contents, source.size());
    for (const TypeVector& row : *rows) {
      std::vector<double> q(source.size());
      for (Symbol s = 0; s < source.size(); ++s) q[s] = row.frequency(s);
      report.max_row_distance = std::max(
          report.max_row_distance, *VariationalDistance(q, source.probs()));
      report.row_distributions.push_back(std::move(q));
    }
    out.push_back(std::move(report));
  }
  return out;
}

}  // namespace cipherlab
