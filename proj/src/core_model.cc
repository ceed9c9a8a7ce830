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
#include "cipherlab/core_model.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace cipherlab {

absl::StatusOr<SourceDistribution> SourceDistribution::Create(
    std::vector<double> probs) {
  if (probs.size() < 2) {
    return absl::InvalidArgumentError(
        "source alphabet must have at least two symbols");
  }
  double total = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0) {
      return absl::InvalidArgumentError(
          absl::StrCat("source probability out of range: ", p));
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    return absl::InvalidArgumentError(
        absl::StrCat("source probabilities sum to ", total, ", not 1"));
  }
  return SourceDistribution(std::move(probs));
}

SourceDistribution::SourceDistribution(std::vector<double> probs)
    : probs_(std::move(probs)) {
  log_probs_.reserve(probs_.size());
  cdf_.reserve(probs_.size());
  double running = 0.0;
  for (double p : probs_) {
    log_probs_.push_back(p > 0.0 ? std::log(p)
                                 : -std::numeric_limits<double>::infinity());
    running += p;
    cdf_.push_back(running);
  }
}

double SourceDistribution::Entropy(double base) const {
  double h = 0.0;
  for (double p : probs_) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h / std::log(base);
}

absl::StatusOr<DistortionMeasure> DistortionMeasure::Create(
    std::vector<std::vector<double>> rows) {
  if (rows.empty() || rows.front().empty()) {
    return absl::InvalidArgumentError("distortion matrix is empty");
  }
  const std::size_t cols = rows.front().size();
  std::vector<double> matrix;
  matrix.reserve(rows.size() * cols);
  for (std::size_t x = 0; x < rows.size(); ++x) {
    if (rows[x].size() != cols) {
      return absl::InvalidArgumentError(
          absl::StrCat("distortion row ", x, " has ", rows[x].size(),
                       " entries, expected ", cols));
    }
    bool has_zero = false;
    for (double v : rows[x]) {
      if (!std::isfinite(v) || v < 0.0) {
        return absl::InvalidArgumentError(
            absl::StrCat("distortion entry out of range in row ", x, ": ", v));
      }
      has_zero = has_zero || v == 0.0;
      matrix.push_back(v);
    }
    if (!has_zero) {
      return absl::InvalidArgumentError(
          absl::StrCat("distortion row ", x, " has no zero entry"));
    }
  }
  return DistortionMeasure(rows.size(), cols, std::move(matrix));
}

DistortionMeasure DistortionMeasure::Hamming(std::size_t alphabet_size) {
  std::vector<double> matrix(alphabet_size * alphabet_size, 1.0);
  for (std::size_t x = 0; x < alphabet_size; ++x) {
    matrix[x * alphabet_size + x] = 0.0;
  }
  return DistortionMeasure(alphabet_size, alphabet_size, std::move(matrix));
}

absl::StatusOr<ConstantReproduction> Dmax(const SourceDistribution& source,
                                          const DistortionMeasure& distortion) {
  if (source.size() != distortion.source_size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("source has ", source.size(),
                     " symbols but distortion matrix has ",
                     distortion.source_size(), " rows"));
  }
  ConstantReproduction best{0, std::numeric_limits<double>::infinity()};
  for (Symbol z = 0; z < distortion.reproduction_size(); ++z) {
    double expected = 0.0;
    for (Symbol x = 0; x < source.size(); ++x) {
      expected += source.prob(x) * distortion(x, z);
    }
    if (expected < best.value) best = {z, expected};
  }
  return best;
}

absl::StatusOr<double> SequenceDistortion(std::span<const Symbol> x,
                                          std::span<const Symbol> z,
                                          const DistortionMeasure& distortion) {
  if (x.size() != z.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "sequence lengths differ: ", x.size(), " vs ", z.size()));
  }
  if (x.empty()) return absl::InvalidArgumentError("empty sequences");
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] >= distortion.source_size() ||
        z[i] >= distortion.reproduction_size()) {
      return absl::OutOfRangeError(
          absl::StrCat("symbol out of range at position ", i));
    }
    total += distortion(x[i], z[i]);
  }
  return total / static_cast<double>(x.size());
}

double SequenceLogProbability(const SourceDistribution& source,
                              std::span<const Symbol> x) {
  double total = 0.0;
  for (Symbol s : x) total += source.log_probs()[s];
  return total;
}

SymbolSequence SampleSource(const SourceDistribution& source, std::size_t n,
                            SeededStream& stream) {
  SymbolSequence out(n);
  const auto& cdf = source.cdf_;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = stream.UniformUnit();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    // Rounding can leave cdf.back() just under 1; fall back to the last
    // symbol with positive mass.
    std::size_t s = static_cast<std::size_t>(it - cdf.begin());
    if (s >= cdf.size()) s = cdf.size() - 1;
    while (source.prob(static_cast<Symbol>(s)) == 0.0 && s > 0) --s;
    out[i] = static_cast<Symbol>(s);
  }
  return out;
}

absl::Status ValidateSequence(std::span<const Symbol> x,
                              std::size_t alphabet_size) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] >= alphabet_size) {
      return absl::OutOfRangeError(absl::StrCat(
          "symbol ", x[i], " at position ", i, " outside alphabet of size ",
          alphabet_size));
    }
  }
  return absl::OkStatus();
}

}  // namespace cipherlab
