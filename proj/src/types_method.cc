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
#include "cipherlab/types_method.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace cipherlab {
namespace {

using u128 = unsigned __int128;

void EnumerateInto(std::size_t remaining, std::size_t pos,
                   std::vector<std::uint32_t>& counts,
                   std::vector<TypeVector>& out) {
  if (pos + 1 == counts.size()) {
    counts[pos] = static_cast<std::uint32_t>(remaining);
    out.emplace_back(counts);
    return;
  }
  for (std::size_t c = remaining + 1; c-- > 0;) {
    counts[pos] = static_cast<std::uint32_t>(c);
    EnumerateInto(remaining - c, pos + 1, counts, out);
  }
}

}  // namespace

TypeVector::TypeVector(std::vector<std::uint32_t> counts)
    : counts_(std::move(counts)),
      n_(std::accumulate(counts_.begin(), counts_.end(), std::size_t{0})) {}

SymbolSequence TypeVector::SmallestMember() const {
  SymbolSequence out;
  out.reserve(n_);
  for (Symbol s = 0; s < counts_.size(); ++s) out.insert(out.end(), counts_[s], s);
  return out;
}

std::string TypeVector::ToString() const {
  return absl::StrCat("(", absl::StrJoin(counts_, ","), ")");
}

absl::StatusOr<TypeVector> EmpiricalType(std::span<const Symbol> x,
                                         std::size_t alphabet_size) {
  std::vector<std::uint32_t> counts(alphabet_size, 0);
  for (Symbol s : x) {
    if (s >= alphabet_size) {
      return absl::OutOfRangeError(absl::StrCat(
          "symbol ", s, " outside alphabet of size ", alphabet_size));
    }
    ++counts[s];
  }
  return TypeVector(std::move(counts));
}

std::vector<TypeVector> EnumerateTypes(std::size_t n,
                                       std::size_t alphabet_size) {
  std::vector<TypeVector> out;
  if (alphabet_size == 0) return out;
  std::vector<std::uint32_t> counts(alphabet_size, 0);
  EnumerateInto(n, 0, counts, out);
  return out;
}

bool IsEpsilonTypical(const TypeVector& type, const SourceDistribution& source,
                      double epsilon) {
  if (type.alphabet_size() != source.size() || type.n() == 0) return false;
  for (Symbol s = 0; s < source.size(); ++s) {
    if (!(std::abs(type.frequency(s) - source.prob(s)) < epsilon)) {
      return false;
    }
  }
  return true;
}

std::vector<TypeVector> TypicalTypes(const SourceDistribution& source,
                                     std::size_t n, double epsilon) {
  std::vector<TypeVector> out;
  for (TypeVector& t : EnumerateTypes(n, source.size())) {
    if (IsEpsilonTypical(t, source, epsilon)) out.push_back(std::move(t));
  }
  return out;
}

BigInt TypeClassSize(const TypeVector& type) {
  // Product of binomials C(c_0 + ... + c_j, c_j), each built incrementally so
  // every intermediate quotient is exact.
  BigInt result = 1;
  std::size_t placed = 0;
  for (std::uint32_t c : type.counts()) {
    for (std::uint32_t i = 1; i <= c; ++i) {
      ++placed;
      result *= placed;
      result /= i;
    }
  }
  return result;
}

double LogTypeClassSize(const TypeVector& type) {
  double out = std::lgamma(static_cast<double>(type.n()) + 1.0);
  for (std::uint32_t c : type.counts()) {
    out -= std::lgamma(static_cast<double>(c) + 1.0);
  }
  return out;
}

double LogSequenceProbability(const TypeVector& type,
                              const SourceDistribution& source) {
  double out = 0.0;
  for (Symbol s = 0; s < type.alphabet_size(); ++s) {
    if (type.count(s) == 0) continue;
    out += type.count(s) * source.log_probs()[s];
  }
  return out;
}

double TypeClassSizeBound(const TypeVector& type, double base) {
  const double n = static_cast<double>(type.n());
  double entropy = 0.0;
  for (std::uint32_t c : type.counts()) {
    if (c == 0) continue;
    const double f = c / n;
    entropy -= f * std::log(f) / std::log(base);
  }
  return std::pow(n + 1.0, -static_cast<double>(type.alphabet_size())) *
         std::pow(base, n * entropy);
}

absl::StatusOr<TypeClassRanker> TypeClassRanker::Create(TypeVector type) {
  const BigInt size = TypeClassSize(type);
  if (size > std::numeric_limits<std::uint64_t>::max()) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "type class ", type.ToString(), " has more than 2^64 members"));
  }
  return TypeClassRanker(std::move(type), size.convert_to<std::uint64_t>());
}

std::uint64_t TypeClassRanker::Rank(std::span<const Symbol> x) const {
  std::vector<std::uint32_t> remaining(type_.counts().begin(),
                                       type_.counts().end());
  std::uint64_t members = size_;  // sequences completing the current prefix
  std::uint64_t rank = 0;
  std::uint64_t length = x.size();
  for (Symbol sym : x) {
    for (Symbol s = 0; s < sym; ++s) {
      if (remaining[s] == 0) continue;
      rank += static_cast<std::uint64_t>(u128{members} * remaining[s] / length);
    }
    members = static_cast<std::uint64_t>(u128{members} * remaining[sym] / length);
    --remaining[sym];
    --length;
  }
  return rank;
}

void TypeClassRanker::Unrank(std::uint64_t index, std::span<Symbol> out) const {
  std::vector<std::uint32_t> remaining(type_.counts().begin(),
                                       type_.counts().end());
  std::uint64_t members = size_;
  std::uint64_t length = out.size();
  for (Symbol& slot : out) {
    for (Symbol s = 0; s < remaining.size(); ++s) {
      if (remaining[s] == 0) continue;
      const std::uint64_t block =
          static_cast<std::uint64_t>(u128{members} * remaining[s] / length);
      if (index < block) {
        slot = s;
        members = block;
        --remaining[s];
        break;
      }
      index -= block;
    }
    --length;
  }
}

SymbolSequence TypeClassRanker::Unrank(std::uint64_t index) const {
  SymbolSequence out(type_.n());
  Unrank(index, out);
  return out;
}

absl::StatusOr<std::uint64_t> RankInTypeClass(std::span<const Symbol> x,
                                              std::size_t alphabet_size) {
  auto type = EmpiricalType(x, alphabet_size);
  if (!type.ok()) return type.status();
  auto ranker = TypeClassRanker::Create(*std::move(type));
  if (!ranker.ok()) return ranker.status();
  return ranker->Rank(x);
}

absl::StatusOr<SymbolSequence> UnrankInTypeClass(const TypeVector& type,
                                                 std::uint64_t index) {
  auto ranker = TypeClassRanker::Create(type);
  if (!ranker.ok()) return ranker.status();
  if (index >= ranker->size()) {
    return absl::OutOfRangeError(absl::StrCat(
        "index ", index, " outside type class ", type.ToString(), " of size ",
        ranker->size()));
  }
  return ranker->Unrank(index);
}

absl::StatusOr<double> VariationalDistance(std::span<const double> p,
                                           std::span<const double> q) {
  if (p.size() != q.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "distributions have different supports: ", p.size(), " vs ", q.size()));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) total += std::abs(p[i] - q[i]);
  return total / 2.0;
}

absl::StatusOr<std::vector<TypeVector>> RowTypes(
    std::span<const SymbolSequence> columns, std::size_t alphabet_size) {
  if (columns.empty()) return std::vector<TypeVector>{};
  const std::size_t n = columns.front().size();
  std::vector<std::vector<std::uint32_t>> counts(
      n, std::vector<std::uint32_t>(alphabet_size, 0));
  for (const SymbolSequence& column : columns) {
    if (column.size() != n) {
      return absl::InvalidArgumentError("columns have different lengths");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (column[i] >= alphabet_size) {
        return absl::OutOfRangeError(
            absl::StrCat("symbol ", column[i], " outside alphabet"));
      }
      ++counts[i][column[i]];
    }
  }
  std::vector<TypeVector> rows;
  rows.reserve(n);
  for (auto& c : counts) rows.emplace_back(std::move(c));
  return rows;
}

bool RowsHaveType(std::span<const TypeVector> rows, const TypeVector& type) {
  for (const TypeVector& row : rows) {
    if (row.alphabet_size() != type.alphabet_size()) return false;
    // row(s)/|row| == t(s)/n, cross-multiplied to stay in integers.
    for (Symbol s = 0; s < type.alphabet_size(); ++s) {
      if (std::uint64_t{row.count(s)} * type.n() !=
          std::uint64_t{type.count(s)} * row.n()) {
        return false;
      }
    }
  }
  return true;
}

absl::StatusOr<bool> CheckRowTypes(const TypeVector& type,
                                   std::uint64_t max_class_size) {
  if (TypeClassSize(type) > max_class_size) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "type class ", type.ToString(), " exceeds the materialization cap of ",
        max_class_size));
  }
  std::vector<SymbolSequence> columns;
  SymbolSequence member = type.SmallestMember();
  do {
    columns.push_back(member);
  } while (std::next_permutation(member.begin(), member.end()));
  auto rows = RowTypes(columns, type.alphabet_size());
  if (!rows.ok()) return rows.status();
  return RowsHaveType(*rows, type);
}

absl::StatusOr<SamplingTvResult> SamplingTvCheck(std::span<const Symbol> urn,
                                                 std::size_t alphabet_size,
                                                 std::size_t k,
                                                 std::uint64_t max_outcomes) {
  const std::size_t balls = urn.size();
  if (balls == 0) return absl::InvalidArgumentError("urn is empty");
  if (k > balls) {
    return absl::InvalidArgumentError(
        absl::StrCat("cannot draw ", k, " balls from an urn of ", balls));
  }
  double outcomes = std::pow(static_cast<double>(alphabet_size),
                             static_cast<double>(k));
  if (outcomes > static_cast<double>(max_outcomes)) {
    return absl::ResourceExhaustedError(absl::StrCat(
        alphabet_size, "^", k, " outcomes exceed the enumeration cap of ",
        max_outcomes));
  }
  std::vector<std::uint32_t> counts(alphabet_size, 0);
  for (Symbol s : urn) {
    if (s >= alphabet_size) {
      return absl::OutOfRangeError(absl::StrCat("ball label ", s, " outside S"));
    }
    ++counts[s];
  }

  // Odometer over S^k.
  std::vector<Symbol> draw(k, 0);
  std::vector<std::uint32_t> remaining(alphabet_size);
  double l1 = 0.0;
  while (true) {
    std::copy(counts.begin(), counts.end(), remaining.begin());
    double without = 1.0;
    double with = 1.0;
    for (std::size_t j = 0; j < k; ++j) {
      with *= static_cast<double>(counts[draw[j]]) / balls;
      without *= static_cast<double>(remaining[draw[j]]) / (balls - j);
      if (remaining[draw[j]] > 0) --remaining[draw[j]];
    }
    l1 += std::abs(without - with);

    std::size_t pos = 0;
    while (pos < k && ++draw[pos] == alphabet_size) draw[pos++] = 0;
    if (pos == k) break;
  }
  SamplingTvResult result;
  result.tv = l1 / 2.0;
  result.bound = static_cast<double>(alphabet_size * k) / balls;
  result.ok = result.tv <= result.bound;
  return result;
}

}  // namespace cipherlab
