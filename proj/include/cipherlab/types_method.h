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
#ifndef CIPHERLAB_TYPES_METHOD_H_
#define CIPHERLAB_TYPES_METHOD_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "absl/status/statusor.h"
#include "cipherlab/core_model.h"

namespace cipherlab {

using BigInt = boost::multiprecision::cpp_int;

// Empirical symbol counts of a length-n sequence.
class TypeVector {
 public:
  TypeVector() = default;
  explicit TypeVector(std::vector<std::uint32_t> counts);

  std::span<const std::uint32_t> counts() const { return counts_; }
  std::uint32_t count(Symbol s) const { return counts_[s]; }
  std::size_t alphabet_size() const { return counts_.size(); }
  std::size_t n() const { return n_; }
  double frequency(Symbol s) const {
    return static_cast<double>(counts_[s]) / static_cast<double>(n_);
  }

  // The lexicographically smallest sequence of this type, e.g. (0,0,1,2).
  SymbolSequence SmallestMember() const;

  std::string ToString() const;

  friend bool operator==(const TypeVector&, const TypeVector&) = default;
  friend auto operator<=>(const TypeVector&, const TypeVector&) = default;

 private:
  std::vector<std::uint32_t> counts_;
  std::size_t n_ = 0;
};

absl::StatusOr<TypeVector> EmpiricalType(std::span<const Symbol> x,
                                         std::size_t alphabet_size);

// All types of length-n sequences over the alphabet, ordered by their
// smallest members: (n,0,...,0) first, (0,...,0,n) last. There are
// C(n + |X| - 1, |X| - 1) of them.
std::vector<TypeVector> EnumerateTypes(std::size_t n,
                                       std::size_t alphabet_size);

// max_x |t(x)/n - P(x)| < epsilon. False when the alphabets differ.
bool IsEpsilonTypical(const TypeVector& type, const SourceDistribution& source,
                      double epsilon);

// The epsilon-typical subset of EnumerateTypes(n, |X|), in the same order.
std::vector<TypeVector> TypicalTypes(const SourceDistribution& source,
                                     std::size_t n, double epsilon);

// n! / prod_x t(x)!, exactly.
BigInt TypeClassSize(const TypeVector& type);

// Natural log of TypeClassSize via lgamma; for probability bookkeeping.
double LogTypeClassSize(const TypeVector& type);

// Natural log of the i.i.d. probability of any single sequence of this type.
double LogSequenceProbability(const TypeVector& type,
                              const SourceDistribution& source);

// (n+1)^{-|X|} * base^{n H_base(t/n)}, the polynomial-times-exponential lower
// bound on the class size. The alphabet size counts every symbol, including
// those with zero count.
double TypeClassSizeBound(const TypeVector& type, double base);

// Lexicographic ranking inside one type class by multinomial counting. Never
// materializes the class. Requires the class size to fit in 64 bits.
class TypeClassRanker {
 public:
  static absl::StatusOr<TypeClassRanker> Create(TypeVector type);

  const TypeVector& type() const { return type_; }
  std::uint64_t size() const { return size_; }

  // x must have type type().
  std::uint64_t Rank(std::span<const Symbol> x) const;
  // index must be below size(); out must have length n.
  void Unrank(std::uint64_t index, std::span<Symbol> out) const;
  SymbolSequence Unrank(std::uint64_t index) const;

 private:
  TypeClassRanker(TypeVector type, std::uint64_t size)
      : type_(std::move(type)), size_(size) {}

  TypeVector type_;
  std::uint64_t size_;
};

absl::StatusOr<std::uint64_t> RankInTypeClass(std::span<const Symbol> x,
                                              std::size_t alphabet_size);
absl::StatusOr<SymbolSequence> UnrankInTypeClass(const TypeVector& type,
                                                 std::uint64_t index);

// sup_A |P(A) - Q(A)| = (1/2) sum_i |P(i) - Q(i)|.
absl::StatusOr<double> VariationalDistance(std::span<const double> p,
                                           std::span<const double> q);

// Types of the rows of the matrix whose columns are the given length-n
// sequences: entry i is the type of (columns[0][i], columns[1][i], ...).
absl::StatusOr<std::vector<TypeVector>> RowTypes(
    std::span<const SymbolSequence> columns, std::size_t alphabet_size);

// True iff each row's empirical distribution equals t/n exactly.
bool RowsHaveType(std::span<const TypeVector> rows, const TypeVector& type);

inline constexpr std::uint64_t kDefaultRowCheckCap = 1u << 20;

// Lays every sequence of the given type out as a column (generated by
// next_permutation, not by the ranker) and checks that each row has the same
// type. Fails with ResourceExhausted when the class exceeds max_class_size.
absl::StatusOr<bool> CheckRowTypes(const TypeVector& type,
                                   std::uint64_t max_class_size =
                                       kDefaultRowCheckCap);

struct SamplingTvResult {
  double tv = 0.0;
  double bound = 0.0;
  bool ok = false;
};

inline constexpr std::uint64_t kDefaultSamplingOutcomeCap = 1u << 22;

// Exact total variation between k draws without and with replacement from an
// urn of labelled balls, against the bound |S| k / (number of balls), where
// |S| = alphabet_size. Enumerates all |S|^k ordered outcomes.
absl::StatusOr<SamplingTvResult> SamplingTvCheck(
    std::span<const Symbol> urn, std::size_t alphabet_size, std::size_t k,
    std::uint64_t max_outcomes = kDefaultSamplingOutcomeCap);

}  // namespace cipherlab

#endif  // CIPHERLAB_TYPES_METHOD_H_
