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
#ifndef CIPHERLAB_CIPHER_SYSTEM_H_
#define CIPHERLAB_CIPHER_SYSTEM_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "cipherlab/codebook.h"
#include "cipherlab/core_model.h"
#include "cipherlab/random_stream.h"

namespace cipherlab {

// kDisabled sends the offset in the clear; it exists only as a negative
// control for the adversary checks.
enum class PadMode { kOneTimePad, kDisabled };

struct SecretKey {
  std::uint64_t value = 0;
};

// What crosses the public channel: the bin number and the padded offset.
struct Message {
  std::uint64_t bin = 0;
  std::uint64_t cipher = 0;

  friend bool operator==(const Message&, const Message&) = default;
};

// (L + K) mod k, or L when the pad is disabled.
std::uint64_t EncryptOffset(std::uint64_t offset, SecretKey key,
                            std::uint64_t k, PadMode pad);
// (C - K) mod k, or C when the pad is disabled.
std::uint64_t DecryptOffset(std::uint64_t cipher, SecretKey key,
                            std::uint64_t k, PadMode pad);

// Uniform key on {0, ..., k - 1}.
SecretKey DrawKey(const Codebook& codebook, SeededStream& stream);

// A coded x at (J, L) maps to (J, L (+) K) and leaves the stream untouched.
// Any other x maps to a message drawn uniformly from all num_bins * k pairs.
absl::StatusOr<Message> Encode(const Codebook& codebook,
                               std::span<const Symbol> x, SecretKey key,
                               SeededStream& stream,
                               PadMode pad = PadMode::kOneTimePad);

// Always emits a sequence for a well-formed message. An offset that lands
// past the end of a short bin wraps modulo the bin size.
absl::StatusOr<SymbolSequence> Decode(const Codebook& codebook, Message message,
                                      SecretKey key,
                                      PadMode pad = PadMode::kOneTimePad);

enum class EstimateMode { kExact, kMonteCarlo };

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

struct DecodeErrorOptions {
  EstimateMode mode = EstimateMode::kExact;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  // Exact mode enumerates types; refuse longer blocks.
  std::size_t max_exact_n = 24;
};

// Exact: 1 - P[X^n coded], ignoring the chance that a random message for an
// uncoded input happens to decode to that input (at most
// P[uncoded] / message_count). Monte Carlo: the empirical rate of
// Decode(Encode(X^n, K), K) != X^n with fresh keys.
absl::StatusOr<Estimate> DecodeErrorProbability(
    const Codebook& codebook, const DecodeErrorOptions& options);

// Wire format: "J C" in decimal, one message per line.
std::string FormatMessage(Message message);
absl::StatusOr<Message> ParseMessage(std::string_view line);
std::string FormatMessages(std::span<const Message> messages);
absl::StatusOr<std::vector<Message>> ParseMessages(std::string_view text);

}  // namespace cipherlab

#endif  // CIPHERLAB_CIPHER_SYSTEM_H_
