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
#include "cipherlab/cipher_system.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"

namespace cipherlab {
namespace {

// Trials are split over a fixed number of independently seeded chunks so the
// estimate does not depend on how the work is scheduled.
constexpr std::uint64_t kMonteCarloChunks = 16;

absl::Status ValidateMessage(const Codebook& codebook, Message message) {
  if (message.bin >= codebook.num_bins() || message.cipher >= codebook.k()) {
    return absl::OutOfRangeError(absl::StrCat(
        "message (", message.bin, ", ", message.cipher,
        ") outside the message space ", codebook.num_bins(), " x ",
        codebook.k()));
  }
  return absl::OkStatus();
}

}  // namespace

std::uint64_t EncryptOffset(std::uint64_t offset, SecretKey key,
                            std::uint64_t k, PadMode pad) {
  if (pad == PadMode::kDisabled) return offset;
  return (offset + key.value) % k;
}

std::uint64_t DecryptOffset(std::uint64_t cipher, SecretKey key,
                            std::uint64_t k, PadMode pad) {
  if (pad == PadMode::kDisabled) return cipher;
  return (cipher + k - key.value % k) % k;
}

SecretKey DrawKey(const Codebook& codebook, SeededStream& stream) {
  return SecretKey{stream.UniformBelow(codebook.k())};
}

absl::StatusOr<Message> Encode(const Codebook& codebook,
                               std::span<const Symbol> x, SecretKey key,
                               SeededStream& stream, PadMode pad) {
  if (key.value >= codebook.k()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "key ", key.value, " outside key space of size ", codebook.k()));
  }
  if (x.size() != codebook.n()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "source block has length ", x.size(), ", expected ", codebook.n()));
  }
  if (auto s = ValidateSequence(x, codebook.source().size()); !s.ok()) return s;
  if (auto address = codebook.Locate(x); address.has_value()) {
    return Message{address->bin,
                   EncryptOffset(address->offset, key, codebook.k(), pad)};
  }
  const std::uint64_t draw = stream.UniformBelow(codebook.message_count());
  return Message{draw / codebook.k(), draw % codebook.k()};
}

absl::StatusOr<SymbolSequence> Decode(const Codebook& codebook, Message message,
                                      SecretKey key, PadMode pad) {
  if (auto s = ValidateMessage(codebook, message); !s.ok()) return s;
  if (key.value >= codebook.k()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "key ", key.value, " outside key space of size ", codebook.k()));
  }
  const std::uint64_t offset =
      DecryptOffset(message.cipher, key, codebook.k(), pad) %
      codebook.BinSize(message.bin);
  SymbolSequence out(codebook.n());
  codebook.SequenceAt(message.bin, offset, out);
  return out;
}

absl::StatusOr<Estimate> DecodeErrorProbability(
    const Codebook& codebook, const DecodeErrorOptions& options) {
  if (options.mode == EstimateMode::kExact) {
    if (codebook.n() > options.max_exact_n) {
      return absl::ResourceExhaustedError(absl::StrCat(
          "exact error probability limited to n <= ", options.max_exact_n));
    }
    return Estimate{std::max(0.0, 1.0 - codebook.coded_mass()), 0.0};
  }
  if (options.trials == 0) {
    return absl::InvalidArgumentError("Monte Carlo needs at least one trial");
  }
  std::uint64_t errors = 0;
  for (std::uint64_t chunk = 0; chunk < kMonteCarloChunks; ++chunk) {
    const std::uint64_t begin = options.trials * chunk / kMonteCarloChunks;
    const std::uint64_t end = options.trials * (chunk + 1) / kMonteCarloChunks;
    SeededStream stream = SeededStream::Derive(options.seed, {chunk});
    for (std::uint64_t t = begin; t < end; ++t) {
      const SymbolSequence x =
          SampleSource(codebook.source(), codebook.n(), stream);
      const SecretKey key = DrawKey(codebook, stream);
      auto message = Encode(codebook, x, key, stream);
      if (!message.ok()) return message.status();
      auto decoded = Decode(codebook, *message, key);
      if (!decoded.ok()) return decoded.status();
      if (*decoded != x) ++errors;
    }
  }
  const double trials = static_cast<double>(options.trials);
  const double p = static_cast<double>(errors) / trials;
  return Estimate{p, std::sqrt(p * (1.0 - p) / trials)};
}

std::string FormatMessage(Message message) {
  return absl::StrCat(message.bin, " ", message.cipher);
}

absl::StatusOr<Message> ParseMessage(std::string_view line) {
  std::vector<absl::string_view> fields = absl::StrSplit(
      absl::StripAsciiWhitespace(absl::string_view(line.data(), line.size())),
      ' ', absl::SkipEmpty());
  Message m;
  if (fields.size() != 2 || !absl::SimpleAtoi(fields[0], &m.bin) ||
      !absl::SimpleAtoi(fields[1], &m.cipher)) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed message line: '", std::string(line), "'"));
  }
  return m;
}

std::string FormatMessages(std::span<const Message> messages) {
  std::string out;
  for (const Message& m : messages) absl::StrAppend(&out, FormatMessage(m), "\n");
  return out;
}

absl::StatusOr<std::vector<Message>> ParseMessages(std::string_view text) {
  std::vector<Message> out;
  for (absl::string_view line :
       absl::StrSplit(absl::string_view(text.data(), text.size()), '\n',
                      absl::SkipWhitespace())) {
    auto m = ParseMessage(std::string_view(line.data(), line.size()));
    if (!m.ok()) return m.status();
    out.push_back(*m);
  }
  return out;
}

}  // namespace cipherlab
