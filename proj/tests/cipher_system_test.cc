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
#include <map>

#include "gtest/gtest.h"
#include "oracles.h"

namespace cipherlab {
namespace {

const std::vector<SymbolSequence> kExampleBin = {
    {0, 0, 1, 2}, {0, 2, 0, 1}, {1, 0, 2, 0}, {0, 1, 2, 0},
    {0, 1, 0, 2}, {1, 2, 0, 0}, {2, 0, 1, 0}, {2, 0, 0, 1}};

SourceDistribution Uniform2() { return *SourceDistribution::Create({0.5, 0.5}); }

TEST(PadTest, ModularOffsets) {
  EXPECT_EQ(EncryptOffset(2, SecretKey{5}, 8, PadMode::kOneTimePad), 7u);
  EXPECT_EQ(EncryptOffset(6, SecretKey{5}, 8, PadMode::kOneTimePad), 3u);
  EXPECT_EQ(DecryptOffset(3, SecretKey{5}, 8, PadMode::kOneTimePad), 6u);
  EXPECT_EQ(EncryptOffset(4, SecretKey{0}, 8, PadMode::kOneTimePad), 4u);
  EXPECT_EQ(EncryptOffset(4, SecretKey{5}, 8, PadMode::kDisabled), 4u);
}

TEST(EncodeTest, ExampleBinOffsetTwo) {
  auto cb = Codebook::FromBins(
      *SourceDistribution::Create({0.5, 0.25, 0.25}), 8, {kExampleBin});
  ASSERT_TRUE(cb.ok());
  SeededStream s(1);
  auto m = Encode(*cb, kExampleBin[2], SecretKey{5}, s);
  ASSERT_TRUE(m.ok());
  EXPECT_EQ(*m, (Message{0, 7}));
  m = Encode(*cb, kExampleBin[2], SecretKey{0}, s);
  EXPECT_EQ(*m, (Message{0, 2}));
}

TEST(EncodeTest, Errors) {
  auto cb = Codebook::Build(Uniform2(), 4, 0.3, 2, 1);
  ASSERT_TRUE(cb.ok());
  SeededStream s(1);
  EXPECT_FALSE(Encode(*cb, SymbolSequence{0, 1, 0, 1}, SecretKey{2}, s).ok());
  EXPECT_FALSE(Encode(*cb, SymbolSequence{0, 1, 0}, SecretKey{0}, s).ok());
  EXPECT_FALSE(Encode(*cb, SymbolSequence{0, 1, 0, 2}, SecretKey{0}, s).ok());
}

TEST(EncodeTest, AtypicalMessagesAreReproducibleAndUniform) {
  auto cb = Codebook::Build(Uniform2(), 4, 0.3, 2, 1);
  ASSERT_TRUE(cb.ok());
  ASSERT_EQ(cb->message_count(), 14u);
  const SymbolSequence atypical = {0, 0, 0, 0};
  ASSERT_FALSE(cb->Locate(atypical).has_value());

  SeededStream a(99), b(99);
  for (int i = 0; i < 20; ++i) {
    EXPECT_EQ(*Encode(*cb, atypical, SecretKey{1}, a),
              *Encode(*cb, atypical, SecretKey{1}, b));
  }

  constexpr int kDraws = 100000;
  std::vector<int> hits(cb->message_count(), 0);
  SeededStream s(2024);
  for (int i = 0; i < kDraws; ++i) {
    const Message m = *Encode(*cb, atypical, SecretKey{0}, s);
    ASSERT_LT(m.bin, cb->num_bins());
    ASSERT_LT(m.cipher, cb->k());
    ++hits[m.bin * cb->k() + m.cipher];
  }
  const double p = 1.0 / 14;
  const double mean = kDraws * p;
  const double sd = std::sqrt(kDraws * p * (1 - p));
  double chi2 = 0.0;
  for (int h : hits) {
    EXPECT_LT(std::abs(h - mean), 3 * sd);
    chi2 += (h - mean) * (h - mean) / mean;
  }
  // 13 degrees of freedom; 99.9th percentile is 34.5.
  EXPECT_LT(chi2, 34.5);
}

TEST(DecodeTest, RoundTripOnEveryCodedSequenceAndKey) {
  const std::vector<std::vector<double>> sources = {{0.5, 0.5},
                                                    {0.5, 0.25, 0.25}};
  for (const auto& probs : sources) {
    const SourceDistribution p = *SourceDistribution::Create(probs);
    for (std::size_t n = 1; n <= 8; ++n) {
      for (std::uint64_t k = 1; k <= 8; ++k) {
        auto cb = Codebook::Build(p, n, 0.3, k, n * 31 + k);
        if (!cb.ok()) continue;
        SeededStream s(0);
        for (const auto& x : oracle::AllSequences(n, probs.size())) {
          if (!cb->Locate(x)) continue;
          for (std::uint64_t key = 0; key < k; ++key) {
            const Message m = *Encode(*cb, x, SecretKey{key}, s);
            ASSERT_EQ(*Decode(*cb, m, SecretKey{key}), x);
          }
        }
      }
    }
  }
}

TEST(DecodeTest, ZeroKeyIsPlainLookup) {
  auto cb = Codebook::Build(Uniform2(), 6, 0.2, 4, 3);
  ASSERT_TRUE(cb.ok());
  for (std::uint64_t j = 0; j < cb->num_bins(); ++j) {
    const auto contents = *cb->BinContents(j);
    for (std::uint64_t c = 0; c < contents.size(); ++c) {
      EXPECT_EQ(*Decode(*cb, Message{j, c}, SecretKey{0}), contents[c]);
    }
  }
}

TEST(DecodeTest, ResidualBinsWrapAround) {
  auto cb = Codebook::FromBins(Uniform2(), 4, {{{0, 1, 1}, {1, 0, 1}}});
  ASSERT_TRUE(cb.ok());
  EXPECT_EQ(*Decode(*cb, Message{0, 2}, SecretKey{0}), (SymbolSequence{0, 1, 1}));
  EXPECT_EQ(*Decode(*cb, Message{0, 3}, SecretKey{0}), (SymbolSequence{1, 0, 1}));
  // (1 - 3) mod 4 = 2 wraps to offset 0; (0 - 3) mod 4 = 1.
  EXPECT_EQ(*Decode(*cb, Message{0, 1}, SecretKey{3}), (SymbolSequence{0, 1, 1}));
  EXPECT_EQ(*Decode(*cb, Message{0, 0}, SecretKey{3}), (SymbolSequence{1, 0, 1}));
}

TEST(DecodeTest, Errors) {
  auto cb = Codebook::Build(Uniform2(), 4, 0.3, 2, 1);
  ASSERT_TRUE(cb.ok());
  EXPECT_FALSE(Decode(*cb, Message{cb->num_bins(), 0}, SecretKey{0}).ok());
  EXPECT_FALSE(Decode(*cb, Message{0, 2}, SecretKey{0}).ok());
  EXPECT_FALSE(Decode(*cb, Message{0, 0}, SecretKey{2}).ok());
}

TEST(DecodeTest, AtypicalInputsDecodeToSomeCodeword) {
  auto cb = Codebook::Build(Uniform2(), 6, 0.2, 3, 8);
  ASSERT_TRUE(cb.ok());
  SeededStream s(4);
  const SymbolSequence x(6, 1);
  ASSERT_FALSE(cb->Locate(x));
  for (int i = 0; i < 200; ++i) {
    const SecretKey key = DrawKey(*cb, s);
    const SymbolSequence y = *Decode(*cb, *Encode(*cb, x, key, s), key);
    EXPECT_TRUE(cb->Locate(y).has_value());
    EXPECT_NE(y, x);
  }
}

TEST(PadUniformityTest, CipherIsUniformOverKeysGivenBin) {
  const std::vector<double> probs = {0.6, 0.4};
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::uint64_t k : {2, 3, 5}) {
      auto cb = Codebook::Build(*SourceDistribution::Create(probs), n, 0.35, k,
                                n + k);
      if (!cb.ok()) continue;
      SeededStream s(0);
      for (const auto& x : oracle::AllSequences(n, 2)) {
        const auto at = cb->Locate(x);
        if (!at) continue;
        std::vector<int> seen(k, 0);
        for (std::uint64_t key = 0; key < k; ++key) {
          const Message m = *Encode(*cb, x, SecretKey{key}, s);
          ASSERT_EQ(m.bin, at->bin);
          ++seen[m.cipher];
        }
        for (int c : seen) EXPECT_EQ(c, 1);
      }
    }
  }
}

TEST(DecodeErrorTest, ExactBinaryExample) {
  // Oracle: one-counts {1,2,3} are typical; 1 - 14/16.
  EXPECT_DOUBLE_EQ(1.0 - oracle::TypicalMass({0.5, 0.5}, 4, 0.3), 0.125);
  auto cb = Codebook::Build(Uniform2(), 4, 0.3, 2, 1);
  ASSERT_TRUE(cb.ok());
  auto exact = DecodeErrorProbability(*cb, {});
  ASSERT_TRUE(exact.ok());
  EXPECT_DOUBLE_EQ(exact->value, 0.125);

  DecodeErrorOptions mc;
  mc.mode = EstimateMode::kMonteCarlo;
  mc.trials = 100000;
  mc.seed = 17;
  auto estimate = DecodeErrorProbability(*cb, mc);
  ASSERT_TRUE(estimate.ok());
  EXPECT_GT(estimate->std_error, 0.0);
  EXPECT_LT(std::abs(estimate->value - 0.125), 3 * estimate->std_error);
}

TEST(DecodeErrorTest, FullSlackHasNoErrors) {
  auto cb = Codebook::Build(Uniform2(), 6, 1.0, 4, 1);
  ASSERT_TRUE(cb.ok());
  EXPECT_EQ(DecodeErrorProbability(*cb, {})->value, 0.0);
}

TEST(DecodeErrorTest, MonotoneInEpsilon) {
  const SourceDistribution p = *SourceDistribution::Create({0.7, 0.3});
  double previous = 1.0;
  for (double eps : {0.1, 0.15, 0.2, 0.3, 0.5, 0.8}) {
    auto cb = Codebook::Build(p, 10, eps, 4, 1);
    ASSERT_TRUE(cb.ok());
    const double err = DecodeErrorProbability(*cb, {})->value;
    EXPECT_LE(err, previous + 1e-15);
    previous = err;
  }
}

TEST(DecodeErrorTest, Errors) {
  auto cb = Codebook::Build(Uniform2(), 4, 0.3, 2, 1);
  DecodeErrorOptions capped;
  capped.max_exact_n = 3;
  EXPECT_EQ(DecodeErrorProbability(*cb, capped).status().code(),
            absl::StatusCode::kResourceExhausted);
  DecodeErrorOptions none;
  none.mode = EstimateMode::kMonteCarlo;
  none.trials = 0;
  EXPECT_FALSE(DecodeErrorProbability(*cb, none).ok());
}

TEST(DecodeErrorTest, MonteCarloIsDeterministic) {
  auto cb = Codebook::Build(Uniform2(), 6, 0.2, 3, 2);
  DecodeErrorOptions mc;
  mc.mode = EstimateMode::kMonteCarlo;
  mc.trials = 5000;
  mc.seed = 3;
  EXPECT_EQ(DecodeErrorProbability(*cb, mc)->value,
            DecodeErrorProbability(*cb, mc)->value);
}

TEST(WireFormatTest, RoundTrip) {
  const std::vector<Message> ms = {{0, 7}, {12, 0}, {3, 3}};
  EXPECT_EQ(FormatMessage(ms[0]), "0 7");
  const std::string text = FormatMessages(ms);
  EXPECT_EQ(text, "0 7\n12 0\n3 3\n");
  EXPECT_EQ(*ParseMessages(text), ms);
  EXPECT_EQ(*ParseMessage("12 0"), (Message{12, 0}));
}

TEST(WireFormatTest, RejectsMalformedLines) {
  EXPECT_FALSE(ParseMessage("").ok());
  EXPECT_FALSE(ParseMessage("1").ok());
  EXPECT_FALSE(ParseMessage("1 2 3").ok());
  EXPECT_FALSE(ParseMessage("-1 2").ok());
  EXPECT_FALSE(ParseMessage("a b").ok());
}

}  // namespace
}  // namespace cipherlab
