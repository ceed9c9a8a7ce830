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
#include "cipherlab/adversary.h"

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
SourceDistribution Ternary() {
  return *SourceDistribution::Create({0.5, 0.25, 0.25});
}

std::map<SymbolSequence, double> AsMap(const PosteriorTable& t) {
  std::map<SymbolSequence, double> m;
  for (std::size_t i = 0; i < t.support.size(); ++i) m[t.support[i]] += t.weights[i];
  return m;
}

TEST(PosteriorTest, NoUncodedMassGivesBinContents) {
  auto cb = Codebook::Build(Uniform2(), 5, 1.0, 4, 2);
  ASSERT_TRUE(cb.ok());
  for (std::uint64_t j = 0; j < cb->num_bins(); ++j) {
    auto post = PosteriorGivenMessage(*cb, Message{j, 1});
    ASSERT_TRUE(post.ok());
    const auto contents = *cb->BinContents(j);
    std::map<SymbolSequence, double> expected;
    for (const auto& x : contents) expected[x] = 1.0 / contents.size();
    const auto got = AsMap(*post);
    ASSERT_EQ(got.size(), expected.size());
    for (const auto& [x, w] : expected) EXPECT_NEAR(got.at(x), w, 1e-14);
  }
}

TEST(PosteriorTest, MatchesJointEnumeration) {
  // Oracle: enumerate (x, K) for coded x and (x, random message) otherwise.
  const std::vector<double> probs = {0.5, 0.5};
  auto cb = Codebook::Build(Uniform2(), 4, 0.3, 2, 5);
  ASSERT_TRUE(cb.ok());
  const std::uint64_t k = cb->k();
  const std::uint64_t messages = cb->message_count();
  std::map<std::uint64_t, std::map<SymbolSequence, double>> joint;
  for (const auto& x : oracle::AllSequences(4, 2)) {
    const double p = oracle::SeqProb(x, probs);
    const auto at = cb->Locate(x);
    if (at) {
      for (std::uint64_t key = 0; key < k; ++key) {
        joint[at->bin * k + (at->offset + key) % k][x] += p / k;
      }
    } else {
      for (std::uint64_t r = 0; r < messages; ++r) joint[r][x] += p / messages;
    }
  }
  for (std::uint64_t r = 0; r < messages; ++r) {
    double total = 0.0;
    for (const auto& [x, w] : joint[r]) total += w;
    auto post = PosteriorGivenMessage(*cb, Message{r / k, r % k});
    ASSERT_TRUE(post.ok());
    const auto got = AsMap(*post);
    ASSERT_EQ(got.size(), joint[r].size());
    double sum = 0.0;
    for (const auto& [x, w] : joint[r]) {
      EXPECT_NEAR(got.at(x), w / total, 1e-12);
      sum += got.at(x);
    }
    EXPECT_NEAR(sum, 1.0, 1e-10);
  }
}

TEST(PosteriorTest, BinPosteriorEqualsMessagePosteriorUnderPad) {
  auto cb = Codebook::Build(Ternary(), 5, 0.3, 3, 7);
  ASSERT_TRUE(cb.ok());
  for (std::uint64_t j = 0; j < cb->num_bins(); ++j) {
    const auto by_bin = AsMap(*PosteriorGivenBin(*cb, j));
    for (std::uint64_t c = 0; c < cb->k(); ++c) {
      const auto by_msg = AsMap(*PosteriorGivenMessage(*cb, Message{j, c}));
      ASSERT_EQ(by_bin.size(), by_msg.size());
      for (const auto& [x, w] : by_bin) EXPECT_NEAR(by_msg.at(x), w, 1e-12);
    }
  }
}

TEST(PosteriorTest, Errors) {
  auto cb = Codebook::Build(Uniform2(), 4, 0.3, 2, 5);
  ASSERT_TRUE(cb.ok());
  EXPECT_FALSE(PosteriorGivenMessage(*cb, Message{cb->num_bins(), 0}).ok());
  EXPECT_FALSE(PosteriorGivenMessage(*cb, Message{0, 2}).ok());
  EXPECT_FALSE(PosteriorGivenBin(*cb, cb->num_bins()).ok());
  // Every coded sequence has probability zero.
  auto dead = Codebook::FromBins(*SourceDistribution::Create({1.0, 0.0}), 1,
                                 {{{1, 1}}});
  ASSERT_TRUE(dead.ok());
  AdversaryOptions typical_only;
  typical_only.model = EveModel::kTypicalOnly;
  EXPECT_EQ(PosteriorGivenMessage(*dead, Message{0, 0}, typical_only)
                .status()
                .code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(OptimalReproductionTest, Examples) {
  const DistortionMeasure h3 = DistortionMeasure::Hamming(3);
  PosteriorTable example{kExampleBin, std::vector<double>(8, 1.0 / 8)};
  EXPECT_EQ(*OptimalReproduction(example, h3), (SymbolSequence{0, 0, 0, 0}));

  const DistortionMeasure d = *DistortionMeasure::Create({{0, 1}, {3, 0}});
  PosteriorTable single{{{1, 0, 1}}, {1.0}};
  const SymbolSequence z = *OptimalReproduction(single, d);
  EXPECT_EQ(z, (SymbolSequence{1, 0, 1}));
  EXPECT_EQ(*ConditionalExpectedDistortion(single, z, d), 0.0);

  const DistortionMeasure h2 = DistortionMeasure::Hamming(2);
  PosteriorTable pair{{{0, 1}, {1, 0}}, {0.5, 0.5}};
  const SymbolSequence tie = *OptimalReproduction(pair, h2);
  EXPECT_EQ(tie, (SymbolSequence{0, 0}));
  EXPECT_DOUBLE_EQ(*ConditionalExpectedDistortion(pair, tie, h2), 0.5);
}

TEST(OptimalReproductionTest, Errors) {
  const DistortionMeasure h2 = DistortionMeasure::Hamming(2);
  EXPECT_FALSE(OptimalReproduction(PosteriorTable{}, h2).ok());
  PosteriorTable pair{{{0, 1}, {1, 0}}, {0.5, 0.5}};
  EXPECT_FALSE(
      ConditionalExpectedDistortion(pair, SymbolSequence{0}, h2).ok());
}

TEST(OptimalReproductionTest, NoSinglePositionDeviationHelps) {
  const DistortionMeasure d =
      *DistortionMeasure::Create({{0, 1, 2}, {2, 0, 1}, {1, 2, 0}});
  auto cb = Codebook::Build(*SourceDistribution::Create({0.4, 0.35, 0.25}), 5,
                            0.3, 4, 11);
  ASSERT_TRUE(cb.ok());
  for (std::uint64_t j = 0; j < cb->num_bins(); ++j) {
    const PosteriorTable post = *PosteriorGivenMessage(*cb, Message{j, 0});
    SymbolSequence z = *OptimalReproduction(post, d);
    const double best = *ConditionalExpectedDistortion(post, z, d);
    for (std::size_t i = 0; i < z.size(); ++i) {
      const Symbol keep = z[i];
      for (Symbol alt = 0; alt < 3; ++alt) {
        z[i] = alt;
        EXPECT_GE(*ConditionalExpectedDistortion(post, z, d), best - 1e-14);
      }
      z[i] = keep;
    }
  }
}

TEST(ExactDistortionTest, SingleKeyWithoutUncodedMassIsZero) {
  auto cb = Codebook::Build(Uniform2(), 6, 1.0, 1, 3);
  ASSERT_TRUE(cb.ok());
  auto r = ExactAdversaryDistortion(*cb, DistortionMeasure::Hamming(2));
  ASSERT_TRUE(r.ok());
  EXPECT_NEAR(r->distortion, 0.0, 1e-15);
  EXPECT_EQ(r->engine, "exact");
}

TEST(ExactDistortionTest, WholeClassBinReachesDmax) {
  auto cb = Codebook::Build(Ternary(), 4, 0.2, 12, 1);
  ASSERT_TRUE(cb.ok());
  ASSERT_EQ(cb->num_bins(), 1u);
  for (EveModel model : {EveModel::kFull, EveModel::kTypicalOnly}) {
    AdversaryOptions opts;
    opts.model = model;
    auto r = ExactAdversaryDistortion(*cb, DistortionMeasure::Hamming(3), opts);
    ASSERT_TRUE(r.ok());
    EXPECT_NEAR(r->distortion, 0.5, 1e-12);
    EXPECT_NEAR(r->dmax, 0.5, 1e-15);
    EXPECT_NEAR(r->gap, 0.0, 1e-12);
  }
}

TEST(ExactDistortionTest, ExampleBinReachesDmax) {
  auto cb = Codebook::FromBins(Ternary(), 8, {kExampleBin});
  ASSERT_TRUE(cb.ok());
  auto eve = AdversaryStrategy::Create(*cb, DistortionMeasure::Hamming(3));
  ASSERT_TRUE(eve.ok());
  EXPECT_EQ(eve->Respond(Message{0, 3}), (SymbolSequence{0, 0, 0, 0}));
  auto r = ExactAdversaryDistortion(*cb, DistortionMeasure::Hamming(3));
  ASSERT_TRUE(r.ok());
  EXPECT_NEAR(r->distortion, 0.5, 1e-12);
  auto brute = BruteForceOracle(*cb, DistortionMeasure::Hamming(3));
  ASSERT_TRUE(brute.ok());
  EXPECT_NEAR(brute->distortion, 0.5, 1e-12);
}

TEST(ExactDistortionTest, NeverAboveDmax) {
  const DistortionMeasure d = *DistortionMeasure::Create({{0, 1}, {3, 0}});
  for (std::size_t n = 2; n <= 8; ++n) {
    for (std::uint64_t k : {1, 2, 4, 16}) {
      auto cb = Codebook::Build(*SourceDistribution::Create({0.7, 0.3}), n,
                                0.25, k, n * k);
      if (!cb.ok()) continue;
      for (Observation obs : {Observation::kFullMessage, Observation::kBinOnly}) {
        AdversaryOptions opts;
        opts.observe = obs;
        auto r = ExactAdversaryDistortion(*cb, d, opts);
        ASSERT_TRUE(r.ok());
        EXPECT_LE(r->distortion, r->dmax + 1e-12);
        EXPECT_GE(r->distortion, 0.0);
      }
    }
  }
}

TEST(ExactDistortionTest, CapsAreEnforced) {
  auto cb = Codebook::Build(Uniform2(), 8, 0.2, 4, 1);
  ASSERT_TRUE(cb.ok());
  AdversaryOptions opts;
  opts.max_exact_n = 6;
  EXPECT_EQ(ExactAdversaryDistortion(*cb, DistortionMeasure::Hamming(2), opts)
                .status()
                .code(),
            absl::StatusCode::kResourceExhausted);
  opts = {};
  opts.max_messages = 3;
  EXPECT_EQ(ExactAdversaryDistortion(*cb, DistortionMeasure::Hamming(2), opts)
                .status()
                .code(),
            absl::StatusCode::kResourceExhausted);
  opts = {};
  opts.max_oracle_work = 1000;
  EXPECT_EQ(BruteForceOracle(*cb, DistortionMeasure::Hamming(2), opts)
                .status()
                .code(),
            absl::StatusCode::kResourceExhausted);
  EXPECT_FALSE(
      ExactAdversaryDistortion(*cb, DistortionMeasure::Hamming(3)).ok());
}

TEST(SuffstatTest, PadMakesTheOffsetIrrelevant) {
  for (std::size_t n : {4, 6}) {
    for (std::uint64_t k : {2, 4}) {
      auto cb = Codebook::Build(*SourceDistribution::Create({0.75, 0.25}), n,
                                0.3, k, 1);
      ASSERT_TRUE(cb.ok());
      EXPECT_TRUE(*SuffstatEquivalenceCheck(*cb, DistortionMeasure::Hamming(2)));
    }
  }
  auto single = Codebook::Build(Uniform2(), 6, 0.3, 1, 1);
  EXPECT_TRUE(*SuffstatEquivalenceCheck(*single, DistortionMeasure::Hamming(2)));
}

TEST(SuffstatTest, DisabledPadBreaksEquivalence) {
  auto cb = Codebook::Build(*SourceDistribution::Create({0.75, 0.25}), 6, 0.3,
                            4, 1);
  ASSERT_TRUE(cb.ok());
  AdversaryOptions broken;
  broken.pad = PadMode::kDisabled;
  EXPECT_FALSE(
      *SuffstatEquivalenceCheck(*cb, DistortionMeasure::Hamming(2), broken));
}

TEST(BruteForceOracleTest, AgreesWithSeparableEngine) {
  const std::vector<DistortionMeasure> measures = {
      DistortionMeasure::Hamming(2),
      *DistortionMeasure::Create({{0, 1}, {2, 0}})};
  for (const auto& probs :
       std::vector<std::vector<double>>{{0.5, 0.5}, {0.8, 0.2}}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      for (std::uint64_t k : {1, 2, 4}) {
        for (std::uint64_t seed : {1, 2}) {
          auto cb = Codebook::Build(*SourceDistribution::Create(probs), n, 0.35,
                                    k, seed);
          if (!cb.ok()) continue;
          for (const auto& d : measures) {
            for (Observation obs :
                 {Observation::kFullMessage, Observation::kBinOnly}) {
              AdversaryOptions opts;
              opts.observe = obs;
              const double exact =
                  ExactAdversaryDistortion(*cb, d, opts)->distortion;
              auto brute = BruteForceOracle(*cb, d, opts);
              ASSERT_TRUE(brute.ok());
              EXPECT_NEAR(brute->distortion, exact, 1e-12);
              EXPECT_EQ(brute->engine, "brute_force");
            }
          }
        }
      }
    }
  }
}

TEST(BruteForceOracleTest, SingletonBinsGiveZero) {
  auto cb = Codebook::FromBins(Uniform2(), 1, {{{0, 1}}, {{1, 0}}, {{1, 1}}, {{0, 0}}});
  ASSERT_TRUE(cb.ok());
  EXPECT_NEAR(BruteForceOracle(*cb, DistortionMeasure::Hamming(2))->distortion,
              0.0, 1e-15);
}

TEST(MonteCarloTest, AgreesWithExactWithinThreeStdErr) {
  const DistortionMeasure h = DistortionMeasure::Hamming(2);
  for (EveModel model : {EveModel::kFull, EveModel::kTypicalOnly}) {
    for (std::uint64_t k : {2, 8}) {
      auto cb = Codebook::Build(*SourceDistribution::Create({0.7, 0.3}), 10,
                                0.2, k, 3);
      ASSERT_TRUE(cb.ok());
      AdversaryOptions opts;
      opts.model = model;
      const double exact = ExactAdversaryDistortion(*cb, h, opts)->distortion;
      auto mc = MonteCarloAdversaryDistortion(*cb, h, 40000, 5, opts);
      ASSERT_TRUE(mc.ok());
      EXPECT_EQ(mc->engine, "monte_carlo");
      EXPECT_GT(mc->std_error, 0.0);
      EXPECT_LT(std::abs(mc->distortion - exact), 3 * mc->std_error);
    }
  }
}

TEST(MonteCarloTest, RejectsZeroTrials) {
  auto cb = Codebook::Build(Uniform2(), 4, 0.3, 2, 1);
  EXPECT_FALSE(
      MonteCarloAdversaryDistortion(*cb, DistortionMeasure::Hamming(2), 0, 1)
          .ok());
}

TEST(ExpectedAdversaryDistortionTest, DispatchesOnMode) {
  auto cb = Codebook::Build(Uniform2(), 6, 0.3, 2, 1);
  DistortionQuery q;
  EXPECT_EQ(ExpectedAdversaryDistortion(*cb, DistortionMeasure::Hamming(2), q)
                ->engine,
            "exact");
  q.mode = EstimateMode::kMonteCarlo;
  q.trials = 100;
  EXPECT_EQ(ExpectedAdversaryDistortion(*cb, DistortionMeasure::Hamming(2), q)
                ->engine,
            "monte_carlo");
}

TEST(DistortionReportTest, CsvShape) {
  EXPECT_EQ(DistortionReport::CsvHeader(),
            "n,k,epsilon,seed,observe_mode,engine,distortion,stderr,dmax,gap,"
            "p_err,rate");
  DistortionReport r;
  r.n = 4;
  r.k = 2;
  r.epsilon = 0.25;
  r.seed = 7;
  r.observe = Observation::kBinOnly;
  r.engine = "exact";
  r.distortion = 0.375;
  r.dmax = 0.5;
  r.gap = 0.125;
  EXPECT_EQ(r.ToCsvRow(), "4,2,0.25,7,bin_only,exact,0.375,0,0.5,0.125,0,0");
}

TEST(ObservationTest, NamesRoundTrip) {
  for (Observation o : {Observation::kFullMessage, Observation::kBinOnly}) {
    EXPECT_EQ(*ParseObservation(ObservationName(o)), o);
  }
  EXPECT_FALSE(ParseObservation("everything").ok());
}

}  // namespace
}  // namespace cipherlab
