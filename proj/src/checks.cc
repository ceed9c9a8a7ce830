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
#include "cipherlab/checks.h"

#include <cmath>
#include <cstdint>
#include <functional>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "cipherlab/adversary.h"
#include "cipherlab/codebook.h"
#include "cipherlab/types_method.h"

namespace cipherlab {
namespace {

std::string Describe(const absl::Status& status) {
  return std::string(status.message());
}

}  // namespace

std::vector<SymbolSequence> ExampleBinColumns() {
  return {{0, 0, 1, 2}, {0, 2, 0, 1}, {1, 0, 2, 0}, {0, 1, 2, 0},
          {0, 1, 0, 2}, {1, 2, 0, 0}, {2, 0, 1, 0}, {2, 0, 0, 1}};
}

std::vector<CheckOutcome> RunCombinatoricsChecks() {
  std::vector<CheckOutcome> out;

  {
    CheckOutcome row{"row_types", true, ""};
    int classes = 0;
    for (std::size_t a = 1; a <= 3 && row.passed; ++a) {
      for (std::size_t n = 1; n <= 8 && row.passed; ++n) {
        for (const TypeVector& t : EnumerateTypes(n, a)) {
          absl::StatusOr<bool> ok = CheckRowTypes(t);
          ++classes;
          if (!ok.ok() || !*ok) {
            row.passed = false;
            row.detail = absl::StrCat(
                "type ", t.ToString(), ": ",
                ok.ok() ? "a row has the wrong type" : Describe(ok.status()));
            break;
          }
        }
      }
    }
    if (row.passed) row.detail = absl::StrCat(classes, " type classes");
    out.push_back(std::move(row));
  }

  {
    CheckOutcome tv{"sampling_tv", true, ""};
    int cases = 0;
    double worst_slack = std::numeric_limits<double>::infinity();
    for (std::size_t a = 1; a <= 3 && tv.passed; ++a) {
      for (std::size_t balls = 1; balls <= 8 && tv.passed; ++balls) {
        for (const TypeVector& t : EnumerateTypes(balls, a)) {
          const SymbolSequence urn = t.SmallestMember();
          for (std::size_t k = 1; k <= balls; ++k) {
            absl::StatusOr<SamplingTvResult> r = SamplingTvCheck(urn, a, k);
            ++cases;
            if (!r.ok() || !r->ok) {
              tv.passed = false;
              tv.detail = absl::StrCat(
                  "urn ", t.ToString(), " k=", k, ": ",
                  r.ok() ? absl::StrFormat("tv %.6g above bound %.6g", r->tv,
                                           r->bound)
                         : Describe(r.status()));
              break;
            }
            worst_slack = std::min(worst_slack, r->bound - r->tv);
          }
          if (!tv.passed) break;
        }
      }
    }
    if (tv.passed) {
      tv.detail = absl::StrFormat("%d urn/draw cases, min slack %.4g", cases,
                                  worst_slack);
    }
    out.push_back(std::move(tv));

    const Symbol two_balls[] = {0, 1};
    absl::StatusOr<SamplingTvResult> r = SamplingTvCheck(two_balls, 2, 2);
    CheckOutcome exact{"sampling_tv_two_balls", false, ""};
    if (r.ok()) {
      exact.passed = std::abs(r->tv - 0.5) <= 1e-15;
      exact.detail = absl::StrFormat("tv = %.17g (expected 0.5)", r->tv);
    } else {
      exact.detail = Describe(r.status());
    }
    out.push_back(std::move(exact));
  }

  {
    CheckOutcome bound{"class_size_bound", true, ""};
    int types = 0;
    for (std::size_t a = 1; a <= 4 && bound.passed; ++a) {
      for (std::size_t n = 1; n <= 20 && bound.passed; ++n) {
        for (const TypeVector& t : EnumerateTypes(n, a)) {
          ++types;
          const double exact = TypeClassSize(t).convert_to<double>();
          const double lower = TypeClassSizeBound(t, 2.0);
          // Both sides are exact integers or tiny, so a relative margin only
          // absorbs rounding in the bound's exponent.
          if (exact < lower * (1.0 - 1e-12)) {
            bound.passed = false;
            bound.detail = absl::StrFormat("type %s: |T| = %.17g < %.17g",
                                           t.ToString(), exact, lower);
            break;
          }
        }
      }
    }
    if (bound.passed) bound.detail = absl::StrCat(types, " types");
    out.push_back(std::move(bound));
  }
  return out;
}

std::vector<CheckOutcome> RunOracleChecks() {
  CheckOutcome result{"oracle_vs_exact", true, ""};
  const std::vector<std::vector<double>> sources = {{0.5, 0.5}, {0.75, 0.25}};
  std::vector<DistortionMeasure> measures = {DistortionMeasure::Hamming(2)};
  measures.push_back(*DistortionMeasure::Create({{0.0, 1.0}, {2.0, 0.0}}));
  int compared = 0;
  int skipped = 0;
  double worst = 0.0;
  for (const auto& probs : sources) {
    const SourceDistribution source = *SourceDistribution::Create(probs);
    for (std::size_t n = 1; n <= 4; ++n) {
      for (std::uint64_t k : {1, 2, 4}) {
        for (std::uint64_t seed : {1, 2}) {
          absl::StatusOr<Codebook> cb = Codebook::Build(source, n, 0.3, k, seed);
          if (absl::IsFailedPrecondition(cb.status())) {
            ++skipped;  // empty typical set
            continue;
          }
          if (!cb.ok()) {
            result.passed = false;
            result.detail = Describe(cb.status());
            return {result};
          }
          for (const DistortionMeasure& d : measures) {
            for (Observation obs :
                 {Observation::kFullMessage, Observation::kBinOnly}) {
              for (EveModel model : {EveModel::kFull, EveModel::kTypicalOnly}) {
                AdversaryOptions opts;
                opts.observe = obs;
                opts.model = model;
                absl::StatusOr<DistortionReport> exact =
                    ExactAdversaryDistortion(*cb, d, opts);
                absl::StatusOr<DistortionReport> brute =
                    BruteForceOracle(*cb, d, opts);
                ++compared;
                if (!exact.ok() || !brute.ok()) {
                  result.passed = false;
                  result.detail = Describe(!exact.ok() ? exact.status()
                                                       : brute.status());
                  return {result};
                }
                const double diff =
                    std::abs(exact->distortion - brute->distortion);
                worst = std::max(worst, diff);
                if (diff > kEquivalenceTolerance) {
                  result.passed = false;
                  result.detail = absl::StrFormat(
                      "n=%d k=%d seed=%d observe=%s: exact %.17g vs brute "
                      "%.17g",
                      n, k, seed, ObservationName(obs), exact->distortion,
                      brute->distortion);
                  return {result};
                }
              }
            }
          }
        }
      }
    }
  }
  result.detail = absl::StrFormat(
      "%d instances agree (max |diff| %.3g), %d empty typical sets skipped",
      compared, worst, skipped);
  return {result};
}

std::vector<CheckOutcome> RunExampleBinChecks() {
  std::vector<CheckOutcome> out;
  const SourceDistribution source =
      *SourceDistribution::Create({0.5, 0.25, 0.25});
  const DistortionMeasure hamming = DistortionMeasure::Hamming(3);
  absl::StatusOr<Codebook> cb =
      Codebook::FromBins(source, 8, {ExampleBinColumns()});
  if (!cb.ok()) {
    out.push_back({"example_bin_load", false, Describe(cb.status())});
    return out;
  }
  const std::vector<BinUniformity> diag = UniformityDiagnostics(*cb);
  out.push_back({"example_bin_rows_match_source",
                 diag.size() == 1 && diag[0].max_row_distance <= 1e-15,
                 absl::StrFormat("max row distance %.3g",
                                 diag.empty() ? -1.0 : diag[0].max_row_distance)});
  for (EveModel model : {EveModel::kFull, EveModel::kTypicalOnly}) {
    for (Observation obs : {Observation::kFullMessage, Observation::kBinOnly}) {
      const std::string tag = absl::StrCat(
          model == EveModel::kFull ? "full_model" : "typical_only", "/",
          ObservationName(obs));
      AdversaryOptions opts;
      opts.model = model;
      opts.observe = obs;
      absl::StatusOr<AdversaryStrategy> eve =
          AdversaryStrategy::Create(*cb, hamming, opts);
      if (!eve.ok()) {
        out.push_back({"example_bin_reply/" + tag, false, Describe(eve.status())});
        continue;
      }
      bool all_zero = true;
      for (std::uint64_t c = 0; c < cb->k(); ++c) {
        for (Symbol z : eve->Respond(Message{0, c})) all_zero &= z == 0;
      }
      out.push_back({"example_bin_reply/" + tag, all_zero,
                     all_zero ? "Eve outputs (0,0,0,0)" : "nonzero reply"});
      absl::StatusOr<DistortionReport> r =
          ExactAdversaryDistortion(*cb, hamming, opts);
      if (!r.ok()) {
        out.push_back({"example_bin_distortion/" + tag, false,
                       Describe(r.status())});
        continue;
      }
      const bool ok = std::abs(r->distortion - 0.5) <= 1e-12 &&
                      std::abs(r->dmax - 0.5) <= 1e-12;
      out.push_back({"example_bin_distortion/" + tag, ok,
                     absl::StrFormat("distortion %.17g, D_max %.17g",
                                     r->distortion, r->dmax)});
    }
  }
  return out;
}

absl::StatusOr<std::vector<CheckOutcome>> RunCheckSuite(std::string_view suite) {
  if (suite == "lemmas") return RunCombinatoricsChecks();
  if (suite == "oracle") return RunOracleChecks();
  if (suite == "figure2") return RunExampleBinChecks();
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown suite '", std::string(suite), "'; expected lemmas, oracle or figure2"));
}

}  // namespace cipherlab
