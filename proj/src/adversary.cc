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

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "cipherlab/status_macros.h"

namespace cipherlab {
namespace {

constexpr std::uint64_t kMonteCarloChunks = 16;
constexpr double kMaxTypes = 1e7;
constexpr std::uint64_t kMaxRejectionDraws = 1000000;

absl::Status CheckDimensions(const Codebook& codebook,
                             const DistortionMeasure& distortion) {
  if (codebook.source().size() != distortion.source_size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "source alphabet has ", codebook.source().size(),
        " symbols but the distortion matrix has ", distortion.source_size(),
        " rows"));
  }
  return absl::OkStatus();
}

absl::Status CheckTypeCount(std::size_t n, std::size_t alphabet) {
  // log C(n + A - 1, A - 1)
  const double log_count = std::lgamma(n + alphabet) - std::lgamma(n + 1.0) -
                           std::lgamma(static_cast<double>(alphabet));
  if (log_count > std::log(kMaxTypes)) {
    return absl::ResourceExhaustedError(
        absl::StrCat("too many types to enumerate at n=", n));
  }
  return absl::OkStatus();
}

// Every uncoded sequence with positive probability, with its log probability.
absl::Status ForEachUncoded(
    const Codebook& codebook, std::uint64_t cap,
    const std::function<void(std::span<const Symbol>, double)>& visit) {
  const std::size_t n = codebook.n();
  CIPHERLAB_RETURN_IF_ERROR(CheckTypeCount(n, codebook.source().size()));
  std::uint64_t visited = 0;
  SymbolSequence seq(n);
  for (const TypeVector& type : EnumerateTypes(n, codebook.source().size())) {
    const double log_p = LogSequenceProbability(type, codebook.source());
    if (log_p == -std::numeric_limits<double>::infinity()) continue;
    const Codebook::TypeBlock* block = codebook.FindBlock(type);
    if (block != nullptr && block->covers_class()) continue;
    const BigInt size = TypeClassSize(type);
    const std::uint64_t coded = block ? block->members.size() : 0;
    if (size - coded + visited > cap) {
      return absl::ResourceExhaustedError(absl::StrCat(
          "uncoded support exceeds the cap of ", cap, " sequences"));
    }
    CIPHERLAB_ASSIGN_OR_RETURN(TypeClassRanker ranker,
                               TypeClassRanker::Create(type));
    for (std::uint64_t r = 0; r < ranker.size(); ++r) {
      if (block && block->position[r] != Codebook::TypeBlock::kAbsent) continue;
      ranker.Unrank(r, seq);
      visit(seq, log_p);
      ++visited;
    }
  }
  return absl::OkStatus();
}

// out[i * |X| + x] = sum over uncoded x^n of p(x^n) 1{x_i = x}.
//
// Whole uncoded classes use the row-type identity: across a full type class
// every position carries symbol x in a t(x)/n fraction of members, so the
// class contributes |T_t| p_t t(x) / n at each position. Classes that are
// partly coded are walked member by member.
absl::StatusOr<std::vector<double>> UncodedPositionMass(
    const Codebook& codebook) {
  const std::size_t n = codebook.n();
  const std::size_t alphabet = codebook.source().size();
  CIPHERLAB_RETURN_IF_ERROR(CheckTypeCount(n, alphabet));
  std::vector<double> out(n * alphabet, 0.0);
  SymbolSequence seq(n);
  for (const TypeVector& type : EnumerateTypes(n, alphabet)) {
    const double log_p = LogSequenceProbability(type, codebook.source());
    if (log_p == -std::numeric_limits<double>::infinity()) continue;
    const Codebook::TypeBlock* block = codebook.FindBlock(type);
    if (block == nullptr) {
      const double class_mass = std::exp(LogTypeClassSize(type) + log_p);
      for (Symbol x = 0; x < alphabet; ++x) {
        const double row = class_mass * type.frequency(x);
        for (std::size_t i = 0; i < n; ++i) out[i * alphabet + x] += row;
      }
    } else if (!block->covers_class()) {
      const double p = std::exp(log_p);
      for (std::uint64_t r = 0; r < block->ranker.size(); ++r) {
        if (block->position[r] != Codebook::TypeBlock::kAbsent) continue;
        block->ranker.Unrank(r, seq);
        for (std::size_t i = 0; i < n; ++i) out[i * alphabet + seq[i]] += p;
      }
    }
  }
  return out;
}

struct BinView {
  std::uint64_t size = 0;
  double prob = 0.0;
  std::vector<Symbol> symbols;  // size * n, row-major by offset
};

BinView LoadBin(const Codebook& codebook, std::uint64_t bin) {
  BinView view;
  const std::size_t n = codebook.n();
  view.size = codebook.BinSize(bin);
  view.prob = std::exp(codebook.BinBlock(bin).log_sequence_probability);
  view.symbols.resize(view.size * n);
  for (std::uint64_t l = 0; l < view.size; ++l) {
    codebook.SequenceAt(bin, l,
                        std::span<Symbol>(view.symbols).subspan(l * n, n));
  }
  return view;
}

// Joint mass of (X_i = x, observation): mass[i * |X| + x].
class ObservationMass {
 public:
  ObservationMass(const Codebook& codebook, const AdversaryOptions& options,
                  std::span<const double> uncoded)
      : codebook_(codebook),
        options_(options),
        uncoded_(uncoded),
        mass_(codebook.n() * codebook.source().size()) {}

  // P[observation | uncoded input] for this observation kind.
  double UncodedLikelihood() const {
    const double messages = static_cast<double>(codebook_.message_count());
    return options_.observe == Observation::kFullMessage
               ? 1.0 / messages
               : static_cast<double>(codebook_.k()) / messages;
  }

  std::span<const double> Fill(const BinView& bin, std::uint64_t cipher) {
    const std::size_t n = codebook_.n();
    const std::size_t alphabet = codebook_.source().size();
    if (uncoded_.empty()) {
      std::fill(mass_.begin(), mass_.end(), 0.0);
    } else {
      const double scale = UncodedLikelihood();
      for (std::size_t c = 0; c < mass_.size(); ++c) {
        mass_[c] = uncoded_[c] * scale;
      }
    }
    auto add = [&](std::uint64_t offset, double weight) {
      const Symbol* seq = bin.symbols.data() + offset * n;
      for (std::size_t i = 0; i < n; ++i) mass_[i * alphabet + seq[i]] += weight;
    };
    if (options_.observe == Observation::kBinOnly) {
      for (std::uint64_t l = 0; l < bin.size; ++l) add(l, bin.prob);
    } else {
      const std::uint64_t k = codebook_.k();
      const double per_key = bin.prob / static_cast<double>(k);
      for (std::uint64_t key = 0; key < k; ++key) {
        const std::uint64_t l =
            DecryptOffset(cipher, SecretKey{key}, k, options_.pad);
        if (l < bin.size) add(l, per_key);
      }
    }
    return mass_;
  }

 private:
  const Codebook& codebook_;
  const AdversaryOptions& options_;
  std::span<const double> uncoded_;
  std::vector<double> mass_;
};

// sum_i min_z sum_x mass[i][x] d(x, z); the argmins go to z when non-null.
double MinimizePositions(std::span<const double> mass, std::size_t n,
                         const DistortionMeasure& distortion,
                         SymbolSequence* z) {
  const std::size_t alphabet = distortion.source_size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    Symbol best_z = 0;
    for (Symbol cand = 0; cand < distortion.reproduction_size(); ++cand) {
      double cost = 0.0;
      for (Symbol x = 0; x < alphabet; ++x) {
        cost += mass[i * alphabet + x] * distortion(x, cand);
      }
      if (cost < best) {
        best = cost;
        best_z = cand;
      }
    }
    total += best;
    if (z != nullptr) (*z)[i] = best_z;
  }
  return total;
}

absl::StatusOr<std::vector<double>> UncodedMassFor(
    const Codebook& codebook, const AdversaryOptions& options) {
  if (options.model == EveModel::kTypicalOnly) return std::vector<double>{};
  return UncodedPositionMass(codebook);
}

DistortionReport BaseReport(const Codebook& codebook,
                            const DistortionMeasure& distortion,
                            const AdversaryOptions& options) {
  DistortionReport report;
  report.n = codebook.n();
  report.k = codebook.k();
  report.epsilon = codebook.epsilon();
  report.seed = codebook.seed();
  report.observe = options.observe;
  report.dmax = Dmax(codebook.source(), distortion)->value;
  report.p_err = std::max(0.0, 1.0 - codebook.coded_mass());
  report.rate = RateAndCounts(codebook).rate;
  if (options.model == EveModel::kTypicalOnly) {
    report.mass_deficit = report.p_err;
  }
  return report;
}

void Finish(DistortionReport& report, double distortion) {
  report.distortion = distortion;
  report.gap = report.dmax - distortion;
}

absl::StatusOr<PosteriorTable> Normalize(std::vector<SymbolSequence> support,
                                         std::vector<double> log_weights) {
  if (support.empty()) {
    return absl::FailedPreconditionError(
        "observation has zero probability under the model");
  }
  const double top = *std::max_element(log_weights.begin(), log_weights.end());
  double total = 0.0;
  for (double& w : log_weights) {
    w = std::exp(w - top);
    total += w;
  }
  for (double& w : log_weights) w /= total;
  return PosteriorTable{std::move(support), std::move(log_weights)};
}

}  // namespace

const char* ObservationName(Observation observe) {
  return observe == Observation::kFullMessage ? "full_message" : "bin_only";
}

absl::StatusOr<Observation> ParseObservation(std::string_view name) {
  if (name == "full_message") return Observation::kFullMessage;
  if (name == "bin_only") return Observation::kBinOnly;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown observe mode '", std::string(name),
                   "'; expected full_message or bin_only"));
}

absl::StatusOr<PosteriorTable> PosteriorGivenMessage(
    const Codebook& codebook, Message message,
    const AdversaryOptions& options) {
  if (message.bin >= codebook.num_bins() || message.cipher >= codebook.k()) {
    return absl::OutOfRangeError(
        absl::StrCat("message (", FormatMessage(message),
                     ") outside the message space"));
  }
  const BinView bin = LoadBin(codebook, message.bin);
  const double log_p = codebook.BinBlock(message.bin).log_sequence_probability;
  const std::uint64_t k = codebook.k();
  std::vector<std::uint64_t> keys_to_offset(bin.size, 0);
  for (std::uint64_t key = 0; key < k; ++key) {
    const std::uint64_t l =
        DecryptOffset(message.cipher, SecretKey{key}, k, options.pad);
    if (l < bin.size) ++keys_to_offset[l];
  }
  std::vector<SymbolSequence> support;
  std::vector<double> log_w;
  const std::size_t n = codebook.n();
  if (log_p > -std::numeric_limits<double>::infinity()) {
    for (std::uint64_t l = 0; l < bin.size; ++l) {
      if (keys_to_offset[l] == 0) continue;
      support.emplace_back(bin.symbols.begin() + l * n,
                           bin.symbols.begin() + (l + 1) * n);
      log_w.push_back(log_p + std::log(static_cast<double>(keys_to_offset[l]) /
                                       static_cast<double>(k)));
    }
  }
  if (options.model == EveModel::kFull) {
    const double log_m = std::log(static_cast<double>(codebook.message_count()));
    CIPHERLAB_RETURN_IF_ERROR(ForEachUncoded(
        codebook, options.max_support,
        [&](std::span<const Symbol> x, double lp) {
          support.emplace_back(x.begin(), x.end());
          log_w.push_back(lp - log_m);
        }));
  }
  return Normalize(std::move(support), std::move(log_w));
}

absl::StatusOr<PosteriorTable> PosteriorGivenBin(
    const Codebook& codebook, std::uint64_t bin_index,
    const AdversaryOptions& options) {
  if (bin_index >= codebook.num_bins()) {
    return absl::OutOfRangeError(absl::StrCat("bin ", bin_index, " out of range"));
  }
  std::vector<SymbolSequence> support;
  std::vector<double> log_w;
  const double log_p = codebook.BinBlock(bin_index).log_sequence_probability;
  if (log_p > -std::numeric_limits<double>::infinity()) {
    CIPHERLAB_ASSIGN_OR_RETURN(support, codebook.BinContents(bin_index));
    log_w.assign(support.size(), log_p);
  }
  if (options.model == EveModel::kFull) {
    const double log_share =
        std::log(static_cast<double>(codebook.k()) /
                 static_cast<double>(codebook.message_count()));
    CIPHERLAB_RETURN_IF_ERROR(ForEachUncoded(
        codebook, options.max_support,
        [&](std::span<const Symbol> x, double lp) {
          support.emplace_back(x.begin(), x.end());
          log_w.push_back(lp + log_share);
        }));
  }
  return Normalize(std::move(support), std::move(log_w));
}

absl::StatusOr<SymbolSequence> OptimalReproduction(
    const PosteriorTable& posterior, const DistortionMeasure& distortion) {
  if (posterior.support.empty()) {
    return absl::InvalidArgumentError("posterior has empty support");
  }
  const std::size_t n = posterior.support.front().size();
  const std::size_t alphabet = distortion.source_size();
  std::vector<double> mass(n * alphabet, 0.0);
  for (std::size_t m = 0; m < posterior.support.size(); ++m) {
    const SymbolSequence& x = posterior.support[m];
    if (x.size() != n) {
      return absl::InvalidArgumentError("posterior support lengths differ");
    }
    CIPHERLAB_RETURN_IF_ERROR(ValidateSequence(x, alphabet));
    for (std::size_t i = 0; i < n; ++i) {
      mass[i * alphabet + x[i]] += posterior.weights[m];
    }
  }
  SymbolSequence z(n);
  MinimizePositions(mass, n, distortion, &z);
  return z;
}

absl::StatusOr<double> ConditionalExpectedDistortion(
    const PosteriorTable& posterior, std::span<const Symbol> z,
    const DistortionMeasure& distortion) {
  double total = 0.0;
  for (std::size_t m = 0; m < posterior.support.size(); ++m) {
    CIPHERLAB_ASSIGN_OR_RETURN(
        double d, SequenceDistortion(posterior.support[m], z, distortion));
    total += posterior.weights[m] * d;
  }
  return total;
}

std::string DistortionReport::CsvHeader() {
  return "n,k,epsilon,seed,observe_mode,engine,distortion,stderr,dmax,gap,"
         "p_err,rate";
}

std::string DistortionReport::ToCsvRow() const {
  return absl::StrFormat(
      "%d,%d,%s,%s,%s,%s,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g", n, k,
      epsilon ? absl::StrFormat("%.17g", *epsilon) : "",
      seed ? absl::StrCat(*seed) : "", ObservationName(observe), engine,
      distortion, std_error, dmax, gap, p_err, rate);
}

absl::StatusOr<AdversaryStrategy> AdversaryStrategy::Create(
    const Codebook& codebook, const DistortionMeasure& distortion,
    const AdversaryOptions& options) {
  CIPHERLAB_RETURN_IF_ERROR(CheckDimensions(codebook, distortion));
  CIPHERLAB_ASSIGN_OR_RETURN(std::vector<double> uncoded,
                             UncodedMassFor(codebook, options));
  return AdversaryStrategy(codebook, distortion, options, std::move(uncoded));
}

const SymbolSequence& AdversaryStrategy::Respond(Message message) {
  const bool full = options_.observe == Observation::kFullMessage;
  const std::uint64_t key =
      full ? message.bin * codebook_->k() + message.cipher : message.bin;
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  ObservationMass mass(*codebook_, options_, uncoded_mass_);
  const BinView bin = LoadBin(*codebook_, message.bin);
  SymbolSequence z(codebook_->n());
  MinimizePositions(mass.Fill(bin, message.cipher), codebook_->n(),
                    distortion_, &z);
  return cache_.emplace(key, std::move(z)).first->second;
}

absl::StatusOr<DistortionReport> ExactAdversaryDistortion(
    const Codebook& codebook, const DistortionMeasure& distortion,
    const AdversaryOptions& options) {
  CIPHERLAB_RETURN_IF_ERROR(CheckDimensions(codebook, distortion));
  if (codebook.n() > options.max_exact_n) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "exact engine limited to n <= ", options.max_exact_n, "; got n=",
        codebook.n()));
  }
  const bool full = options.observe == Observation::kFullMessage;
  const std::uint64_t observations =
      full ? codebook.message_count() : codebook.num_bins();
  if (observations > options.max_messages) {
    return absl::ResourceExhaustedError(absl::StrCat(
        observations, " observations exceed the exact-engine cap of ",
        options.max_messages));
  }
  CIPHERLAB_ASSIGN_OR_RETURN(std::vector<double> uncoded,
                             UncodedMassFor(codebook, options));
  ObservationMass mass(codebook, options, uncoded);
  double total = 0.0;
  for (std::uint64_t j = 0; j < codebook.num_bins(); ++j) {
    const BinView bin = LoadBin(codebook, j);
    const std::uint64_t ciphers = full ? codebook.k() : 1;
    for (std::uint64_t c = 0; c < ciphers; ++c) {
      total += MinimizePositions(mass.Fill(bin, c), codebook.n(), distortion,
                                 nullptr);
    }
  }
  double value = total / static_cast<double>(codebook.n());
  if (options.model == EveModel::kTypicalOnly) value /= codebook.coded_mass();

  DistortionReport report = BaseReport(codebook, distortion, options);
  report.engine = "exact";
  Finish(report, value);
  return report;
}

absl::StatusOr<DistortionReport> MonteCarloAdversaryDistortion(
    const Codebook& codebook, const DistortionMeasure& distortion,
    std::uint64_t trials, std::uint64_t seed,
    const AdversaryOptions& options) {
  if (trials == 0) {
    return absl::InvalidArgumentError("Monte Carlo needs at least one trial");
  }
  CIPHERLAB_ASSIGN_OR_RETURN(
      AdversaryStrategy strategy,
      AdversaryStrategy::Create(codebook, distortion, options));
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t chunk = 0; chunk < kMonteCarloChunks; ++chunk) {
    const std::uint64_t begin = trials * chunk / kMonteCarloChunks;
    const std::uint64_t end = trials * (chunk + 1) / kMonteCarloChunks;
    SeededStream stream = SeededStream::Derive(seed, {chunk});
    for (std::uint64_t t = begin; t < end; ++t) {
      SymbolSequence x = SampleSource(codebook.source(), codebook.n(), stream);
      if (options.model == EveModel::kTypicalOnly) {
        std::uint64_t draws = 1;
        while (!codebook.Locate(x).has_value()) {
          if (++draws > kMaxRejectionDraws) {
            return absl::FailedPreconditionError(
                "coded set too unlikely for rejection sampling");
          }
          x = SampleSource(codebook.source(), codebook.n(), stream);
        }
      }
      const SecretKey key = DrawKey(codebook, stream);
      CIPHERLAB_ASSIGN_OR_RETURN(
          Message message, Encode(codebook, x, key, stream, options.pad));
      CIPHERLAB_ASSIGN_OR_RETURN(
          double d,
          SequenceDistortion(x, strategy.Respond(message), distortion));
      sum += d;
      sum_sq += d * d;
    }
  }
  const double count = static_cast<double>(trials);
  const double mean = sum / count;
  const double var =
      trials > 1 ? std::max(0.0, (sum_sq - count * mean * mean) / (count - 1))
                 : 0.0;

  DistortionReport report = BaseReport(codebook, distortion, options);
  report.engine = "monte_carlo";
  report.std_error = std::sqrt(var / count);
  Finish(report, mean);
  return report;
}

absl::StatusOr<DistortionReport> ExpectedAdversaryDistortion(
    const Codebook& codebook, const DistortionMeasure& distortion,
    const DistortionQuery& query) {
  if (query.mode == EstimateMode::kExact) {
    return ExactAdversaryDistortion(codebook, distortion, query.options);
  }
  return MonteCarloAdversaryDistortion(codebook, distortion, query.trials,
                                       query.seed, query.options);
}

absl::StatusOr<DistortionReport> BruteForceOracle(
    const Codebook& codebook, const DistortionMeasure& distortion,
    const AdversaryOptions& options) {
  CIPHERLAB_RETURN_IF_ERROR(CheckDimensions(codebook, distortion));
  const std::size_t n = codebook.n();
  const std::size_t alphabet = codebook.source().size();
  const std::size_t repro = distortion.reproduction_size();
  const bool full = options.observe == Observation::kFullMessage;
  const std::uint64_t observations =
      full ? codebook.message_count() : codebook.num_bins();
  const double space = std::pow(static_cast<double>(alphabet), n);
  const double repro_space = std::pow(static_cast<double>(repro), n);
  const double work = static_cast<double>(observations) * space * repro_space *
                      static_cast<double>(n);
  if (work > static_cast<double>(options.max_oracle_work)) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "brute-force oracle needs %.3g steps, above the cap of %d", work,
        options.max_oracle_work));
  }
  const std::uint64_t num_x = static_cast<std::uint64_t>(space);
  const std::uint64_t num_z = static_cast<std::uint64_t>(repro_space);

  // All of X^n, first position most significant.
  std::vector<Symbol> xs(num_x * n);
  for (std::uint64_t idx = 0; idx < num_x; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t i = n; i-- > 0;) {
      xs[idx * n + i] = static_cast<Symbol>(rest % alphabet);
      rest /= alphabet;
    }
  }

  std::vector<double> joint(observations * num_x, 0.0);
  const double k = static_cast<double>(codebook.k());
  const double uncoded_share =
      full ? 1.0 / static_cast<double>(codebook.message_count())
           : k / static_cast<double>(codebook.message_count());
  SeededStream unused(0);
  for (std::uint64_t idx = 0; idx < num_x; ++idx) {
    std::span<const Symbol> x(xs.data() + idx * n, n);
    const double p = std::exp(SequenceLogProbability(codebook.source(), x));
    if (p == 0.0) continue;
    if (codebook.Locate(x).has_value()) {
      for (std::uint64_t key = 0; key < codebook.k(); ++key) {
        CIPHERLAB_ASSIGN_OR_RETURN(
            Message m, Encode(codebook, x, SecretKey{key}, unused, options.pad));
        const std::uint64_t obs = full ? m.bin * codebook.k() + m.cipher : m.bin;
        joint[obs * num_x + idx] += p / k;
      }
    } else if (options.model == EveModel::kFull) {
      for (std::uint64_t obs = 0; obs < observations; ++obs) {
        joint[obs * num_x + idx] += p * uncoded_share;
      }
    }
  }

  std::vector<Symbol> z(n, 0);
  std::vector<std::uint64_t> live;
  double total = 0.0;
  for (std::uint64_t obs = 0; obs < observations; ++obs) {
    live.clear();
    for (std::uint64_t idx = 0; idx < num_x; ++idx) {
      if (joint[obs * num_x + idx] > 0.0) live.push_back(idx);
    }
    if (live.empty()) continue;
    double best = std::numeric_limits<double>::infinity();
    std::fill(z.begin(), z.end(), 0);
    for (std::uint64_t zi = 0; zi < num_z; ++zi) {
      double cost = 0.0;
      for (std::uint64_t idx : live) {
        double d = 0.0;
        for (std::size_t i = 0; i < n; ++i) d += distortion(xs[idx * n + i], z[i]);
        cost += joint[obs * num_x + idx] * d / static_cast<double>(n);
      }
      best = std::min(best, cost);
      for (std::size_t i = n; i-- > 0;) {
        if (++z[i] < repro) break;
        z[i] = 0;
      }
    }
    total += best;
  }
  if (options.model == EveModel::kTypicalOnly) total /= codebook.coded_mass();

  DistortionReport report = BaseReport(codebook, distortion, options);
  report.engine = "brute_force";
  Finish(report, total);
  return report;
}

absl::StatusOr<bool> SuffstatEquivalenceCheck(
    const Codebook& codebook, const DistortionMeasure& distortion,
    const AdversaryOptions& options) {
  AdversaryOptions full = options;
  full.observe = Observation::kFullMessage;
  AdversaryOptions bin_only = options;
  bin_only.observe = Observation::kBinOnly;
  CIPHERLAB_ASSIGN_OR_RETURN(DistortionReport a,
                             ExactAdversaryDistortion(codebook, distortion, full));
  CIPHERLAB_ASSIGN_OR_RETURN(
      DistortionReport b,
      ExactAdversaryDistortion(codebook, distortion, bin_only));
  return std::abs(a.distortion - b.distortion) <= kEquivalenceTolerance;
}

}  // namespace cipherlab
