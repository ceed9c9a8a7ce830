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
#include "cipherlab/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "cipherlab/codebook.h"
#include "cipherlab/random_stream.h"
#include "cipherlab/status_macros.h"
#include "json.hpp"

namespace cipherlab {
namespace {

using Json = nlohmann::ordered_json;

absl::Status ConfigError(std::string_view what) {
  return absl::InvalidArgumentError(
      absl::StrCat("config: ", std::string(what)));
}

template <typename T>
absl::StatusOr<T> Get(const Json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    return ConfigError(absl::StrCat("field '", key, "': ", e.what()));
  }
}

const char* EngineName(EngineSelection s) {
  switch (s) {
    case EngineSelection::kAuto:
      return "auto";
    case EngineSelection::kExact:
      return "exact";
    case EngineSelection::kMonteCarlo:
      return "monte_carlo";
  }
  return "auto";
}

}  // namespace

KeySchedule KeySchedule::Constant(std::uint64_t c) {
  return KeySchedule(Kind::kConstant, static_cast<double>(c));
}
KeySchedule KeySchedule::Log2() { return KeySchedule(Kind::kLog2, 0.0); }
KeySchedule KeySchedule::Linear(double scale) {
  return KeySchedule(Kind::kLinear, scale);
}
KeySchedule KeySchedule::Exponential(double rate) {
  return KeySchedule(Kind::kExponential, rate);
}

absl::StatusOr<std::uint64_t> KeySchedule::KeysAt(std::size_t n) const {
  double k = 1.0;
  switch (kind_) {
    case Kind::kConstant:
      k = parameter_;
      break;
    case Kind::kLog2:
      k = std::max(1.0, std::ceil(std::log2(static_cast<double>(n))));
      break;
    case Kind::kLinear:
      k = std::max(1.0, std::ceil(parameter_ * static_cast<double>(n)));
      break;
    case Kind::kExponential:
      k = std::ceil(std::exp2(static_cast<double>(n) * parameter_));
      break;
  }
  if (!(k >= 1.0) || k > 0x1p62) {
    return absl::InvalidArgumentError(absl::StrCat(
        "schedule ", Label(), " gives k=", k, " at n=", n));
  }
  return static_cast<std::uint64_t>(k);
}

std::string KeySchedule::Label() const {
  switch (kind_) {
    case Kind::kConstant:
      return absl::StrCat("constant:", static_cast<std::uint64_t>(parameter_));
    case Kind::kLog2:
      return "log2";
    case Kind::kLinear:
      return parameter_ == 1.0 ? "linear" : absl::StrCat("linear:", parameter_);
    case Kind::kExponential:
      return absl::StrCat("exponential:", parameter_);
  }
  return "";
}

absl::StatusOr<KeySchedule> KeySchedule::FromLabel(std::string_view label) {
  const std::string text(label);
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const bool has_arg = colon != std::string::npos;
  const std::string arg = has_arg ? text.substr(colon + 1) : "";
  double value = 0.0;
  if (has_arg && !absl::SimpleAtod(arg, &value)) {
    return ConfigError(absl::StrCat("bad schedule parameter in '", text, "'"));
  }
  if (name == "constant") {
    if (!has_arg || value < 1.0 || value != std::floor(value)) {
      return ConfigError("constant schedule needs an integer k >= 1");
    }
    return Constant(static_cast<std::uint64_t>(value));
  }
  if (name == "log2" && !has_arg) return Log2();
  if (name == "linear") {
    if (has_arg && !(value > 0.0)) {
      return ConfigError("linear schedule scale must be positive");
    }
    return Linear(has_arg ? value : 1.0);
  }
  if (name == "exponential") {
    if (!has_arg || !(value >= 0.0)) {
      return ConfigError("exponential schedule needs a rate >= 0");
    }
    return Exponential(value);
  }
  return ConfigError(absl::StrCat("unknown key schedule '", text, "'"));
}

std::string_view KeySchedule::Regime() const {
  switch (kind_) {
    case Kind::kConstant:
      return "bounded-key";
    case Kind::kLog2:
    case Kind::kLinear:
      return "unbounded-subexponential-key";
    case Kind::kExponential:
      return parameter_ > 0.0 ? "positive-key-rate" : "bounded-key";
  }
  return "";
}

absl::StatusOr<ExperimentConfig> ExperimentConfig::FromJson(
    std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::exception& e) {
    return ConfigError(e.what());
  }
  if (!j.is_object()) return ConfigError("top level must be an object");

  ExperimentConfig cfg;
  CIPHERLAB_ASSIGN_OR_RETURN(cfg.source, Get<std::vector<double>>(j, "source"));
  if (j.contains("distortion")) {
    const Json& d = j["distortion"];
    if (d.is_string()) {
      if (d.get<std::string>() != "hamming") {
        return ConfigError("distortion must be \"hamming\" or a matrix");
      }
    } else {
      CIPHERLAB_ASSIGN_OR_RETURN(
          cfg.distortion, Get<std::vector<std::vector<double>>>(j, "distortion"));
    }
  }
  CIPHERLAB_ASSIGN_OR_RETURN(cfg.n_values,
                             Get<std::vector<std::size_t>>(j, "n"));
  if (cfg.n_values.empty()) return ConfigError("n list is empty");
  for (std::size_t n : cfg.n_values) {
    if (n == 0) return ConfigError("blocklengths must be positive");
  }

  std::vector<std::string> labels;
  if (j.contains("schedules")) {
    CIPHERLAB_ASSIGN_OR_RETURN(labels,
                               Get<std::vector<std::string>>(j, "schedules"));
  } else if (j.contains("schedule")) {
    CIPHERLAB_ASSIGN_OR_RETURN(std::string one,
                               Get<std::string>(j, "schedule"));
    labels.push_back(one);
  } else {
    return ConfigError("missing 'schedule' or 'schedules'");
  }
  if (labels.empty()) return ConfigError("schedule list is empty");
  for (const std::string& label : labels) {
    CIPHERLAB_ASSIGN_OR_RETURN(KeySchedule s, KeySchedule::FromLabel(label));
    cfg.schedules.push_back(s);
  }

  CIPHERLAB_ASSIGN_OR_RETURN(cfg.epsilon, Get<double>(j, "epsilon"));
  if (!(cfg.epsilon > 0.0)) return ConfigError("epsilon must be positive");
  CIPHERLAB_ASSIGN_OR_RETURN(cfg.seeds,
                             Get<std::vector<std::uint64_t>>(j, "seeds"));
  if (cfg.seeds.empty()) return ConfigError("seeds list is empty");

  if (j.contains("engine")) {
    const Json& e = j["engine"];
    if (!e.is_object()) return ConfigError("engine must be an object");
    if (e.contains("mode")) {
      CIPHERLAB_ASSIGN_OR_RETURN(std::string mode, Get<std::string>(e, "mode"));
      if (mode == "auto") {
        cfg.engine.selection = EngineSelection::kAuto;
      } else if (mode == "exact") {
        cfg.engine.selection = EngineSelection::kExact;
      } else if (mode == "monte_carlo") {
        cfg.engine.selection = EngineSelection::kMonteCarlo;
      } else {
        return ConfigError(absl::StrCat("unknown engine mode '", mode, "'"));
      }
    }
    if (e.contains("observe")) {
      CIPHERLAB_ASSIGN_OR_RETURN(std::string o, Get<std::string>(e, "observe"));
      CIPHERLAB_ASSIGN_OR_RETURN(cfg.engine.observe, ParseObservation(o));
    }
    if (e.contains("eve_model")) {
      CIPHERLAB_ASSIGN_OR_RETURN(std::string m, Get<std::string>(e, "eve_model"));
      if (m == "full") {
        cfg.engine.model = EveModel::kFull;
      } else if (m == "typical_only") {
        cfg.engine.model = EveModel::kTypicalOnly;
      } else {
        return ConfigError(absl::StrCat("unknown eve_model '", m, "'"));
      }
    }
    if (e.contains("mc_trials")) {
      CIPHERLAB_ASSIGN_OR_RETURN(cfg.engine.mc_trials,
                                 Get<std::uint64_t>(e, "mc_trials"));
      if (cfg.engine.mc_trials == 0) return ConfigError("mc_trials must be >= 1");
    }
    if (e.contains("max_exact_n")) {
      CIPHERLAB_ASSIGN_OR_RETURN(cfg.engine.max_exact_n,
                                 Get<std::size_t>(e, "max_exact_n"));
    }
    if (e.contains("max_class_size")) {
      CIPHERLAB_ASSIGN_OR_RETURN(cfg.engine.max_class_size,
                                 Get<std::uint64_t>(e, "max_class_size"));
    }
    if (e.contains("max_messages")) {
      CIPHERLAB_ASSIGN_OR_RETURN(cfg.engine.max_messages,
                                 Get<std::uint64_t>(e, "max_messages"));
    }
  }
  if (j.contains("k_grid")) {
    CIPHERLAB_ASSIGN_OR_RETURN(cfg.k_grid,
                               Get<std::vector<std::uint64_t>>(j, "k_grid"));
  }
  if (j.contains("output")) {
    const Json& o = j["output"];
    if (o.contains("csv")) {
      CIPHERLAB_ASSIGN_OR_RETURN(cfg.csv_path, Get<std::string>(o, "csv"));
    }
    if (o.contains("svg")) {
      CIPHERLAB_ASSIGN_OR_RETURN(cfg.svg_path, Get<std::string>(o, "svg"));
    }
  }

  // Fail early on a bad source or distortion rather than once per cell.
  CIPHERLAB_ASSIGN_OR_RETURN(SourceDistribution source, cfg.MakeSource());
  CIPHERLAB_ASSIGN_OR_RETURN(DistortionMeasure d, cfg.MakeDistortion());
  if (d.source_size() != source.size()) {
    return ConfigError("distortion rows do not match the source alphabet");
  }
  return cfg;
}

absl::StatusOr<ExperimentConfig> ExperimentConfig::Load(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return FromJson(buffer.str());
}

std::string ExperimentConfig::ToJson() const {
  Json j;
  j["source"] = source;
  if (distortion.empty()) {
    j["distortion"] = "hamming";
  } else {
    j["distortion"] = distortion;
  }
  j["n"] = n_values;
  std::vector<std::string> labels;
  for (const KeySchedule& s : schedules) labels.push_back(s.Label());
  j["schedules"] = labels;
  j["epsilon"] = epsilon;
  j["seeds"] = seeds;
  j["engine"] = {
      {"mode", EngineName(engine.selection)},
      {"mc_trials", engine.mc_trials},
      {"observe", ObservationName(engine.observe)},
      {"eve_model",
       engine.model == EveModel::kFull ? "full" : "typical_only"},
      {"max_exact_n", engine.max_exact_n},
      {"max_class_size", engine.max_class_size},
      {"max_messages", engine.max_messages},
  };
  if (!k_grid.empty()) j["k_grid"] = k_grid;
  return j.dump();
}

absl::StatusOr<SourceDistribution> ExperimentConfig::MakeSource() const {
  return SourceDistribution::Create(source);
}

absl::StatusOr<DistortionMeasure> ExperimentConfig::MakeDistortion() const {
  if (distortion.empty()) return DistortionMeasure::Hamming(source.size());
  return DistortionMeasure::Create(distortion);
}

std::uint64_t CodebookSeedFor(std::uint64_t seed, std::size_t n,
                              std::uint64_t k) {
  return SeededStream::Derive(seed, {n, k, 0}).NextU64();
}

std::uint64_t MonteCarloSeedFor(std::uint64_t seed, std::size_t n,
                                std::uint64_t k) {
  return SeededStream::Derive(seed, {n, k, 1}).NextU64();
}

absl::StatusOr<DistortionReport> EvaluateCell(const ExperimentConfig& config,
                                              std::size_t n, std::uint64_t k,
                                              std::uint64_t seed) {
  CIPHERLAB_ASSIGN_OR_RETURN(SourceDistribution source, config.MakeSource());
  CIPHERLAB_ASSIGN_OR_RETURN(DistortionMeasure distortion,
                             config.MakeDistortion());
  CodebookOptions cb_options;
  cb_options.max_class_size = config.engine.max_class_size;
  CIPHERLAB_ASSIGN_OR_RETURN(
      Codebook codebook,
      Codebook::Build(source, n, config.epsilon, k,
                      CodebookSeedFor(seed, n, k), cb_options));

  DistortionQuery query;
  query.options.observe = config.engine.observe;
  query.options.model = config.engine.model;
  query.options.max_exact_n = config.engine.max_exact_n;
  query.options.max_messages = config.engine.max_messages;
  query.trials = config.engine.mc_trials;
  query.seed = MonteCarloSeedFor(seed, n, k);

  const std::uint64_t observations =
      config.engine.observe == Observation::kFullMessage
          ? codebook.message_count()
          : codebook.num_bins();
  const bool exact_fits = n <= config.engine.max_exact_n &&
                          observations <= config.engine.max_messages;
  switch (config.engine.selection) {
    case EngineSelection::kAuto:
      query.mode = exact_fits ? EstimateMode::kExact : EstimateMode::kMonteCarlo;
      break;
    case EngineSelection::kExact:
      query.mode = EstimateMode::kExact;
      break;
    case EngineSelection::kMonteCarlo:
      query.mode = EstimateMode::kMonteCarlo;
      break;
  }
  CIPHERLAB_ASSIGN_OR_RETURN(
      DistortionReport report,
      ExpectedAdversaryDistortion(codebook, distortion, query));
  report.seed = seed;
  return report;
}

bool SweepResult::all_ok() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const SweepRow& r) { return r.status.ok(); });
}

std::string SweepResult::ToCsv() const {
  std::string out = absl::StrCat(DistortionReport::CsvHeader(), ",schedule\n");
  for (const SweepRow& row : rows) {
    if (row.status.ok()) {
      absl::StrAppend(&out, row.report.ToCsvRow(), ",", row.schedule.Label(),
                      "\n");
    } else {
      // Failed cells keep their coordinates so the row count stays fixed.
      absl::StrAppend(&out, row.n, ",", row.k, ",",
                      absl::StrFormat("%.17g", row.report.epsilon.value_or(0)),
                      ",", row.seed, ",", ObservationName(row.report.observe),
                      ",error,nan,nan,nan,nan,nan,nan,", row.schedule.Label(),
                      "\n");
    }
  }
  return out;
}

std::string SweepResult::SummaryCsv() const {
  std::string out =
      "schedule,regime,n,k,seeds,mean_distortion,min_distortion,dmax,gap\n";
  for (const CellSummary& s : summary) {
    auto schedule = KeySchedule::FromLabel(s.schedule);
    absl::StrAppend(
        &out,
        absl::StrFormat("%s,%s,%d,%d,%d,%.17g,%.17g,%.17g,%.17g\n", s.schedule,
                        schedule.ok() ? std::string(schedule->Regime()) : "",
                        s.n, s.k, s.seeds, s.mean_distortion, s.min_distortion,
                        s.dmax, s.dmax - s.mean_distortion));
  }
  return out;
}

std::string SweepResult::ManifestJsonl(const ExperimentConfig& config) const {
  std::string out;
  for (const SweepRow& row : rows) {
    ExperimentConfig cell = config;
    cell.n_values = {row.n};
    cell.schedules = {row.schedule};
    cell.seeds = {row.seed};
    cell.k_grid.clear();
    absl::StrAppend(&out, cell.ToJson(), "\n");
  }
  return out;
}

std::size_t WorkerCountFromEnvironment() {
  if (const char* env = std::getenv("CIPHERLAB_WORKERS")) {
    std::size_t value = 0;
    if (absl::SimpleAtoi(env, &value) && value > 0) return value;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

absl::StatusOr<SweepResult> RunSweep(const ExperimentConfig& config,
                                     std::size_t workers) {
  CIPHERLAB_ASSIGN_OR_RETURN(SourceDistribution source, config.MakeSource());
  CIPHERLAB_ASSIGN_OR_RETURN(DistortionMeasure distortion,
                             config.MakeDistortion());
  CIPHERLAB_ASSIGN_OR_RETURN(ConstantReproduction dmax,
                             Dmax(source, distortion));

  SweepResult result;
  for (const KeySchedule& schedule : config.schedules) {
    for (std::size_t n : config.n_values) {
      CIPHERLAB_ASSIGN_OR_RETURN(std::uint64_t k, schedule.KeysAt(n));
      for (std::uint64_t seed : config.seeds) {
        SweepRow row;
        row.schedule = schedule;
        row.n = n;
        row.k = k;
        row.seed = seed;
        row.report.epsilon = config.epsilon;
        row.report.observe = config.engine.observe;
        result.rows.push_back(std::move(row));
      }
    }
  }

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < result.rows.size(); i = next++) {
      SweepRow& row = result.rows[i];
      auto report = EvaluateCell(config, row.n, row.k, row.seed);
      if (report.ok()) {
        row.report = *std::move(report);
      } else {
        row.status = report.status();
      }
    }
  };
  workers = std::clamp<std::size_t>(workers, 1, result.rows.size());
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();

  const std::size_t per_cell = config.seeds.size();
  for (std::size_t start = 0; start < result.rows.size(); start += per_cell) {
    const SweepRow& first = result.rows[start];
    CellSummary s;
    s.schedule = first.schedule.Label();
    s.n = first.n;
    s.k = first.k;
    s.dmax = dmax.value;
    s.min_distortion = std::numeric_limits<double>::infinity();
    double total = 0.0;
    for (std::size_t i = start; i < start + per_cell; ++i) {
      const SweepRow& row = result.rows[i];
      if (!row.status.ok()) continue;
      ++s.seeds;
      total += row.report.distortion;
      s.min_distortion = std::min(s.min_distortion, row.report.distortion);
    }
    if (s.seeds == 0) continue;
    s.mean_distortion = total / static_cast<double>(s.seeds);
    result.summary.push_back(s);
  }
  return result;
}

std::vector<std::uint64_t> DefaultKeyGrid() {
  return {1, 2, 4, 8, 16, 32, 64, 128, 256};
}

absl::StatusOr<MinKeyResult> FindMinKey(const ExperimentConfig& config,
                                        std::size_t n, double target,
                                        const std::vector<std::uint64_t>& grid) {
  CIPHERLAB_ASSIGN_OR_RETURN(SourceDistribution source, config.MakeSource());
  CIPHERLAB_ASSIGN_OR_RETURN(DistortionMeasure distortion,
                             config.MakeDistortion());
  CIPHERLAB_ASSIGN_OR_RETURN(ConstantReproduction dmax,
                             Dmax(source, distortion));
  if (!(target < dmax.value)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "target distortion %g is not below D_max = %g; no code can hold the "
        "optimal adversary above D_max, since the constant reproduction "
        "achieves it",
        target, dmax.value));
  }
  if (grid.empty()) return absl::InvalidArgumentError("key grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] == 0 || (i > 0 && grid[i] <= grid[i - 1])) {
      return absl::InvalidArgumentError(
          "key grid must be strictly ascending positive integers");
    }
  }
  MinKeyResult result;
  for (std::uint64_t k : grid) {
    double total = 0.0;
    for (std::uint64_t seed : config.seeds) {
      CIPHERLAB_ASSIGN_OR_RETURN(DistortionReport report,
                                 EvaluateCell(config, n, k, seed));
      total += report.distortion;
    }
    const double mean = total / static_cast<double>(config.seeds.size());
    result.evaluated.emplace_back(k, mean);
    if (mean >= target) {
      result.k_star = k;
      break;
    }
  }
  return result;
}

}  // namespace cipherlab
