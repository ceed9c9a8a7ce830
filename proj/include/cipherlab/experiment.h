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
#ifndef CIPHERLAB_EXPERIMENT_H_
#define CIPHERLAB_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "cipherlab/adversary.h"
#include "cipherlab/core_model.h"

namespace cipherlab {

// Number of keys as a function of blocklength.
class KeySchedule {
 public:
  enum class Kind { kConstant, kLog2, kLinear, kExponential };

  // k = c.
  static KeySchedule Constant(std::uint64_t c);
  // k = max(1, ceil(log2 n)).
  static KeySchedule Log2();
  // k = max(1, ceil(scale * n)).
  static KeySchedule Linear(double scale = 1.0);
  // k = ceil(2^{n * rate}).
  static KeySchedule Exponential(double rate);

  Kind kind() const { return kind_; }
  double parameter() const { return parameter_; }

  absl::StatusOr<std::uint64_t> KeysAt(std::size_t n) const;

  // "constant:16", "log2", "linear", "linear:2", "exponential:0.25".
  std::string Label() const;
  static absl::StatusOr<KeySchedule> FromLabel(std::string_view label);

  // Which regime the schedule exercises: a bounded key space, or one that
  // grows without bound (sub-exponentially or at a positive key rate).
  std::string_view Regime() const;

  friend bool operator==(const KeySchedule&, const KeySchedule&) = default;

 private:
  KeySchedule(Kind kind, double parameter) : kind_(kind), parameter_(parameter) {}

  Kind kind_;
  double parameter_;
};

enum class EngineSelection { kAuto, kExact, kMonteCarlo };

struct EngineConfig {
  EngineSelection selection = EngineSelection::kAuto;
  std::uint64_t mc_trials = 20000;
  Observation observe = Observation::kFullMessage;
  EveModel model = EveModel::kFull;
  std::size_t max_exact_n = 24;
  std::uint64_t max_class_size = std::uint64_t{1} << 24;
  std::uint64_t max_messages = std::uint64_t{1} << 22;
};

// A sweep description. Parsed from a JSON document such as
//
//   {
//     "source": [0.5, 0.5],
//     "distortion": "hamming",              // or a |X| x |Z| matrix
//     "n": [4, 8, 12],
//     "schedules": ["linear", "constant:16"], // or "schedule": "linear"
//     "epsilon": 0.2,
//     "seeds": [1, 2, 3],
//     "engine": {"mode": "auto", "mc_trials": 20000,
//                "observe": "full_message", "eve_model": "full",
//                "max_exact_n": 24, "max_class_size": 16777216,
//                "max_messages": 4194304},
//     "k_grid": [1, 2, 4, 8],
//     "output": {"csv": "out.csv", "svg": "out.svg"}
//   }
struct ExperimentConfig {
  std::vector<double> source;
  // Empty means Hamming on the source alphabet.
  std::vector<std::vector<double>> distortion;
  std::vector<std::size_t> n_values;
  std::vector<KeySchedule> schedules;
  double epsilon = 0.1;
  std::vector<std::uint64_t> seeds;
  EngineConfig engine;
  std::vector<std::uint64_t> k_grid;
  std::string csv_path;
  std::string svg_path;

  static absl::StatusOr<ExperimentConfig> FromJson(std::string_view text);
  static absl::StatusOr<ExperimentConfig> Load(const std::string& path);
  // Canonical JSON; FromJson(ToJson()) reproduces the config.
  std::string ToJson() const;

  absl::StatusOr<SourceDistribution> MakeSource() const;
  absl::StatusOr<DistortionMeasure> MakeDistortion() const;
};

// Seeds for the pieces of one cell, derived from the master seed and the
// cell coordinates only.
std::uint64_t CodebookSeedFor(std::uint64_t seed, std::size_t n,
                              std::uint64_t k);
std::uint64_t MonteCarloSeedFor(std::uint64_t seed, std::size_t n,
                                std::uint64_t k);

// Builds the codebook for (n, k, seed) and runs the configured engine. The
// report's seed column carries the master seed.
absl::StatusOr<DistortionReport> EvaluateCell(const ExperimentConfig& config,
                                              std::size_t n, std::uint64_t k,
                                              std::uint64_t seed);

struct SweepRow {
  KeySchedule schedule = KeySchedule::Linear();
  std::size_t n = 0;
  std::uint64_t k = 0;
  std::uint64_t seed = 0;
  absl::Status status;
  DistortionReport report;
};

struct CellSummary {
  std::string schedule;
  std::size_t n = 0;
  std::uint64_t k = 0;
  std::size_t seeds = 0;
  double mean_distortion = 0.0;
  double min_distortion = 0.0;
  double dmax = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<CellSummary> summary;

  bool all_ok() const;
  // Report columns followed by a schedule label column.
  std::string ToCsv() const;
  std::string SummaryCsv() const;
  // One single-cell config per row, as JSON lines; sweeping any line alone
  // reproduces that row.
  std::string ManifestJsonl(const ExperimentConfig& config) const;
};

// Worker count from CIPHERLAB_WORKERS, defaulting to the hardware thread
// count.
std::size_t WorkerCountFromEnvironment();

// Cells run on a pool of workers; rows come back in (schedule, n, seed) order
// regardless of scheduling. Cell failures are recorded per row.
absl::StatusOr<SweepResult> RunSweep(const ExperimentConfig& config,
                                     std::size_t workers = 1);

struct MinKeyResult {
  std::optional<std::uint64_t> k_star;
  // (k, seed-averaged distortion) for every grid point evaluated.
  std::vector<std::pair<std::uint64_t, double>> evaluated;
};

// Smallest k in the ascending grid whose seed-averaged distortion reaches
// target. target must be below D_max.
absl::StatusOr<MinKeyResult> FindMinKey(const ExperimentConfig& config,
                                        std::size_t n, double target,
                                        const std::vector<std::uint64_t>& grid);

std::vector<std::uint64_t> DefaultKeyGrid();

}  // namespace cipherlab

#endif  // CIPHERLAB_EXPERIMENT_H_
