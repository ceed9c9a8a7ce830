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
#ifndef CIPHERLAB_PLOT_H_
#define CIPHERLAB_PLOT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"

namespace cipherlab {

// The fields of a sweep CSV row that plotting needs.
struct SweepCsvRow {
  std::size_t n = 0;
  std::uint64_t k = 0;
  std::uint64_t seed = 0;
  std::string engine;
  double distortion = 0.0;
  double dmax = 0.0;
  std::string schedule;
};

absl::StatusOr<std::vector<SweepCsvRow>> ParseSweepCsv(std::string_view text);

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;  // sorted by x
};

// A static line chart whose y axis spans [0, 1.05 * dmax] exactly, with a
// dashed horizontal rule at dmax. The svg root carries data-y-min and
// data-y-max attributes recording that span.
std::string RenderLineChart(std::string_view title, std::string_view x_label,
                            std::span<const Series> series, double dmax);

struct PlotOptions {
  // Keep only rows from this schedule.
  std::optional<std::string> schedule;
  // Blocklength for the distortion-vs-k chart; by default the n with the
  // most distinct k values.
  std::optional<std::size_t> n_for_k;
};

// Writes distortion vs n (seed-averaged, one line per schedule) to out_path,
// and, when some n was run with several k, distortion vs k at that n to
// "<stem>_vs_k.svg". Returns the paths written. Error rows are dropped;
// nothing left to plot is an error.
absl::StatusOr<std::vector<std::string>> EmitPlots(
    std::span<const SweepCsvRow> rows, const std::string& out_path,
    const PlotOptions& options = {});

}  // namespace cipherlab

#endif  // CIPHERLAB_PLOT_H_
