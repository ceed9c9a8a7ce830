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
// Command-line front end: sweep, min-key, plot and check.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "cipherlab/checks.h"
#include "cipherlab/experiment.h"
#include "cipherlab/plot.h"

namespace {

constexpr int kExitFailure = 1;      // a check or cell failed
constexpr int kExitConfigError = 2;  // unusable input or arguments

using ::cipherlab::ExperimentConfig;

std::string Stem(const std::string& path) {
  const auto dot = path.rfind('.');
  const auto slash = path.rfind('/');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) {
    return path.substr(0, dot);
  }
  return path;
}

bool WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  out.close();
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  return true;
}

int Fail(int code, const absl::Status& status) {
  std::cerr << "error: " << status.message() << "\n";
  return code;
}

int RunSweepCommand(const std::string& config_path, const std::string& out,
                    const std::string& svg, std::size_t workers) {
  absl::StatusOr<ExperimentConfig> cfg = ExperimentConfig::Load(config_path);
  if (!cfg.ok()) return Fail(kExitConfigError, cfg.status());
  const std::string csv_path = out.empty() ? cfg->csv_path : out;
  if (csv_path.empty()) {
    return Fail(kExitConfigError,
                absl::InvalidArgumentError("no --out and no output.csv"));
  }
  if (workers == 0) workers = cipherlab::WorkerCountFromEnvironment();
  absl::StatusOr<cipherlab::SweepResult> result =
      cipherlab::RunSweep(*cfg, workers);
  if (!result.ok()) return Fail(kExitConfigError, result.status());

  const std::string stem = Stem(csv_path);
  if (!WriteText(csv_path, result->ToCsv()) ||
      !WriteText(stem + "_summary.csv", result->SummaryCsv()) ||
      !WriteText(stem + "_manifest.jsonl", result->ManifestJsonl(*cfg))) {
    return kExitFailure;
  }
  std::cout << "wrote " << result->rows.size() << " rows to " << csv_path
            << "\n";
  for (const cipherlab::KeySchedule& s : cfg->schedules) {
    std::cout << "schedule " << s.Label() << ": " << s.Regime() << "\n";
  }
  for (const cipherlab::CellSummary& c : result->summary) {
    std::cout << absl::StrFormat(
        "  %-16s n=%-3d k=%-6d mean=%.6f min=%.6f D_max=%.6f\n", c.schedule,
        c.n, c.k, c.mean_distortion, c.min_distortion, c.dmax);
  }

  const std::string svg_path = svg.empty() ? cfg->svg_path : svg;
  if (!svg_path.empty()) {
    std::vector<cipherlab::SweepCsvRow> rows;
    absl::StatusOr<std::vector<cipherlab::SweepCsvRow>> parsed =
        cipherlab::ParseSweepCsv(result->ToCsv());
    if (!parsed.ok()) return Fail(kExitFailure, parsed.status());
    absl::StatusOr<std::vector<std::string>> files =
        cipherlab::EmitPlots(*parsed, svg_path);
    if (!files.ok()) return Fail(kExitFailure, files.status());
    for (const std::string& f : *files) std::cout << "wrote " << f << "\n";
  }

  int failed = 0;
  for (const cipherlab::SweepRow& row : result->rows) {
    if (row.status.ok()) continue;
    ++failed;
    std::cerr << absl::StrFormat("cell %s n=%d k=%d seed=%d: %s\n",
                                 row.schedule.Label(), row.n, row.k, row.seed,
                                 row.status.message());
  }
  return failed == 0 ? 0 : kExitConfigError;
}

int RunMinKeyCommand(const std::string& config_path, std::size_t n,
                     double target, std::vector<std::uint64_t> grid) {
  absl::StatusOr<ExperimentConfig> cfg = ExperimentConfig::Load(config_path);
  if (!cfg.ok()) return Fail(kExitConfigError, cfg.status());
  if (grid.empty()) grid = cfg->k_grid;
  if (grid.empty()) grid = cipherlab::DefaultKeyGrid();
  absl::StatusOr<cipherlab::MinKeyResult> result =
      cipherlab::FindMinKey(*cfg, n, target, grid);
  if (!result.ok()) return Fail(kExitConfigError, result.status());
  for (const auto& [k, d] : result->evaluated) {
    std::cout << absl::StrFormat("k=%d distortion=%.6f\n", k, d);
  }
  if (result->k_star) {
    std::cout << "k_star=" << *result->k_star << "\n";
  } else {
    std::cout << "k_star=none (grid exhausted)\n";
  }
  return 0;
}

int RunPlotCommand(const std::string& in, const std::string& out,
                   const std::string& schedule, std::size_t n_for_k) {
  std::ifstream file(in);
  if (!file) {
    return Fail(kExitConfigError,
                absl::NotFoundError(absl::StrCat("cannot read ", in)));
  }
  std::stringstream buffer;
  buffer << file.rdbuf();
  absl::StatusOr<std::vector<cipherlab::SweepCsvRow>> rows =
      cipherlab::ParseSweepCsv(buffer.str());
  if (!rows.ok()) return Fail(kExitConfigError, rows.status());
  cipherlab::PlotOptions options;
  if (!schedule.empty()) options.schedule = schedule;
  if (n_for_k > 0) options.n_for_k = n_for_k;
  absl::StatusOr<std::vector<std::string>> files =
      cipherlab::EmitPlots(*rows, out, options);
  if (!files.ok()) return Fail(kExitFailure, files.status());
  for (const std::string& f : *files) std::cout << "wrote " << f << "\n";
  return 0;
}

int RunCheckCommand(const std::string& suite) {
  absl::StatusOr<std::vector<cipherlab::CheckOutcome>> outcomes =
      cipherlab::RunCheckSuite(suite);
  if (!outcomes.ok()) return Fail(kExitConfigError, outcomes.status());
  bool all = true;
  for (const cipherlab::CheckOutcome& o : *outcomes) {
    std::cout << (o.passed ? "PASS " : "FAIL ") << o.name << ": " << o.detail
              << "\n";
    all &= o.passed;
  }
  return all ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shannon cipher system experiments with a distortion-seeking "
               "eavesdropper"};
  app.require_subcommand(1);

  std::string config_path, out, svg;
  std::size_t workers = 0;
  CLI::App* sweep = app.add_subcommand("sweep", "Run a configured sweep");
  sweep->add_option("--config", config_path, "JSON config")->required();
  sweep->add_option("--out", out, "CSV output (default: output.csv)");
  sweep->add_option("--svg", svg, "SVG output (default: output.svg)");
  sweep->add_option("--workers", workers,
                    "Worker threads (default: CIPHERLAB_WORKERS or 1)");

  std::size_t n = 0;
  double target = 0.0;
  std::vector<std::uint64_t> grid;
  CLI::App* min_key =
      app.add_subcommand("min-key", "Smallest k reaching a target distortion");
  min_key->add_option("--config", config_path, "JSON config")->required();
  min_key->add_option("--n", n, "Blocklength")->required();
  min_key->add_option("--target", target, "Target distortion")->required();
  min_key->add_option("--grid", grid, "Ascending k values")->delimiter(',');

  std::string in, schedule;
  std::size_t n_for_k = 0;
  CLI::App* plot = app.add_subcommand("plot", "Plot a sweep CSV");
  plot->add_option("--in", in, "Sweep CSV")->required();
  plot->add_option("--out", out, "SVG output")->required();
  plot->add_option("--schedule", schedule, "Only this schedule label");
  plot->add_option("--n-for-k", n_for_k, "Blocklength for the k chart");

  std::string suite;
  CLI::App* check = app.add_subcommand("check", "Run a built-in check suite");
  check->add_option("--suite", suite, "Suite name")
      ->required()
      ->check(CLI::IsMember({"lemmas", "oracle", "figure2"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  if (sweep->parsed()) return RunSweepCommand(config_path, out, svg, workers);
  if (min_key->parsed()) return RunMinKeyCommand(config_path, n, target, grid);
  if (plot->parsed()) return RunPlotCommand(in, out, schedule, n_for_k);
  return RunCheckCommand(suite);
}
