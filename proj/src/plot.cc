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
#include "cipherlab/plot.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"

namespace cipherlab {
namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 420;
constexpr double kLeft = 70;
constexpr double kRight = 160;
constexpr double kTop = 40;
constexpr double kBottom = 55;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};

std::string Escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

absl::Status WriteFile(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  out << body;
  out.close();
  if (!out) return absl::DataLossError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

std::string SiblingPath(const std::string& path, std::string_view suffix) {
  const auto dot = path.rfind('.');
  const auto slash = path.rfind('/');
  const bool has_ext =
      dot != std::string::npos && (slash == std::string::npos || dot > slash);
  return absl::StrCat(has_ext ? path.substr(0, dot) : path,
                      std::string(suffix), ".svg");
}

}  // namespace

absl::StatusOr<std::vector<SweepCsvRow>> ParseSweepCsv(std::string_view text) {
  std::vector<std::string> lines =
      absl::StrSplit(absl::string_view(text.data(), text.size()), '\n',
                     absl::SkipWhitespace());
  if (lines.empty()) return absl::InvalidArgumentError("empty CSV");
  std::vector<std::string> header = absl::StrSplit(lines.front(), ',');
  std::map<std::string, std::size_t> column;
  for (std::size_t c = 0; c < header.size(); ++c) column[header[c]] = c;
  for (const char* needed :
       {"n", "k", "seed", "engine", "distortion", "dmax", "schedule"}) {
    if (!column.contains(needed)) {
      return absl::InvalidArgumentError(
          absl::StrCat("CSV lacks column '", needed, "'"));
    }
  }
  std::vector<SweepCsvRow> rows;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    std::vector<std::string> f = absl::StrSplit(lines[l], ',');
    if (f.size() != header.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("CSV line ", l + 1, " has ", f.size(), " fields"));
    }
    SweepCsvRow row;
    row.engine = f[column["engine"]];
    row.schedule = f[column["schedule"]];
    if (!absl::SimpleAtoi(f[column["n"]], &row.n) ||
        !absl::SimpleAtoi(f[column["k"]], &row.k) ||
        !absl::SimpleAtoi(f[column["seed"]], &row.seed)) {
      return absl::InvalidArgumentError(
          absl::StrCat("bad integer on CSV line ", l + 1));
    }
    if (row.engine != "error" &&
        (!absl::SimpleAtod(f[column["distortion"]], &row.distortion) ||
         !absl::SimpleAtod(f[column["dmax"]], &row.dmax))) {
      return absl::InvalidArgumentError(
          absl::StrCat("bad number on CSV line ", l + 1));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string RenderLineChart(std::string_view title, std::string_view x_label,
                            std::span<const Series> series, double dmax) {
  const double y_min = 0.0;
  const double y_max = dmax > 0.0 ? dmax * 1.05 : 1.0;
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min;
  for (const Series& s : series) {
    for (const auto& [x, y] : s.points) {
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
    }
  }
  if (!std::isfinite(x_min)) {
    x_min = 0.0;
    x_max = 1.0;
  }
  if (x_max == x_min) {
    x_min -= 1.0;
    x_max += 1.0;
  }
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto py = [&](double y) { return kTop + (y_max - y) / (y_max - y_min) * plot_h; };

  std::string svg = absl::StrFormat(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" "
      "viewBox=\"0 0 %g %g\" data-y-min=\"%.17g\" data-y-max=\"%.17g\">\n",
      kWidth, kHeight, kWidth, kHeight, y_min, y_max);
  absl::StrAppend(&svg, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
  absl::StrAppend(&svg, absl::StrFormat(
      "<text x=\"%g\" y=\"22\" font-family=\"sans-serif\" font-size=\"15\" "
      "text-anchor=\"middle\">%s</text>\n",
      kLeft + plot_w / 2, Escape(title)));

  // Axes and ticks.
  absl::StrAppend(&svg, absl::StrFormat(
      "<g stroke=\"black\" fill=\"none\"><line x1=\"%g\" y1=\"%g\" x2=\"%g\" "
      "y2=\"%g\"/><line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\"/></g>\n",
      kLeft, kTop, kLeft, kTop + plot_h, kLeft, kTop + plot_h, kLeft + plot_w,
      kTop + plot_h));
  for (int t = 0; t <= 5; ++t) {
    const double y = y_min + (y_max - y_min) * t / 5.0;
    absl::StrAppend(&svg, absl::StrFormat(
        "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>"
        "<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"11\" "
        "text-anchor=\"end\">%.3g</text>\n",
        kLeft - 5, py(y), kLeft, py(y), kLeft - 8, py(y) + 4, y));
  }
  std::set<double> xs;
  for (const Series& s : series) {
    for (const auto& point : s.points) xs.insert(point.first);
  }
  for (double x : xs) {
    absl::StrAppend(&svg, absl::StrFormat(
        "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>"
        "<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"11\" "
        "text-anchor=\"middle\">%g</text>\n",
        px(x), kTop + plot_h, px(x), kTop + plot_h + 5, px(x),
        kTop + plot_h + 18, x));
  }
  absl::StrAppend(&svg, absl::StrFormat(
      "<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"13\" "
      "text-anchor=\"middle\">%s</text>\n",
      kLeft + plot_w / 2, kHeight - 12, Escape(x_label)));
  absl::StrAppend(&svg, absl::StrFormat(
      "<text x=\"16\" y=\"%g\" font-family=\"sans-serif\" font-size=\"13\" "
      "text-anchor=\"middle\" transform=\"rotate(-90 16 %g)\">adversary "
      "distortion</text>\n",
      kTop + plot_h / 2, kTop + plot_h / 2));

  // D_max rule.
  absl::StrAppend(&svg, absl::StrFormat(
      "<line class=\"dmax\" x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" "
      "stroke=\"gray\" stroke-dasharray=\"6 4\"/>\n"
      "<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"11\" "
      "fill=\"gray\">D_max = %.4g</text>\n",
      kLeft, py(dmax), kLeft + plot_w, py(dmax), kLeft + plot_w + 6,
      py(dmax) + 4, dmax));

  for (std::size_t i = 0; i < series.size(); ++i) {
    const Series& s = series[i];
    const char* color = kPalette[i % std::size(kPalette)];
    std::string points;
    for (const auto& [x, y] : s.points) {
      absl::StrAppend(&points, absl::StrFormat("%.3f,%.3f ", px(x), py(y)));
    }
    absl::StrAppend(&svg, absl::StrFormat(
        "<polyline class=\"series\" data-name=\"%s\" fill=\"none\" "
        "stroke=\"%s\" stroke-width=\"2\" points=\"%s\"/>\n",
        Escape(s.name), color, points));
    for (const auto& [x, y] : s.points) {
      absl::StrAppend(&svg, absl::StrFormat(
          "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"3\" fill=\"%s\"/>\n", px(x),
          py(y), color));
    }
    const double ly = kTop + 14 + 18 * static_cast<double>(i);
    absl::StrAppend(&svg, absl::StrFormat(
        "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"%s\" "
        "stroke-width=\"2\"/><text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" "
        "font-size=\"11\">%s</text>\n",
        kLeft + plot_w + 6, ly + 20, kLeft + plot_w + 26, ly + 20, color,
        kLeft + plot_w + 30, ly + 24, Escape(s.name)));
  }
  absl::StrAppend(&svg, "</svg>\n");
  return svg;
}

absl::StatusOr<std::vector<std::string>> EmitPlots(
    std::span<const SweepCsvRow> rows, const std::string& out_path,
    const PlotOptions& options) {
  std::vector<SweepCsvRow> kept;
  for (const SweepCsvRow& row : rows) {
    if (row.engine == "error") continue;
    if (options.schedule && row.schedule != *options.schedule) continue;
    kept.push_back(row);
  }
  if (kept.empty()) {
    return absl::FailedPreconditionError(
        "nothing to plot: no successful rows remain after filtering");
  }
  const double dmax = kept.front().dmax;

  // Seed-averaged distortion per (schedule, n).
  std::map<std::string, std::map<double, std::pair<double, int>>> by_n;
  for (const SweepCsvRow& row : kept) {
    auto& cell = by_n[row.schedule][static_cast<double>(row.n)];
    cell.first += row.distortion;
    ++cell.second;
  }
  std::vector<Series> series;
  for (const auto& [name, cells] : by_n) {
    Series s{name, {}};
    for (const auto& [n, acc] : cells) s.points.emplace_back(n, acc.first / acc.second);
    series.push_back(std::move(s));
  }
  std::vector<std::string> written;
  absl::Status status = WriteFile(
      out_path, RenderLineChart("Adversary distortion vs blocklength",
                                "blocklength n", series, dmax));
  if (!status.ok()) return status;
  written.push_back(out_path);

  // Distortion vs k at one blocklength.
  std::map<std::size_t, std::map<double, std::pair<double, int>>> by_k;
  for (const SweepCsvRow& row : kept) {
    auto& cell = by_k[row.n][static_cast<double>(row.k)];
    cell.first += row.distortion;
    ++cell.second;
  }
  std::optional<std::size_t> chosen = options.n_for_k;
  if (!chosen) {
    std::size_t most = 1;
    for (const auto& [n, cells] : by_k) {
      if (cells.size() >= most && cells.size() > 1) {
        most = cells.size();
        chosen = n;
      }
    }
  }
  if (chosen && by_k.contains(*chosen) && by_k[*chosen].size() > 1) {
    Series s{absl::StrCat("n = ", *chosen), {}};
    for (const auto& [k, acc] : by_k[*chosen]) {
      s.points.emplace_back(k, acc.first / acc.second);
    }
    const std::string path = SiblingPath(out_path, "_vs_k");
    status = WriteFile(
        path, RenderLineChart(absl::StrCat("Adversary distortion vs k at n = ",
                                           *chosen),
                              "keys k", std::span<const Series>(&s, 1), dmax));
    if (!status.ok()) return status;
    written.push_back(path);
  }
  return written;
}

}  // namespace cipherlab
