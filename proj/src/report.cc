/* Copyright 2026 The ghnorth Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "ghnorth/report.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "ghnorth/error.h"
#include "ghnorth/tensor_ops.h"

namespace ghnorth {
namespace {

std::string CsvField(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string XmlEscape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default:
        // Control characters other than tab/newline are not legal XML 1.0.
        if (static_cast<unsigned char>(c) < 0x20 && c != '\t' && c != '\n') {
          out += ' ';
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string Fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

// Runs `fn` and prefixes any ghnorth::Error with the tensor name.
template <typename Fn>
auto Annotated(const std::string& name, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    e.Rethrow(name);
  }
}

std::vector<std::string_view> SplitCells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

double ParseNumber(std::string_view cell, const std::string& where) {
  while (!cell.empty() && cell.front() == ' ') cell.remove_prefix(1);
  while (!cell.empty() && cell.back() == ' ') cell.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::kSchemaError, where + ": \"" + std::string(cell) + "\" is not a finite number");
  }
  return v;
}

}  // namespace

std::string FormatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

AnalysisReport AnalyzeCheckpoint(const Checkpoint& checkpoint, int bins) {
  if (bins < 1) throw Error(ErrorCode::kInvalidArgument, "bins must be >= 1");
  AnalysisReport report;
  report.tensor_count = checkpoint.entries.size();
  for (const CheckpointEntry& entry : checkpoint.entries) {
    if (!IsWeightKind(entry.meta.kind)) continue;
    LayerRecord rec = Annotated(entry.meta.name, [&] {
      const ChannelView view = ChannelViewOf(entry.tensor.shape());
      const CorrelationMatrix r = ChannelCorrelation(entry.tensor);
      LayerRecord out;
      out.channels = view.channels;
      out.channel_size = view.channel_size;
      out.sigma_r = CorrelationStd(r);
      out.mean_abs_offdiag = MeanAbsOffDiagonal(r);
      out.histogram = CorrelationHistogram(r, bins);
      return out;
    });
    rec.name = entry.meta.name;
    rec.kind = entry.meta.kind;
    rec.depth = entry.meta.depth;
    report.layers.push_back(std::move(rec));
  }
  report.eligible_count = report.layers.size();
  return report;
}

std::string EmitReportCsv(const AnalysisReport& report) {
  std::string out = "name,kind,depth,K,CHW,sigma_r,mean_abs_offdiag\n";
  for (const LayerRecord& rec : report.layers) {
    out += CsvField(rec.name) + ',' + std::string(LayerKindName(rec.kind)) + ',' +
           std::to_string(rec.depth) + ',' + std::to_string(rec.channels) + ',' +
           std::to_string(rec.channel_size) + ',' + FormatDouble(rec.sigma_r) + ',' +
           FormatDouble(rec.mean_abs_offdiag) + '\n';
  }
  return out;
}

std::string EmitHistogramSvg(const Histogram& histogram, std::string_view title) {
  constexpr double kWidth = 640, kHeight = 360;
  constexpr double kLeft = 50, kRight = 610, kTop = 40, kBottom = 320;
  const double plot_w = kRight - kLeft;
  const double plot_h = kBottom - kTop;
  const std::size_t bins = histogram.counts.size();
  const std::int64_t peak =
      bins == 0 ? 0 : *std::max_element(histogram.counts.begin(), histogram.counts.end());

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"360\" "
         "viewBox=\"0 0 640 360\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + Fixed(kWidth) + "\" height=\"" + Fixed(kHeight) +
         "\" fill=\"white\"/>\n";
  svg += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">" + XmlEscape(title) + "</text>\n";
  svg += "<g class=\"bars\" fill=\"steelblue\" stroke=\"none\">\n";
  for (std::size_t i = 0; i < bins; ++i) {
    const double lo = histogram.bin_edges[i];
    const double hi = histogram.bin_edges[i + 1];
    const double x = kLeft + (lo + 1.0) * 0.5 * plot_w;
    const double w = (hi - lo) * 0.5 * plot_w;
    const double h = peak > 0 ? plot_h * static_cast<double>(histogram.counts[i]) / peak : 0.0;
    svg += "<rect x=\"" + Fixed(x) + "\" y=\"" + Fixed(kBottom - h) + "\" width=\"" + Fixed(w) +
           "\" height=\"" + Fixed(h) + "\"><title>" + FormatDouble(lo) + " to " +
           FormatDouble(hi) + ": " + std::to_string(histogram.counts[i]) + "</title></rect>\n";
  }
  svg += "</g>\n";
  svg += "<line x1=\"" + Fixed(kLeft) + "\" y1=\"" + Fixed(kBottom) + "\" x2=\"" + Fixed(kRight) +
         "\" y2=\"" + Fixed(kBottom) + "\" stroke=\"black\"/>\n";
  for (double tick : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    const double x = kLeft + (tick + 1.0) * 0.5 * plot_w;
    svg += "<text x=\"" + Fixed(x) + "\" y=\"" + Fixed(kBottom + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
           FormatDouble(tick) + "</text>\n";
  }
  svg += "<text x=\"" + Fixed(kLeft - 6) + "\" y=\"" + Fixed(kTop + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
         std::to_string(peak) + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

EmbeddingSet ParseEmbeddingCsv(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw Error(ErrorCode::kSchemaError, "line 1: missing header");

  const std::vector<std::string_view> header = SplitCells(lines[0]);
  if (header[0] != "id") throw Error(ErrorCode::kSchemaError, "line 1, column 1: expected \"id\"");
  const bool has_label = header.size() > 1 && header[1] == "label";
  const std::size_t first_value = has_label ? 2 : 1;
  const std::size_t d = header.size() - first_value;
  if (d == 0) throw Error(ErrorCode::kSchemaError, "line 1: no vector columns");
  for (std::size_t j = 0; j < d; ++j) {
    if (header[first_value + j] != "v" + std::to_string(j)) {
      throw Error(ErrorCode::kSchemaError, "line 1, column " + std::to_string(first_value + j + 1) +
                                               ": expected \"v" + std::to_string(j) + "\"");
    }
  }

  EmbeddingSet set;
  std::vector<double> values;
  std::vector<double> labels;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string where = "line " + std::to_string(i + 1);
    const std::vector<std::string_view> cells = SplitCells(lines[i]);
    if (cells.size() != header.size()) {
      throw Error(ErrorCode::kSchemaError, where + ": expected " + std::to_string(header.size()) +
                                               " columns, got " + std::to_string(cells.size()));
    }
    set.ids.emplace_back(cells[0]);
    if (has_label) labels.push_back(ParseNumber(cells[1], where + ", column 2"));
    for (std::size_t j = 0; j < d; ++j) {
      values.push_back(ParseNumber(cells[first_value + j],
                                   where + ", column " + std::to_string(first_value + j + 1)));
    }
  }
  set.vectors = linalg::Matrix(static_cast<std::int64_t>(set.ids.size()),
                               static_cast<std::int64_t>(d), std::move(values));
  if (has_label) set.labels = std::move(labels);
  return set;
}

std::vector<ProjectionRow> ProjectEmbeddings(const EmbeddingSet& embeddings) {
  const std::int64_t n = embeddings.vectors.rows();
  const std::int64_t d = embeddings.vectors.cols();
  if (n < 3 || d < 2) {
    throw Error(ErrorCode::kDegenerateInput, "need at least 3 vectors of dimension >= 2, got " +
                                                 std::to_string(n) + " of dimension " +
                                                 std::to_string(d));
  }
  const linalg::PcaResult pca = linalg::PcaProject(embeddings.vectors, 2);
  std::vector<ProjectionRow> rows(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    rows[i].id = embeddings.ids[i];
    rows[i].pc1 = pca.projected(i, 0);
    rows[i].pc2 = pca.projected(i, 1);
    if (embeddings.labels) rows[i].label = (*embeddings.labels)[i];
  }
  return rows;
}

std::string EmitProjectionCsv(const std::vector<ProjectionRow>& rows) {
  std::string out = "id,pc1,pc2,label\n";
  for (const ProjectionRow& row : rows) {
    out += CsvField(row.id) + ',' + FormatDouble(row.pc1) + ',' + FormatDouble(row.pc2) + ',' +
           (row.label ? FormatDouble(*row.label) : std::string()) + '\n';
  }
  return out;
}

std::vector<ComparisonRow> CompareCheckpoints(const Checkpoint& a, const Checkpoint& b) {
  std::vector<std::string> problems;
  for (const CheckpointEntry& ea : a.entries) {
    const CheckpointEntry* eb = b.Find(ea.meta.name);
    if (eb == nullptr) {
      problems.push_back("\"" + ea.meta.name + "\" missing from second checkpoint");
    } else if (eb->meta.shape != ea.meta.shape) {
      problems.push_back("\"" + ea.meta.name + "\" has different shapes");
    }
  }
  for (const CheckpointEntry& eb : b.entries) {
    if (a.Find(eb.meta.name) == nullptr) {
      problems.push_back("\"" + eb.meta.name + "\" missing from first checkpoint");
    }
  }
  if (!problems.empty()) {
    std::string msg;
    for (const std::string& p : problems) msg += (msg.empty() ? "" : "; ") + p;
    throw Error(ErrorCode::kStructureMismatch, msg);
  }

  std::vector<ComparisonRow> rows;
  for (const CheckpointEntry& ea : a.entries) {
    if (!IsWeightKind(ea.meta.kind)) continue;
    const CheckpointEntry& eb = *b.Find(ea.meta.name);
    ComparisonRow row;
    row.name = ea.meta.name;
    const auto da = ea.tensor.data();
    const auto db = eb.tensor.data();
    for (std::size_t i = 0; i < da.size(); ++i) {
      row.max_abs_diff = std::max(
          row.max_abs_diff, std::abs(static_cast<double>(da[i]) - static_cast<double>(db[i])));
    }
    row.sigma_r_a = Annotated(ea.meta.name, [&] { return CorrelationStd(ChannelCorrelation(ea.tensor)); });
    row.sigma_r_b = Annotated(ea.meta.name, [&] { return CorrelationStd(ChannelCorrelation(eb.tensor)); });
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string EmitComparisonCsv(const std::vector<ComparisonRow>& rows) {
  std::string out = "name,max_abs_diff,sigma_r_a,sigma_r_b\n";
  for (const ComparisonRow& row : rows) {
    out += CsvField(row.name) + ',' + FormatDouble(row.max_abs_diff) + ',' +
           FormatDouble(row.sigma_r_a) + ',' + FormatDouble(row.sigma_r_b) + '\n';
  }
  return out;
}

}  // namespace ghnorth
