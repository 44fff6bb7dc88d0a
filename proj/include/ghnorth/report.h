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

#ifndef GHNORTH_REPORT_H_
#define GHNORTH_REPORT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ghnorth/checkpoint_io.h"
#include "ghnorth/linalg.h"
#include "ghnorth/stats.h"

namespace ghnorth {

struct LayerRecord {
  std::string name;
  LayerKind kind = LayerKind::kOther;
  std::uint64_t depth = 0;
  std::int64_t channels = 0;      // K
  std::int64_t channel_size = 0;  // C*H*W
  double sigma_r = 0.0;
  double mean_abs_offdiag = 0.0;
  Histogram histogram;
};

struct AnalysisReport {
  std::vector<LayerRecord> layers;  // conv/linear tensors, checkpoint order
  std::size_t tensor_count = 0;
  std::size_t eligible_count = 0;
};

// Correlation statistics for every conv/linear tensor.
AnalysisReport AnalyzeCheckpoint(const Checkpoint& checkpoint, int bins);

// Header `name,kind,depth,K,CHW,sigma_r,mean_abs_offdiag`, one row per layer,
// floating-point values with 9 significant digits.
std::string EmitReportCsv(const AnalysisReport& report);

// Standalone SVG bar chart of a correlation histogram over [-1, 1].
std::string EmitHistogramSvg(const Histogram& histogram, std::string_view title);

// Latent vectors to project, one row per id.
struct EmbeddingSet {
  std::vector<std::string> ids;
  linalg::Matrix vectors;  // n x d
  std::optional<std::vector<double>> labels;
};

// Embedding CSV: header `id,label,v0,...` or `id,v0,...`, then one row per
// vector. Errors: kSchemaError naming the line and column.
EmbeddingSet ParseEmbeddingCsv(std::string_view text);

struct ProjectionRow {
  std::string id;
  double pc1 = 0.0;
  double pc2 = 0.0;
  std::optional<double> label;
};

// Two-component PCA projection. Errors: kDegenerateInput when n < 3 or d < 2.
std::vector<ProjectionRow> ProjectEmbeddings(const EmbeddingSet& embeddings);

// Header `id,pc1,pc2,label`; the label cell is empty when absent.
std::string EmitProjectionCsv(const std::vector<ProjectionRow>& rows);

struct ComparisonRow {
  std::string name;
  double max_abs_diff = 0.0;
  double sigma_r_a = 0.0;
  double sigma_r_b = 0.0;
};

// Per-layer differences between two checkpoints with identical tensor names
// and shapes. Errors: kStructureMismatch listing every difference.
std::vector<ComparisonRow> CompareCheckpoints(const Checkpoint& a, const Checkpoint& b);

// Header `name,max_abs_diff,sigma_r_a,sigma_r_b`.
std::string EmitComparisonCsv(const std::vector<ComparisonRow>& rows);

// Formats with 9 significant digits (printf "%.9g").
std::string FormatDouble(double v);

}  // namespace ghnorth

#endif  // GHNORTH_REPORT_H_
