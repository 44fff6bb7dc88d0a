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

#include <gtest/gtest.h>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <sstream>

#include "ghnorth/error.h"
#include "ghnorth/postprocess.h"
#include "test_util.h"

namespace ghnorth {
namespace {

namespace pt = boost::property_tree;

pt::ptree ParseXml(const std::string& text) {
  std::istringstream in(text);
  pt::ptree tree;
  pt::read_xml(in, tree);
  return tree;
}

std::vector<std::vector<std::string>> ParseCsv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

TEST(AnalyzeTest, IdenticalChannels) {
  const Tensor base = testing::GaussianTensor({1, 18}, 1);
  std::vector<float> data;
  for (int k = 0; k < 5; ++k) data.insert(data.end(), base.data().begin(), base.data().end());
  Checkpoint c;
  c.Add("conv", LayerKind::kConv, 0, Tensor({5, 2, 3, 3}, data));
  const AnalysisReport r = AnalyzeCheckpoint(c, 10);
  ASSERT_EQ(r.layers.size(), 1u);
  EXPECT_EQ(r.layers[0].sigma_r, 0.0);
  EXPECT_NEAR(r.layers[0].mean_abs_offdiag, 1.0, 1e-12);
  EXPECT_EQ(r.layers[0].channels, 5);
  EXPECT_EQ(r.layers[0].channel_size, 18);
  EXPECT_EQ(r.layers[0].histogram.counts.back(), 10);
}

TEST(AnalyzeTest, OnlyNormAndBias) {
  Checkpoint c;
  c.Add("bn", LayerKind::kNorm, 0, testing::GaussianTensor({8}, 1));
  c.Add("b", LayerKind::kBias, 0, testing::GaussianTensor({8}, 2));
  const AnalysisReport r = AnalyzeCheckpoint(c, 10);
  EXPECT_TRUE(r.layers.empty());
  EXPECT_EQ(r.tensor_count, 2u);
  EXPECT_EQ(r.eligible_count, 0u);
  EXPECT_EQ(EmitReportCsv(r), "name,kind,depth,K,CHW,sigma_r,mean_abs_offdiag\n");
}

TEST(AnalyzeTest, OrthogonalInitHasLowCorrelation) {
  Checkpoint c;
  const std::vector<Shape> shapes = {{64, 3, 7, 7}, {64, 64, 3, 3}, {128, 64, 1, 1}, {10, 512}};
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    RngStream rng(1, "l" + std::to_string(i));
    c.Add("l" + std::to_string(i), i == 3 ? LayerKind::kLinear : LayerKind::kConv, i,
          SaxeOrthogonalInit(shapes[i], 1.0, rng));
  }
  const AnalysisReport r = AnalyzeCheckpoint(c, 20);
  ASSERT_EQ(r.layers.size(), 4u);
  for (const LayerRecord& rec : r.layers) {
    if (rec.channel_size >= 64) {
      EXPECT_LT(rec.mean_abs_offdiag, 0.15) << rec.name;
    }
    EXPECT_GE(rec.sigma_r, 0.0);
    EXPECT_LE(rec.sigma_r, 1.0);
  }
}

TEST(AnalyzeTest, ErrorsNameTheTensor) {
  Checkpoint c;
  c.Add("single", LayerKind::kLinear, 0, testing::GaussianTensor({1, 8}, 1));
  try {
    AnalyzeCheckpoint(c, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooFewChannels);
    EXPECT_NE(std::string(e.what()).find("single"), std::string::npos);
  }
}

TEST(ReportCsvTest, OneRecordRoundTrip) {
  AnalysisReport r;
  LayerRecord rec;
  rec.name = "layer1.0.conv1";
  rec.kind = LayerKind::kConv;
  rec.depth = 4;
  rec.channels = 64;
  rec.channel_size = 576;
  rec.sigma_r = 0.123456789123;
  rec.mean_abs_offdiag = 1.0 / 3.0;
  r.layers.push_back(rec);
  const std::string csv = EmitReportCsv(r);
  EXPECT_EQ(csv,
            "name,kind,depth,K,CHW,sigma_r,mean_abs_offdiag\n"
            "layer1.0.conv1,conv,4,64,576,0.123456789,0.333333333\n");
  EXPECT_EQ(EmitReportCsv(r), csv);
  const auto rows = ParseCsv(csv);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(std::stod(rows[1][5]), rec.sigma_r, 1e-9);
}

TEST(ReportCsvTest, RowCountMatchesWeightTensors) {
  Checkpoint c;
  c.Add("a", LayerKind::kConv, 0, testing::GaussianTensor({4, 2, 2, 2}, 1));
  c.Add("a.b", LayerKind::kBias, 0, testing::GaussianTensor({4}, 2));
  c.Add("b", LayerKind::kLinear, 1, testing::GaussianTensor({3, 8}, 3));
  EXPECT_EQ(ParseCsv(EmitReportCsv(AnalyzeCheckpoint(c, 8))).size(), 3u);
}

TEST(HistogramSvgTest, WellFormedWithOneRectPerBin) {
  Histogram h;
  h.bin_edges = {-1, -0.5, 0, 0.5, 1};
  h.counts = {3, 0, 7, 1};
  const std::string svg = EmitHistogramSvg(h, "conv <1> & \"friends\"");
  const pt::ptree tree = ParseXml(svg);
  const pt::ptree& bars = tree.get_child("svg").get_child("g");
  int rects = 0;
  for (const auto& [tag, node] : bars) rects += tag == "rect";
  EXPECT_EQ(rects, 4);
  EXPECT_EQ(EmitHistogramSvg(h, "conv <1> & \"friends\""), svg);
}

TEST(HistogramSvgTest, ZeroCountsAndEqualBars) {
  Histogram zero{{-1, 0, 1}, {0, 0}};
  const pt::ptree tree = ParseXml(EmitHistogramSvg(zero, "empty"));
  for (const auto& [tag, node] : tree.get_child("svg").get_child("g")) {
    if (tag == "rect") EXPECT_EQ(node.get<double>("<xmlattr>.height"), 0.0);
  }

  Histogram two{{-1, 0, 1}, {1, 1}};
  std::vector<double> heights;
  const pt::ptree two_tree = ParseXml(EmitHistogramSvg(two, "t"));
  for (const auto& [tag, node] : two_tree.get_child("svg").get_child("g")) {
    if (tag == "rect") heights.push_back(node.get<double>("<xmlattr>.height"));
  }
  ASSERT_EQ(heights.size(), 2u);
  EXPECT_EQ(heights[0], heights[1]);
  EXPECT_GT(heights[0], 0.0);
}

TEST(HistogramSvgTest, RandomHistogramsParse) {
  std::mt19937_64 gen(4);
  for (int trial = 0; trial < 20; ++trial) {
    const int bins = 1 + static_cast<int>(gen() % 50);
    Histogram h;
    for (int i = 0; i <= bins; ++i) h.bin_edges.push_back(-1.0 + 2.0 * i / bins);
    for (int i = 0; i < bins; ++i) h.counts.push_back(static_cast<std::int64_t>(gen() % 1000));
    std::string title = "layer";
    title += static_cast<char>(gen() % 128);
    EXPECT_NO_THROW(ParseXml(EmitHistogramSvg(h, title))) << trial;
  }
}

TEST(EmbeddingTest, ParseWithAndWithoutLabels) {
  const EmbeddingSet a = ParseEmbeddingCsv("id,label,v0,v1,v2\nnet1,0.5,1,2,3\nnet2,0.7,4,5,6\r\n");
  EXPECT_EQ(a.ids, (std::vector<std::string>{"net1", "net2"}));
  ASSERT_TRUE(a.labels.has_value());
  EXPECT_EQ(*a.labels, (std::vector<double>{0.5, 0.7}));
  EXPECT_EQ(a.vectors.cols(), 3);
  EXPECT_EQ(a.vectors(1, 2), 6.0);

  const EmbeddingSet b = ParseEmbeddingCsv("id,v0,v1\nx,1,2\n");
  EXPECT_FALSE(b.labels.has_value());
  EXPECT_EQ(b.vectors.rows(), 1);
}

TEST(EmbeddingTest, SchemaErrors) {
  for (const char* text : {"", "name,v0\na,1\n", "id,label\na,1\n", "id,v0,v2\na,1,2\n",
                           "id,v0,v1\na,1\n", "id,v0,v1\na,1,x\n"}) {
    try {
      ParseEmbeddingCsv(text);
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kSchemaError) << text;
    }
  }
}

TEST(ProjectEmbeddingsTest, ExactPlane) {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> dist;
  EmbeddingSet set;
  std::vector<double> values;
  for (int i = 0; i < 50; ++i) {
    const double s = dist(gen), t = dist(gen);
    set.ids.push_back("a" + std::to_string(i));
    for (int j = 0; j < 32; ++j) values.push_back(s * (j % 3) + t * std::sin(j) + 2.0);
  }
  set.vectors = linalg::Matrix(50, 32, values);
  const auto rows = ProjectEmbeddings(set);
  ASSERT_EQ(rows.size(), 50u);
  const linalg::PcaResult pca = linalg::PcaProject(set.vectors, 2);
  EXPECT_LE(pca.total_variance - pca.explained_variance[0] - pca.explained_variance[1],
            1e-9 * pca.total_variance);
  // Total variance of the 2D projection equals the full variance.
  double proj_var = 0.0;
  for (const auto& r : rows) proj_var += r.pc1 * r.pc1 + r.pc2 * r.pc2;
  EXPECT_NEAR(proj_var / 49.0, pca.total_variance, 1e-9 * pca.total_variance);
}

TEST(ProjectEmbeddingsTest, FiveHundredArchitectures) {
  EmbeddingSet set;
  set.vectors = testing::GaussianMatrix(500, 32, 12);
  std::vector<double> labels;
  for (int i = 0; i < 500; ++i) {
    set.ids.push_back("arch" + std::to_string(i));
    labels.push_back(i / 500.0);
  }
  set.labels = labels;
  const auto rows = ProjectEmbeddings(set);
  EXPECT_EQ(rows.size(), 500u);
  const std::string csv = EmitProjectionCsv(rows);
  EXPECT_EQ(ParseCsv(csv).size(), 501u);
  EXPECT_EQ(csv.substr(0, 17), "id,pc1,pc2,label\n");
  EXPECT_EQ(EmitProjectionCsv(ProjectEmbeddings(set)), csv);
}

TEST(ProjectEmbeddingsTest, TooFewPoints) {
  EmbeddingSet set;
  set.ids = {"a", "b"};
  set.vectors = testing::GaussianMatrix(2, 4, 1);
  try {
    ProjectEmbeddings(set);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateInput);
  }
}

TEST(CompareTest, IdenticalCheckpoints) {
  Checkpoint c;
  c.Add("conv", LayerKind::kConv, 0, testing::MixedFactorTensor({8, 4, 3, 3}, 1));
  c.Add("bn", LayerKind::kNorm, 0, testing::GaussianTensor({8}, 2));
  const auto rows = CompareCheckpoints(c, c);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].max_abs_diff, 0.0);
  EXPECT_EQ(rows[0].sigma_r_a, rows[0].sigma_r_b);
  EXPECT_EQ(EmitComparisonCsv(rows).substr(0, 37), "name,max_abs_diff,sigma_r_a,sigma_r_b");
}

TEST(CompareTest, PostprocessingLowersSigma) {
  Checkpoint c;
  // Two groups of near-duplicate channels: a bimodal correlation spread.
  const Tensor g1 = testing::DuplicatedChannelTensor({8, 64}, 1e-1, 1);
  const Tensor g2 = testing::DuplicatedChannelTensor({8, 64}, 1e-1, 2);
  std::vector<float> data(g1.data().begin(), g1.data().end());
  data.insert(data.end(), g2.data().begin(), g2.data().end());
  c.Add("fc", LayerKind::kLinear, 0, Tensor({16, 64}, data));
  const Checkpoint out = GhnOrth(c, PostprocessConfig{});
  const auto rows = CompareCheckpoints(c, out);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_GT(rows[0].max_abs_diff, 0.0);
  EXPECT_LT(rows[0].sigma_r_b, rows[0].sigma_r_a);
}

TEST(CompareTest, StructureMismatch) {
  Checkpoint a, b;
  a.Add("w", LayerKind::kLinear, 0, testing::GaussianTensor({4, 4}, 1));
  b.Add("w", LayerKind::kLinear, 0, testing::GaussianTensor({4, 2, 2}, 1));
  b.Add("extra", LayerKind::kBias, 0, testing::GaussianTensor({4}, 1));
  try {
    CompareCheckpoints(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kStructureMismatch);
    EXPECT_NE(std::string(e.what()).find("\"w\""), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("\"extra\""), std::string::npos);
  }
}

}  // namespace
}  // namespace ghnorth
