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

#include "ghnorth/cli.h"

#include <filesystem>
#include <optional>

#include "CLI11.hpp"
#include "ghnorth/checkpoint_io.h"
#include "ghnorth/error.h"
#include "ghnorth/file_util.h"
#include "ghnorth/postprocess.h"
#include "ghnorth/report.h"

namespace ghnorth {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Checkpoint LoadCheckpoint(const std::string& path) {
  try {
    return ReadCheckpoint(ReadFileBytes(path));
  } catch (const Error& e) {
    e.Rethrow(path);
  }
}

std::string SvgFileName(std::size_t index, const std::string& name) {
  std::string safe;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '.' || c == '-' || c == '_';
    safe += ok ? c : '_';
  }
  char prefix[16];
  std::snprintf(prefix, sizeof(prefix), "%03zu_", index);
  return prefix + safe + ".svg";
}

struct AnalyzeArgs {
  std::string input, out, svg_dir;
  int bins = 40;
};

void RunAnalyze(const AnalyzeArgs& a) {
  const AnalysisReport report = AnalyzeCheckpoint(LoadCheckpoint(a.input), a.bins);
  if (!a.svg_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(a.svg_dir, ec);
    if (ec) throw Error(ErrorCode::kIoError, a.svg_dir + ": " + ec.message());
    for (std::size_t i = 0; i < report.layers.size(); ++i) {
      const LayerRecord& rec = report.layers[i];
      const std::string title = rec.name + " (K=" + std::to_string(rec.channels) +
                                ", sigma_r=" + FormatDouble(rec.sigma_r) + ")";
      WriteFileAtomic((std::filesystem::path(a.svg_dir) / SvgFileName(i, rec.name)).string(),
                      EmitHistogramSvg(rec.histogram, title));
    }
  }
  WriteFileAtomic(a.out, EmitReportCsv(report));
}

struct PostprocessArgs {
  std::string input, out;
  PostprocessConfig cfg;
};

void RunPostprocess(const PostprocessArgs& a) {
  if (a.cfg.skip_noise && a.cfg.skip_orth) {
    throw UsageError("--skip-noise and --skip-orth cannot be combined");
  }
  const Checkpoint result = GhnOrth(LoadCheckpoint(a.input), a.cfg);
  WriteFileAtomic(a.out, WriteCheckpoint(result));
}

struct InitArgs {
  std::string arch, method, out;
  std::optional<double> gain;
  std::uint64_t seed = 0;
};

void RunInit(const InitArgs& a) {
  if (a.gain && a.method != "orth") throw UsageError("--gain only applies to --method orth");
  std::vector<TensorMeta> metas;
  try {
    metas = ImportArchSpec(ReadFileText(a.arch));
  } catch (const Error& e) {
    e.Rethrow(a.arch);
  }

  Checkpoint c;
  for (const TensorMeta& meta : metas) {
    Tensor t;
    if (IsWeightKind(meta.kind)) {
      try {
        RngStream rng(a.seed, meta.name);
        t = a.method == "rand" ? HeInit(meta.shape, rng)
                               : SaxeOrthogonalInit(meta.shape, a.gain.value_or(1.0), rng);
      } catch (const Error& e) {
        e.Rethrow(meta.name);
      }
    } else if (meta.kind == LayerKind::kNorm) {
      t = Tensor(meta.shape, std::vector<float>(meta.length, 1.0f));
    } else {
      t = Tensor::Zeros(meta.shape);
    }
    c.Add(meta.name, meta.kind, meta.depth, std::move(t));
  }
  WriteFileAtomic(a.out, WriteCheckpoint(c));
}

struct PcaArgs {
  std::string input, out;
};

void RunPca(const PcaArgs& a) {
  EmbeddingSet set;
  try {
    set = ParseEmbeddingCsv(ReadFileText(a.input));
  } catch (const Error& e) {
    e.Rethrow(a.input);
  }
  WriteFileAtomic(a.out, EmitProjectionCsv(ProjectEmbeddings(set)));
}

struct CompareArgs {
  std::string first, second, out;
};

void RunCompare(const CompareArgs& a) {
  const auto rows = CompareCheckpoints(LoadCheckpoint(a.first), LoadCheckpoint(a.second));
  WriteFileAtomic(a.out, EmitComparisonCsv(rows));
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Channel-correlation analysis and orthogonal post-processing of weight checkpoints",
               "ghnorth"};
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Per-layer channel correlation report");
  analyze_cmd->add_option("checkpoint", analyze.input, "Input checkpoint")->required();
  analyze_cmd->add_option("--out", analyze.out, "Report CSV")->required();
  analyze_cmd->add_option("--svg-dir", analyze.svg_dir, "Directory for per-layer histogram SVGs");
  analyze_cmd->add_option("--bins", analyze.bins, "Histogram bins over [-1, 1]")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  PostprocessArgs post;
  auto* post_cmd = app.add_subcommand("postprocess", "Noise plus orthogonal re-initialization");
  post_cmd->add_option("checkpoint", post.input, "Input checkpoint")->required();
  post_cmd->add_option("--beta", post.cfg.beta, "Noise scaling factor")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  post_cmd->add_option("--start-layer", post.cfg.start_layer,
                       "First depth to post-process")->required();
  post_cmd->add_option("--seed", post.cfg.seed, "Master RNG seed")->required();
  post_cmd->add_option("--out", post.out, "Output checkpoint")->required();
  post_cmd->add_flag("--skip-noise", post.cfg.skip_noise, "Skip the noise step");
  post_cmd->add_flag("--skip-orth", post.cfg.skip_orth, "Skip the orthogonalization step");

  InitArgs init;
  double gain = 1.0;
  auto* init_cmd = app.add_subcommand("init", "Baseline initialization from an architecture spec");
  init_cmd->add_option("archspec", init.arch, "Architecture JSON")->required();
  init_cmd->add_option("--method", init.method, "rand (He) or orth (orthogonal)")
      ->required()
      ->check(CLI::IsMember({"rand", "orth"}));
  auto* gain_opt = init_cmd->add_option("--gain", gain, "Orthogonal gain")
                       ->check(CLI::PositiveNumber);
  init_cmd->add_option("--seed", init.seed, "Master RNG seed")->required();
  init_cmd->add_option("--out", init.out, "Output checkpoint")->required();

  PcaArgs pca;
  auto* pca_cmd = app.add_subcommand("pca", "Two-component PCA of embedding vectors");
  pca_cmd->add_option("embeddings", pca.input, "Embedding CSV")->required();
  pca_cmd->add_option("--out", pca.out, "Projection CSV")->required();

  CompareArgs compare;
  auto* compare_cmd = app.add_subcommand("compare", "Per-layer differences of two checkpoints");
  compare_cmd->add_option("first", compare.first, "First checkpoint")->required();
  compare_cmd->add_option("second", compare.second, "Second checkpoint")->required();
  compare_cmd->add_option("--out", compare.out, "Comparison CSV")->required();

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("ghnorth");

  auto synopsis = [&]() -> std::string {
    for (CLI::App* sub : app.get_subcommands()) return sub->help();
    return app.help();
  };

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << synopsis();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << synopsis();
    return kExitUsage;
  }
  if (gain_opt->count() > 0) init.gain = gain;

  try {
    if (*analyze_cmd) RunAnalyze(analyze);
    if (*post_cmd) RunPostprocess(post);
    if (*init_cmd) RunInit(init);
    if (*pca_cmd) RunPca(pca);
    if (*compare_cmd) RunCompare(compare);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << synopsis();
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return ClassOf(e.code()) == ErrorClass::kNumerical ? kExitNumerical : kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace ghnorth
