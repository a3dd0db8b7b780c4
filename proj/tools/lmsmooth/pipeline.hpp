// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lmsmooth/counts.hpp"
#include "lmsmooth/deleted_estimation.hpp"
#include "lmsmooth/dirichlet.hpp"
#include "lmsmooth/eval.hpp"
#include "lmsmooth/io.hpp"

namespace lmsmooth::cli {

// Exit codes: 0 ok, 1 usage, 2 data error, 3 non-convergence.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitNonConvergence = 3;

/// Reproducibility record written next to each subcommand's first output:
/// normalized config plus input digests, no timestamps.
struct Manifest {
  std::string command;
  std::map<std::string, std::string> config;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;

  void write(const std::string& anchor_path) const;  // anchor + ".manifest.json"
};

/// "0-5" or "0,2,4" -> indices.
std::vector<std::size_t> parse_index_range(const std::string& text);

/// Counts each block file in parallel and merges in file order.
struct BlockCounts {
  std::vector<std::vector<Sentence>> sentences;
  std::vector<CountTable> tables;
  CountTable total;
};
BlockCounts count_block_files(const std::vector<std::string>& paths);

/// Full deleted-estimation training over held-out block files.
struct DeTraining {
  LambdaModel model;
  CountTable train_counts;
};
DeTraining train_de(const std::vector<std::string>& block_files, const LambdaBuckets& buckets,
                    const DeOptions& opts);
LambdaModel train_de_from_blocks(const BlockCounts& blocks, const LambdaBuckets& buckets,
                                 const DeOptions& opts);

/// One parsed "--models" entry: de:R | dirichlet | addk:K | uniform for
/// compare, and de:PATH | dirichlet:PATH | addk:K | uniform for eval.
struct ModelSpec {
  std::string raw;
  std::string kind;  // "de", "dirichlet", "addk", "uniform"
  std::string arg;   // r / path / k, possibly empty
};
ModelSpec parse_model_spec(const std::string& text);
std::vector<ModelSpec> parse_model_list(const std::string& text);

/// Owns a trained/loaded model and its ConditionalModel adapter.
struct BoundModel {
  std::string name;
  std::unique_ptr<ConditionalModel> adapter;
  io::ModelInfo info;
  bool converged = true;
  // Owned backing state (whichever applies).
  std::shared_ptr<LambdaModel> lambda;
  std::shared_ptr<DirichletModel> dirichlet;
};

}  // namespace lmsmooth::cli
