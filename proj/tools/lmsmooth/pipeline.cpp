// Apache License, Version 2.0, refer to LICENSE.txt
#include "pipeline.hpp"

#include <fstream>

#include <json.hpp>

#include "lmsmooth/parallel.hpp"

namespace lmsmooth::cli {

void Manifest::write(const std::string& anchor_path) const {
  nlohmann::json doc;
  doc["command"] = command;
  doc["config"] = nlohmann::json::object();
  for (const auto& [k, v] : config) doc["config"][k] = v;
  doc["inputs"] = nlohmann::json::object();
  for (const auto& path : inputs) doc["inputs"][path] = io::file_digest(path);
  doc["outputs"] = outputs;
  std::ofstream out(anchor_path + ".manifest.json", std::ios::trunc);
  if (!out) throw IoError("cannot write manifest for " + anchor_path);
  out << doc.dump(2) << '\n';
}

std::vector<std::size_t> parse_index_range(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string piece = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    pos = comma == std::string::npos ? text.size() : comma + 1;
    if (piece.empty()) continue;
    std::size_t dash = piece.find('-');
    try {
      if (dash == std::string::npos) {
        out.push_back(std::stoul(piece));
      } else {
        std::size_t lo = std::stoul(piece.substr(0, dash));
        std::size_t hi = std::stoul(piece.substr(dash + 1));
        if (hi < lo) throw Error("descending range: " + piece);
        for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
      }
    } catch (const std::exception&) {
      throw Error("bad index range: " + text);
    }
  }
  return out;
}

BlockCounts count_block_files(const std::vector<std::string>& paths) {
  BlockCounts out;
  out.sentences.resize(paths.size());
  out.tables.resize(paths.size());
  par::parallel_for(paths.size(), [&](std::size_t k) {
    out.sentences[k] = io::read_sentences(paths[k]);
    out.tables[k] = count_block(out.sentences[k]);
  });
  for (const auto& table : out.tables) out.total = merge_counts(out.total, table);
  return out;
}

LambdaModel train_de_from_blocks(const BlockCounts& blocks, const LambdaBuckets& buckets,
                                 const DeOptions& opts) {
  std::vector<FreqView> views;
  views.reserve(blocks.tables.size());
  for (const auto& table : blocks.tables) {
    auto loo = leave_one_out(blocks.total, table);
    if (loo.denominator_total() == 0) {
      views.push_back(zero_freqs(loo.vocab_ptr()));
    } else {
      views.push_back(freqs(loo));
    }
  }
  std::vector<HeldOutBlock> held_out;
  held_out.reserve(views.size());
  for (std::size_t k = 0; k < views.size(); ++k)
    held_out.push_back({&blocks.sentences[k], &views[k]});

  auto built = build_terms(held_out, buckets);
  LambdaModel model = optimize(built.terms, buckets, opts);
  model.dropped_terms = built.dropped;
  return model;
}

DeTraining train_de(const std::vector<std::string>& block_files, const LambdaBuckets& buckets,
                    const DeOptions& opts) {
  BlockCounts blocks = count_block_files(block_files);
  DeTraining out;
  out.model = train_de_from_blocks(blocks, buckets, opts);
  out.train_counts = std::move(blocks.total);
  return out;
}

ModelSpec parse_model_spec(const std::string& text) {
  ModelSpec spec;
  spec.raw = text;
  auto colon = text.find(':');
  spec.kind = text.substr(0, colon);
  if (colon != std::string::npos) spec.arg = text.substr(colon + 1);
  if (spec.kind != "de" && spec.kind != "dirichlet" && spec.kind != "addk" &&
      spec.kind != "uniform") {
    throw Error("unknown model spec: " + text);
  }
  if (spec.kind == "addk" && spec.arg.empty()) throw Error("addk needs a k value: " + text);
  if (spec.kind == "de" && spec.arg.empty()) throw Error("de needs an argument: " + text);
  return spec;
}

std::vector<ModelSpec> parse_model_list(const std::string& text) {
  std::vector<ModelSpec> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string piece = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    pos = comma == std::string::npos ? text.size() : comma + 1;
    if (!piece.empty()) out.push_back(parse_model_spec(piece));
  }
  if (out.empty()) throw Error("no models given");
  return out;
}

}  // namespace lmsmooth::cli
