// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <string>
#include <vector>

#include "lmsmooth/baselines.hpp"
#include "lmsmooth/counts.hpp"
#include "lmsmooth/deleted_estimation.hpp"
#include "lmsmooth/dirichlet.hpp"
#include "lmsmooth/eval.hpp"

namespace lmsmooth::io {

/// Fixed "%.15g" rendering used by every numeric file format.
std::string fmt_g15(double v);

/// FNV-1a (64-bit) of a file's bytes as 16 hex digits, for run manifests.
std::string file_digest(const std::string& path);

// --- token streams: one sentence per line, tokens space-separated -------

std::vector<Sentence> read_sentences(const std::string& path);
void write_sentences(const std::string& path, const std::vector<Sentence>& sentences);

// --- count and frequency files ------------------------------------------
// stem.tok.counts: "count token" sorted by token
// stem.bigr.counts: "count j i" sorted by (j, i)
// stem.tok.freq / stem.bigr.freq: same layouts with %.15g frequencies

void write_counts(const CountTable& table, const std::string& stem);
CountTable read_counts(const std::string& stem);
void write_freqs(const FreqView& view, const std::string& stem);

// --- model files ----------------------------------------------------------

/// "# key value" metadata header, then r lines "lambda_h h" (%.15g).
void write_lambda_model(const LambdaModel& model, const std::string& path);
LambdaModel read_lambda_model(const std::string& path);

/// First line "alpha value"; then "u_i token" sorted by token (%.15g).
void write_dirichlet_model(const DirichletModel& model, const std::string& path);
/// Rebinds the stored u values onto `vocab` (the training-count id space).
DirichletModel read_dirichlet_model(const std::string& path,
                                    std::shared_ptr<const Vocabulary> vocab);

/// Lines "r N_r" ascending, then "N0 value" and "N value".
void write_good_turing(const GoodTuringTable& table, const std::string& path);

// --- evaluation output ----------------------------------------------------

struct ModelInfo {
  std::string name;
  std::string type;
  std::vector<std::pair<std::string, std::string>> params;
};

/// TSV with header "sample\tmodel\tN\tlog2prob\tperplexity".
void write_report_tsv(const std::vector<EvalReport>& reports, const std::string& path);
void write_report_json(const std::vector<EvalReport>& reports,
                       const std::vector<ModelInfo>& models, const std::string& path);

/// "prob j i" (%.15g) for each distinct test bigram, sorted by (j, i).
void write_prob_dump(const ConditionalModel& model, const std::vector<Sentence>& test,
                     const std::string& path);

}  // namespace lmsmooth::io
