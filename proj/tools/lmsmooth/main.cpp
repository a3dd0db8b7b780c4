// Apache License, Version 2.0, refer to LICENSE.txt
//
// Corpus-to-perplexity front end: tokenize raw text, interleave blocks,
// count, fit the smoothing models, and compare them by test-set perplexity.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "lmsmooth/parallel.hpp"
#include "pipeline.hpp"

using namespace lmsmooth;
using namespace lmsmooth::cli;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::set<std::string> vocab_token_set(const Vocabulary& vocab) {
  std::set<std::string> out;
  for (std::size_t id = 0; id < vocab.size(); ++id) out.insert(vocab.word(static_cast<WordId>(id)));
  return out;
}

std::string block_path(const std::string& prefix, std::size_t k) {
  return prefix + std::to_string(k) + ".txt";
}

std::string sample_path(const std::string& prefix, int n) {
  return prefix + std::to_string(n) + ".txt";
}

CountTable load_table(const std::string& counts_stem, const std::string& corpus_path,
                      std::vector<std::string>& inputs) {
  if (!counts_stem.empty()) {
    inputs.push_back(counts_stem + ".tok.counts");
    inputs.push_back(counts_stem + ".bigr.counts");
    return io::read_counts(counts_stem);
  }
  inputs.push_back(corpus_path);
  return count_block(io::read_sentences(corpus_path));
}

struct EvalSetup {
  std::vector<BoundModel> models;
  std::vector<io::ModelInfo> infos;
  std::vector<const ConditionalModel*> adapters;
};

void finish_eval_setup(EvalSetup& setup) {
  for (auto& m : setup.models) {
    setup.infos.push_back(m.info);
    setup.adapters.push_back(m.adapter.get());
  }
}

int report_nonconvergence(const std::vector<BoundModel>& models) {
  for (const auto& m : models) {
    if (!m.converged) {
      std::cerr << "lmsmooth: model " << m.name << " did not converge within max-iter\n";
      return kExitNonConvergence;
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bigram smoothing toolkit: deleted estimation vs Dirichlet priors"};
  app.require_subcommand(1);
  int result = kExitOk;

  // ---- tokenize ----------------------------------------------------------
  auto* tok = app.add_subcommand("tokenize", "raw text -> sentence-per-line token stream");
  struct {
    std::string in, out, number_token = "#";
    bool no_apostrophe = false, join_wrapped = false;
  } tok_opts;
  tok->add_option("--in", tok_opts.in, "raw text, one sentence per line")->required();
  tok->add_option("--out", tok_opts.out, "tokenized output")->required();
  tok->add_option("--number-token", tok_opts.number_token, "mask for numeric tokens");
  tok->add_flag("--no-apostrophe-split", tok_opts.no_apostrophe, "keep apostrophe suffixes attached");
  tok->add_flag("--join-wrapped-lines", tok_opts.join_wrapped,
                "join continuation lines that start with a space");
  tok->callback([&] {
    TokenizerRules rules;
    rules.number_token = tok_opts.number_token;
    rules.apostrophe_suffix_split = !tok_opts.no_apostrophe;

    std::string text = read_file(tok_opts.in);
    if (tok_opts.join_wrapped) {
      std::string joined;
      joined.reserve(text.size());
      for (std::size_t n = 0; n < text.size(); ++n) {
        if (text[n] == '\n' && n + 1 < text.size() && text[n + 1] == ' ') continue;
        joined.push_back(text[n]);
      }
      text.swap(joined);
    }

    std::vector<Sentence> sentences;
    std::size_t skipped = 0;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      try {
        sentences.push_back(tokenize_sentence(line, rules));
      } catch (const EmptySentence&) {
        ++skipped;
      }
    }
    io::write_sentences(tok_opts.out, sentences);
    if (skipped) std::cerr << "tokenize: skipped " << skipped << " blank line(s)\n";

    Manifest m{"tokenize",
               {{"number_token", rules.number_token},
                {"apostrophe_suffix_split", rules.apostrophe_suffix_split ? "1" : "0"},
                {"join_wrapped_lines", tok_opts.join_wrapped ? "1" : "0"}},
               {tok_opts.in},
               {tok_opts.out}};
    m.write(tok_opts.out);
  });

  // ---- split -------------------------------------------------------------
  auto* split = app.add_subcommand("split", "interleave sentences into b blocks");
  struct {
    std::string in, out_prefix;
    std::size_t blocks = 9;
  } split_opts;
  split->add_option("--in", split_opts.in)->required();
  split->add_option("--blocks", split_opts.blocks, "number of blocks (default 9)");
  split->add_option("--out-prefix", split_opts.out_prefix, "writes <prefix><k>.txt")->required();
  split->callback([&] {
    auto sentences = io::read_sentences(split_opts.in);
    auto blocks = split_blocks(sentences, split_opts.blocks);
    std::vector<std::string> outputs;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      std::string path = block_path(split_opts.out_prefix, k);
      io::write_sentences(path, blocks[k]);
      outputs.push_back(path);
    }
    Manifest m{"split",
               {{"blocks", std::to_string(split_opts.blocks)}},
               {split_opts.in},
               outputs};
    m.write(split_opts.out_prefix);
  });

  // ---- count -------------------------------------------------------------
  auto* count = app.add_subcommand("count", "token and bigram counts for one file");
  struct {
    std::string in, out;
  } count_opts;
  count->add_option("--in", count_opts.in)->required();
  count->add_option("--out", count_opts.out, "output stem: <stem>.tok.counts, <stem>.bigr.counts")
      ->required();
  count->callback([&] {
    auto table = count_block(io::read_sentences(count_opts.in));
    io::write_counts(table, count_opts.out);
    Manifest m{"count",
               {},
               {count_opts.in},
               {count_opts.out + ".tok.counts", count_opts.out + ".bigr.counts"}};
    m.write(count_opts.out);
  });

  // ---- merge -------------------------------------------------------------
  auto* merge = app.add_subcommand("merge", "merge count files key-wise");
  struct {
    std::string out;
    std::vector<std::string> stems;
  } merge_opts;
  merge->add_option("--out", merge_opts.out)->required();
  merge->add_option("stems", merge_opts.stems, "count stems to merge")->required();
  merge->callback([&] {
    CountTable total;
    std::vector<std::string> inputs;
    for (const auto& stem : merge_opts.stems) {
      total = merge_counts(total, io::read_counts(stem));
      inputs.push_back(stem + ".tok.counts");
      inputs.push_back(stem + ".bigr.counts");
    }
    io::write_counts(total, merge_opts.out);
    Manifest m{"merge",
               {},
               inputs,
               {merge_opts.out + ".tok.counts", merge_opts.out + ".bigr.counts"}};
    m.write(merge_opts.out);
  });

  // ---- testprep ----------------------------------------------------------
  auto* testprep = app.add_subcommand("testprep", "build test samples 1/2/3");
  struct {
    std::vector<std::string> test, train;
    std::string out_prefix;
    bool keep_first = false;
  } tp_opts;
  testprep->add_option("--test", tp_opts.test, "tokenized test block file(s)")->required();
  testprep->add_option("--train", tp_opts.train, "tokenized training block file(s)")->required();
  testprep->add_option("--out-prefix", tp_opts.out_prefix, "writes <prefix>1.txt, 2, 3")
      ->required();
  testprep->add_flag("--keep-first", tp_opts.keep_first,
                     "keep one copy of within-test duplicates instead of dropping all");
  testprep->callback([&] {
    std::vector<Sentence> test, train;
    for (const auto& path : tp_opts.test) {
      auto part = io::read_sentences(path);
      test.insert(test.end(), part.begin(), part.end());
    }
    for (const auto& path : tp_opts.train) {
      auto part = io::read_sentences(path);
      train.insert(train.end(), part.begin(), part.end());
    }
    std::set<std::string> vocab;
    for (const auto& s : train)
      for (const auto& t : s) vocab.insert(t);

    auto sample1 = filter_oov(test, vocab);
    auto sample2 = dedup(sample1, train, tp_opts.keep_first);
    auto sample3 = half_sample(sample2);
    io::write_sentences(sample_path(tp_opts.out_prefix, 1), sample1);
    io::write_sentences(sample_path(tp_opts.out_prefix, 2), sample2);
    io::write_sentences(sample_path(tp_opts.out_prefix, 3), sample3);
    std::cerr << "testprep: " << test.size() << " test sentences; sample1 " << sample1.size()
              << " (oov dropped " << test.size() - sample1.size() << "); sample2 "
              << sample2.size() << "; sample3 " << sample3.size() << "\n";

    std::vector<std::string> inputs = tp_opts.test;
    inputs.insert(inputs.end(), tp_opts.train.begin(), tp_opts.train.end());
    Manifest m{"testprep",
               {{"keep_first", tp_opts.keep_first ? "1" : "0"}},
               inputs,
               {sample_path(tp_opts.out_prefix, 1), sample_path(tp_opts.out_prefix, 2),
                sample_path(tp_opts.out_prefix, 3)}};
    m.write(tp_opts.out_prefix);
  });

  // ---- train -------------------------------------------------------------
  auto* train = app.add_subcommand("train", "fit a smoothing model");
  train->require_subcommand(1);

  auto* train_de_cmd = train->add_subcommand("de", "deleted estimation lambdas");
  struct {
    std::vector<std::string> blocks;
    int r = 15;
    double range_max = 0.03, tol = 5e-9;
    int max_iter = 100;
    std::string out;
  } de_opts;
  train_de_cmd->add_option("--blocks", de_opts.blocks, "tokenized training block files")
      ->required();
  train_de_cmd->add_option("--r", de_opts.r, "number of lambda buckets (default 15)");
  train_de_cmd->add_option("--range-max", de_opts.range_max, "bucketed frequency range");
  train_de_cmd->add_option("--tol", de_opts.tol);
  train_de_cmd->add_option("--max-iter", de_opts.max_iter);
  train_de_cmd->add_option("--out", de_opts.out)->required();
  train_de_cmd->callback([&] {
    auto trained = train_de(de_opts.blocks, LambdaBuckets{de_opts.r, de_opts.range_max},
                            DeOptions{de_opts.tol, de_opts.max_iter});
    io::write_lambda_model(trained.model, de_opts.out);
    std::cerr << "train de: r=" << de_opts.r << " iterations=" << trained.model.iterations
              << " dropped_terms=" << trained.model.dropped_terms
              << (trained.model.converged ? "" : " (NOT CONVERGED)") << "\n";
    Manifest m{"train de",
               {{"r", std::to_string(de_opts.r)},
                {"range_max", io::fmt_g15(de_opts.range_max)},
                {"tol", io::fmt_g15(de_opts.tol)},
                {"max_iter", std::to_string(de_opts.max_iter)}},
               de_opts.blocks,
               {de_opts.out}};
    m.write(de_opts.out);
    if (!trained.model.converged) result = kExitNonConvergence;
  });

  auto* train_dir = train->add_subcommand("dirichlet", "Dirichlet hyperparameters (alpha, u)");
  struct {
    std::string counts, corpus, out;
    double alpha0 = 10.0, tol = 5e-9;
    int max_iter = 100;
  } dir_opts;
  train_dir->add_option("--counts", dir_opts.counts, "training count stem");
  train_dir->add_option("--corpus", dir_opts.corpus, "tokenized training corpus");
  train_dir->add_option("--alpha0", dir_opts.alpha0, "initial alpha (default 10)");
  train_dir->add_option("--tol", dir_opts.tol);
  train_dir->add_option("--max-iter", dir_opts.max_iter);
  train_dir->add_option("--out", dir_opts.out)->required();
  train_dir->callback([&] {
    if (dir_opts.counts.empty() == dir_opts.corpus.empty())
      throw Error("give exactly one of --counts or --corpus");
    std::vector<std::string> inputs;
    auto table = load_table(dir_opts.counts, dir_opts.corpus, inputs);
    auto model = fit(table, DirichletOptions{dir_opts.alpha0, dir_opts.tol, dir_opts.max_iter});
    io::write_dirichlet_model(model, dir_opts.out);
    std::cerr << "train dirichlet: alpha=" << io::fmt_g15(model.alpha)
              << " iterations=" << model.iterations << " clamped=" << model.clamped
              << (model.converged ? "" : " (NOT CONVERGED)") << "\n";
    Manifest m{"train dirichlet",
               {{"alpha0", io::fmt_g15(dir_opts.alpha0)},
                {"tol", io::fmt_g15(dir_opts.tol)},
                {"max_iter", std::to_string(dir_opts.max_iter)}},
               inputs,
               {dir_opts.out}};
    m.write(dir_opts.out);
    if (!model.converged) result = kExitNonConvergence;
  });

  // ---- baseline ----------------------------------------------------------
  auto* baseline = app.add_subcommand("baseline", "Good-Turing count-of-counts table");
  struct {
    std::string counts, corpus, out;
  } gt_opts;
  baseline->add_option("--counts", gt_opts.counts, "training count stem");
  baseline->add_option("--corpus", gt_opts.corpus, "tokenized training corpus");
  baseline->add_option("--out", gt_opts.out)->required();
  baseline->callback([&] {
    if (gt_opts.counts.empty() == gt_opts.corpus.empty())
      throw Error("give exactly one of --counts or --corpus");
    std::vector<std::string> inputs;
    auto table = load_table(gt_opts.counts, gt_opts.corpus, inputs);
    auto gt = good_turing(table);
    io::write_good_turing(gt, gt_opts.out);
    std::cerr << "baseline: N=" << gt.n << " N0=" << gt.n0 << " distinct classes "
              << gt.n_r.size() << "\n";
    Manifest m{"baseline", {}, inputs, {gt_opts.out}};
    m.write(gt_opts.out);
  });

  // ---- eval --------------------------------------------------------------
  auto* eval_cmd = app.add_subcommand("eval", "perplexity of a test file under one model");
  struct {
    std::string test, model, counts, out, json, dump_probs, sample_name;
  } eval_opts;
  eval_cmd->add_option("--test", eval_opts.test, "tokenized test file")->required();
  eval_cmd->add_option("--model", eval_opts.model,
                       "de:<lambda-file> | dirichlet:<model-file> | addk:<k> | uniform")
      ->required();
  eval_cmd->add_option("--counts", eval_opts.counts, "training count stem")->required();
  eval_cmd->add_option("--out", eval_opts.out, "TSV report")->required();
  eval_cmd->add_option("--json", eval_opts.json, "JSON report");
  eval_cmd->add_option("--dump-probs", eval_opts.dump_probs, "per-bigram probability dump");
  eval_cmd->add_option("--sample-name", eval_opts.sample_name, "label in the report");
  eval_cmd->callback([&] {
    std::vector<std::string> inputs{eval_opts.test, eval_opts.counts + ".tok.counts",
                                    eval_opts.counts + ".bigr.counts"};
    auto counts = io::read_counts(eval_opts.counts);
    auto view = freqs(counts);

    ModelSpec spec = parse_model_spec(eval_opts.model);
    BoundModel bound;
    bound.name = spec.raw;
    if (spec.kind == "de") {
      inputs.push_back(spec.arg);
      bound.lambda = std::make_shared<LambdaModel>(io::read_lambda_model(spec.arg));
      bound.adapter = std::make_unique<DeProbModel>(bound.name, *bound.lambda, view);
      bound.info = {bound.name,
                    "deleted_estimation",
                    {{"r", std::to_string(bound.lambda->buckets.r)},
                     {"range_max", io::fmt_g15(bound.lambda->buckets.range_max)},
                     {"iterations", std::to_string(bound.lambda->iterations)},
                     {"dropped_terms", std::to_string(bound.lambda->dropped_terms)}}};
    } else if (spec.kind == "dirichlet") {
      inputs.push_back(spec.arg);
      bound.dirichlet =
          std::make_shared<DirichletModel>(io::read_dirichlet_model(spec.arg, counts.vocab_ptr()));
      bound.adapter = std::make_unique<DirProbModel>(bound.name, *bound.dirichlet, counts);
      bound.info = {bound.name, "dirichlet", {{"alpha", io::fmt_g15(bound.dirichlet->alpha)}}};
    } else if (spec.kind == "addk") {
      bound.adapter = std::make_unique<AddKCondModel>(bound.name, counts, std::stod(spec.arg));
      bound.info = {bound.name, "addk", {{"k", spec.arg}}};
    } else {
      bound.adapter = std::make_unique<UniformModel>(bound.name, counts.vocab_ptr());
      bound.info = {bound.name, "uniform", {}};
    }

    auto test = io::read_sentences(eval_opts.test);
    auto kept = filter_oov(test, vocab_token_set(counts.vocab()));
    NamedSample sample{eval_opts.sample_name.empty() ? eval_opts.test : eval_opts.sample_name,
                       &kept, static_cast<Count>(test.size() - kept.size())};

    auto reports = compare({bound.adapter.get()}, {sample});
    io::write_report_tsv(reports, eval_opts.out);
    std::vector<std::string> outputs{eval_opts.out};
    if (!eval_opts.json.empty()) {
      io::write_report_json(reports, {bound.info}, eval_opts.json);
      outputs.push_back(eval_opts.json);
    }
    if (!eval_opts.dump_probs.empty()) {
      io::write_prob_dump(*bound.adapter, kept, eval_opts.dump_probs);
      outputs.push_back(eval_opts.dump_probs);
    }
    for (const auto& r : reports) {
      std::cout << r.sample << '\t' << r.model << '\t' << r.n << '\t' << io::fmt_g15(r.log2_prob)
                << '\t' << io::fmt_g15(r.perplexity) << '\n';
    }
    Manifest m{"eval", {{"model", eval_opts.model}}, inputs, outputs};
    m.write(eval_opts.out);
  });

  // ---- compare -----------------------------------------------------------
  auto* cmp = app.add_subcommand("compare", "train on blocks, evaluate on samples, tabulate");
  struct {
    std::vector<std::string> blocks;
    std::string train_range = "0-5", test_range = "6-8";
    std::string models = "de:15,dirichlet";
    std::string samples = "1,2,3";
    double range_max = 0.03, alpha0 = 10.0, tol = 5e-9;
    int max_iter = 100;
    bool keep_first = false;
    std::string out, json;
  } cmp_opts;
  cmp->add_option("--blocks", cmp_opts.blocks, "all tokenized block files, in order")->required();
  cmp->add_option("--train-blocks", cmp_opts.train_range, "train block indices (default 0-5)");
  cmp->add_option("--test-blocks", cmp_opts.test_range, "test block indices (default 6-8)");
  cmp->add_option("--models", cmp_opts.models, "comma list: de:<r>, dirichlet, addk:<k>, uniform");
  cmp->add_option("--samples", cmp_opts.samples, "which samples to score (default 1,2,3)");
  cmp->add_option("--range-max", cmp_opts.range_max);
  cmp->add_option("--alpha0", cmp_opts.alpha0);
  cmp->add_option("--tol", cmp_opts.tol);
  cmp->add_option("--max-iter", cmp_opts.max_iter);
  cmp->add_flag("--keep-first", cmp_opts.keep_first);
  cmp->add_option("--out", cmp_opts.out, "TSV report")->required();
  cmp->add_option("--json", cmp_opts.json, "JSON report");
  cmp->callback([&] {
    auto train_idx = parse_index_range(cmp_opts.train_range);
    auto test_idx = parse_index_range(cmp_opts.test_range);
    for (std::size_t v : train_idx)
      for (std::size_t w : test_idx)
        if (v == w) throw Error("train and test blocks overlap at index " + std::to_string(v));
    for (std::size_t v : train_idx)
      if (v >= cmp_opts.blocks.size()) throw Error("train block index out of range");
    for (std::size_t v : test_idx)
      if (v >= cmp_opts.blocks.size()) throw Error("test block index out of range");

    std::vector<std::string> train_files, test_files;
    for (std::size_t v : train_idx) train_files.push_back(cmp_opts.blocks[v]);
    for (std::size_t v : test_idx) test_files.push_back(cmp_opts.blocks[v]);

    BlockCounts train_blocks = count_block_files(train_files);
    std::vector<Sentence> train_sentences;
    for (const auto& part : train_blocks.sentences)
      train_sentences.insert(train_sentences.end(), part.begin(), part.end());
    std::vector<Sentence> test;
    for (const auto& path : test_files) {
      auto part = io::read_sentences(path);
      test.insert(test.end(), part.begin(), part.end());
    }

    auto vocab_set = vocab_token_set(train_blocks.total.vocab());
    auto sample1 = filter_oov(test, vocab_set);
    Count oov_skipped = static_cast<Count>(test.size() - sample1.size());
    auto sample2 = dedup(sample1, train_sentences, cmp_opts.keep_first);
    auto sample3 = half_sample(sample2);

    std::vector<NamedSample> samples;
    for (std::size_t v : parse_index_range(cmp_opts.samples)) {
      switch (v) {
        case 1: samples.push_back({"sample1", &sample1, oov_skipped}); break;
        case 2: samples.push_back({"sample2", &sample2, oov_skipped}); break;
        case 3: samples.push_back({"sample3", &sample3, oov_skipped}); break;
        default: throw Error("samples must be drawn from {1,2,3}");
      }
    }

    FreqView full = freqs(train_blocks.total);
    std::vector<BoundModel> models;
    for (const ModelSpec& spec : parse_model_list(cmp_opts.models)) {
      BoundModel bound;
      bound.name = spec.raw;
      if (spec.kind == "de") {
        int r = std::stoi(spec.arg);
        auto model = std::make_shared<LambdaModel>(train_de_from_blocks(
            train_blocks, LambdaBuckets{r, cmp_opts.range_max},
            DeOptions{cmp_opts.tol, cmp_opts.max_iter}));
        bound.converged = model->converged;
        bound.lambda = model;
        bound.adapter = std::make_unique<DeProbModel>(bound.name, *model, full);
        bound.info = {bound.name,
                      "deleted_estimation",
                      {{"r", std::to_string(r)},
                       {"range_max", io::fmt_g15(cmp_opts.range_max)},
                       {"iterations", std::to_string(model->iterations)},
                       {"dropped_terms", std::to_string(model->dropped_terms)},
                       {"converged", model->converged ? "1" : "0"}}};
      } else if (spec.kind == "dirichlet") {
        auto model = std::make_shared<DirichletModel>(
            fit(train_blocks.total,
                DirichletOptions{cmp_opts.alpha0, cmp_opts.tol, cmp_opts.max_iter}));
        bound.converged = model->converged;
        bound.dirichlet = model;
        bound.adapter = std::make_unique<DirProbModel>(bound.name, *model, train_blocks.total);
        bound.info = {bound.name,
                      "dirichlet",
                      {{"alpha", io::fmt_g15(model->alpha)},
                       {"iterations", std::to_string(model->iterations)},
                       {"clamped_u", std::to_string(model->clamped)},
                       {"converged", model->converged ? "1" : "0"}}};
      } else if (spec.kind == "addk") {
        bound.adapter =
            std::make_unique<AddKCondModel>(bound.name, train_blocks.total, std::stod(spec.arg));
        bound.info = {bound.name, "addk", {{"k", spec.arg}}};
      } else {
        bound.adapter = std::make_unique<UniformModel>(bound.name, train_blocks.total.vocab_ptr());
        bound.info = {bound.name, "uniform", {}};
      }
      models.push_back(std::move(bound));
    }

    EvalSetup setup;
    setup.models = std::move(models);
    finish_eval_setup(setup);
    auto reports = compare(setup.adapters, samples);
    io::write_report_tsv(reports, cmp_opts.out);
    std::vector<std::string> outputs{cmp_opts.out};
    if (!cmp_opts.json.empty()) {
      io::write_report_json(reports, setup.infos, cmp_opts.json);
      outputs.push_back(cmp_opts.json);
    }
    for (const auto& r : reports) {
      std::cout << r.sample << '\t' << r.model << '\t' << r.n << '\t' << io::fmt_g15(r.log2_prob)
                << '\t' << io::fmt_g15(r.perplexity) << '\n';
    }

    std::vector<std::string> inputs = cmp_opts.blocks;
    Manifest m{"compare",
               {{"train_blocks", cmp_opts.train_range},
                {"test_blocks", cmp_opts.test_range},
                {"models", cmp_opts.models},
                {"samples", cmp_opts.samples},
                {"range_max", io::fmt_g15(cmp_opts.range_max)},
                {"alpha0", io::fmt_g15(cmp_opts.alpha0)},
                {"tol", io::fmt_g15(cmp_opts.tol)},
                {"max_iter", std::to_string(cmp_opts.max_iter)},
                {"keep_first", cmp_opts.keep_first ? "1" : "0"}},
               inputs,
               outputs};
    m.write(cmp_opts.out);
    int rc = report_nonconvergence(setup.models);
    if (rc != kExitOk) result = rc;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const lmsmooth::Error& e) {
    std::cerr << "lmsmooth: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "lmsmooth: " << e.what() << "\n";
    return kExitData;
  }
  return result;
}
