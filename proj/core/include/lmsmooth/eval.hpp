// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lmsmooth/baselines.hpp"
#include "lmsmooth/counts.hpp"
#include "lmsmooth/deleted_estimation.hpp"
#include "lmsmooth/dirichlet.hpp"

namespace lmsmooth {

/// A fully instantiated conditional bigram model: anything that can answer
/// q_{i|j} over a fixed vocabulary.
class ConditionalModel {
 public:
  virtual ~ConditionalModel() = default;
  virtual const std::string& name() const = 0;
  virtual const Vocabulary& vocab() const = 0;
  virtual double prob(WordId j, WordId i) const = 0;
};

class DeProbModel : public ConditionalModel {
 public:
  DeProbModel(std::string name, const LambdaModel& model, const FreqView& full)
      : name_(std::move(name)), model_(&model), full_(&full) {}
  const std::string& name() const override { return name_; }
  const Vocabulary& vocab() const override { return full_->vocab(); }
  double prob(WordId j, WordId i) const override { return de_prob(*model_, *full_, j, i); }

 private:
  std::string name_;
  const LambdaModel* model_;
  const FreqView* full_;
};

class DirProbModel : public ConditionalModel {
 public:
  DirProbModel(std::string name, const DirichletModel& model, const CountTable& counts)
      : name_(std::move(name)), model_(&model), counts_(&counts) {}
  const std::string& name() const override { return name_; }
  const Vocabulary& vocab() const override { return counts_->vocab(); }
  double prob(WordId j, WordId i) const override { return dir_prob(*model_, *counts_, j, i); }

 private:
  std::string name_;
  const DirichletModel* model_;
  const CountTable* counts_;
};

class AddKCondModel : public ConditionalModel {
 public:
  AddKCondModel(std::string name, const CountTable& counts, double k)
      : name_(std::move(name)), counts_(&counts), addk_(addk_cond(counts, k)) {}
  const std::string& name() const override { return name_; }
  const Vocabulary& vocab() const override { return counts_->vocab(); }
  double prob(WordId j, WordId i) const override { return addk_.prob(j, i); }

 private:
  std::string name_;
  const CountTable* counts_;
  AddKCond addk_;
};

/// Uniform q = 1/V over the outcome vocabulary, for sanity checks.
class UniformModel : public ConditionalModel {
 public:
  UniformModel(std::string name, std::shared_ptr<const Vocabulary> vocab)
      : name_(std::move(name)), vocab_(std::move(vocab)) {}
  const std::string& name() const override { return name_; }
  const Vocabulary& vocab() const override { return *vocab_; }
  double prob(WordId, WordId) const override {
    return 1.0 / static_cast<double>(vocab_->size() - 1);
  }

 private:
  std::string name_;
  std::shared_ptr<const Vocabulary> vocab_;
};

struct LogProbResult {
  double log2_prob = 0.0;  // -inf when any event has probability zero
  Count n = 0;             // bigram events scored
  // Bigrams assigned probability zero (capped list, token pairs).
  std::vector<std::pair<std::string, std::string>> zero_bigrams;
};

/// Scores the test sentences under the model: sum of log2 q over adjacent
/// pairs, computed in the grouped count form with a fixed summation order.
/// Throws OovError on tokens outside the model vocabulary.
LogProbResult corpus_logprob(const ConditionalModel& model, const std::vector<Sentence>& test);

/// 2^(-log2_prob / n); +inf when log2_prob = -inf. Throws EmptyTest if n = 0.
double perplexity(double log2_prob, Count n);

struct EvalReport {
  std::string sample;
  std::string model;
  Count n = 0;
  double log2_prob = 0.0;
  double perplexity = 0.0;
  Count oov_sentences_skipped = 0;
  std::vector<std::pair<std::string, std::string>> zero_bigrams;
};

struct NamedSample {
  std::string name;
  const std::vector<Sentence>* sentences;
  Count oov_sentences_skipped = 0;
};

/// Scores every model on every sample. Samples must be pre-filtered to the
/// model vocabulary.
std::vector<EvalReport> compare(const std::vector<const ConditionalModel*>& models,
                                const std::vector<NamedSample>& samples);

}  // namespace lmsmooth
