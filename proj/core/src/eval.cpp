// Apache License, Version 2.0, refer to LICENSE.txt
#include "lmsmooth/eval.hpp"

#include <cmath>
#include <limits>
#include <map>

namespace lmsmooth {

LogProbResult corpus_logprob(const ConditionalModel& model, const std::vector<Sentence>& test) {
  constexpr std::size_t kZeroListCap = 20;
  const Vocabulary& vocab = model.vocab();

  // Group the test events (the F^test * log2 q form); the ordered map
  // fixes the summation order.
  std::map<std::pair<WordId, WordId>, Count> events;
  LogProbResult out;
  for (const auto& s : test) {
    WordId prev = 0;
    for (std::size_t y = 0; y < s.size(); ++y) {
      WordId id = vocab.require(s[y]);
      if (y > 0) {
        ++events[{prev, id}];
        ++out.n;
      }
      prev = id;
    }
  }

  bool hit_zero = false;
  double sum = 0.0;
  for (const auto& [ji, count] : events) {
    double q = model.prob(ji.first, ji.second);
    if (q <= 0.0) {
      hit_zero = true;
      if (out.zero_bigrams.size() < kZeroListCap)
        out.zero_bigrams.emplace_back(vocab.word(ji.first), vocab.word(ji.second));
      continue;
    }
    sum += static_cast<double>(count) * std::log2(q);
  }
  out.log2_prob = hit_zero ? -std::numeric_limits<double>::infinity() : sum;
  return out;
}

double perplexity(double log2_prob, Count n) {
  if (n == 0) throw EmptyTest("perplexity undefined for an empty test sample");
  if (std::isinf(log2_prob) && log2_prob < 0) return std::numeric_limits<double>::infinity();
  return std::exp2(-log2_prob / static_cast<double>(n));
}

std::vector<EvalReport> compare(const std::vector<const ConditionalModel*>& models,
                                const std::vector<NamedSample>& samples) {
  std::vector<EvalReport> reports;
  reports.reserve(models.size() * samples.size());
  for (const auto& sample : samples) {
    for (const ConditionalModel* model : models) {
      LogProbResult lp = corpus_logprob(*model, *sample.sentences);
      EvalReport r;
      r.sample = sample.name;
      r.model = model->name();
      r.n = lp.n;
      r.log2_prob = lp.log2_prob;
      r.perplexity = perplexity(lp.log2_prob, lp.n);
      r.oov_sentences_skipped = sample.oov_sentences_skipped;
      r.zero_bigrams = std::move(lp.zero_bigrams);
      reports.push_back(std::move(r));
    }
  }
  return reports;
}

}  // namespace lmsmooth
