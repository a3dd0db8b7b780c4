// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lmsmooth/textprep.hpp"
#include "lmsmooth/vocab.hpp"

namespace lmsmooth {

using BigramKey = std::uint64_t;

constexpr BigramKey bigram_key(WordId j, WordId i) {
  return (static_cast<BigramKey>(j) << 32) | i;
}
constexpr WordId bigram_context(BigramKey k) { return static_cast<WordId>(k >> 32); }
constexpr WordId bigram_outcome(BigramKey k) { return static_cast<WordId>(k & 0xffffffffu); }

/// Sparse unigram counts F_j and bigram counts F_{i|j}. Zero-count bigrams
/// are never stored. For every context j other than "</s>", the unigram
/// count equals the row sum of its bigrams.
class CountTable {
 public:
  CountTable() : vocab_(std::make_shared<Vocabulary>()) {}
  explicit CountTable(std::shared_ptr<Vocabulary> vocab) : vocab_(std::move(vocab)) {
    unigram_.resize(vocab_->size(), 0);
  }

  const Vocabulary& vocab() const { return *vocab_; }
  std::shared_ptr<Vocabulary> vocab_ptr() const { return vocab_; }

  Count unigram(WordId id) const { return id < unigram_.size() ? unigram_[id] : 0; }
  Count bigram(WordId j, WordId i) const {
    auto it = bigram_.find(bigram_key(j, i));
    return it == bigram_.end() ? 0 : it->second;
  }

  void add_unigram(WordId id, Count c);
  void add_bigram(WordId j, WordId i, Count c);

  const std::unordered_map<BigramKey, Count>& bigrams() const { return bigram_; }
  const std::vector<Count>& unigrams() const { return unigram_; }

  /// Bigram entries sorted by (j, i) id pairs; the deterministic iteration
  /// order used for every floating-point reduction over the table.
  std::vector<std::pair<BigramKey, Count>> bigrams_sorted() const;

  bool empty() const { return bigram_.empty() && total_tokens() == 0; }
  Count total_tokens() const;
  /// Token total excluding "<s>" occurrences: the unigram-frequency denominator.
  Count denominator_total() const;

 private:
  std::shared_ptr<Vocabulary> vocab_;
  std::vector<Count> unigram_;
  std::unordered_map<BigramKey, Count> bigram_;

  friend CountTable count_block(const std::vector<Sentence>&, std::shared_ptr<Vocabulary>);
  friend CountTable merge_counts(const CountTable&, const CountTable&);
  friend CountTable leave_one_out(const CountTable&, const CountTable&);
};

/// Counts tokens and adjacent within-sentence bigrams. When `vocab` is
/// given, ids are interned into it (callers sharing one vocabulary across
/// blocks get a unified id space for free).
CountTable count_block(const std::vector<Sentence>& sentences,
                       std::shared_ptr<Vocabulary> vocab = nullptr);

/// Key-wise sum; the vocabularies are unified (b's tokens are remapped
/// into a's id space, extending it as needed).
CountTable merge_counts(const CountTable& a, const CountTable& b);

/// Key-wise difference total - block, dropping zero entries. The result
/// keeps the total's vocabulary. Throws UnderflowError if any block count
/// exceeds its total.
CountTable leave_one_out(const CountTable& total, const CountTable& block_k);

/// Relative frequencies over a count table. f(i) = F_i / sum_{j != <s>} F_j
/// for every token including "<s>" itself; cond(j, i) = F_{i|j} / F_j.
class FreqView {
 public:
  FreqView() = default;

  double unigram(WordId id) const { return id < f_.size() ? f_[id] : 0.0; }
  double cond(WordId j, WordId i) const {
    auto it = f_cond_.find(bigram_key(j, i));
    return it == f_cond_.end() ? 0.0 : it->second;
  }
  Count context_count(WordId j) const { return j < context_count_.size() ? context_count_[j] : 0; }
  Count denominator_total() const { return denom_; }
  const Vocabulary& vocab() const { return *vocab_; }
  std::shared_ptr<const Vocabulary> vocab_ptr() const { return vocab_; }
  const std::unordered_map<BigramKey, double>& cond_map() const { return f_cond_; }

 private:
  std::shared_ptr<const Vocabulary> vocab_;
  std::vector<double> f_;
  std::vector<Count> context_count_;
  std::unordered_map<BigramKey, double> f_cond_;
  Count denom_ = 0;

  friend FreqView freqs(const CountTable& table);
  friend FreqView zero_freqs(std::shared_ptr<const Vocabulary> vocab);
};

/// Throws EmptyCorpus when the denominator (tokens excluding "<s>") is zero.
FreqView freqs(const CountTable& table);

/// All-zero view over a vocabulary, for the degenerate single-block case
/// where the leave-one-out table is empty.
FreqView zero_freqs(std::shared_ptr<const Vocabulary> vocab);

/// Per-successor-word sufficient statistics for the Dirichlet fit, plus the
/// context count histogram feeding K(alpha).
struct DirichletStats {
  // Indexed by word id. n1[i] counts contexts j with F_{i|j} >= 1;
  // g[i] = sum_j sum_{k=1}^{F_{i|j}-1} 1/k, h[i] the same with 1/k^2.
  std::vector<Count> n1;
  std::vector<double> g;
  std::vector<double> h;
  // (F_j value, number of contexts with that count), F_j > 0, j != "</s>",
  // sorted by value.
  std::vector<std::pair<Count, Count>> fj_histogram;
  std::shared_ptr<const Vocabulary> vocab;

  Count num_contexts() const {
    Count n = 0;
    for (const auto& [value, mult] : fj_histogram) n += mult;
    return n;
  }
};

DirichletStats dirichlet_stats(const CountTable& table);

}  // namespace lmsmooth
