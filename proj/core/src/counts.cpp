// Apache License, Version 2.0, refer to LICENSE.txt
#include "lmsmooth/counts.hpp"

#include <algorithm>
#include <map>

namespace lmsmooth {

void CountTable::add_unigram(WordId id, Count c) {
  if (unigram_.size() < vocab_->size()) unigram_.resize(vocab_->size(), 0);
  unigram_[id] += c;
}

void CountTable::add_bigram(WordId j, WordId i, Count c) {
  if (c == 0) return;
  bigram_[bigram_key(j, i)] += c;
}

std::vector<std::pair<BigramKey, Count>> CountTable::bigrams_sorted() const {
  std::vector<std::pair<BigramKey, Count>> out(bigram_.begin(), bigram_.end());
  std::sort(out.begin(), out.end());
  return out;
}

Count CountTable::total_tokens() const {
  Count n = 0;
  for (Count c : unigram_) n += c;
  return n;
}

Count CountTable::denominator_total() const {
  Count n = 0;
  for (std::size_t id = 0; id < unigram_.size(); ++id) {
    if (id != Vocabulary::kBos) n += unigram_[id];
  }
  return n;
}

CountTable count_block(const std::vector<Sentence>& sentences,
                       std::shared_ptr<Vocabulary> vocab) {
  CountTable table(vocab ? std::move(vocab) : std::make_shared<Vocabulary>());
  for (const auto& s : sentences) {
    WordId prev = 0;
    for (std::size_t y = 0; y < s.size(); ++y) {
      WordId id = table.vocab_->intern(s[y]);
      table.add_unigram(id, 1);
      if (y > 0) table.add_bigram(prev, id, 1);
      prev = id;
    }
  }
  return table;
}

CountTable merge_counts(const CountTable& a, const CountTable& b) {
  CountTable out(std::make_shared<Vocabulary>(*a.vocab_));
  out.unigram_ = a.unigram_;
  out.unigram_.resize(out.vocab_->size(), 0);
  out.bigram_ = a.bigram_;

  std::vector<WordId> remap(b.vocab_->size());
  for (std::size_t id = 0; id < b.vocab_->size(); ++id) {
    remap[id] = out.vocab_->intern(b.vocab_->word(static_cast<WordId>(id)));
  }
  out.unigram_.resize(out.vocab_->size(), 0);
  for (std::size_t id = 0; id < b.unigram_.size(); ++id) {
    if (b.unigram_[id]) out.unigram_[remap[id]] += b.unigram_[id];
  }
  for (const auto& [key, c] : b.bigram_) {
    out.bigram_[bigram_key(remap[bigram_context(key)], remap[bigram_outcome(key)])] += c;
  }
  return out;
}

CountTable leave_one_out(const CountTable& total, const CountTable& block_k) {
  CountTable out(std::make_shared<Vocabulary>(*total.vocab_));
  out.unigram_ = total.unigram_;
  out.unigram_.resize(out.vocab_->size(), 0);
  out.bigram_ = total.bigram_;

  for (std::size_t id = 0; id < block_k.vocab_->size(); ++id) {
    Count c = block_k.unigram(static_cast<WordId>(id));
    if (c == 0) continue;
    const std::string& tok = block_k.vocab_->word(static_cast<WordId>(id));
    auto tid = out.vocab_->find(tok);
    if (!tid || out.unigram_[*tid] < c) {
      throw UnderflowError("block count exceeds total for token: " + tok);
    }
    out.unigram_[*tid] -= c;
  }
  for (const auto& [key, c] : block_k.bigram_) {
    const std::string& jt = block_k.vocab_->word(bigram_context(key));
    const std::string& it = block_k.vocab_->word(bigram_outcome(key));
    auto j = out.vocab_->find(jt);
    auto i = out.vocab_->find(it);
    if (!j || !i) throw UnderflowError("block bigram absent from total: " + jt + " " + it);
    auto entry = out.bigram_.find(bigram_key(*j, *i));
    if (entry == out.bigram_.end() || entry->second < c) {
      throw UnderflowError("block bigram count exceeds total: " + jt + " " + it);
    }
    entry->second -= c;
    if (entry->second == 0) out.bigram_.erase(entry);
  }
  return out;
}

FreqView freqs(const CountTable& table) {
  Count denom = table.denominator_total();
  if (denom == 0) throw EmptyCorpus("no countable tokens (denominator is zero)");

  FreqView view;
  view.vocab_ = table.vocab_ptr();
  view.denom_ = denom;
  view.context_count_ = table.unigrams();
  view.context_count_.resize(table.vocab().size(), 0);
  view.f_.resize(table.vocab().size(), 0.0);
  for (std::size_t id = 0; id < view.f_.size(); ++id) {
    view.f_[id] = static_cast<double>(table.unigram(static_cast<WordId>(id))) /
                  static_cast<double>(denom);
  }
  view.f_cond_.reserve(table.bigrams().size());
  for (const auto& [key, c] : table.bigrams()) {
    Count fj = table.unigram(bigram_context(key));
    view.f_cond_.emplace(key, static_cast<double>(c) / static_cast<double>(fj));
  }
  return view;
}

FreqView zero_freqs(std::shared_ptr<const Vocabulary> vocab) {
  FreqView view;
  view.vocab_ = std::move(vocab);
  view.f_.assign(view.vocab_->size(), 0.0);
  view.context_count_.assign(view.vocab_->size(), 0);
  return view;
}

DirichletStats dirichlet_stats(const CountTable& table) {
  DirichletStats stats;
  stats.vocab = table.vocab_ptr();
  std::size_t w = table.vocab().size();
  stats.n1.assign(w, 0);
  stats.g.assign(w, 0.0);
  stats.h.assign(w, 0.0);

  // G_i and H_i summed directly from per-context counts in sorted (i, j)
  // order so the floating-point result is independent of map layout.
  auto sorted = table.bigrams_sorted();
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return std::make_pair(bigram_outcome(a.first), bigram_context(a.first)) <
           std::make_pair(bigram_outcome(b.first), bigram_context(b.first));
  });
  for (const auto& [key, c] : sorted) {
    WordId i = bigram_outcome(key);
    stats.n1[i] += 1;
    for (Count k = 1; k < c; ++k) {
      double kd = static_cast<double>(k);
      stats.g[i] += 1.0 / kd;
      stats.h[i] += 1.0 / (kd * kd);
    }
  }

  std::map<Count, Count> hist;
  for (std::size_t id = 0; id < table.unigrams().size(); ++id) {
    if (id == Vocabulary::kEos) continue;
    Count fj = table.unigrams()[id];
    if (fj > 0) ++hist[fj];
  }
  stats.fj_histogram.assign(hist.begin(), hist.end());
  return stats;
}

}  // namespace lmsmooth
