// Apache License, Version 2.0, refer to LICENSE.txt
#include "lmsmooth/baselines.hpp"

namespace lmsmooth {

namespace {

// Possible-bigram set sizes: contexts exclude "</s>", outcomes exclude "<s>".
Count context_vocab_size(const CountTable& counts) {
  return static_cast<Count>(counts.vocab().size()) - 1;
}
Count outcome_vocab_size(const CountTable& counts) {
  return static_cast<Count>(counts.vocab().size()) - 1;
}

Count total_events(const CountTable& counts) {
  Count n = 0;
  for (const auto& [key, c] : counts.bigrams()) n += c;
  return n;
}

}  // namespace

AddKJoint addk_joint(const CountTable& counts, double k) {
  if (!(k > 0.0)) throw DomainError("addk_joint requires k > 0");
  return AddKJoint{&counts, k, context_vocab_size(counts) * outcome_vocab_size(counts),
                   total_events(counts)};
}

AddKCond addk_cond(const CountTable& counts, double k) {
  if (!(k > 0.0)) throw DomainError("addk_cond requires k > 0");
  return AddKCond{&counts, k, outcome_vocab_size(counts)};
}

double GoodTuringTable::prob_for_count(Count r) const {
  Count next = n_at(r + 1);
  if (next == 0)
    throw UndefinedClass("Good-Turing undefined for count " + std::to_string(r) +
                         ": N_{r+1} = 0");
  Count here = n_at(r);
  return static_cast<double>(r + 1) * static_cast<double>(next) /
         (static_cast<double>(here) * static_cast<double>(n));
}

double GoodTuringTable::prob_unseen() const {
  Count n1 = n_at(1);
  if (n0 == 0) {
    if (n1 > 0)
      throw DegenerateVocabulary("no unseen bigrams to receive the N_1/N mass");
    return 0.0;
  }
  return static_cast<double>(n1) / (static_cast<double>(n0) * static_cast<double>(n));
}

GoodTuringTable good_turing(const CountTable& counts) {
  GoodTuringTable table;
  Count observed_distinct = 0;
  for (const auto& [key, c] : counts.bigrams()) {
    ++table.n_r[c];
    table.n += c;
    ++observed_distinct;
  }
  Count possible = context_vocab_size(counts) * outcome_vocab_size(counts);
  table.n0 = possible >= observed_distinct ? possible - observed_distinct : 0;
  return table;
}

}  // namespace lmsmooth
