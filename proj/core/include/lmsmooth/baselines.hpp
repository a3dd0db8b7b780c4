// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <map>

#include "lmsmooth/counts.hpp"

namespace lmsmooth {

/// Initial-counts smoothing as a joint distribution over the possible
/// bigram set (contexts != "</s>" cross outcomes != "<s>").
struct AddKJoint {
  const CountTable* counts;
  double k;
  Count possible;  // size of the possible-bigram set
  Count events;    // total observed bigram occurrences

  double prob(WordId j, WordId i) const {
    return (k + static_cast<double>(counts->bigram(j, i))) /
           (k * static_cast<double>(possible) + static_cast<double>(events));
  }
};

AddKJoint addk_joint(const CountTable& counts, double k);

/// Row-conditional adapter: q_{i|j} = (k + F_{i|j}) / (k W_out + F_j) with
/// W_out the outcome-vocabulary size. Rows sum to one by construction.
struct AddKCond {
  const CountTable* counts;
  double k;
  Count w_out;  // outcome vocabulary size (everything but "<s>")

  double prob(WordId j, WordId i) const {
    return (k + static_cast<double>(counts->bigram(j, i))) /
           (k * static_cast<double>(w_out) + static_cast<double>(counts->unigram(j)));
  }
};

AddKCond addk_cond(const CountTable& counts, double k);

/// Count-of-counts table for the Good-Turing estimator.
struct GoodTuringTable {
  Count n = 0;                  // total bigram occurrences, sum r * N_r
  std::map<Count, Count> n_r;   // count value r -> number of distinct bigrams
  Count n0 = 0;                 // possible but unseen bigrams

  Count n_at(Count r) const {
    auto it = n_r.find(r);
    return it == n_r.end() ? 0 : it->second;
  }

  /// Probability of one bigram observed r times. Throws UndefinedClass
  /// when N_{r+1} = 0 (the estimate would be zero).
  double prob_for_count(Count r) const;

  /// Probability of one unseen bigram: N_1 / (N_0 N). Throws
  /// DegenerateVocabulary when N_0 = 0 while N_1 > 0.
  double prob_unseen() const;
};

GoodTuringTable good_turing(const CountTable& counts);

}  // namespace lmsmooth
