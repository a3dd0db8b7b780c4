// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lmsmooth/counts.hpp"
#include "lmsmooth/deleted_estimation.hpp"
#include "lmsmooth/textprep.hpp"

namespace testutil {

using lmsmooth::BigramKey;
using lmsmooth::Count;
using lmsmooth::CountTable;
using lmsmooth::FreqView;
using lmsmooth::Sentence;
using lmsmooth::WordId;

// Hand-rolled generator (splitmix64) so random tests reproduce exactly on
// any implementation; never seeded from the clock.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

 private:
  std::uint64_t state_;
};

inline std::string word_label(std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "w%04zu", i);
  return buf;
}

/// Random sentences over a vocabulary of `w` synthetic words; sentence
/// lengths 1..max_len interior tokens.
inline std::vector<Sentence> random_corpus(Rng& rng, std::size_t w, std::size_t approx_tokens,
                                           std::size_t max_len = 12) {
  std::vector<Sentence> out;
  std::size_t tokens = 0;
  while (tokens < approx_tokens) {
    std::size_t len = 1 + rng.below(max_len);
    Sentence s;
    s.emplace_back(lmsmooth::kBosToken);
    for (std::size_t y = 0; y < len; ++y) s.push_back(word_label(rng.below(w)));
    s.emplace_back(lmsmooth::kEosToken);
    tokens += s.size();
    out.push_back(std::move(s));
  }
  return out;
}

// ---- independent oracles -------------------------------------------------

/// Digamma oracle: recurrence lift to x >= 6, then Richardson-extrapolated
/// central differences of std::lgamma. Independent of the production
/// series; absolute error around 1e-12.
inline double oracle_digamma(double x) {
  double acc = 0.0;
  while (x < 6.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  auto central = [&](double h) { return (std::lgamma(x + h) - std::lgamma(x - h)) / (2.0 * h); };
  double d1 = central(1e-3);
  double d2 = central(5e-4);
  return acc + (4.0 * d2 - d1) / 3.0;
}

/// Exact Psi(x + n) - Psi(x) for integer n >= 0 via the recurrence
/// telescoping; pure arithmetic, summed small-to-large.
inline double psi_diff_exact(double x, Count n) {
  double sum = 0.0;
  for (Count k = n; k-- > 0;) sum += 1.0 / (x + static_cast<double>(k));
  return sum;
}

/// G_i and H_i via the cumulative N_fi table (the alternative route kept
/// as an oracle against the direct per-context summation).
struct GhOracle {
  std::vector<double> g, h;
  std::vector<std::map<Count, Count>> n_fi;  // per word id: f -> N_fi (cumulative)
};

inline GhOracle oracle_gh_cumulative(const CountTable& table) {
  std::size_t w = table.vocab().size();
  GhOracle out;
  out.g.assign(w, 0.0);
  out.h.assign(w, 0.0);
  out.n_fi.assign(w, {});

  // N_fi = #{j : F_{i|j} >= f}, computed by bucketing the exact counts
  // and suffix-summing.
  std::vector<std::map<Count, Count>> exact(w);
  for (const auto& [key, c] : table.bigrams_sorted()) {
    ++exact[lmsmooth::bigram_outcome(key)][c];
  }
  for (std::size_t i = 0; i < w; ++i) {
    if (exact[i].empty()) continue;
    Count maxf = exact[i].rbegin()->first;
    Count running = 0;
    for (Count f = maxf; f >= 1; --f) {
      auto it = exact[i].find(f);
      if (it != exact[i].end()) running += it->second;
      out.n_fi[i][f] = running;
    }
    for (Count f = 2; f <= maxf; ++f) {
      double nf = static_cast<double>(out.n_fi[i].at(f));
      double fm1 = static_cast<double>(f - 1);
      out.g[i] += nf / fm1;
      out.h[i] += nf / (fm1 * fm1);
    }
  }
  return out;
}

/// Dirichlet-multinomial corpus mass by telescoping products
/// Gamma(x+n)/Gamma(x) = prod_{t<n} (x+t); no lgamma involved.
inline double oracle_dm_log_evidence(const std::vector<double>& u, const CountTable& table) {
  double alpha = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (i != lmsmooth::Vocabulary::kBos) alpha += u[i];

  std::map<WordId, std::map<WordId, Count>> rows;
  for (const auto& [key, c] : table.bigrams_sorted())
    rows[lmsmooth::bigram_context(key)][lmsmooth::bigram_outcome(key)] = c;

  double log_total = 0.0;
  for (const auto& [j, row] : rows) {
    double log_num = 0.0;
    for (const auto& [i, c] : row) {
      for (Count t = 0; t < c; ++t) log_num += std::log(u[i] + static_cast<double>(t));
    }
    double log_den = 0.0;
    Count fj = table.unigram(j);
    for (Count t = 0; t < fj; ++t) log_den += std::log(alpha + static_cast<double>(t));
    log_total += log_num - log_den;
  }
  return log_total;
}

/// Flat per-event mixture terms enumerated straight from the held-out
/// sentences, one entry per token event (no aggregation); the independent
/// route checked against the weighted-term path. Events with zero mixture
/// support everywhere are skipped, matching the dropped-term convention.
struct DeEvent {
  double u, v;
  int bucket;
};

inline std::vector<DeEvent> oracle_de_events(const std::vector<lmsmooth::HeldOutBlock>& blocks,
                                             const lmsmooth::LambdaBuckets& buckets) {
  std::vector<DeEvent> events;
  for (const auto& block : blocks) {
    const FreqView& loo = *block.loo;
    for (const auto& s : *block.sentences) {
      for (std::size_t y = 1; y < s.size(); ++y) {
        WordId j = loo.vocab().require(s[y - 1]);
        WordId i = loo.vocab().require(s[y]);
        double fi = loo.unigram(i);
        double fcond = loo.cond(j, i);
        if (fi == 0.0 && fcond == 0.0) continue;
        events.push_back({fi - fcond, fcond, buckets.bucket(loo.unigram(j))});
      }
    }
  }
  return events;
}

/// Per-bucket (l, l') over per-event terms at the given per-bucket lambdas.
inline std::vector<std::pair<double, double>> oracle_de_loglik(
    const std::vector<DeEvent>& events, int r, const std::vector<double>& lambdas) {
  std::vector<std::pair<double, double>> out(static_cast<std::size_t>(r), {0.0, 0.0});
  for (const auto& e : events) {
    double lambda = lambdas[static_cast<std::size_t>(e.bucket - 1)];
    double den = lambda * e.u + e.v;
    auto& [l, lp] = out[static_cast<std::size_t>(e.bucket - 1)];
    if (den <= 0.0) {
      l += -3.4e38;
      lp += e.u > 0 ? 3.4e38 : e.u < 0 ? -3.4e38 : 0.0;
    } else {
      l += std::log(den);
      lp += e.u / den;
    }
  }
  return out;
}

/// Per-event test-corpus scoring, the oracle for the grouped form.
template <typename Model>
inline std::pair<double, Count> oracle_per_event_logprob(const Model& model,
                                                         const std::vector<Sentence>& test) {
  double sum = 0.0;
  Count n = 0;
  for (const auto& s : test) {
    for (std::size_t y = 1; y < s.size(); ++y) {
      WordId j = model.vocab().require(s[y - 1]);
      WordId i = model.vocab().require(s[y]);
      sum += std::log2(model.prob(j, i));
      ++n;
    }
  }
  return {sum, n};
}

}  // namespace testutil
