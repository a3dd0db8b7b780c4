// Apache License, Version 2.0, refer to LICENSE.txt
#include "lmsmooth/deleted_estimation.hpp"

#include <cfloat>
#include <cmath>
#include <map>

#include "lmsmooth/parallel.hpp"

namespace lmsmooth {

namespace {

// One (l, l') accumulation for a single term. Zero mixtures use the
// FLT_MAX sentinel convention so they stay summable in double arithmetic.
inline void accumulate(const LikelihoodTerm& t, double lambda, double& l, double& lp) {
  double den = lambda * t.u + t.v;
  if (den <= 0.0) {
    l += -FLT_MAX;
    if (t.u > 0.0)
      lp += FLT_MAX;
    else if (t.u < 0.0)
      lp += -FLT_MAX;
    return;
  }
  double w = static_cast<double>(t.weight);
  l += w * std::log(den);
  lp += w * t.u / den;
}

}  // namespace

TermBuild build_terms(const std::vector<HeldOutBlock>& blocks, const LambdaBuckets& buckets) {
  std::vector<TermBuild> partial(blocks.size());
  par::parallel_for(blocks.size(), [&](std::size_t k) {
    const auto& block = blocks[k];
    const FreqView& loo = *block.loo;
    // Aggregate the block's bigram events; the ordered map fixes the
    // term order regardless of thread count.
    std::map<std::pair<WordId, WordId>, Count> events;
    for (const auto& s : *block.sentences) {
      WordId prev = 0;
      for (std::size_t y = 0; y < s.size(); ++y) {
        WordId id = loo.vocab().require(s[y]);
        if (y > 0) ++events[{prev, id}];
        prev = id;
      }
    }
    TermBuild& out = partial[k];
    out.terms.reserve(events.size());
    for (const auto& [ji, count] : events) {
      auto [j, i] = ji;
      double fi = loo.unigram(i);
      double fcond = loo.cond(j, i);
      if (fi == 0.0 && fcond == 0.0) {
        out.dropped += count;
        continue;
      }
      LikelihoodTerm t;
      t.u = fi - fcond;
      t.v = fcond;
      t.weight = count;
      t.bucket = buckets.bucket(loo.unigram(j));
      out.terms.push_back(t);
    }
  });

  TermBuild all;
  for (auto& p : partial) {
    all.dropped += p.dropped;
    all.terms.insert(all.terms.end(), p.terms.begin(), p.terms.end());
  }
  return all;
}

std::vector<std::pair<double, double>> loglik_and_deriv(
    const std::vector<LikelihoodTerm>& terms, const std::vector<double>& lambdas, int r) {
  std::vector<std::pair<double, double>> out(static_cast<std::size_t>(r), {0.0, 0.0});
  for (const auto& t : terms) {
    auto& [l, lp] = out[static_cast<std::size_t>(t.bucket - 1)];
    accumulate(t, lambdas[static_cast<std::size_t>(t.bucket - 1)], l, lp);
  }
  return out;
}

std::vector<LambdaBracket> init_brackets(const std::vector<LikelihoodTerm>& terms, int r) {
  auto at = [&](double lambda) {
    return loglik_and_deriv(terms, std::vector<double>(static_cast<std::size_t>(r), lambda), r);
  };
  auto p0 = at(0.0), p25 = at(0.25), p5 = at(0.5), p75 = at(0.75), p1 = at(1.0);

  std::vector<LambdaBracket> out(static_cast<std::size_t>(r));
  for (std::size_t h = 0; h < out.size(); ++h) {
    double l0 = p0[h].first, l1 = p1[h].first;
    double lp0 = p0[h].second, lp25 = p25[h].second, lp5 = p5[h].second;
    double lp75 = p75[h].second, lp1 = p1[h].second;
    LambdaBracket b;
    if (lp25 == 0.0) {
      b = {0.25, true, 0.0, 0.0};
    } else if (lp5 == 0.0) {
      b = {0.5, true, 0.0, 0.0};
    } else if (lp75 == 0.0) {
      b = {0.75, true, 0.0, 0.0};
    } else if ((lp0 < 0.0 && lp1 > 0.0) || (lp0 > 0.0 && lp1 < 0.0)) {
      // A zero of l' lies inside; start at the midpoint of the quarter
      // interval where the sign flips.
      if ((lp0 < 0.0) != (lp25 < 0.0))
        b = {0.125, false, 0.25, 0.0};
      else if ((lp25 < 0.0) != (lp5 < 0.0))
        b = {0.375, false, 0.5, 0.25};
      else if ((lp5 < 0.0) != (lp75 < 0.0))
        b = {0.625, false, 0.75, 0.5};
      else
        b = {0.875, false, 1.0, 0.75};
    } else if (l0 > l1) {
      b = {0.0, true, 0.0, 0.0};
    } else {
      b = {1.0, true, 0.0, 0.0};
    }
    out[h] = b;
  }
  return out;
}

LambdaModel optimize(const std::vector<LikelihoodTerm>& terms, const LambdaBuckets& buckets,
                     const DeOptions& opts) {
  int r = buckets.r;
  // Per-bucket term lists; search steps touch only their own bucket.
  std::vector<std::vector<LikelihoodTerm>> by_bucket(static_cast<std::size_t>(r));
  for (const auto& t : terms) by_bucket[static_cast<std::size_t>(t.bucket - 1)].push_back(t);

  LambdaModel model;
  model.buckets = buckets;
  model.brackets = init_brackets(terms, r);
  model.lambdas.resize(static_cast<std::size_t>(r));
  for (std::size_t h = 0; h < model.lambdas.size(); ++h)
    model.lambdas[h] = model.brackets[h].lambda;

  model.converged = false;
  std::vector<double> deltas(static_cast<std::size_t>(r));
  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    model.iterations = iter;
    par::parallel_for(static_cast<std::size_t>(r), [&](std::size_t h) {
      LambdaBracket& b = model.brackets[h];
      deltas[h] = 0.0;
      if (b.final_) return;
      double l = 0.0, lp = 0.0;
      for (const auto& t : by_bucket[h]) accumulate(t, b.lambda, l, lp);
      if (lp > 0.0) {
        b.min = b.lambda;
      } else if (lp < 0.0) {
        b.max = b.lambda;
      } else {
        b.final_ = true;
        return;
      }
      double next = (b.max + b.min) / 2.0;
      deltas[h] = std::fabs(next - b.lambda);
      b.lambda = next;
      model.lambdas[h] = next;
    });
    double total = 0.0;
    for (double d : deltas) total += d;
    if (total < opts.tol * r) {
      model.converged = true;
      break;
    }
  }
  return model;
}

double de_prob(const LambdaModel& model, const FreqView& full, WordId j, WordId i) {
  if (j >= full.vocab().size() || i >= full.vocab().size())
    throw OovError("word id outside vocabulary");
  double lambda = model.lambda_for(full.unigram(j));
  return lambda * full.unigram(i) + (1.0 - lambda) * full.cond(j, i);
}

}  // namespace lmsmooth
