// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lmsmooth/counts.hpp"

namespace lmsmooth {

/// Maps a context's unigram frequency to a mixture-weight bucket in 1..r.
/// The expected frequency range [0, range_max] is cut into r equal
/// intervals; anything above range_max lands in bucket r.
struct LambdaBuckets {
  int r = 15;
  double range_max = 0.03;

  int bucket(double fj) const {
    int h = static_cast<int>(fj * r / range_max) + 1;
    return h > r ? r : h;
  }
};

/// One aggregated held-out event class: all occurrences of one bigram in
/// one held-out block share u = f_i - f_{i|j}, v = f_{i|j} (leave-one-out
/// frequencies) and a weight equal to the block count.
struct LikelihoodTerm {
  double u = 0.0;
  double v = 0.0;
  Count weight = 0;
  int bucket = 1;
};

struct LambdaBracket {
  double lambda = 0.0;
  bool final_ = false;
  double max = 1.0;
  double min = 0.0;
};

/// Fitted bucketed mixture weights.
struct LambdaModel {
  LambdaBuckets buckets;
  std::vector<double> lambdas;          // index h-1
  std::vector<LambdaBracket> brackets;  // end-of-fit search state
  int iterations = 0;
  bool converged = true;
  Count dropped_terms = 0;

  double lambda_for(double fj) const { return lambdas[buckets.bucket(fj) - 1]; }
};

struct HeldOutBlock {
  const std::vector<Sentence>* sentences;  // the held-out block
  const FreqView* loo;                     // frequencies with this block omitted
};

struct TermBuild {
  std::vector<LikelihoodTerm> terms;
  Count dropped = 0;  // events with f_i^k = 0 and f_{i|j}^k = 0
};

/// Aggregates held-out events into likelihood terms. The bucket comes from
/// the leave-one-out frequency of the preceding word. Events whose word is
/// unseen outside their own block (u = v = 0) are dropped and counted.
TermBuild build_terms(const std::vector<HeldOutBlock>& blocks, const LambdaBuckets& buckets);

/// Per-bucket log likelihood and its derivative at the given lambdas
/// (lambdas[h-1] applies to bucket h). Terms where lambda*u + v is zero
/// contribute -FLT_MAX to l and a signed FLT_MAX sentinel to l'.
std::vector<std::pair<double, double>> loglik_and_deriv(
    const std::vector<LikelihoodTerm>& terms, const std::vector<double>& lambdas, int r);

/// Chooses the starting point of the search for each bucket: a probe where
/// l' vanishes is final; a sign change of l' between 0 and 1 starts the
/// search at the midpoint of the quarter interval where the change occurs;
/// otherwise the better endpoint is final.
std::vector<LambdaBracket> init_brackets(const std::vector<LikelihoodTerm>& terms, int r);

struct DeOptions {
  double tol = 5e-9;
  int max_iter = 100;
};

/// Binary search per non-final bucket, stopping when the summed absolute
/// lambda change drops below tol * r. A model that hits max_iter is still
/// returned with converged = false.
LambdaModel optimize(const std::vector<LikelihoodTerm>& terms, const LambdaBuckets& buckets,
                     const DeOptions& opts = {});

/// q_{i|j} = lambda_h f_i + (1 - lambda_h) f_{i|j} with the bucket chosen
/// by the full-corpus frequency of j.
double de_prob(const LambdaModel& model, const FreqView& full, WordId j, WordId i);

}  // namespace lmsmooth
