// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <span>
#include <utility>
#include <vector>

#include "lmsmooth/counts.hpp"

namespace lmsmooth {

/// Digamma via the recurrence Psi(x+1) = Psi(x) + 1/x to lift the argument,
/// then the asymptotic log expansion; absolute error below 1e-12 for x > 0.
/// Throws DomainError for x <= 0.
double digamma(double x);

/// K(alpha) = sum_j [ log((F_j + alpha)/alpha) + F_j / (2 alpha (F_j + alpha)) ]
/// over the context count histogram.
double k_alpha(double alpha, const std::vector<std::pair<Count, Count>>& fj_histogram);

struct SolveUResult {
  std::vector<double> u;  // indexed by word id; 0 where N_1i = 0
  Count clamped = 0;      // negative or non-finite roots clamped to epsilon
};

/// Closed-form root u_i = 2 N_1i / (K - G_i + sqrt((K - G_i)^2 + 4 H_i N_1i)).
SolveUResult solve_u(double k, const DirichletStats& stats);

/// Geometric bracketing state for the alpha search; -1 marks an
/// unestablished bound.
struct AlphaBracket {
  double alpha_max = -1.0;
  double alpha_min = -1.0;
};

/// One steering step: sum_u below alpha narrows from above (halving while
/// no lower bound exists), above alpha narrows from below (doubling while
/// no upper bound exists); with both bounds set the next alpha is their
/// geometric mean. Equal sum leaves alpha unchanged.
double next_alpha(double alpha, double sum_u, AlphaBracket& bracket);

/// Fitted hyperparameters; alpha equals the sum of u exactly after
/// finalization, so posterior rows normalize exactly.
struct DirichletModel {
  double alpha = 0.0;
  std::vector<double> u;  // indexed by word id; "<s>" carries 0
  std::shared_ptr<const Vocabulary> vocab;
  int iterations = 0;
  bool converged = true;
  Count clamped = 0;
  double final_k = 0.0;
  // (alpha_min, alpha_max) after each iteration; -1 where unestablished.
  std::vector<std::pair<double, double>> bracket_trace;

  double m(WordId i) const { return u[i] / alpha; }
};

struct DirichletOptions {
  double alpha0 = 10.0;
  double tol = 5e-9;
  int max_iter = 100;
};

/// Alternates K(alpha) -> u -> sum(u), steering alpha by geometric
/// bracketing until the summed u change per parameter drops below tol.
/// A model that hits max_iter is returned with converged = false.
DirichletModel fit(const CountTable& counts, const DirichletOptions& opts = {});

/// Same, for callers that already hold the statistics.
DirichletModel fit(const DirichletStats& stats, const DirichletOptions& opts = {});

/// q_{i|j} = (F_{i|j} + u_i) / (F_j + alpha); for an unseen context this is
/// the null measure m_i.
double dir_prob(const DirichletModel& model, const CountTable& counts, WordId j, WordId i);

/// Exact log evidence log Pr(D | u) via log-gamma. Requires u_i > 0 for
/// every successor word (throws DomainError otherwise).
double log_evidence_exact(std::span<const double> u, const CountTable& counts);

/// Exact gradient d/du_i log Pr(D | u) via digamma, indexed by word id.
std::vector<double> grad_log_evidence_exact(std::span<const double> u,
                                            const CountTable& counts);

}  // namespace lmsmooth
