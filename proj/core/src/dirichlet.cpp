// Apache License, Version 2.0, refer to LICENSE.txt
#include "lmsmooth/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lmsmooth/parallel.hpp"

namespace lmsmooth {

double digamma(double x) {
  if (!(x > 0.0)) throw DomainError("digamma requires x > 0");
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  // log expansion with Bernoulli terms through x^-8; below 1e-13 once
  // the argument is lifted past 10.
  double inv = 1.0 / x;
  double inv2 = inv * inv;
  double series = std::log(x) - 0.5 * inv -
                  inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 / 240.0)));
  return acc + series;
}

double k_alpha(double alpha, const std::vector<std::pair<Count, Count>>& fj_histogram) {
  if (!(alpha > 0.0)) throw DomainError("k_alpha requires alpha > 0");
  double sum = 0.0;
  for (const auto& [fj, mult] : fj_histogram) {
    double f = static_cast<double>(fj);
    double term = std::log((f + alpha) / alpha) + 0.5 * f / (alpha * (f + alpha));
    sum += static_cast<double>(mult) * term;
  }
  return sum;
}

SolveUResult solve_u(double k, const DirichletStats& stats) {
  constexpr double kEpsilon = 1e-12;
  SolveUResult out;
  out.u.assign(stats.n1.size(), 0.0);
  std::vector<unsigned char> clamped(stats.n1.size(), 0);
  par::parallel_for(stats.n1.size(), [&](std::size_t i) {
    if (stats.n1[i] == 0) return;
    double n1 = static_cast<double>(stats.n1[i]);
    double kg = k - stats.g[i];
    double u = 2.0 * n1 / (kg + std::sqrt(kg * kg + 4.0 * stats.h[i] * n1));
    if (!(u >= 0.0) || !std::isfinite(u)) {
      u = kEpsilon;
      clamped[i] = 1;
    }
    out.u[i] = u;
  });
  for (unsigned char c : clamped) out.clamped += c;
  return out;
}

double next_alpha(double alpha, double sum_u, AlphaBracket& bracket) {
  if (sum_u < alpha) {
    bracket.alpha_max = alpha;
    return (bracket.alpha_min < 0.0) ? alpha / 2.0
                                     : std::sqrt(bracket.alpha_min * bracket.alpha_max);
  }
  if (sum_u > alpha) {
    bracket.alpha_min = alpha;
    return (bracket.alpha_max < 0.0) ? alpha * 2.0
                                     : std::sqrt(bracket.alpha_min * bracket.alpha_max);
  }
  return alpha;
}

DirichletModel fit(const CountTable& counts, const DirichletOptions& opts) {
  return fit(dirichlet_stats(counts), opts);
}

DirichletModel fit(const DirichletStats& stats, const DirichletOptions& opts) {
  if (stats.fj_histogram.empty()) throw EmptyCorpus("cannot fit on an empty count table");
  DirichletModel model;
  model.vocab = stats.vocab;

  double alpha = opts.alpha0;
  AlphaBracket bracket;
  std::size_t params = 0;
  for (Count n1 : stats.n1) params += (n1 > 0);

  std::vector<double> prev;
  model.converged = false;
  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    model.iterations = iter;
    double k = k_alpha(alpha, stats.fj_histogram);
    SolveUResult result = solve_u(k, stats);
    model.clamped = result.clamped;
    model.final_k = k;

    double sum_u = 0.0;
    for (double u : result.u) sum_u += u;

    bool done = false;
    if (!prev.empty()) {
      double diff = 0.0;
      for (std::size_t i = 0; i < result.u.size(); ++i) diff += std::fabs(result.u[i] - prev[i]);
      done = diff < opts.tol * static_cast<double>(params ? params : 1);
    }
    prev = std::move(result.u);
    model.u = prev;
    model.alpha = sum_u;  // finalization: alpha := sum(u) exactly

    if (done) {
      model.converged = true;
      return model;
    }
    alpha = next_alpha(alpha, sum_u, bracket);
    model.bracket_trace.emplace_back(bracket.alpha_min, bracket.alpha_max);
  }
  return model;  // max_iter exhausted; flagged, alpha still finalized
}

double dir_prob(const DirichletModel& model, const CountTable& counts, WordId j, WordId i) {
  if (j >= model.u.size() || i >= model.u.size())
    throw OovError("word id outside vocabulary");
  double fji = static_cast<double>(counts.bigram(j, i));
  double fj = static_cast<double>(counts.unigram(j));
  return (fji + model.u[i]) / (fj + model.alpha);
}

namespace {

// Contexts in sorted id order with their bigram rows, the deterministic
// traversal shared by the exact evidence and gradient.
struct Rows {
  std::vector<WordId> contexts;
  std::vector<std::vector<std::pair<WordId, Count>>> rows;  // outcomes per context
};

Rows sorted_rows(const CountTable& counts) {
  Rows r;
  auto sorted = counts.bigrams_sorted();
  for (const auto& [key, c] : sorted) {
    WordId j = bigram_context(key);
    if (r.contexts.empty() || r.contexts.back() != j) {
      r.contexts.push_back(j);
      r.rows.emplace_back();
    }
    r.rows.back().emplace_back(bigram_outcome(key), c);
  }
  return r;
}

double sum_u_checked(std::span<const double> u, const CountTable& counts) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i == Vocabulary::kBos) continue;
    if (u[i] < 0.0) throw DomainError("u_i must be positive");
    s += u[i];
  }
  return s;
}

}  // namespace

double log_evidence_exact(std::span<const double> u, const CountTable& counts) {
  double alpha = sum_u_checked(u, counts);
  Rows r = sorted_rows(counts);
  double total = 0.0;
  for (std::size_t n = 0; n < r.contexts.size(); ++n) {
    WordId j = r.contexts[n];
    double fj = static_cast<double>(counts.unigram(j));
    double row = std::lgamma(alpha) - std::lgamma(fj + alpha);
    for (const auto& [i, c] : r.rows[n]) {
      if (!(u[i] > 0.0)) throw DomainError("u_i must be positive for observed outcomes");
      row += std::lgamma(static_cast<double>(c) + u[i]) - std::lgamma(u[i]);
    }
    total += row;
  }
  return total;
}

std::vector<double> grad_log_evidence_exact(std::span<const double> u,
                                            const CountTable& counts) {
  double alpha = sum_u_checked(u, counts);
  Rows r = sorted_rows(counts);
  std::vector<double> grad(u.size(), 0.0);

  // Context-side part sum_j [Psi(alpha) - Psi(F_j + alpha)] is shared by
  // every coordinate.
  double shared = 0.0;
  for (WordId j : r.contexts) {
    shared += digamma(alpha) - digamma(static_cast<double>(counts.unigram(j)) + alpha);
  }
  for (std::size_t n = 0; n < r.contexts.size(); ++n) {
    for (const auto& [i, c] : r.rows[n]) {
      if (!(u[i] > 0.0)) throw DomainError("u_i must be positive for observed outcomes");
      grad[i] += digamma(static_cast<double>(c) + u[i]) - digamma(u[i]);
    }
  }
  for (std::size_t i = 0; i < grad.size(); ++i) {
    if (i == Vocabulary::kBos) continue;
    if (grad[i] != 0.0 || u[i] > 0.0) grad[i] += shared;
  }
  return grad;
}

}  // namespace lmsmooth
