// Apache License, Version 2.0, refer to LICENSE.txt
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "lmsmooth/dirichlet.hpp"

using namespace lmsmooth;
using testutil::Rng;

TEST_CASE("digamma hits the Euler-Mascheroni value at 1") {
  CHECK(digamma(1.0) == doctest::Approx(-0.5772156649015329).epsilon(1e-12));
}

TEST_CASE("digamma satisfies the recurrence identity") {
  Rng rng(61);
  for (int n = 0; n < 200; ++n) {
    double x = 0.01 + rng.uniform() * 20.0;
    CHECK(digamma(x + 1.0) - digamma(x) ==
          doctest::Approx(1.0 / x).epsilon(1e-10).scale(1.0 / x + 1.0));
  }
}

TEST_CASE("digamma near 10 matches the two-term log expansion to O(1/x^2)") {
  double approx = std::log(10.0) - 1.0 / 20.0;
  CHECK(std::fabs(digamma(10.0) - approx) < 1.0 / (12.0 * 100.0) * 1.01);
}

TEST_CASE("digamma matches the finite-difference oracle") {
  Rng rng(67);
  for (int n = 0; n < 300; ++n) {
    double x = std::exp(rng.uniform() * 12.0 - 6.0);  // 2.5e-3 .. 4e2
    CHECK(digamma(x) ==
          doctest::Approx(testutil::oracle_digamma(x)).epsilon(1e-10).scale(
              std::fabs(testutil::oracle_digamma(x)) + 1.0));
  }
  CHECK_THROWS_AS(digamma(0.0), DomainError);
  CHECK_THROWS_AS(digamma(-3.0), DomainError);
}

TEST_CASE("k_alpha hand values and limits") {
  std::vector<std::pair<Count, Count>> one{{1, 1}};
  CHECK(k_alpha(1.0, one) == doctest::Approx(std::log(2.0) + 0.25).epsilon(1e-15));
  CHECK(k_alpha(1e12, one) < 1e-9);
  CHECK(k_alpha(3.0, {}) == 0.0);

  // multiplicity weighting: three contexts with F_j = 1 count three times
  std::vector<std::pair<Count, Count>> three{{1, 3}};
  CHECK(k_alpha(1.0, three) == doctest::Approx(3 * (std::log(2.0) + 0.25)).epsilon(1e-15));
}

TEST_CASE("solve_u closed form") {
  DirichletStats stats;
  stats.n1 = {0, 0, 1};
  stats.g = {0, 0, 0};
  stats.h = {0, 0, 0};
  auto r = solve_u(2.0, stats);
  CHECK(r.u[2] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.u[0] == 0.0);
  CHECK(r.clamped == 0);

  // K - G = 0 with H*N1 = 1: u = 2/(0 + 2) = 1
  stats.n1 = {0, 0, 1};
  stats.g = {0, 0, 5.0};
  stats.h = {0, 0, 1.0};
  r = solve_u(5.0, stats);
  CHECK(r.u[2] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("next_alpha steers by geometric bracketing") {
  AlphaBracket b;
  CHECK(next_alpha(8.0, 10.0, b) == 16.0);  // no max yet: double
  CHECK(b.alpha_min == 8.0);
  CHECK(b.alpha_max == -1.0);

  double next = next_alpha(16.0, 10.0, b);  // min = 8 now set, max becomes 16
  CHECK(next == doctest::Approx(std::sqrt(8.0 * 16.0)).epsilon(1e-15));
  CHECK(b.alpha_max == 16.0);

  AlphaBracket c;
  CHECK(next_alpha(8.0, 5.0, c) == 4.0);  // no min yet: halve
  CHECK(c.alpha_max == 8.0);

  AlphaBracket d;
  CHECK(next_alpha(8.0, 8.0, d) == 8.0);  // fixed point
}

TEST_CASE("fit converges and finalizes alpha = sum(u)") {
  Rng rng(71);
  auto table = count_block(testutil::random_corpus(rng, 20, 2000));
  auto model = fit(table);
  CHECK(model.converged);
  CHECK(model.iterations <= 100);

  double sum = 0.0;
  for (std::size_t i = 0; i < model.u.size(); ++i) {
    if (i != Vocabulary::kBos) sum += model.u[i];
    CHECK(model.u[i] >= 0.0);
  }
  CHECK(model.alpha == sum);

  double msum = 0.0;
  for (std::size_t i = 0; i < model.u.size(); ++i) {
    if (i != Vocabulary::kBos) msum += model.m(static_cast<WordId>(i));
  }
  CHECK(msum == doctest::Approx(1.0).epsilon(1e-12));

  // bracket bounds are monotone once established
  double last_min = -1.0, last_max = 1e300;
  for (auto [mn, mx] : model.bracket_trace) {
    if (mn >= 0.0) {
      CHECK(mn >= last_min);
      last_min = mn;
    }
    if (mx >= 0.0) {
      CHECK(mx <= last_max);
      last_max = mx;
    }
  }
  CHECK_THROWS_AS(fit(CountTable{}), EmptyCorpus);
}

TEST_CASE("dir_prob posterior mean and exact row normalization") {
  // crafted table: F_{i|j} = 2, F_j = 2, u_i = 0.1, alpha = 1 -> 2.1/3
  auto vocab = std::make_shared<Vocabulary>();
  WordId j = vocab->intern("j");
  WordId i = vocab->intern("i");
  CountTable table(vocab);
  table.add_unigram(j, 2);
  table.add_bigram(j, i, 2);

  DirichletModel model;
  model.vocab = vocab;
  model.alpha = 1.0;
  model.u.assign(vocab->size(), 0.0);
  model.u[i] = 0.1;
  model.u[Vocabulary::kEos] = 0.9;

  CHECK(dir_prob(model, table, j, i) == doctest::Approx(2.1 / 3.0).epsilon(1e-15));
  // unseen context: q = m_i
  WordId unseen = vocab->intern("unseen");
  model.u.resize(vocab->size(), 0.0);
  CountTable table2(vocab);
  table2.add_unigram(j, 2);
  table2.add_bigram(j, i, 2);
  CHECK(dir_prob(model, table2, unseen, i) == doctest::Approx(0.1).epsilon(1e-15));

  CHECK_THROWS_AS(dir_prob(model, table2, 9999, i), OovError);

  // fitted model: every context row sums to one exactly
  Rng rng(73);
  auto corpus_table = count_block(testutil::random_corpus(rng, 10, 800));
  auto fitted = fit(corpus_table);
  for (std::size_t ctx = 0; ctx < corpus_table.vocab().size(); ++ctx) {
    if (ctx == Vocabulary::kEos) continue;
    double row = 0.0;
    for (std::size_t out = 0; out < corpus_table.vocab().size(); ++out) {
      if (out == Vocabulary::kBos) continue;
      row += dir_prob(fitted, corpus_table, static_cast<WordId>(ctx), static_cast<WordId>(out));
    }
    CHECK(row == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("log_evidence_exact basics") {
  CHECK(log_evidence_exact(std::vector<double>{0.0, 0.5}, CountTable{}) == 0.0);

  // one context, one outcome, single observation: log(u_i / sum u)
  auto vocab = std::make_shared<Vocabulary>();
  WordId j = vocab->intern("j");
  WordId i = vocab->intern("i");
  CountTable table(vocab);
  table.add_unigram(j, 1);
  table.add_bigram(j, i, 1);

  std::vector<double> u(vocab->size(), 0.0);
  u[Vocabulary::kEos] = 0.2;
  u[j] = 0.3;
  u[i] = 0.25;
  double sum = 0.2 + 0.3 + 0.25;
  CHECK(log_evidence_exact(u, table) == doctest::Approx(std::log(0.25 / sum)).epsilon(1e-12));

  u[i] = 0.0;
  CHECK_THROWS_AS(log_evidence_exact(u, table), DomainError);
}

TEST_CASE("log_evidence_exact equals the Dirichlet-multinomial product oracle") {
  Rng rng(79);
  for (int trial = 0; trial < 5; ++trial) {
    auto table = count_block(testutil::random_corpus(rng, 5, 120, 4));
    std::vector<double> u(table.vocab().size(), 0.0);
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (i != Vocabulary::kBos) u[i] = 0.05 + rng.uniform() * 0.6;
    }
    double fast = log_evidence_exact(u, table);
    double slow = testutil::oracle_dm_log_evidence(u, table);
    CHECK(fast == doctest::Approx(slow).epsilon(1e-9).scale(std::fabs(slow) + 1.0));
  }
}

TEST_CASE("gradient matches finite differences of the evidence") {
  Rng rng(83);
  auto table = count_block(testutil::random_corpus(rng, 5, 100, 4));
  std::vector<double> u(table.vocab().size(), 0.0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i != Vocabulary::kBos) u[i] = 0.1 + rng.uniform() * 0.4;
  }
  auto grad = grad_log_evidence_exact(u, table);
  const double step = 1e-6;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i == Vocabulary::kBos) continue;
    auto up = u, down = u;
    up[i] += step;
    down[i] -= step;
    double fd = (log_evidence_exact(up, table) - log_evidence_exact(down, table)) / (2 * step);
    CHECK(grad[i] == doctest::Approx(fd).epsilon(1e-4).scale(std::fabs(fd) + 1.0));
  }

  // no observations: zero gradient
  CountTable empty;
  auto g0 = grad_log_evidence_exact(std::vector<double>{0.0, 0.3}, empty);
  for (double g : g0) CHECK(g == 0.0);
}

TEST_CASE("closed-form gradient approximation is close in the paper regime") {
  // small u, alpha > 1: N_1i/u_i + G_i - u_i H_i - K(alpha) tracks the
  // exact gradient within a few percent
  Rng rng(89);
  auto table = count_block(testutil::random_corpus(rng, 25, 1500));
  auto stats = dirichlet_stats(table);
  auto model = fit(table);
  REQUIRE(model.converged);
  REQUIRE(model.alpha > 1.0);

  double k = k_alpha(model.alpha, stats.fj_histogram);
  auto grad = grad_log_evidence_exact(model.u, table);
  for (std::size_t i = 0; i < model.u.size(); ++i) {
    if (stats.n1[i] == 0 || model.u[i] >= 0.5) continue;
    double n1 = static_cast<double>(stats.n1[i]);
    double closed = n1 / model.u[i] + stats.g[i] - model.u[i] * stats.h[i] - k;
    double scale = n1 / model.u[i] + k;
    CHECK(std::fabs(grad[i] - closed) <= 0.05 * scale);
  }
}
