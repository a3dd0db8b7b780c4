// Apache License, Version 2.0, refer to LICENSE.txt
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "lmsmooth/baselines.hpp"

using namespace lmsmooth;
using testutil::Rng;

namespace {

std::vector<Sentence> corpus_c0() {
  return {{"<s>", "a", "b", "</s>"}, {"<s>", "a", "a", "</s>"}};
}

}  // namespace

TEST_CASE("addk_joint normalizes over the possible-bigram set") {
  // no observations: uniform 1/B
  auto vocab = std::make_shared<Vocabulary>();
  vocab->intern("a");
  vocab->intern("b");
  CountTable empty_table(vocab);
  auto uniform = addk_joint(empty_table, 0.5);
  CHECK(uniform.possible == 9);
  CHECK(uniform.prob(vocab->require("a"), vocab->require("b")) ==
        doctest::Approx(1.0 / 9).epsilon(1e-15));

  // C0: vocab {<s>, </s>, a, b}; B = 3 * 3 = 9 and 6 bigram events
  auto table = count_block(corpus_c0());
  auto model = addk_joint(table, 1.0);
  CHECK(model.possible == 9);
  CHECK(model.events == 6);
  CHECK(model.prob(table.vocab().require("<s>"), table.vocab().require("a")) ==
        doctest::Approx(3.0 / 15).epsilon(1e-15));

  // sums to one over contexts != </s> cross outcomes != <s>
  double total = 0.0;
  for (std::size_t j = 0; j < table.vocab().size(); ++j) {
    if (j == Vocabulary::kEos) continue;
    for (std::size_t i = 0; i < table.vocab().size(); ++i) {
      if (i == Vocabulary::kBos) continue;
      total += model.prob(static_cast<WordId>(j), static_cast<WordId>(i));
    }
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(addk_joint(table, 0.0), DomainError);
}

TEST_CASE("addk_cond rows are stochastic") {
  auto table = count_block(corpus_c0());
  auto model = addk_cond(table, 1.0);
  CHECK(model.w_out == 3);
  CHECK(model.prob(table.vocab().require("a"), table.vocab().require("b")) ==
        doctest::Approx(1.0 / 3).epsilon(1e-15));

  // unseen context: uniform over outcomes
  auto vocab2 = std::make_shared<Vocabulary>(*table.vocab_ptr());
  WordId ghost = vocab2->intern("ghost");
  CountTable t2(vocab2);
  auto m2 = addk_cond(t2, 1.0);
  CHECK(m2.prob(ghost, vocab2->require("a")) == doctest::Approx(1.0 / 4).epsilon(1e-15));

  for (std::size_t j = 0; j < table.vocab().size(); ++j) {
    if (j == Vocabulary::kEos) continue;
    double row = 0.0;
    for (std::size_t i = 0; i < table.vocab().size(); ++i) {
      if (i == Vocabulary::kBos) continue;
      row += model.prob(static_cast<WordId>(j), static_cast<WordId>(i));
    }
    CHECK(row == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("add-k estimators approach maximum likelihood as k -> 0") {
  Rng rng(97);
  auto table = count_block(testutil::random_corpus(rng, 8, 400));
  auto joint = addk_joint(table, 1e-9);
  auto cond = addk_cond(table, 1e-9);
  auto view = freqs(table);

  Count events = joint.events;
  for (const auto& [key, c] : table.bigrams_sorted()) {
    WordId j = bigram_context(key), i = bigram_outcome(key);
    double ml_joint = static_cast<double>(c) / static_cast<double>(events);
    double ml_cond = view.cond(j, i);
    CHECK(std::fabs(joint.prob(j, i) - ml_joint) / ml_joint <= 1e-6);
    CHECK(std::fabs(cond.prob(j, i) - ml_cond) / ml_cond <= 1e-6);
  }
}

TEST_CASE("good_turing table and estimates on C0") {
  auto table = count_block(corpus_c0());
  auto gt = good_turing(table);

  // five distinct bigrams, counts {2,1,1,1,1}: N = 6 events
  CHECK(gt.n == 6);
  CHECK(gt.n_at(1) == 4);
  CHECK(gt.n_at(2) == 1);
  CHECK(gt.n0 == 4);  // 9 possible - 5 observed

  CHECK(gt.prob_for_count(1) == doctest::Approx(2.0 * 1 / (4.0 * 6)).epsilon(1e-15));
  CHECK_THROWS_AS(gt.prob_for_count(2), UndefinedClass);  // N_3 = 0

  CHECK(gt.prob_unseen() == doctest::Approx(4.0 / (4.0 * 6)).epsilon(1e-15));
  // unseen mass adds up to N_1 / N
  CHECK(static_cast<double>(gt.n0) * gt.prob_unseen() ==
        doctest::Approx(4.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("good_turing mass accounting is exact on gap-free tables") {
  // constructed tables: counts 1..R all present, so every queried class
  // has N_{r+1} > 0
  GoodTuringTable t;
  t.n_r = {{1, 10}, {2, 5}, {3, 2}, {4, 1}};
  t.n = 1 * 10 + 2 * 5 + 3 * 2 + 4 * 1;
  t.n0 = 7;

  double mass = 0.0;
  for (Count r = 1; r <= 3; ++r) mass += static_cast<double>(t.n_at(r)) * t.prob_for_count(r);
  mass += static_cast<double>(t.n0) * t.prob_unseen();
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-13));

  // a gap makes the skipped class an explicit error
  GoodTuringTable gap;
  gap.n_r = {{1, 4}, {3, 2}};
  gap.n = 4 + 6;
  gap.n0 = 5;
  CHECK_THROWS_AS(gap.prob_for_count(1), UndefinedClass);

  // degenerate: singletons exist but nothing is unseen
  GoodTuringTable full;
  full.n_r = {{1, 2}};
  full.n = 2;
  full.n0 = 0;
  CHECK_THROWS_AS(full.prob_unseen(), DegenerateVocabulary);
}
