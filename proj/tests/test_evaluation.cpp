#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "rdl/evaluation.hpp"
#include "rdl/rng.hpp"

namespace {

using Labels = std::vector<std::uint8_t>;

}  // namespace

TEST_CASE("auroc at pinned points") {
  CHECK(rdl::auroc(std::vector<double>{3, 2, 1, 0}, Labels{1, 1, 0, 0}) == 1.0);
  CHECK(rdl::auroc(std::vector<double>{1, 1, 1, 1}, Labels{1, 0, 1, 0}) == 0.5);
  // pairs (4,1),(4,3),(2,1),(2,3): three wins out of four
  CHECK(rdl::auroc(std::vector<double>{4, 1, 3, 2}, Labels{1, 0, 0, 1}) == 0.75);
  CHECK(rdl::auroc(std::vector<double>{0, 1}, Labels{1, 0}) == 0.0);
}

TEST_CASE("auroc rejects degenerate label sets") {
  CHECK_THROWS_AS(rdl::auroc(std::vector<double>{1, 2}, Labels{1, 1}), std::domain_error);
  CHECK_THROWS_AS(rdl::auroc(std::vector<double>{1, 2}, Labels{0, 0}), std::domain_error);
  CHECK_THROWS_AS(rdl::auroc(std::vector<double>{1, 2}, Labels{1}), std::invalid_argument);
}

TEST_CASE("auroc equals the brute-force pairwise statistic") {
  rdl::Rng rng(61);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + rng.uniform_index(49);
    std::vector<double> scores(n);
    Labels labels(n);
    bool has_pos = false, has_neg = false;
    for (std::size_t i = 0; i < n; ++i) {
      // quantized draws produce plenty of ties
      scores[i] = std::floor(rng.uniform(0.0, 6.0));
      labels[i] = rng.uniform() < 0.4 ? 1 : 0;
      (labels[i] ? has_pos : has_neg) = true;
    }
    if (!has_pos || !has_neg) continue;
    CHECK(std::abs(rdl::auroc(scores, labels) - oracle::auroc_bruteforce(scores, labels)) <=
          1e-12);
  }
}

TEST_CASE("auroc is invariant under strictly increasing transforms") {
  rdl::Rng rng(62);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 5 + rng.uniform_index(40);
    std::vector<double> scores(n), mapped(n);
    Labels labels(n);
    labels[0] = 1;
    labels[1] = 0;
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = rng.gaussian();
      mapped[i] = std::exp(2.0 * scores[i]) + 3.0;
      if (i > 1) labels[i] = rng.uniform() < 0.5 ? 1 : 0;
    }
    CHECK(rdl::auroc(scores, labels) ==
          doctest::Approx(rdl::auroc(mapped, labels)).epsilon(1e-13));
  }
}

TEST_CASE("auroc complement identity for tie-free scores") {
  rdl::Rng rng(63);
  const std::size_t n = 60;
  std::vector<double> scores(n), neg(n);
  Labels labels(n);
  labels[0] = 1;
  labels[1] = 0;
  for (std::size_t i = 0; i < n; ++i) {
    scores[i] = rng.gaussian();  // continuous draws, ties have measure zero
    neg[i] = -scores[i];
    if (i > 1) labels[i] = rng.uniform() < 0.5 ? 1 : 0;
  }
  CHECK(rdl::auroc(scores, labels) + rdl::auroc(neg, labels) ==
        doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("top-m detection at pinned points") {
  const std::vector<double> perfect{9, 8, 7, 1, 2, 3};
  const Labels labels{1, 1, 1, 0, 0, 0};
  CHECK(rdl::top_m_detection(perfect, labels, 3) == 3);

  const std::vector<double> inverted{1, 2, 3, 9, 8, 7};
  CHECK(rdl::top_m_detection(inverted, labels, 3) == 0);

  CHECK_THROWS_AS(rdl::top_m_detection(perfect, labels, 7), std::domain_error);
}

TEST_CASE("boundary ties resolve to the lowest index") {
  const std::vector<double> scores{5, 5, 5, 1};
  CHECK(rdl::top_m_detection(scores, Labels{1, 0, 1, 0}, 2) == 1);  // picks 0 and 1
  CHECK(rdl::top_m_detection(scores, Labels{0, 1, 1, 0}, 2) == 1);
}

TEST_CASE("top-m matches a full-sort recount and is monotone in m") {
  rdl::Rng rng(64);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 3 + rng.uniform_index(47);
    std::vector<double> scores(n);
    Labels labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = std::floor(rng.uniform(0.0, 8.0));
      labels[i] = rng.uniform() < 0.3 ? 1 : 0;
    }

    // independent recount: stable sort by score descending, count positives
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    std::size_t prev = 0;
    for (std::size_t m = 0; m <= n; ++m) {
      std::size_t expected = 0;
      for (std::size_t i = 0; i < m; ++i) expected += labels[idx[i]] ? 1 : 0;
      const std::size_t got = rdl::top_m_detection(scores, labels, m);
      CHECK(got == expected);
      CHECK(got >= prev);
      prev = got;
    }
  }
}
