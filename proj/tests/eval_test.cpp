#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <chrono>
#include <random>

#include "aekit/eval.hpp"
#include "test_support.hpp"

namespace aekit {
namespace {

TEST(F1FromCounts, Examples) {
  auto s = f1_from_counts(1, 1, 1);
  EXPECT_DOUBLE_EQ(s.precision, 0.5);
  EXPECT_DOUBLE_EQ(s.recall, 0.5);
  EXPECT_DOUBLE_EQ(s.f1, 0.5);
  s = f1_from_counts(0, 0, 0);
  EXPECT_EQ(s.precision, 0.0);
  EXPECT_EQ(s.recall, 0.0);
  EXPECT_EQ(s.f1, 0.0);
  s = f1_from_counts(2, 0, 1);
  EXPECT_DOUBLE_EQ(s.precision, 1.0);
  EXPECT_DOUBLE_EQ(s.recall, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.f1, 0.8);
}

TEST(ClassificationPrf, Examples) {
  const std::map<std::string, Label> gold{
      {"a", Label::Positive}, {"b", Label::Positive}, {"c", Label::Negative}, {"d", Label::Negative}};
  auto r = classification_prf(gold, gold);
  EXPECT_EQ(r.scores.f1, 1.0);
  EXPECT_EQ(r.scores.precision, 1.0);
  EXPECT_EQ(r.scores.recall, 1.0);

  r = classification_prf({{"a", Label::Positive}, {"b", Label::Negative}, {"c", Label::Positive}, {"d", Label::Negative}},
                         gold);
  EXPECT_EQ(r.counts.tp, 1u);
  EXPECT_EQ(r.counts.fp, 1u);
  EXPECT_EQ(r.counts.fn, 1u);
  EXPECT_EQ(r.counts.tn, 1u);
  EXPECT_DOUBLE_EQ(r.scores.f1, 0.5);

  r = classification_prf({{"a", Label::Negative}, {"b", Label::Negative}, {"c", Label::Negative}, {"d", Label::Negative}},
                         gold);
  EXPECT_EQ(r.scores.precision, 0.0);
  EXPECT_EQ(r.scores.recall, 0.0);
  EXPECT_EQ(r.scores.f1, 0.0);
}

TEST(ClassificationPrf, MissingPredictionsAreNegative) {
  const auto r = classification_prf({{"a", Label::Positive}}, {{"a", Label::Positive}, {"b", Label::Positive}});
  EXPECT_EQ(r.missing, 1u);
  EXPECT_EQ(r.counts.fn, 1u);
  EXPECT_THROW(classification_prf({}, {}), UsageError);
}

TEST(SpanMatch, Examples) {
  const std::vector<SpanRef> gold{{SpanKind::AE, 10, 25}};
  const std::vector<SpanRef> pred{{SpanKind::AE, 17, 25}};
  auto s = span_match(pred, gold, MatchMode::Strict);
  EXPECT_EQ(std::tie(s.tp, s.fp, s.fn), std::make_tuple(0u, 1u, 1u));
  auto p = span_match(pred, gold, MatchMode::Partial);
  EXPECT_EQ(std::tie(p.tp, p.fp, p.fn), std::make_tuple(1u, 0u, 0u));

  p = span_match({{SpanKind::AE, 0, 9}}, {{SpanKind::AE, 0, 5}, {SpanKind::AE, 6, 9}}, MatchMode::Partial);
  EXPECT_EQ(std::tie(p.tp, p.fp, p.fn), std::make_tuple(1u, 0u, 1u));

  for (auto mode : {MatchMode::Strict, MatchMode::Partial}) {
    const std::vector<SpanRef> g{{SpanKind::AE, 0, 3}, {SpanKind::AE, 5, 9}};
    const auto m = span_match(g, g, mode);
    EXPECT_EQ(std::tie(m.tp, m.fp, m.fn), std::make_tuple(2u, 0u, 0u));
  }
}

TEST(SpanMatch, KindsMustAgreeAndTouchingIsNotOverlap) {
  auto m = span_match({{SpanKind::Drug, 0, 5}}, {{SpanKind::AE, 0, 5}}, MatchMode::Partial);
  EXPECT_EQ(m.tp, 0u);
  m = span_match({{SpanKind::AE, 5, 9}}, {{SpanKind::AE, 0, 5}}, MatchMode::Partial);
  EXPECT_EQ(m.tp, 0u);
}

TEST(SpanMatch, UnfindableCountsAsFalsePositive) {
  const auto m = span_match({{SpanKind::AE, 0, 5}}, {{SpanKind::AE, 0, 5}}, MatchMode::Strict, 2);
  EXPECT_EQ(std::tie(m.tp, m.fp, m.fn), std::make_tuple(1u, 2u, 0u));
  const auto e = span_match({}, {}, MatchMode::Partial, 1);
  EXPECT_EQ(e.fp, 1u);
}

TEST(SpanMatch, GreedyWouldFail) {
  // pred0 overlaps both gold; pred1 only gold0. Maximum matching is 2.
  const std::vector<SpanRef> gold{{SpanKind::AE, 0, 4}, {SpanKind::AE, 6, 10}};
  const std::vector<SpanRef> pred{{SpanKind::AE, 2, 8}, {SpanKind::AE, 0, 1}};
  const auto m = span_match(pred, gold, MatchMode::Partial);
  EXPECT_EQ(m.tp, 2u);
  EXPECT_EQ(m.matched.size(), 2u);
}

TEST(SpanMatchProperty, EqualsBruteForce) {
  std::mt19937_64 gen(20240501);
  const auto t0 = std::chrono::steady_clock::now();
  for (int c = 0; c < 5000; ++c) {
    const bool mixed = c % 3 == 0;
    const std::size_t len = 6 + gen() % 30;
    const auto gold = testing::random_spans(gen, 5, len, mixed);
    const auto pred = testing::random_spans(gen, 5, len, mixed);
    for (auto mode : {MatchMode::Strict, MatchMode::Partial}) {
      const auto m = span_match(pred, gold, mode);
      const auto tp = testing::brute_force_matches(pred, gold, mode);
      ASSERT_EQ(m.tp, tp);
      ASSERT_EQ(m.fp, pred.size() - tp);
      ASSERT_EQ(m.fn, gold.size() - tp);
    }
  }
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 10.0);
}

TEST(SpanMatchProperty, StrictNeverExceedsPartialAndSymmetry) {
  std::mt19937_64 gen(7);
  for (int c = 0; c < 2000; ++c) {
    const auto gold = testing::random_spans(gen, 6, 25, true);
    const auto pred = testing::random_spans(gen, 6, 25, true);
    const auto s = span_match(pred, gold, MatchMode::Strict);
    const auto p = span_match(pred, gold, MatchMode::Partial);
    EXPECT_LE(s.tp, p.tp);
    for (const auto* m : {&s, &p}) {
      const auto sw = span_match(gold, pred, m->mode);
      EXPECT_EQ(sw.tp, m->tp);
      EXPECT_EQ(sw.fp, m->fn);
      EXPECT_EQ(sw.fn, m->fp);
      EXPECT_EQ(sw.prf().precision, m->prf().recall);
      EXPECT_EQ(sw.prf().recall, m->prf().precision);
    }
  }
}

std::pair<std::vector<bool>, std::vector<bool>> vectors(std::size_t b, std::size_t c, std::size_t both) {
  std::vector<bool> a, bb;
  for (std::size_t i = 0; i < b; ++i) a.push_back(true), bb.push_back(false);
  for (std::size_t i = 0; i < c; ++i) a.push_back(false), bb.push_back(true);
  for (std::size_t i = 0; i < both; ++i) a.push_back(true), bb.push_back(true);
  return {a, bb};
}

TEST(McNemar, Examples) {
  auto [a, b] = vectors(10, 2, 30);
  auto r = mcnemar(a, b);
  EXPECT_EQ(r.b, 10u);
  EXPECT_EQ(r.c, 2u);
  EXPECT_NEAR(r.chi2, 4.083333333333333, 1e-12);
  r = mcnemar(a, a);
  EXPECT_EQ(r.chi2, 0.0);
  auto [x, y] = vectors(0, 5, 2);
  EXPECT_DOUBLE_EQ(mcnemar(x, y).chi2, 3.2);
  EXPECT_THROW(mcnemar({true}, {}), UsageError);
}

TEST(McNemar, SignificanceThresholds) {
  EXPECT_EQ(mcnemar_significance(4.0833), 0.05);
  EXPECT_EQ(mcnemar_significance(3.841), std::nullopt);
  EXPECT_EQ(mcnemar_significance(6.7), 0.01);
  EXPECT_EQ(mcnemar_significance(10.828), 0.01);
  EXPECT_EQ(mcnemar_significance(10.83), 0.001);
  auto [a, b] = vectors(30, 5, 0);  // (25-1)^2/35 = 16.457
  EXPECT_EQ(mcnemar_significance(mcnemar(a, b).chi2), 0.001);
}

TEST(McNemar, CriticalValuesMatchChiSquareQuantiles) {
  const boost::math::chi_squared one(1.0);
  for (auto [alpha, crit] : {std::pair{0.05, kChi2Critical05}, std::pair{0.01, kChi2Critical01},
                             std::pair{0.001, kChi2Critical001}}) {
    EXPECT_NEAR(boost::math::quantile(boost::math::complement(one, alpha)), crit, 5e-4) << alpha;
  }
}

TEST(McNemarProperty, SwapInvariance) {
  std::mt19937_64 gen(99);
  for (int c = 0; c < 500; ++c) {
    const std::size_t n = gen() % 200;
    std::vector<bool> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = gen() & 1;
      b[i] = gen() & 1;
    }
    const auto ab = mcnemar(a, b), ba = mcnemar(b, a);
    EXPECT_EQ(ab.chi2, ba.chi2);
    EXPECT_EQ(ab.b, ba.c);
  }
}

}  // namespace
}  // namespace aekit
