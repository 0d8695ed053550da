#pragma once

// Classification and span-match scoring plus the McNemar paired test.

#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aekit/error.hpp"
#include "aekit/types.hpp"

namespace aekit {

struct PRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// 0/0 is defined as 0 for every ratio.
inline PRF f1_from_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
  auto ratio = [](std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  PRF out;
  out.precision = ratio(tp, tp + fp);
  out.recall = ratio(tp, tp + fn);
  const double s = out.precision + out.recall;
  out.f1 = s == 0.0 ? 0.0 : 2.0 * out.precision * out.recall / s;
  return out;
}

struct ClassificationCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fp + fn + tn; }
  PRF prf() const { return f1_from_counts(tp, fp, fn); }
};

struct ClassificationResult {
  PRF scores;
  ClassificationCounts counts;
  std::size_t missing = 0;  // gold ids without a prediction, scored Negative
};

/// Positive class is AE. Missing predictions count as Negative. Unlabeled
/// gold entries are skipped.
inline ClassificationResult classification_prf(const std::map<std::string, Label>& pred,
                                               const std::map<std::string, Label>& gold) {
  if (gold.empty()) throw UsageError("classification_prf: empty gold set");
  ClassificationResult out;
  for (const auto& [id, g] : gold) {
    if (g == Label::Unlabeled) continue;
    auto it = pred.find(id);
    Label p = Label::Negative;
    if (it == pred.end()) {
      ++out.missing;
    } else if (it->second == Label::Positive) {
      p = Label::Positive;
    }
    const bool gp = g == Label::Positive;
    const bool pp = p == Label::Positive;
    if (gp && pp) ++out.counts.tp;
    else if (!gp && pp) ++out.counts.fp;
    else if (gp && !pp) ++out.counts.fn;
    else ++out.counts.tn;
  }
  out.scores = out.counts.prf();
  return out;
}

enum class MatchMode { Strict, Partial };

constexpr std::string_view to_string(MatchMode m) {
  return m == MatchMode::Strict ? "strict" : "partial";
}

/// A span located in the text: kind plus code-point interval. Predictions
/// that could not be grounded are counted separately as false positives.
struct SpanRef {
  SpanKind kind = SpanKind::AE;
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const SpanRef&, const SpanRef&) = default;
};

constexpr bool spans_match(const SpanRef& pred, const SpanRef& gold, MatchMode mode) {
  if (pred.kind != gold.kind) return false;
  if (mode == MatchMode::Strict) return pred.start == gold.start && pred.end == gold.end;
  return std::max(pred.start, gold.start) < std::min(pred.end, gold.end);
}

struct SpanMatchResult {
  MatchMode mode = MatchMode::Strict;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::vector<std::pair<std::size_t, std::size_t>> matched;  // (gold index, pred index)

  PRF prf() const { return f1_from_counts(tp, fp, fn); }
};

/// One-to-one maximum matching between predicted and gold spans (augmenting
/// paths over the compatibility graph). `unfindable` predictions add to fp.
inline SpanMatchResult span_match(const std::vector<SpanRef>& pred, const std::vector<SpanRef>& gold,
                                  MatchMode mode, std::size_t unfindable = 0) {
  std::vector<std::vector<std::size_t>> adj(pred.size());
  for (std::size_t p = 0; p < pred.size(); ++p) {
    for (std::size_t g = 0; g < gold.size(); ++g) {
      if (spans_match(pred[p], gold[g], mode)) adj[p].push_back(g);
    }
  }
  constexpr std::size_t kFree = static_cast<std::size_t>(-1);
  std::vector<std::size_t> gold_owner(gold.size(), kFree);
  std::vector<char> visited;

  auto augment = [&](auto&& self, std::size_t p) -> bool {
    for (auto g : adj[p]) {
      if (visited[g]) continue;
      visited[g] = 1;
      if (gold_owner[g] == kFree || self(self, gold_owner[g])) {
        gold_owner[g] = p;
        return true;
      }
    }
    return false;
  };

  std::size_t matched = 0;
  for (std::size_t p = 0; p < pred.size(); ++p) {
    visited.assign(gold.size(), 0);
    if (augment(augment, p)) ++matched;
  }

  SpanMatchResult out;
  out.mode = mode;
  out.tp = matched;
  out.fp = pred.size() - matched + unfindable;
  out.fn = gold.size() - matched;
  for (std::size_t g = 0; g < gold.size(); ++g) {
    if (gold_owner[g] != kFree) out.matched.emplace_back(g, gold_owner[g]);
  }
  return out;
}

struct McNemarResult {
  std::size_t b = 0;  // A correct, B wrong
  std::size_t c = 0;  // A wrong, B correct
  double chi2 = 0.0;
};

/// Chi-square critical values with one degree of freedom.
inline constexpr double kChi2Critical05 = 3.841;
inline constexpr double kChi2Critical01 = 6.635;
inline constexpr double kChi2Critical001 = 10.828;

/// Continuity-corrected statistic (|b - c| - 1)^2 / (b + c); 0 when b + c = 0.
inline McNemarResult mcnemar(const std::vector<bool>& a_correct, const std::vector<bool>& b_correct) {
  if (a_correct.size() != b_correct.size()) {
    throw UsageError("mcnemar: correctness vectors differ in length");
  }
  McNemarResult out;
  for (std::size_t i = 0; i < a_correct.size(); ++i) {
    if (a_correct[i] && !b_correct[i]) ++out.b;
    if (!a_correct[i] && b_correct[i]) ++out.c;
  }
  const auto n = out.b + out.c;
  if (n > 0) {
    const double diff = std::abs(static_cast<double>(out.b) - static_cast<double>(out.c)) - 1.0;
    out.chi2 = diff * diff / static_cast<double>(n);
  }
  return out;
}

/// Smallest conventional p threshold (0.001, 0.01, 0.05) the statistic
/// clears, or nullopt when it clears none.
inline std::optional<double> mcnemar_significance(double chi2) {
  if (chi2 > kChi2Critical001) return 0.001;
  if (chi2 > kChi2Critical01) return 0.01;
  if (chi2 > kChi2Critical05) return 0.05;
  return std::nullopt;
}

}  // namespace aekit
