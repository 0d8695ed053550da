#pragma once

// Per-dataset text statistics in the layout of the dataset-comparison table.
// Lengths are in code points. A field is absent when the dataset cannot
// support it (no spans, no AE extraction, no drug extraction).

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aekit/artifact.hpp"
#include "aekit/corpus.hpp"
#include "aekit/readability.hpp"
#include "aekit/unicode.hpp"
#include "aekit/wordlists.hpp"

namespace aekit {

struct StatsRow {
  std::string dataset;
  std::size_t records = 0;
  double avg_seq_length = 0.0;
  std::optional<double> avg_span_length;              // all span kinds
  std::optional<double> avg_stopwords_per_span;       // all span kinds
  std::optional<double> avg_ae_per_positive;          // AE spans per positive record
  std::optional<std::size_t> unique_ae;               // folded, whitespace-normalized
  double pct_positive = 0.0;                          // positives over all records
  std::optional<std::size_t> unique_drugs;
  std::optional<double> flesch_reading_ease;          // mean over records with words
};

/// Case-folded, whitespace-normalized surface used for uniqueness counts.
inline std::string surface_key(std::string_view surface) {
  auto cps = utf8::decode(surface);
  if (!cps) return std::string(surface);
  return utf8::encode(utf8::normalize_space(utf8::fold(*cps)));
}

inline StatsRow dataset_stats(const Dataset& ds, const WordSet& stopwords = english_stopwords(),
                              const WordSet& easy_words = dale_chall_easy_words()) {
  StatsRow row;
  row.dataset = ds.id;
  row.records = ds.records.size();
  if (ds.records.empty()) return row;

  std::size_t chars = 0;
  std::size_t positives = 0;
  std::size_t span_count = 0;
  std::size_t span_chars = 0;
  std::size_t span_stopwords = 0;
  std::size_t ae_in_positive = 0;
  std::set<std::string> ae_forms;
  std::set<std::string> drug_forms;
  double flesch_sum = 0.0;
  std::size_t flesch_n = 0;

  for (const auto& r : ds.records) {
    chars += utf8::length(r.text);
    if (r.label == Label::Positive) ++positives;
    for (const auto& s : r.spans) {
      ++span_count;
      span_chars += s.length();
      if (auto cps = utf8::decode(s.surface)) {
        for (const auto& w : split_words(*cps)) {
          if (stopwords.contains(utf8::encode(utf8::fold(w)))) ++span_stopwords;
        }
      }
      if (s.kind == SpanKind::AE) {
        ae_forms.insert(surface_key(s.surface));
        if (r.label == Label::Positive) ++ae_in_positive;
      } else if (s.kind == SpanKind::Drug) {
        drug_forms.insert(surface_key(s.surface));
      }
    }
    const auto c = readability_counts(r.text, easy_words);
    if (c.words > 0) {
      flesch_sum += readability_from_counts(c).flesch_reading_ease;
      ++flesch_n;
    }
  }

  const double n = static_cast<double>(ds.records.size());
  row.avg_seq_length = static_cast<double>(chars) / n;
  row.pct_positive = 100.0 * static_cast<double>(positives) / n;
  if (span_count > 0) {
    row.avg_span_length = static_cast<double>(span_chars) / static_cast<double>(span_count);
    row.avg_stopwords_per_span = static_cast<double>(span_stopwords) / static_cast<double>(span_count);
  }
  if (ds.manifest.supports(TaskId::NerAE)) {
    row.unique_ae = ae_forms.size();
    if (positives > 0) {
      row.avg_ae_per_positive = static_cast<double>(ae_in_positive) / static_cast<double>(positives);
    }
  }
  if (ds.manifest.supports(TaskId::NerDrug)) row.unique_drugs = drug_forms.size();
  if (flesch_n > 0) row.flesch_reading_ease = flesch_sum / static_cast<double>(flesch_n);
  return row;
}

inline ojson to_json(const StatsRow& row) {
  auto opt = [](const auto& v) { return v ? ojson(*v) : ojson(nullptr); };
  ojson j;
  j["dataset"] = row.dataset;
  j["records"] = row.records;
  j["avg_seq_length"] = row.avg_seq_length;
  j["avg_span_length"] = opt(row.avg_span_length);
  j["avg_stopwords_in_span"] = opt(row.avg_stopwords_per_span);
  j["avg_ae_per_positive"] = opt(row.avg_ae_per_positive);
  j["unique_ae"] = opt(row.unique_ae);
  j["pct_positive"] = row.pct_positive;
  j["unique_drugs"] = opt(row.unique_drugs);
  j["flesch_reading_ease"] = opt(row.flesch_reading_ease);
  return j;
}

}  // namespace aekit
