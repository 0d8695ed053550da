#pragma once

// Scoring a prediction file against a gold dataset.
//
// Classification: P/R/F1 of the positive (AE) class; outputs outside the
// label vocabulary count as Negative. Extraction: every output is split into
// pieces, grounded in the record text and matched one-to-one against gold
// spans of the task's kind; counts are summed over records. Pieces that
// cannot be located in the text count as false positives.

#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aekit/artifact.hpp"
#include "aekit/corpus.hpp"
#include "aekit/eval.hpp"
#include "aekit/framing.hpp"
#include "aekit/predictions.hpp"
#include "aekit/readability.hpp"

namespace aekit {

enum class ReportMode { Strict, Partial, Both };

inline std::optional<ReportMode> parse_report_mode(std::string_view s) {
  const auto v = detail::lower_ascii(s);
  if (v == "strict") return ReportMode::Strict;
  if (v == "partial") return ReportMode::Partial;
  if (v == "both") return ReportMode::Both;
  return std::nullopt;
}

struct ScoreOptions {
  ReportMode mode = ReportMode::Both;
  std::optional<Split> split;  // score only this split
  bool readability = false;    // readability of predicted spans
};

struct ReadabilitySummary {
  std::size_t spans = 0;  // predicted pieces with at least one word
  double dale_chall = 0.0;
  double automated_readability_index = 0.0;
  double flesch_reading_ease = 0.0;
};

struct MetricReport {
  TaskId task = TaskId::AssertAE;
  std::string dataset;
  std::optional<Split> split;
  ReportMode mode = ReportMode::Both;
  std::size_t gold_records = 0;
  std::size_t predicted_records = 0;
  std::size_t unparseable = 0;  // classification outputs outside the vocabulary
  std::size_t unfindable = 0;   // extraction pieces absent from the text
  std::optional<ClassificationResult> classification;
  std::optional<SpanMatchResult> strict;
  std::optional<SpanMatchResult> partial;
  std::optional<ReadabilitySummary> readability;
  std::vector<std::string> warnings;

  double coverage() const {
    return gold_records == 0 ? 0.0
                             : static_cast<double>(predicted_records) / static_cast<double>(gold_records);
  }
};

inline MetricReport score_run(const std::vector<Prediction>& predictions, const Dataset& gold,
                              TaskId task_id, const ScoreOptions& opts = {}) {
  if (!gold.manifest.supports(task_id)) {
    throw UsageError("dataset '" + gold.id + "' does not support task '" +
                     std::string(to_string(task_id)) + "'");
  }
  MetricReport rep;
  rep.task = task_id;
  rep.dataset = gold.id;
  rep.split = opts.split;
  rep.mode = opts.mode;

  std::map<std::string, const Record*> records;
  for (const auto& r : gold.records) {
    if (opts.split && r.split != opts.split) continue;
    records[r.id] = &r;
  }
  rep.gold_records = records.size();

  std::map<std::string, const Prediction*> by_id;
  std::vector<Issue> unknown;
  for (const auto& p : predictions) {
    if (p.task != task_id) continue;
    if (!records.contains(p.record_id)) {
      unknown.push_back({0, p.record_id, "prediction id not present in gold set"});
      continue;
    }
    by_id[p.record_id] = &p;
  }
  if (!unknown.empty()) throw DataError(std::move(unknown));
  rep.predicted_records = by_id.size();

  if (task_kind(task_id) == TaskKind::Classification) {
    std::map<std::string, Label> pred, gold_labels;
    for (const auto& [id, r] : records) {
      gold_labels[id] = r->label;
      auto it = by_id.find(id);
      if (it == by_id.end()) continue;
      switch (parse_classification_output(it->second->output)) {
        case ParsedLabel::Positive: pred[id] = Label::Positive; break;
        case ParsedLabel::Negative: pred[id] = Label::Negative; break;
        case ParsedLabel::Unparseable:
          pred[id] = Label::Negative;
          ++rep.unparseable;
          break;
      }
    }
    if (gold_labels.empty()) throw UsageError("no gold records to score");
    rep.classification = classification_prf(pred, gold_labels);
  } else {
    const auto kind = task_span_kind(task_id);
    SpanMatchResult strict, partial;
    strict.mode = MatchMode::Strict;
    partial.mode = MatchMode::Partial;
    ReadabilitySummary rd;
    for (const auto& [id, r] : records) {
      std::vector<SpanRef> gold_spans;
      for (const auto& s : r->spans) {
        if (s.kind == kind) gold_spans.push_back({s.kind, s.start, s.end});
      }
      std::vector<SpanRef> pred_spans;
      std::size_t unfindable = 0;
      if (auto it = by_id.find(id); it != by_id.end()) {
        const auto pieces = parse_span_output(it->second->output);
        const auto grounded = ground_spans(pieces, r->text);
        for (std::size_t i = 0; i < pieces.size(); ++i) {
          if (grounded[i]) {
            pred_spans.push_back({kind, grounded[i]->start, grounded[i]->end});
          } else {
            ++unfindable;
          }
          if (opts.readability) {
            const auto c = readability_counts(pieces[i], dale_chall_easy_words());
            if (c.words > 0) {
              const auto s = readability_from_counts(c);
              ++rd.spans;
              rd.dale_chall += s.dale_chall;
              rd.automated_readability_index += s.automated_readability_index;
              rd.flesch_reading_ease += s.flesch_reading_ease;
            }
          }
        }
      }
      rep.unfindable += unfindable;
      for (auto* acc : {&strict, &partial}) {
        const auto m = span_match(pred_spans, gold_spans, acc->mode, unfindable);
        acc->tp += m.tp;
        acc->fp += m.fp;
        acc->fn += m.fn;
      }
    }
    if (opts.mode != ReportMode::Partial) rep.strict = strict;
    if (opts.mode != ReportMode::Strict) rep.partial = partial;
    if (opts.readability) {
      if (rd.spans > 0) {
        const double n = static_cast<double>(rd.spans);
        rd.dale_chall /= n;
        rd.automated_readability_index /= n;
        rd.flesch_reading_ease /= n;
      }
      rep.readability = rd;
    }
    if (rep.unfindable > 0) {
      rep.warnings.push_back(std::to_string(rep.unfindable) +
                             " predicted spans not found in their text were counted as false positives");
    }
  }

  if (rep.predicted_records == 0) {
    rep.warnings.push_back("no predictions for task '" + std::string(to_string(task_id)) + "'");
  } else if (rep.predicted_records < rep.gold_records) {
    rep.warnings.push_back(std::to_string(rep.gold_records - rep.predicted_records) +
                           " gold records have no prediction and were scored as empty/negative");
  }
  if (rep.unparseable > 0) {
    rep.warnings.push_back(std::to_string(rep.unparseable) +
                           " classification outputs were unparseable and scored as negative");
  }
  return rep;
}

inline std::string percent1(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", 100.0 * v);
  return buf;
}

inline ojson to_json(const PRF& s) {
  ojson j;
  j["precision"] = s.precision;
  j["recall"] = s.recall;
  j["f1"] = s.f1;
  return j;
}

inline ojson to_json(const SpanMatchResult& m) {
  ojson j = to_json(m.prf());
  j["tp"] = m.tp;
  j["fp"] = m.fp;
  j["fn"] = m.fn;
  return j;
}

/// Machine-readable report. Extraction F1 is also given as "partial (strict)"
/// in percent with one decimal, the convention of published result tables.
inline ojson to_json(const MetricReport& r) {
  ojson j;
  j["task"] = to_string(r.task);
  j["dataset"] = r.dataset;
  j["split"] = r.split ? ojson(to_string(*r.split)) : ojson(nullptr);
  j["metric"] = "SMM4H-style";
  ojson cov;
  cov["gold_records"] = r.gold_records;
  cov["predicted_records"] = r.predicted_records;
  cov["coverage"] = r.coverage();
  j["coverage"] = cov;
  if (r.classification) {
    ojson c = to_json(r.classification->scores);
    c["tp"] = r.classification->counts.tp;
    c["fp"] = r.classification->counts.fp;
    c["fn"] = r.classification->counts.fn;
    c["tn"] = r.classification->counts.tn;
    c["unparseable"] = r.unparseable;
    j["classification"] = c;
  }
  if (r.strict || r.partial) {
    ojson e;
    if (r.partial) e["partial"] = to_json(*r.partial);
    if (r.strict) e["strict"] = to_json(*r.strict);
    if (r.partial && r.strict) {
      e["f1_partial_strict"] = percent1(r.partial->prf().f1) + " (" + percent1(r.strict->prf().f1) + ")";
    }
    e["unfindable"] = r.unfindable;
    j["extraction"] = e;
  }
  if (r.readability) {
    ojson rd;
    rd["spans"] = r.readability->spans;
    rd["dale_chall"] = r.readability->dale_chall;
    rd["automated_readability_index"] = r.readability->automated_readability_index;
    rd["flesch_reading_ease"] = r.readability->flesch_reading_ease;
    j["readability"] = rd;
  }
  j["warnings"] = r.warnings;
  return j;
}

/// Human-readable table.
inline std::string format_report(const MetricReport& r) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "task: %s  dataset: %s  split: %s\n",
                std::string(to_string(r.task)).c_str(), r.dataset.c_str(),
                r.split ? std::string(to_string(*r.split)).c_str() : "all");
  out += buf;
  std::snprintf(buf, sizeof buf, "coverage: %zu/%zu (%.3f)\n", r.predicted_records, r.gold_records,
                r.coverage());
  out += buf;
  auto row = [&](const char* name, const PRF& s, std::size_t tp, std::size_t fp, std::size_t fn) {
    std::snprintf(buf, sizeof buf, "%-16s P=%.4f R=%.4f F1=%.4f  (tp=%zu fp=%zu fn=%zu)\n", name,
                  s.precision, s.recall, s.f1, tp, fp, fn);
    out += buf;
  };
  if (r.classification) {
    const auto& c = r.classification->counts;
    row("positive class", r.classification->scores, c.tp, c.fp, c.fn);
  }
  if (r.partial) row("partial", r.partial->prf(), r.partial->tp, r.partial->fp, r.partial->fn);
  if (r.strict) row("strict", r.strict->prf(), r.strict->tp, r.strict->fp, r.strict->fn);
  if (r.partial && r.strict) {
    out += "F1 partial (strict): " + percent1(r.partial->prf().f1) + " (" +
           percent1(r.strict->prf().f1) + ")\n";
  }
  if (r.readability) {
    std::snprintf(buf, sizeof buf, "readability over %zu spans: dale-chall=%.2f ari=%.2f flesch=%.2f\n",
                  r.readability->spans, r.readability->dale_chall,
                  r.readability->automated_readability_index, r.readability->flesch_reading_ease);
    out += buf;
  }
  for (const auto& w : r.warnings) out += "warning: " + w + "\n";
  return out;
}

}  // namespace aekit
