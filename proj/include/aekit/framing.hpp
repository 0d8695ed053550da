#pragma once

// Prefix-tagged seq-to-seq instances and parsing of generated outputs.

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aekit/artifact.hpp"
#include "aekit/corpus.hpp"
#include "aekit/error.hpp"
#include "aekit/types.hpp"
#include "aekit/unicode.hpp"

namespace aekit {

inline constexpr std::string_view kPositiveLabel = "adverse event problem";
inline constexpr std::string_view kNegativeLabel = "health ok";
inline constexpr std::string_view kSpanSeparator = "; ";

struct Task {
  TaskId id;
  std::string_view prefix;
  TaskKind kind;
};

inline constexpr std::array<Task, 4> kTasks = {{
    {TaskId::AssertAE, "assert ade:", TaskKind::Classification},
    {TaskId::NerAE, "ner ade:", TaskKind::SpanExtraction},
    {TaskId::NerDrug, "ner drug:", TaskKind::SpanExtraction},
    {TaskId::NerDosage, "ner dosage:", TaskKind::SpanExtraction},
}};

constexpr const Task& task(TaskId id) {
  return kTasks[static_cast<std::size_t>(id)];
}

struct TaskInstance {
  std::string record_id;
  TaskId task = TaskId::AssertAE;
  std::string dataset;
  std::string input;
  std::string target;

  friend bool operator==(const TaskInstance&, const TaskInstance&) = default;
};

/// ';' inside a surface would split the target on parse, so it becomes ','.
inline std::string sanitize_surface(std::string_view surface) {
  std::string out(surface);
  std::replace(out.begin(), out.end(), ';', ',');
  return out;
}

inline std::string render_target(const Record& r, TaskId t) {
  if (task_kind(t) == TaskKind::Classification) {
    return std::string(r.label == Label::Positive ? kPositiveLabel : kNegativeLabel);
  }
  std::string out;
  const auto kind = task_span_kind(t);
  for (const auto& s : r.spans) {
    if (s.kind != kind) continue;
    if (!out.empty()) out += kSpanSeparator;
    out += sanitize_surface(s.surface);
  }
  return out;
}

/// Throws UsageError when the dataset does not declare the task or a
/// classification instance is requested for an unlabeled record.
inline TaskInstance render_instance(const Record& r, const Task& t, const DatasetManifest& m) {
  if (!m.supports(t.id)) {
    throw UsageError("dataset '" + m.dataset + "' does not support task '" +
                     std::string(to_string(t.id)) + "'");
  }
  if (t.kind == TaskKind::Classification && r.label == Label::Unlabeled) {
    throw UsageError("record '" + r.id + "' is unlabeled and cannot be rendered for '" +
                     std::string(to_string(t.id)) + "'");
  }
  TaskInstance inst;
  inst.record_id = r.id;
  inst.task = t.id;
  inst.dataset = r.dataset;
  inst.input = std::string(t.prefix) + " " + r.text;
  inst.target = render_target(r, t.id);
  return inst;
}

/// Renders every record of a dataset (optionally one split) for a task.
inline std::vector<TaskInstance> render_dataset(const Dataset& ds, TaskId t,
                                                std::optional<Split> split = std::nullopt) {
  std::vector<TaskInstance> out;
  for (const auto& r : ds.records) {
    if (split && r.split != split) continue;
    out.push_back(render_instance(r, task(t), ds.manifest));
  }
  return out;
}

enum class ParsedLabel { Positive, Negative, Unparseable };

inline ParsedLabel parse_classification_output(std::string_view raw) {
  const auto v = utf8::fold(utf8::trim(raw));
  if (v == kPositiveLabel) return ParsedLabel::Positive;
  if (v == kNegativeLabel) return ParsedLabel::Negative;
  return ParsedLabel::Unparseable;
}

/// Splits on ';', trims, drops empty pieces and repeated pieces.
inline std::vector<std::string> parse_span_output(std::string_view raw) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= raw.size()) {
    auto semi = raw.find(';', pos);
    if (semi == std::string_view::npos) semi = raw.size();
    const auto piece = utf8::trim(raw.substr(pos, semi - pos));
    if (!piece.empty() && std::find(out.begin(), out.end(), piece) == out.end()) {
      out.emplace_back(piece);
    }
    pos = semi + 1;
  }
  return out;
}

struct Grounding {
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const Grounding&, const Grounding&) = default;
};

/// Locates each piece in the text, case-insensitively, at or after the start
/// of the previous located piece, skipping occurrences an earlier piece
/// already claimed. nullopt marks a piece that cannot be found.
inline std::vector<std::optional<Grounding>> ground_spans(const std::vector<std::string>& pieces,
                                                          std::string_view text) {
  std::vector<std::optional<Grounding>> out;
  const auto text_cps = utf8::decode(text);
  if (!text_cps) {
    out.resize(pieces.size());
    return out;
  }
  const auto hay = utf8::fold(*text_cps);
  std::vector<Grounding> claimed;
  std::size_t from = 0;
  for (const auto& piece : pieces) {
    const auto cps = utf8::decode(piece);
    if (!cps || cps->empty()) {
      out.emplace_back();
      continue;
    }
    const auto needle = utf8::fold(*cps);
    std::optional<Grounding> found;
    for (auto pos = hay.find(needle, from); pos != std::u32string::npos; pos = hay.find(needle, pos + 1)) {
      const Grounding g{pos, pos + needle.size()};
      if (std::find(claimed.begin(), claimed.end(), g) == claimed.end()) {
        found = g;
        break;
      }
    }
    if (found) {
      claimed.push_back(*found);
      from = found->start;
    }
    out.push_back(found);
  }
  return out;
}

inline ojson to_json(const TaskInstance& inst) {
  ojson j;
  j["id"] = inst.record_id;
  j["task"] = to_string(inst.task);
  j["dataset"] = inst.dataset;
  j["input"] = inst.input;
  j["target"] = inst.target;
  return j;
}

inline TaskInstance instance_from_json(const ojson& j) {
  TaskInstance inst;
  inst.record_id = j.at("id").get<std::string>();
  auto t = parse_task(j.at("task").get<std::string>());
  if (!t) throw UsageError("unknown task '" + j.at("task").get<std::string>() + "'");
  inst.task = *t;
  inst.dataset = j.value("dataset", std::string());
  inst.input = j.at("input").get<std::string>();
  inst.target = j.at("target").get<std::string>();
  return inst;
}

}  // namespace aekit
