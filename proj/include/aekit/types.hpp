#pragma once

// Vocabulary shared by every module: span kinds, labels, splits, tasks.

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aekit {

enum class SpanKind { AE, Drug, Dosage };
enum class Label { Positive, Negative, Unlabeled };
enum class Split { Train, Validation, Test, TestOnly };
enum class TaskId { AssertAE, NerAE, NerDrug, NerDosage };
enum class TaskKind { Classification, SpanExtraction };

inline constexpr std::array<TaskId, 4> kAllTasks = {TaskId::AssertAE, TaskId::NerAE,
                                                    TaskId::NerDrug, TaskId::NerDosage};

struct Span {
  SpanKind kind = SpanKind::AE;
  std::size_t start = 0;  // code points, inclusive
  std::size_t end = 0;    // code points, exclusive
  std::string surface;

  std::size_t length() const { return end - start; }

  friend bool operator==(const Span&, const Span&) = default;
  friend auto operator<=>(const Span& a, const Span& b) {
    if (auto c = a.start <=> b.start; c != 0) return c;
    if (auto c = a.end <=> b.end; c != 0) return c;
    return a.kind <=> b.kind;
  }
};

struct Record {
  std::string id;
  std::string text;  // UTF-8
  Label label = Label::Unlabeled;
  std::vector<Span> spans;  // sorted by (start, end, kind)
  std::string dataset;
  std::optional<Split> split;

  friend bool operator==(const Record&, const Record&) = default;
};

constexpr std::string_view to_string(SpanKind k) {
  switch (k) {
    case SpanKind::AE: return "ae";
    case SpanKind::Drug: return "drug";
    case SpanKind::Dosage: return "dosage";
  }
  return "?";
}

constexpr std::string_view to_string(Label l) {
  switch (l) {
    case Label::Positive: return "positive";
    case Label::Negative: return "negative";
    case Label::Unlabeled: return "unlabeled";
  }
  return "?";
}

constexpr std::string_view to_string(Split s) {
  switch (s) {
    case Split::Train: return "train";
    case Split::Validation: return "validation";
    case Split::Test: return "test";
    case Split::TestOnly: return "test_only";
  }
  return "?";
}

/// Canonical task name: the prefix without its trailing colon.
constexpr std::string_view to_string(TaskId t) {
  switch (t) {
    case TaskId::AssertAE: return "assert ade";
    case TaskId::NerAE: return "ner ade";
    case TaskId::NerDrug: return "ner drug";
    case TaskId::NerDosage: return "ner dosage";
  }
  return "?";
}

namespace detail {
inline std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}
}  // namespace detail

inline std::optional<SpanKind> parse_span_kind(std::string_view s) {
  const auto v = detail::lower_ascii(s);
  if (v == "ae" || v == "ade" || v == "adr") return SpanKind::AE;
  if (v == "drug") return SpanKind::Drug;
  if (v == "dosage" || v == "dose") return SpanKind::Dosage;
  return std::nullopt;
}

inline std::optional<Split> parse_split(std::string_view s) {
  const auto v = detail::lower_ascii(s);
  if (v == "train") return Split::Train;
  if (v == "validation" || v == "valid" || v == "dev") return Split::Validation;
  if (v == "test") return Split::Test;
  if (v == "test_only") return Split::TestOnly;
  return std::nullopt;
}

/// Accepts "ner ade", "ner ade:", "ner_ade" and the enum spelling "NerAE".
inline std::optional<TaskId> parse_task(std::string_view s) {
  auto v = detail::lower_ascii(s);
  if (!v.empty() && v.back() == ':') v.pop_back();
  for (auto& c : v) {
    if (c == '_' || c == '-') c = ' ';
  }
  if (v == "assert ade" || v == "assertae") return TaskId::AssertAE;
  if (v == "ner ade" || v == "nerae") return TaskId::NerAE;
  if (v == "ner drug" || v == "nerdrug") return TaskId::NerDrug;
  if (v == "ner dosage" || v == "nerdosage") return TaskId::NerDosage;
  return std::nullopt;
}

constexpr TaskKind task_kind(TaskId t) {
  return t == TaskId::AssertAE ? TaskKind::Classification : TaskKind::SpanExtraction;
}

/// Span kind extracted by a span task. Undefined for AssertAE.
constexpr SpanKind task_span_kind(TaskId t) {
  switch (t) {
    case TaskId::NerDrug: return SpanKind::Drug;
    case TaskId::NerDosage: return SpanKind::Dosage;
    default: return SpanKind::AE;
  }
}

}  // namespace aekit
