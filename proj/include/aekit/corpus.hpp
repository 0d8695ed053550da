#pragma once

// Canonical datasets: validation, manifests and the three on-disk formats.
//
// Canonical line (code-point offsets, UTF-8 text):
//   {"id": str, "text": str, "label": "positive"|"negative"|null,
//    "spans": [{"kind": "ae"|"drug"|"dosage", "start": int, "end": int,
//               "surface": str}],
//    "dataset": str, "split": str|null}
//
// IOB tokens: one "token<ws>tag" line per token, blank line between
// records. Optional "# id = ..." and "# label = ..." comment lines precede a
// record. Records without a label comment are labelled by AE presence when
// the file carries any AE tag and left unlabelled otherwise.
//
// Span TSV: "id<TAB>label<TAB>text[<TAB>kind:start:end]..." with label one of
// positive, negative or empty. Surfaces are taken from the text.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "aekit/artifact.hpp"
#include "aekit/error.hpp"
#include "aekit/iob.hpp"
#include "aekit/types.hpp"
#include "aekit/unicode.hpp"

namespace aekit {

enum class Format { CanonicalJsonl, IobTokens, SpanTsv };

inline std::optional<Format> parse_format(std::string_view s) {
  const auto v = detail::lower_ascii(s);
  if (v == "jsonl" || v == "canonical" || v == "canonicaljsonl") return Format::CanonicalJsonl;
  if (v == "iob" || v == "conll" || v == "iobtokens") return Format::IobTokens;
  if (v == "tsv" || v == "spantsv") return Format::SpanTsv;
  return std::nullopt;
}

/// Guesses the format from a file extension.
inline std::optional<Format> format_from_path(const std::filesystem::path& p) {
  const auto ext = detail::lower_ascii(p.extension().string());
  if (ext == ".jsonl" || ext == ".json") return Format::CanonicalJsonl;
  if (ext == ".iob" || ext == ".conll" || ext == ".bio") return Format::IobTokens;
  if (ext == ".tsv") return Format::SpanTsv;
  return std::nullopt;
}

struct LabelCounts {
  std::size_t total = 0;
  std::size_t positive = 0;
  std::size_t negative = 0;

  friend bool operator==(const LabelCounts&, const LabelCounts&) = default;
};

struct DatasetManifest {
  std::string dataset;
  std::set<TaskId> tasks;
  bool test_only = false;
  LabelCounts total;
  std::map<Split, LabelCounts> splits;  // only splits that occur
  LabelCounts unassigned;
  // train examples usable per task (the per-dataset count fed to the mixer)
  std::map<TaskId, std::size_t> train_pool;

  bool supports(TaskId t) const { return tasks.contains(t); }
  std::size_t pool(TaskId t) const {
    auto it = train_pool.find(t);
    return it == train_pool.end() ? 0 : it->second;
  }

  friend bool operator==(const DatasetManifest&, const DatasetManifest&) = default;
};

struct Dataset {
  std::string id;
  std::vector<Record> records;
  DatasetManifest manifest;
  std::vector<Issue> warnings;
};

struct LoadOptions {
  std::optional<std::string> dataset;         // overrides the id found in the file
  bool test_only = false;                     // mark every record TestOnly
  std::optional<std::set<TaskId>> tasks;      // overrides inferred capabilities
};

/// Whether a train record can serve as an example of a task.
inline bool usable_for(const Record& r, TaskId t) {
  if (task_kind(t) == TaskKind::Classification) return r.label != Label::Unlabeled;
  const auto kind = task_span_kind(t);
  return std::any_of(r.spans.begin(), r.spans.end(), [&](const Span& s) { return s.kind == kind; });
}

inline bool has_kind(const Record& r, SpanKind kind) {
  return std::any_of(r.spans.begin(), r.spans.end(), [&](const Span& s) { return s.kind == kind; });
}

/// Tasks a record set can serve: AssertAE when every record is labelled,
/// each span task when at least one span of its kind occurs.
inline std::set<TaskId> infer_tasks(const std::vector<Record>& records) {
  std::set<TaskId> tasks;
  if (records.empty()) return tasks;
  if (std::all_of(records.begin(), records.end(),
                  [](const Record& r) { return r.label != Label::Unlabeled; })) {
    tasks.insert(TaskId::AssertAE);
  }
  for (auto t : {TaskId::NerAE, TaskId::NerDrug, TaskId::NerDosage}) {
    if (std::any_of(records.begin(), records.end(),
                    [&](const Record& r) { return has_kind(r, task_span_kind(t)); })) {
      tasks.insert(t);
    }
  }
  return tasks;
}

inline void tally(LabelCounts& c, Label l) {
  ++c.total;
  if (l == Label::Positive) ++c.positive;
  if (l == Label::Negative) ++c.negative;
}

inline DatasetManifest compute_manifest(const std::string& id, const std::vector<Record>& records,
                                        std::set<TaskId> tasks, bool test_only) {
  DatasetManifest m;
  m.dataset = id;
  m.tasks = std::move(tasks);
  m.test_only = test_only;
  for (const auto& r : records) {
    tally(m.total, r.label);
    if (r.split) {
      tally(m.splits[*r.split], r.label);
    } else {
      tally(m.unassigned, r.label);
    }
    if (r.split == Split::Train) {
      for (auto t : m.tasks) {
        if (usable_for(r, t)) ++m.train_pool[t];
      }
    }
  }
  return m;
}

/// Checks one record against the span and label invariants and sorts its
/// spans. `line` is attached to every issue.
inline std::vector<Issue> normalize_record(Record& r, std::size_t line) {
  std::vector<Issue> issues;
  auto fail = [&](std::string msg) { issues.push_back({line, r.id, std::move(msg)}); };
  if (r.id.empty()) fail("empty id");
  if (r.text.empty()) fail("empty text");
  const auto text = utf8::decode(r.text);
  if (!text) {
    fail("text is not valid UTF-8");
    return issues;
  }
  for (const auto& s : r.spans) {
    const std::string where = std::string(to_string(s.kind)) + " span [" +
                              std::to_string(s.start) + ", " + std::to_string(s.end) + ")";
    if (s.start >= s.end) {
      fail(where + " is empty or reversed");
    } else if (s.end > text->size()) {
      fail(where + " ends beyond text length " + std::to_string(text->size()));
    } else {
      const auto actual = utf8::encode(std::u32string_view(*text).substr(s.start, s.end - s.start));
      if (actual != s.surface) {
        fail(where + " surface '" + s.surface + "' does not match text '" + actual + "'");
      }
    }
  }
  std::sort(r.spans.begin(), r.spans.end());
  for (std::size_t i = 1; i < r.spans.size(); ++i) {
    const auto& a = r.spans[i - 1];
    const auto& b = r.spans[i];
    if (a.kind == b.kind && a.start == b.start && a.end == b.end) {
      fail("duplicate " + std::string(to_string(a.kind)) + " span [" + std::to_string(a.start) +
           ", " + std::to_string(a.end) + ")");
    }
  }
  if (r.label == Label::Negative && has_kind(r, SpanKind::AE)) {
    fail("negative record carries AE spans");
  }
  return issues;
}

/// Dataset-level checks and manifest construction shared by every loader.
/// `lines` holds the source line of each record for error reporting.
inline Dataset finish_dataset(std::string id, std::vector<Record> records,
                              const std::vector<std::size_t>& lines, const LoadOptions& opts,
                              std::vector<Issue> issues, std::vector<Issue> warnings) {
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto& r = records[i];
    r.dataset = id;
    if (opts.test_only) r.split = Split::TestOnly;
    auto [it, inserted] = seen.emplace(r.id, lines[i]);
    if (!inserted) {
      issues.push_back({lines[i], r.id, "duplicate id (first seen on line " +
                                            std::to_string(it->second) + ")"});
    }
  }

  bool test_only = opts.test_only;
  if (!records.empty() && std::all_of(records.begin(), records.end(), [](const Record& r) {
        return r.split == Split::TestOnly;
      })) {
    test_only = true;
  }
  if (!test_only) {
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (records[i].split == Split::TestOnly) {
        issues.push_back({lines[i], records[i].id,
                          "test_only split in a dataset that is not test-only"});
      }
    }
  }

  std::set<TaskId> tasks = opts.tasks ? *opts.tasks : infer_tasks(records);
  if (tasks.contains(TaskId::AssertAE)) {
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (records[i].label == Label::Unlabeled) {
        issues.push_back({lines[i], records[i].id,
                          "unlabeled record in a dataset declared for assert ade"});
      }
    }
  }
  if (tasks.contains(TaskId::NerAE)) {
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (records[i].label == Label::Positive && !has_kind(records[i], SpanKind::AE)) {
        issues.push_back({lines[i], records[i].id,
                          "positive record without AE spans in an AE extraction dataset"});
      }
    }
  }
  if (records.empty()) issues.push_back({0, {}, "dataset has no records"});
  if (!issues.empty()) throw DataError(std::move(issues));

  Dataset ds;
  ds.manifest = compute_manifest(id, records, std::move(tasks), test_only);
  ds.id = std::move(id);
  ds.records = std::move(records);
  ds.warnings = std::move(warnings);
  return ds;
}

// ---------------------------------------------------------------------------
// canonical JSON

inline ojson to_json(const Span& s) {
  ojson j;
  j["kind"] = to_string(s.kind);
  j["start"] = s.start;
  j["end"] = s.end;
  j["surface"] = s.surface;
  return j;
}

inline ojson to_json(const Record& r) {
  ojson j;
  j["id"] = r.id;
  j["text"] = r.text;
  j["label"] = r.label == Label::Unlabeled ? ojson(nullptr) : ojson(to_string(r.label));
  j["spans"] = ojson::array();
  for (const auto& s : r.spans) j["spans"].push_back(to_json(s));
  j["dataset"] = r.dataset;
  j["split"] = r.split ? ojson(to_string(*r.split)) : ojson(nullptr);
  return j;
}

/// Parses one canonical line. Throws UsageError describing the first
/// structural problem; invariants are checked separately.
inline Record record_from_json(const ojson& j) {
  if (!j.is_object()) throw UsageError("record is not a JSON object");
  auto str_field = [&](const char* key) -> std::string {
    if (!j.contains(key) || !j[key].is_string()) {
      throw UsageError(std::string("missing or non-string field '") + key + "'");
    }
    return j[key].get<std::string>();
  };
  Record r;
  r.id = str_field("id");
  r.text = str_field("text");
  if (j.contains("dataset") && !j["dataset"].is_null()) r.dataset = str_field("dataset");
  if (j.contains("label") && !j["label"].is_null()) {
    const auto l = j["label"].is_string() ? j["label"].get<std::string>() : std::string("?");
    if (l == "positive") {
      r.label = Label::Positive;
    } else if (l == "negative") {
      r.label = Label::Negative;
    } else {
      throw UsageError("label must be \"positive\", \"negative\" or null");
    }
  }
  if (j.contains("split") && !j["split"].is_null()) {
    auto s = j["split"].is_string() ? parse_split(j["split"].get<std::string>()) : std::nullopt;
    if (!s) throw UsageError("unknown split value");
    r.split = s;
  }
  if (j.contains("spans")) {
    if (!j["spans"].is_array()) throw UsageError("'spans' is not an array");
    for (const auto& sj : j["spans"]) {
      if (!sj.is_object() || !sj.contains("kind") || !sj["kind"].is_string() ||
          !sj.contains("start") || !sj["start"].is_number_integer() || !sj.contains("end") ||
          !sj["end"].is_number_integer() || !sj.contains("surface") || !sj["surface"].is_string()) {
        throw UsageError("span needs string kind/surface and integer start/end");
      }
      auto kind = parse_span_kind(sj["kind"].get<std::string>());
      if (!kind) throw UsageError("unknown span kind '" + sj["kind"].get<std::string>() + "'");
      const auto start = sj["start"].get<long long>();
      const auto end = sj["end"].get<long long>();
      if (start < 0 || end < 0) throw UsageError("negative span offset");
      r.spans.push_back({*kind, static_cast<std::size_t>(start), static_cast<std::size_t>(end),
                         sj["surface"].get<std::string>()});
    }
  }
  return r;
}

inline ojson to_json(const LabelCounts& c) {
  ojson j;
  j["total"] = c.total;
  j["positive"] = c.positive;
  j["negative"] = c.negative;
  return j;
}

/// Manifest document. Rows follow the dataset-statistics table layout: the
/// dataset total followed by one row per split.
inline ojson to_json(const DatasetManifest& m) {
  ojson j;
  j["dataset"] = m.dataset;
  j["tasks"] = ojson::array();
  for (auto t : m.tasks) j["tasks"].push_back(to_string(t));
  j["test_only"] = m.test_only;
  ojson rows = ojson::array();
  auto row = [&](std::string_view name, const LabelCounts& c) {
    ojson r = to_json(c);
    r["split"] = name;
    rows.push_back(r);
  };
  row("total", m.total);
  for (const auto& [split, c] : m.splits) row(to_string(split), c);
  if (m.unassigned.total > 0) row("unassigned", m.unassigned);
  j["counts"] = rows;
  ojson pool = ojson::object();
  for (const auto& [t, n] : m.train_pool) pool[std::string(to_string(t))] = n;
  j["train_pool"] = pool;
  return j;
}

inline DatasetManifest manifest_from_json(const ojson& j) {
  DatasetManifest m;
  m.dataset = j.at("dataset").get<std::string>();
  for (const auto& t : j.at("tasks")) {
    auto id = parse_task(t.get<std::string>());
    if (!id) throw UsageError("unknown task in manifest");
    m.tasks.insert(*id);
  }
  m.test_only = j.at("test_only").get<bool>();
  for (const auto& r : j.at("counts")) {
    LabelCounts c{r.at("total").get<std::size_t>(), r.at("positive").get<std::size_t>(),
                  r.at("negative").get<std::size_t>()};
    const auto name = r.at("split").get<std::string>();
    if (name == "total") {
      m.total = c;
    } else if (name == "unassigned") {
      m.unassigned = c;
    } else if (auto s = parse_split(name)) {
      m.splits[*s] = c;
    } else {
      throw UsageError("unknown split row '" + name + "' in manifest");
    }
  }
  for (const auto& [k, v] : j.at("train_pool").items()) {
    auto id = parse_task(k);
    if (!id) throw UsageError("unknown task in manifest train_pool");
    m.train_pool[*id] = v.get<std::size_t>();
  }
  return m;
}

// ---------------------------------------------------------------------------
// loaders

inline Dataset read_canonical(std::istream& in, const std::string& fallback_id,
                              const LoadOptions& opts) {
  std::vector<Record> records;
  std::vector<std::size_t> lines;
  std::vector<Issue> issues;
  std::optional<std::string> file_id;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (utf8::trim(line).empty()) continue;
    ojson j;
    try {
      j = ojson::parse(line);
    } catch (const std::exception& e) {
      issues.push_back({lineno, {}, std::string("malformed JSON: ") + e.what()});
      continue;
    }
    if (is_header(j)) continue;
    Record r;
    try {
      r = record_from_json(j);
    } catch (const UsageError& e) {
      const std::string id = j.is_object() && j.contains("id") && j["id"].is_string()
                                 ? j["id"].get<std::string>()
                                 : std::string();
      issues.push_back({lineno, id, e.what()});
      continue;
    }
    auto record_issues = normalize_record(r, lineno);
    issues.insert(issues.end(), record_issues.begin(), record_issues.end());
    if (!opts.dataset && !r.dataset.empty()) {
      if (!file_id) {
        file_id = r.dataset;
      } else if (*file_id != r.dataset) {
        issues.push_back({lineno, r.id, "dataset '" + r.dataset + "' differs from '" + *file_id +
                                            "' used earlier in the file"});
      }
    }
    records.push_back(std::move(r));
    lines.push_back(lineno);
  }
  const std::string id = opts.dataset ? *opts.dataset : file_id.value_or(fallback_id);
  return finish_dataset(id, std::move(records), lines, opts, std::move(issues), {});
}

inline Dataset read_iob(std::istream& in, const std::string& fallback_id, const LoadOptions& opts) {
  struct Pending {
    std::string id;
    std::optional<Label> label;
    std::vector<std::string> tokens;
    std::vector<std::string> tags;
    std::size_t first_line = 0;
    bool bad = false;
  };
  const std::string id = opts.dataset.value_or(fallback_id);
  std::vector<Pending> blocks;
  std::vector<Issue> issues;
  std::vector<Issue> warnings;
  Pending cur;
  auto flush = [&] {
    if (!cur.tokens.empty() || !cur.id.empty()) blocks.push_back(std::move(cur));
    cur = Pending{};
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = utf8::trim(line);
    if (t.empty()) {
      flush();
      continue;
    }
    if (t.front() == '#') {
      if (!cur.tokens.empty()) flush();
      auto body = utf8::trim(t.substr(1));
      const auto eq = body.find('=');
      if (eq == std::string_view::npos) continue;
      const auto key = utf8::trim(body.substr(0, eq));
      const auto value = utf8::trim(body.substr(eq + 1));
      if (cur.first_line == 0) cur.first_line = lineno;
      if (key == "id") {
        cur.id = std::string(value);
      } else if (key == "label") {
        if (value == "positive") {
          cur.label = Label::Positive;
        } else if (value == "negative") {
          cur.label = Label::Negative;
        } else {
          issues.push_back({lineno, cur.id, "unknown label '" + std::string(value) + "'"});
          cur.bad = true;
        }
      }
      continue;
    }
    std::istringstream fields{std::string(t)};
    std::vector<std::string> parts;
    for (std::string f; fields >> f;) parts.push_back(f);
    if (parts.size() < 2) {
      issues.push_back({lineno, cur.id, "expected '<token> <tag>'"});
      cur.bad = true;
      continue;
    }
    try {
      parse_iob_tag(parts.back());
    } catch (const UsageError& e) {
      issues.push_back({lineno, cur.id, e.what()});
      cur.bad = true;
      continue;
    }
    if (cur.first_line == 0) cur.first_line = lineno;
    cur.tokens.push_back(parts.front());
    cur.tags.push_back(parts.back());
  }
  flush();

  bool any_ae = false;
  for (const auto& b : blocks) {
    for (const auto& tag : b.tags) {
      if (tag != "O" && parse_iob_tag(tag).kind == SpanKind::AE) any_ae = true;
    }
  }

  std::vector<Record> records;
  std::vector<std::size_t> lines;
  for (std::size_t n = 0; n < blocks.size(); ++n) {
    auto& b = blocks[n];
    if (b.bad) continue;
    Record r;
    r.id = b.id.empty() ? id + "-" + std::to_string(n + 1) : b.id;
    for (std::size_t i = 0; i < b.tokens.size(); ++i) {
      if (i > 0) r.text.push_back(' ');
      r.text += b.tokens[i];
    }
    auto conv = iob_to_spans(b.tokens, b.tags);
    for (auto idx : conv.repaired) {
      warnings.push_back({b.first_line, r.id,
                          "dangling I- tag on token " + std::to_string(idx) + " repaired to B-"});
    }
    r.spans = std::move(conv.spans);
    if (b.label) {
      r.label = *b.label;
    } else if (any_ae) {
      r.label = has_kind(r, SpanKind::AE) ? Label::Positive : Label::Negative;
    }
    auto record_issues = normalize_record(r, b.first_line);
    issues.insert(issues.end(), record_issues.begin(), record_issues.end());
    records.push_back(std::move(r));
    lines.push_back(b.first_line);
  }
  return finish_dataset(id, std::move(records), lines, opts, std::move(issues),
                        std::move(warnings));
}

inline Dataset read_span_tsv(std::istream& in, const std::string& fallback_id,
                             const LoadOptions& opts) {
  const std::string id = opts.dataset.value_or(fallback_id);
  std::vector<Record> records;
  std::vector<std::size_t> lines;
  std::vector<Issue> issues;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (utf8::trim(line).empty() || line.front() == '#') continue;
    std::vector<std::string> cols;
    std::size_t pos = 0;
    while (true) {
      const auto tab = line.find('\t', pos);
      cols.push_back(line.substr(pos, tab == std::string::npos ? std::string::npos : tab - pos));
      if (tab == std::string::npos) break;
      pos = tab + 1;
    }
    if (cols.size() < 3) {
      issues.push_back({lineno, cols.empty() ? "" : cols[0], "expected at least 3 tab-separated columns"});
      continue;
    }
    Record r;
    r.id = cols[0];
    r.text = cols[2];
    if (cols[1] == "positive") {
      r.label = Label::Positive;
    } else if (cols[1] == "negative") {
      r.label = Label::Negative;
    } else if (!cols[1].empty() && cols[1] != "-") {
      issues.push_back({lineno, r.id, "unknown label '" + cols[1] + "'"});
      continue;
    }
    const auto text = utf8::decode(r.text);
    bool ok = true;
    for (std::size_t c = 3; c < cols.size() && ok; ++c) {
      if (cols[c].empty()) continue;
      const auto a = cols[c].find(':');
      const auto b = a == std::string::npos ? a : cols[c].find(':', a + 1);
      std::optional<SpanKind> kind;
      std::size_t start = 0, end = 0;
      try {
        if (b == std::string::npos) throw std::invalid_argument("shape");
        kind = parse_span_kind(cols[c].substr(0, a));
        std::size_t used = 0;
        const auto s_str = cols[c].substr(a + 1, b - a - 1);
        const auto e_str = cols[c].substr(b + 1);
        if (s_str.empty() || e_str.empty() || s_str[0] == '-' || e_str[0] == '-') {
          throw std::invalid_argument("sign");
        }
        start = std::stoull(s_str, &used);
        if (used != s_str.size()) throw std::invalid_argument("trailing");
        end = std::stoull(e_str, &used);
        if (used != e_str.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        issues.push_back({lineno, r.id, "bad span column '" + cols[c] + "', expected kind:start:end"});
        ok = false;
        break;
      }
      if (!kind) {
        issues.push_back({lineno, r.id, "unknown span kind in '" + cols[c] + "'"});
        ok = false;
        break;
      }
      std::string surface;
      if (text && start < end && end <= text->size()) {
        surface = utf8::encode(std::u32string_view(*text).substr(start, end - start));
      }
      r.spans.push_back({*kind, start, end, surface});
    }
    if (!ok) continue;
    auto record_issues = normalize_record(r, lineno);
    issues.insert(issues.end(), record_issues.begin(), record_issues.end());
    records.push_back(std::move(r));
    lines.push_back(lineno);
  }
  return finish_dataset(id, std::move(records), lines, opts, std::move(issues), {});
}

inline Dataset load_dataset(std::istream& in, Format format, const std::string& fallback_id,
                            const LoadOptions& opts = {}) {
  switch (format) {
    case Format::CanonicalJsonl: return read_canonical(in, fallback_id, opts);
    case Format::IobTokens: return read_iob(in, fallback_id, opts);
    case Format::SpanTsv: return read_span_tsv(in, fallback_id, opts);
  }
  throw UsageError("unknown format");
}

/// Loads a dataset file. The file stem is the dataset id unless the file or
/// the options name one.
inline Dataset load_dataset(const std::filesystem::path& path, Format format,
                            const LoadOptions& opts = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return load_dataset(in, format, path.stem().string(), opts);
}

inline Dataset make_dataset(std::string id, std::vector<Record> records, const LoadOptions& opts = {}) {
  std::vector<Issue> issues;
  for (auto& r : records) {
    auto ri = normalize_record(r, 0);
    issues.insert(issues.end(), ri.begin(), ri.end());
  }
  std::vector<std::size_t> lines(records.size(), 0);
  return finish_dataset(std::move(id), std::move(records), lines, opts, std::move(issues), {});
}

/// Writes the canonical line-delimited form, header first.
inline void write_canonical(std::ostream& out, const Dataset& ds, const ojson& header) {
  out << header_line(header) << '\n';
  for (const auto& r : ds.records) out << to_json(r).dump() << '\n';
}

/// Manifest document with the provenance header embedded.
inline ojson manifest_document(const DatasetManifest& m, const ojson& header) {
  ojson doc;
  doc[std::string(kHeaderKey)] = header;
  const ojson fields = to_json(m);
  for (const auto& [k, v] : fields.items()) doc[k] = v;
  return doc;
}

}  // namespace aekit
