#pragma once

// Prediction file: a provenance header line followed by one line per
// (record id, task) holding the raw model output:
//   {"id": str, "task": "assert ade"|"ner ade"|"ner drug"|"ner dosage", "output": str}

#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "aekit/artifact.hpp"
#include "aekit/error.hpp"
#include "aekit/types.hpp"
#include "aekit/unicode.hpp"

namespace aekit {

struct Prediction {
  std::string record_id;
  TaskId task = TaskId::AssertAE;
  std::string output;

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

inline ojson to_json(const Prediction& p) {
  ojson j;
  j["id"] = p.record_id;
  j["task"] = to_string(p.task);
  j["output"] = p.output;
  return j;
}

inline std::vector<Prediction> read_predictions(std::istream& in) {
  std::vector<Prediction> out;
  std::vector<Issue> issues;
  std::set<std::pair<std::string, TaskId>> seen;
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
    if (!j.is_object() || !j.contains("id") || !j["id"].is_string() || !j.contains("task") ||
        !j["task"].is_string() || !j.contains("output") || !j["output"].is_string()) {
      issues.push_back({lineno, {}, "prediction needs string fields id, task and output"});
      continue;
    }
    Prediction p;
    p.record_id = j["id"].get<std::string>();
    auto t = parse_task(j["task"].get<std::string>());
    if (!t) {
      issues.push_back({lineno, p.record_id, "unknown task '" + j["task"].get<std::string>() + "'"});
      continue;
    }
    p.task = *t;
    p.output = j["output"].get<std::string>();
    if (!seen.emplace(p.record_id, p.task).second) {
      issues.push_back({lineno, p.record_id, "duplicate prediction for task '" +
                                                 std::string(to_string(p.task)) + "'"});
      continue;
    }
    out.push_back(std::move(p));
  }
  if (!issues.empty()) throw DataError(std::move(issues));
  return out;
}

inline std::vector<Prediction> read_predictions(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return read_predictions(in);
}

inline void write_predictions(std::ostream& out, const std::vector<Prediction>& preds,
                              const ojson& header) {
  out << header_line(header) << '\n';
  for (const auto& p : preds) out << to_json(p).dump() << '\n';
}

}  // namespace aekit
