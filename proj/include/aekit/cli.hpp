#pragma once

// Command implementations behind the aekit executable. Each command reads
// and writes files only and throws DataError / UsageError on failure;
// run_guarded maps those to exit codes.

#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "aekit/artifact.hpp"
#include "aekit/corpus.hpp"
#include "aekit/error.hpp"
#include "aekit/framing.hpp"
#include "aekit/mixer.hpp"
#include "aekit/oracle.hpp"
#include "aekit/predictions.hpp"
#include "aekit/score.hpp"
#include "aekit/split.hpp"
#include "aekit/stats.hpp"

namespace aekit::cli {

namespace fs = std::filesystem;

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kInternal = 3 };

inline int run_guarded(const std::function<void()>& body, std::ostream& err = std::cerr) {
  try {
    body();
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    err << "data error:\n";
    for (const auto& issue : e.issues()) err << "  " << issue.describe() << '\n';
    return kData;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

struct InputSpec {
  fs::path path;
  std::optional<Format> format;
};

/// "iob:path/to/file" selects a format explicitly; otherwise the extension does.
inline InputSpec parse_input_spec(const std::string& arg) {
  const auto colon = arg.find(':');
  if (colon != std::string::npos && colon > 1) {
    if (auto f = parse_format(arg.substr(0, colon))) return {arg.substr(colon + 1), f};
  }
  return {arg, std::nullopt};
}

inline Format resolve_format(const InputSpec& in, std::optional<Format> fallback) {
  if (in.format) return *in.format;
  if (fallback) return *fallback;
  if (auto f = format_from_path(in.path)) return *f;
  throw UsageError("cannot infer format of '" + in.path.string() + "'; use --format or FORMAT:PATH");
}

inline void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << text;
}

inline std::string pretty(const ojson& j) { return j.dump(2) + "\n"; }

/// Input paths are recorded as given; nothing host-specific enters headers.
inline ojson paths_json(const std::vector<InputSpec>& inputs) {
  ojson a = ojson::array();
  for (const auto& i : inputs) a.push_back(i.path.generic_string());
  return a;
}

inline Dataset load_canonical(const fs::path& path) {
  return load_dataset(path, Format::CanonicalJsonl);
}

// ---------------------------------------------------------------------------

struct IngestOptions {
  std::vector<InputSpec> inputs;
  std::optional<Format> format;
  std::optional<std::string> dataset;  // single input only
  bool test_only = false;
  std::optional<std::set<TaskId>> tasks;
  fs::path out_dir = ".";
};

inline std::vector<Dataset> cmd_ingest(const IngestOptions& opts, std::ostream& log = std::cerr) {
  if (opts.inputs.empty()) throw UsageError("ingest: no input files");
  if (opts.dataset && opts.inputs.size() > 1) throw UsageError("--dataset needs exactly one input");
  std::vector<Dataset> out;
  std::vector<Issue> issues;
  std::set<std::string> ids;
  for (const auto& in : opts.inputs) {
    const auto format = resolve_format(in, opts.format);
    LoadOptions lo;
    lo.dataset = opts.dataset;
    lo.test_only = opts.test_only;
    lo.tasks = opts.tasks;
    try {
      auto ds = load_dataset(in.path, format, lo);
      if (!ids.insert(ds.id).second) {
        issues.push_back({0, {}, in.path.string() + ": dataset id '" + ds.id + "' used by another input"});
        continue;
      }
      out.push_back(std::move(ds));
    } catch (const DataError& e) {
      for (auto issue : e.issues()) {
        issue.message = in.path.string() + ": " + issue.message;
        issues.push_back(std::move(issue));
      }
    }
  }
  if (!issues.empty()) throw DataError(std::move(issues));

  for (const auto& ds : out) {
    ojson config;
    config["inputs"] = paths_json(opts.inputs);
    config["dataset"] = ds.id;
    config["test_only"] = ds.manifest.test_only;
    const auto header = make_header("ingest", config, {});
    std::ostringstream body;
    write_canonical(body, ds, header);
    write_text(opts.out_dir / (ds.id + ".jsonl"), body.str());
    write_text(opts.out_dir / (ds.id + ".manifest.json"), pretty(manifest_document(ds.manifest, header)));
    for (const auto& w : ds.warnings) log << "warning: " << ds.id << ": " << w.describe() << '\n';
    log << ds.id << ": " << ds.records.size() << " records\n";
  }
  return out;
}

// ---------------------------------------------------------------------------

struct SplitOptions {
  fs::path input;
  SplitRatios ratios;
  std::uint64_t seed = 0;
  fs::path output;
  std::optional<fs::path> manifest;  // defaults to <output stem>.manifest.json
};

inline SplitRatios parse_ratios(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, ',');) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw UsageError("bad ratio '" + part + "'");
    }
  }
  if (v.size() != 3) throw UsageError("ratios need three comma-separated values");
  return {v[0], v[1], v[2]};
}

inline Dataset cmd_split(const SplitOptions& opts) {
  if (opts.output.empty()) throw UsageError("split: --output is required");
  const auto ds = load_canonical(opts.input);
  auto out = stratified_split(ds, opts.ratios, opts.seed);
  ojson config;
  config["input"] = opts.input.generic_string();
  config["ratios"] = {opts.ratios.train, opts.ratios.validation, opts.ratios.test};
  config["seed"] = opts.seed;
  const auto header = make_header("split", config, {opts.seed});
  std::ostringstream body;
  write_canonical(body, out, header);
  write_text(opts.output, body.str());
  const auto manifest = opts.manifest.value_or(
      opts.output.parent_path() / (opts.output.stem().string() + ".manifest.json"));
  write_text(manifest, pretty(manifest_document(out.manifest, header)));
  return out;
}

// ---------------------------------------------------------------------------

struct StatsOptions {
  std::vector<fs::path> inputs;
  std::optional<fs::path> json_out;
};

inline std::string format_stats_table(const std::vector<StatsRow>& rows) {
  std::ostringstream o;
  auto num = [](std::optional<double> v, int prec) {
    if (!v) return std::string("-");
    std::ostringstream s;
    s << std::fixed << std::setprecision(prec) << *v;
    return s.str();
  };
  auto cnt = [](std::optional<std::size_t> v) { return v ? std::to_string(*v) : std::string("-"); };
  o << std::left << std::setw(24) << "dataset" << std::right << std::setw(9) << "seq_len"
    << std::setw(10) << "span_len" << std::setw(10) << "stop/span" << std::setw(9) << "ae/pos"
    << std::setw(10) << "uniq_ae" << std::setw(8) << "%ae" << std::setw(11) << "uniq_drug"
    << std::setw(9) << "flesch" << '\n';
  for (const auto& r : rows) {
    o << std::left << std::setw(24) << r.dataset << std::right << std::setw(9)
      << num(r.avg_seq_length, 1) << std::setw(10) << num(r.avg_span_length, 1) << std::setw(10)
      << num(r.avg_stopwords_per_span, 1) << std::setw(9) << num(r.avg_ae_per_positive, 1)
      << std::setw(10) << cnt(r.unique_ae) << std::setw(8) << num(r.pct_positive, 1)
      << std::setw(11) << cnt(r.unique_drugs) << std::setw(9) << num(r.flesch_reading_ease, 2)
      << '\n';
  }
  return o.str();
}

inline std::vector<StatsRow> cmd_stats(const StatsOptions& opts, std::ostream& out = std::cout) {
  if (opts.inputs.empty()) throw UsageError("stats: no input files");
  std::vector<StatsRow> rows;
  for (const auto& p : opts.inputs) rows.push_back(dataset_stats(load_canonical(p)));
  out << format_stats_table(rows);
  if (opts.json_out) {
    ojson config;
    ojson inputs = ojson::array();
    for (const auto& p : opts.inputs) inputs.push_back(p.generic_string());
    config["inputs"] = inputs;
    ojson doc;
    doc[std::string(kHeaderKey)] = make_header("stats", config, {});
    doc["rows"] = ojson::array();
    for (const auto& r : rows) doc["rows"].push_back(to_json(r));
    write_text(*opts.json_out, pretty(doc));
  }
  return rows;
}

// ---------------------------------------------------------------------------

struct MixOptions {
  std::vector<fs::path> inputs;
  MixerConfig config;
  fs::path weights_out;
  std::optional<fs::path> schedule_out;
};

struct MixResult {
  MixtureWeights weights;
  std::vector<TaskInstance> schedule;
};

inline MixResult cmd_mix(const MixOptions& opts) {
  if (opts.inputs.empty()) throw UsageError("mix: no input files");
  if (opts.weights_out.empty()) throw UsageError("mix: --weights is required");
  opts.config.validate();
  std::vector<Dataset> datasets;
  std::vector<DatasetManifest> manifests;
  std::set<std::string> ids;
  for (const auto& p : opts.inputs) {
    auto ds = load_canonical(p);
    if (!ids.insert(ds.id).second) throw DataError("dataset id '" + ds.id + "' appears twice");
    manifests.push_back(ds.manifest);
    datasets.push_back(std::move(ds));
  }
  MixResult res;
  res.weights = build_weights(manifests, opts.config);
  if (opts.schedule_out) {
    res.schedule = sample_schedule(datasets, res.weights, opts.config.seed, opts.config.schedule_length);
  }

  ojson config = to_json(opts.config);
  ojson inputs = ojson::array();
  for (const auto& p : opts.inputs) inputs.push_back(p.generic_string());
  config["inputs"] = inputs;
  const auto header = make_header("mix", config, {opts.config.seed});

  ojson report;
  report[std::string(kHeaderKey)] = header;
  const ojson fields = weights_report(res.weights);
  for (const auto& [k, v] : fields.items()) report[k] = v;
  write_text(opts.weights_out, pretty(report));

  if (opts.schedule_out) {
    std::ostringstream body;
    body << header_line(header) << '\n';
    for (const auto& inst : res.schedule) body << to_json(inst).dump() << '\n';
    write_text(*opts.schedule_out, body.str());
  }
  return res;
}

/// Mixer settings from a JSON config file (keys strategy, balancing,
/// temperature, gamma, seed, length and optionally inputs).
inline MixOptions mix_options_from_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open config '" + path.string() + "'");
  ojson j;
  try {
    j = ojson::parse(in);
  } catch (const std::exception& e) {
    throw UsageError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  MixOptions opts;
  opts.config = mixer_config_from_json(j);
  if (j.contains("inputs")) {
    for (const auto& p : j["inputs"]) {
      fs::path ip = p.get<std::string>();
      if (ip.is_relative()) ip = path.parent_path() / ip;
      opts.inputs.push_back(ip);
    }
  }
  return opts;
}

// ---------------------------------------------------------------------------

struct OracleOptions {
  fs::path gold;
  std::optional<fs::path> instances;  // schedule / instance file instead of rendering gold
  TaskId task = TaskId::AssertAE;
  std::optional<Split> split;
  OracleSpec spec;
  fs::path output;
};

inline std::vector<TaskInstance> read_instances(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::vector<TaskInstance> out;
  std::vector<Issue> issues;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (utf8::trim(line).empty()) continue;
    try {
      auto j = ojson::parse(line);
      if (is_header(j)) continue;
      out.push_back(instance_from_json(j));
    } catch (const std::exception& e) {
      issues.push_back({lineno, {}, std::string("bad instance line: ") + e.what()});
    }
  }
  if (!issues.empty()) throw DataError(std::move(issues));
  return out;
}

inline std::vector<Prediction> cmd_oracle(const OracleOptions& opts) {
  if (opts.output.empty()) throw UsageError("oracle: --output is required");
  opts.spec.validate();
  std::vector<TaskInstance> instances;
  if (opts.instances) {
    instances = read_instances(*opts.instances);
  } else {
    const auto ds = load_canonical(opts.gold);
    instances = render_dataset(ds, opts.task, opts.split);
  }
  const auto preds = run_oracle(opts.spec, instances);
  ojson config;
  config["gold"] = opts.gold.generic_string();
  if (opts.instances) config["instances"] = opts.instances->generic_string();
  config["task"] = to_string(opts.task);
  config["split"] = opts.split ? ojson(to_string(*opts.split)) : ojson(nullptr);
  config["kind"] = to_string(opts.spec.kind);
  config["corruption_rate"] = opts.spec.corruption_rate;
  config["seed"] = opts.spec.seed;
  std::ostringstream body;
  write_predictions(body, preds, make_header("oracle", config, {opts.spec.seed}));
  write_text(opts.output, body.str());
  return preds;
}

// ---------------------------------------------------------------------------

struct ScoreCmdOptions {
  fs::path gold;
  fs::path predictions;
  TaskId task = TaskId::AssertAE;
  ScoreOptions score;
  std::optional<fs::path> report_out;
};

inline MetricReport cmd_score(const ScoreCmdOptions& opts, std::ostream& out = std::cout) {
  const auto gold = load_canonical(opts.gold);
  const auto preds = read_predictions(opts.predictions);
  const auto report = score_run(preds, gold, opts.task, opts.score);
  out << format_report(report);
  if (opts.report_out) {
    ojson config;
    config["gold"] = opts.gold.generic_string();
    config["predictions"] = opts.predictions.generic_string();
    config["task"] = to_string(opts.task);
    config["mode"] = opts.score.mode == ReportMode::Both
                         ? "both"
                         : (opts.score.mode == ReportMode::Strict ? "strict" : "partial");
    config["split"] = opts.score.split ? ojson(to_string(*opts.score.split)) : ojson(nullptr);
    ojson doc;
    doc[std::string(kHeaderKey)] = make_header("score", config, {});
    const ojson fields = to_json(report);
    for (const auto& [k, v] : fields.items()) doc[k] = v;
    write_text(*opts.report_out, pretty(doc));
  }
  return report;
}

}  // namespace aekit::cli
