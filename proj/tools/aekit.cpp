// aekit command-line entry point.
//
//   aekit ingest  -o DIR [--format F] [--dataset ID] [--test-only] [--tasks T,...] INPUT...
//   aekit split   -i FILE -o FILE [--ratios 0.8,0.1,0.1] [--seed N] [--manifest FILE]
//   aekit stats   [--json FILE] INPUT...
//   aekit mix     [--config FILE] [--strategy S] [--balancing B] [--temperature T]
//                 [--gamma G] [--seed N] [--length L] --weights FILE [--schedule FILE] INPUT...
//   aekit oracle  --gold FILE --task T --kind K [--rate R] [--seed N] [--split S]
//                 [--instances FILE] -o FILE
//   aekit score   --gold FILE --predictions FILE --task T [--mode both] [--split S]
//                 [--readability] [--report FILE]

#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aekit/cli.hpp"

namespace {

using namespace aekit;

TaskId require_task(const std::string& s) {
  auto t = parse_task(s);
  if (!t) throw UsageError("unknown task '" + s + "'");
  return *t;
}

std::optional<Split> optional_split(const std::string& s) {
  if (s.empty() || s == "all") return std::nullopt;
  auto v = parse_split(s);
  if (!v) throw UsageError("unknown split '" + s + "'");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"aekit: adverse-event corpus pipeline, training mixtures and scoring"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Validate corpora and write canonical files + manifests");
  std::vector<std::string> ingest_inputs;
  std::string ingest_format, ingest_dataset, ingest_tasks, ingest_out = ".";
  bool ingest_test_only = false;
  ingest->add_option("inputs", ingest_inputs, "Input files, optionally FORMAT:PATH")->required();
  ingest->add_option("--format", ingest_format, "jsonl | iob | tsv (default: by extension)");
  ingest->add_option("--dataset", ingest_dataset, "Dataset id (single input)");
  ingest->add_option("--tasks", ingest_tasks, "Comma-separated task capabilities");
  ingest->add_flag("--test-only", ingest_test_only, "Mark the dataset as test-only");
  ingest->add_option("-o,--out-dir", ingest_out, "Output directory");

  // split
  auto* split = app.add_subcommand("split", "Stratified train/validation/test split");
  std::string split_in, split_out, split_ratios = "0.8,0.1,0.1", split_manifest;
  std::uint64_t split_seed = 0;
  split->add_option("-i,--input", split_in, "Canonical dataset")->required();
  split->add_option("-o,--output", split_out, "Split dataset output")->required();
  split->add_option("--ratios", split_ratios, "train,validation,test");
  split->add_option("--seed", split_seed, "Shuffle seed");
  split->add_option("--manifest", split_manifest, "Manifest output path");

  // stats
  auto* stats = app.add_subcommand("stats", "Text statistics per dataset");
  std::vector<std::string> stats_inputs;
  std::string stats_json;
  stats->add_option("inputs", stats_inputs, "Canonical datasets")->required();
  stats->add_option("--json", stats_json, "Also write rows as JSON");

  // mix
  auto* mix = app.add_subcommand("mix", "Mixing weights and a sampled training schedule");
  std::vector<std::string> mix_inputs;
  std::string mix_config, mix_strategy, mix_balancing, mix_weights, mix_schedule;
  std::optional<double> mix_temperature;
  std::optional<std::size_t> mix_gamma, mix_length;
  std::optional<std::uint64_t> mix_seed;
  mix->add_option("inputs", mix_inputs, "Split canonical datasets");
  mix->add_option("--config", mix_config, "JSON config (strategy, balancing, temperature, gamma, seed, length, inputs)");
  mix->add_option("--strategy", mix_strategy, "proportional | temperature");
  mix->add_option("--balancing", mix_balancing, "tb | tdb");
  mix->add_option("--temperature", mix_temperature, "Temperature (>= 1)");
  mix->add_option("--gamma", mix_gamma, "Count cap for tasks and datasets");
  mix->add_option("--seed", mix_seed, "Sampling seed");
  mix->add_option("--length", mix_length, "Schedule length");
  mix->add_option("--weights", mix_weights, "Weights report output")->required();
  mix->add_option("--schedule", mix_schedule, "Schedule output (TaskInstance lines)");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Predictions from a model stand-in");
  std::string or_gold, or_task, or_kind = "echo", or_split, or_instances, or_out;
  double or_rate = 0.0;
  std::uint64_t or_seed = 0;
  oracle->add_option("--gold", or_gold, "Canonical gold dataset");
  oracle->add_option("--instances", or_instances, "Instance/schedule file to answer instead of gold");
  oracle->add_option("--task", or_task, "Task to render from gold");
  oracle->add_option("--kind", or_kind, "echo | majority | noisy");
  oracle->add_option("--rate", or_rate, "Corruption rate for noisy");
  oracle->add_option("--seed", or_seed, "Corruption seed");
  oracle->add_option("--split", or_split, "Only this split of gold");
  oracle->add_option("-o,--output", or_out, "Predictions output")->required();

  // score
  auto* score = app.add_subcommand("score", "Score predictions against gold");
  std::string sc_gold, sc_pred, sc_task, sc_mode = "both", sc_split, sc_report;
  bool sc_readability = false;
  score->add_option("--gold", sc_gold, "Canonical gold dataset")->required();
  score->add_option("--predictions", sc_pred, "Prediction file")->required();
  score->add_option("--task", sc_task, "Task")->required();
  score->add_option("--mode", sc_mode, "strict | partial | both");
  score->add_option("--split", sc_split, "Only this split of gold");
  score->add_flag("--readability", sc_readability, "Readability of predicted spans");
  score->add_option("--report", sc_report, "JSON report output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? cli::kOk : cli::kUsage;
  }

  return cli::run_guarded([&] {
    if (*ingest) {
      cli::IngestOptions o;
      for (const auto& s : ingest_inputs) o.inputs.push_back(cli::parse_input_spec(s));
      if (!ingest_format.empty()) {
        o.format = parse_format(ingest_format);
        if (!o.format) throw UsageError("unknown format '" + ingest_format + "'");
      }
      if (!ingest_dataset.empty()) o.dataset = ingest_dataset;
      if (!ingest_tasks.empty()) {
        std::set<TaskId> tasks;
        std::stringstream ss(ingest_tasks);
        for (std::string t; std::getline(ss, t, ',');) tasks.insert(require_task(t));
        o.tasks = tasks;
      }
      o.test_only = ingest_test_only;
      o.out_dir = ingest_out;
      cli::cmd_ingest(o);
    } else if (*split) {
      cli::SplitOptions o;
      o.input = split_in;
      o.output = split_out;
      o.ratios = cli::parse_ratios(split_ratios);
      o.seed = split_seed;
      if (!split_manifest.empty()) o.manifest = split_manifest;
      const auto ds = cli::cmd_split(o);
      std::cerr << ds.id << ": " << ds.records.size() << " records split\n";
    } else if (*stats) {
      cli::StatsOptions o;
      for (const auto& s : stats_inputs) o.inputs.emplace_back(s);
      if (!stats_json.empty()) o.json_out = stats_json;
      cli::cmd_stats(o);
    } else if (*mix) {
      cli::MixOptions o;
      if (!mix_config.empty()) o = cli::mix_options_from_file(mix_config);
      for (const auto& s : mix_inputs) o.inputs.emplace_back(s);
      if (!mix_strategy.empty()) {
        auto s = parse_strategy(mix_strategy);
        if (!s) throw UsageError("unknown strategy '" + mix_strategy + "'");
        o.config.strategy = *s;
      }
      if (!mix_balancing.empty()) {
        auto b = parse_balancing(mix_balancing);
        if (!b) throw UsageError("unknown balancing '" + mix_balancing + "'");
        o.config.balancing = *b;
      }
      if (mix_temperature) o.config.temperature = *mix_temperature;
      if (mix_gamma) o.config.cap = *mix_gamma;
      if (mix_seed) o.config.seed = *mix_seed;
      if (mix_length) o.config.schedule_length = *mix_length;
      o.weights_out = mix_weights;
      if (!mix_schedule.empty()) o.schedule_out = mix_schedule;
      const auto res = cli::cmd_mix(o);
      std::cout << weights_report(res.weights).dump(2) << '\n';
    } else if (*oracle) {
      cli::OracleOptions o;
      if (or_instances.empty()) {
        if (or_gold.empty() || or_task.empty()) {
          throw UsageError("oracle needs --gold and --task, or --instances");
        }
        o.task = require_task(or_task);
      } else {
        o.instances = or_instances;
      }
      o.gold = or_gold;
      o.split = optional_split(or_split);
      auto kind = parse_oracle_kind(or_kind);
      if (!kind) throw UsageError("unknown oracle kind '" + or_kind + "'");
      o.spec = {*kind, or_rate, or_seed};
      o.output = or_out;
      const auto preds = cli::cmd_oracle(o);
      std::cerr << preds.size() << " predictions written\n";
    } else if (*score) {
      cli::ScoreCmdOptions o;
      o.gold = sc_gold;
      o.predictions = sc_pred;
      o.task = require_task(sc_task);
      auto mode = parse_report_mode(sc_mode);
      if (!mode) throw UsageError("unknown mode '" + sc_mode + "'");
      o.score.mode = *mode;
      o.score.split = optional_split(sc_split);
      o.score.readability = sc_readability;
      if (!sc_report.empty()) o.report_out = sc_report;
      cli::cmd_score(o);
    }
  });
}
