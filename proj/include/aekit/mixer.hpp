#pragma once

// Multi-task, multi-dataset sampling weights and schedules.
//
// Proportional mixing caps each count and normalizes:
//   theta_t = min(cap, N_t) / sum_t' min(cap, N_t'),  N_t = sum_d M_{t,d}
//   rho_d   = min(cap, M_d) / sum_d' min(cap, M_d')   (datasets of one task)
// Temperature scaling maps w_i to w_i^(1/T) / sum_j w_j^(1/T).
//
// Task balancing (TB) only weights tasks; inside a task examples come
// uniformly from the concatenated datasets, i.e. rho_d = M_d / N_t.
// Task-and-dataset balancing (TDB) applies the capped proportional rule and
// the temperature to datasets too.

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "aekit/artifact.hpp"
#include "aekit/corpus.hpp"
#include "aekit/error.hpp"
#include "aekit/framing.hpp"
#include "aekit/rng.hpp"
#include "aekit/types.hpp"

namespace aekit {

enum class MixStrategy { ProportionalMixing, TemperatureScaling };
enum class Balancing { TaskOnly, TaskAndDataset };

inline constexpr std::size_t kDefaultCap = std::size_t{1} << 14;
inline constexpr double kDefaultTemperature = 2.0;

constexpr std::string_view to_string(MixStrategy s) {
  return s == MixStrategy::ProportionalMixing ? "proportional" : "temperature";
}
constexpr std::string_view to_string(Balancing b) {
  return b == Balancing::TaskOnly ? "tb" : "tdb";
}

inline std::optional<MixStrategy> parse_strategy(std::string_view s) {
  const auto v = detail::lower_ascii(s);
  if (v == "proportional" || v == "pm" || v == "proportional_mixing") return MixStrategy::ProportionalMixing;
  if (v == "temperature" || v == "ts" || v == "temperature_scaling") return MixStrategy::TemperatureScaling;
  return std::nullopt;
}

inline std::optional<Balancing> parse_balancing(std::string_view s) {
  const auto v = detail::lower_ascii(s);
  if (v == "tb" || v == "task" || v == "task_only") return Balancing::TaskOnly;
  if (v == "tdb" || v == "task_and_dataset") return Balancing::TaskAndDataset;
  return std::nullopt;
}

struct MixerConfig {
  MixStrategy strategy = MixStrategy::TemperatureScaling;
  Balancing balancing = Balancing::TaskAndDataset;
  double temperature = kDefaultTemperature;
  std::size_t cap = kDefaultCap;  // used for both task and dataset caps
  std::uint64_t seed = 0;
  std::size_t schedule_length = 0;

  void validate() const {
    if (!(temperature >= 1.0) || !std::isfinite(temperature)) {
      throw UsageError("temperature must be a finite value >= 1");
    }
    if (cap < 1) throw UsageError("cap must be >= 1");
  }
};

/// Normalized capped counts. Works for any key type.
template <typename Key>
std::map<Key, double> capped_proportions(const std::map<Key, std::size_t>& counts, std::size_t cap) {
  if (counts.empty()) throw UsageError("cannot compute weights over an empty set");
  if (cap < 1) throw UsageError("cap must be >= 1");
  double total = 0.0;
  for (const auto& [k, n] : counts) {
    if (n == 0) throw UsageError("zero count in weight computation");
    total += static_cast<double>(std::min(cap, n));
  }
  std::map<Key, double> out;
  for (const auto& [k, n] : counts) out[k] = static_cast<double>(std::min(cap, n)) / total;
  return out;
}

inline std::map<TaskId, double> task_weights(const std::map<TaskId, std::size_t>& task_counts,
                                             std::size_t cap = kDefaultCap) {
  return capped_proportions(task_counts, cap);
}

inline std::map<std::string, double> dataset_weights(
    const std::map<std::string, std::size_t>& dataset_counts, std::size_t cap = kDefaultCap) {
  return capped_proportions(dataset_counts, cap);
}

/// T == 1 returns the input unchanged, bit for bit.
template <typename Key>
std::map<Key, double> temperature_scale(const std::map<Key, double>& weights, double temperature) {
  if (!(temperature > 0.0)) throw UsageError("temperature must be positive");
  if (temperature == 1.0) return weights;
  const double exponent = 1.0 / temperature;
  double total = 0.0;
  std::map<Key, double> out;
  for (const auto& [k, w] : weights) {
    const double v = std::pow(w, exponent);
    out[k] = v;
    total += v;
  }
  for (auto& [k, v] : out) v /= total;
  return out;
}

struct MixtureWeights {
  std::map<TaskId, double> theta;
  std::map<TaskId, std::map<std::string, double>> rho;  // conditional on task
  std::map<TaskId, std::size_t> task_counts;             // N_t
  std::map<TaskId, std::map<std::string, std::size_t>> dataset_counts;  // M_{t,d}
  MixerConfig config;
};

/// Train-pool counts per (task, dataset); test-only datasets contribute none.
inline std::map<TaskId, std::map<std::string, std::size_t>> train_counts(
    const std::vector<DatasetManifest>& manifests) {
  std::map<TaskId, std::map<std::string, std::size_t>> out;
  for (const auto& m : manifests) {
    if (m.test_only) continue;
    for (auto t : m.tasks) {
      const auto n = m.pool(t);
      if (n > 0) out[t][m.dataset] += n;
    }
  }
  return out;
}

inline MixtureWeights build_weights(const std::vector<DatasetManifest>& manifests,
                                    const MixerConfig& config) {
  config.validate();
  MixtureWeights w;
  w.config = config;
  w.dataset_counts = train_counts(manifests);
  std::set<TaskId> declared;
  for (const auto& m : manifests) {
    if (!m.test_only) declared.insert(m.tasks.begin(), m.tasks.end());
  }
  std::vector<Issue> issues;
  for (auto t : declared) {
    if (!w.dataset_counts.contains(t)) {
      issues.push_back({0, {}, "task '" + std::string(to_string(t)) + "' has no train examples"});
    }
  }
  if (!issues.empty()) throw DataError(std::move(issues));
  if (w.dataset_counts.empty()) throw DataError("no train examples in any dataset");

  for (const auto& [t, per_ds] : w.dataset_counts) {
    std::size_t n = 0;
    for (const auto& [d, m] : per_ds) n += m;
    w.task_counts[t] = n;
  }
  const bool scaled = config.strategy == MixStrategy::TemperatureScaling;
  w.theta = task_weights(w.task_counts, config.cap);
  if (scaled) w.theta = temperature_scale(w.theta, config.temperature);

  for (const auto& [t, per_ds] : w.dataset_counts) {
    if (config.balancing == Balancing::TaskOnly) {
      auto& rho = w.rho[t];
      const double n = static_cast<double>(w.task_counts[t]);
      for (const auto& [d, m] : per_ds) rho[d] = static_cast<double>(m) / n;
    } else {
      auto rho = dataset_weights(per_ds, config.cap);
      w.rho[t] = scaled ? temperature_scale(rho, config.temperature) : std::move(rho);
    }
  }
  return w;
}

/// Index of train records usable for each (task, dataset), sorted by id.
struct TrainPools {
  std::map<std::pair<TaskId, std::string>, std::vector<const Record*>> pools;

  explicit TrainPools(const std::vector<Dataset>& datasets) {
    for (const auto& ds : datasets) {
      if (ds.manifest.test_only) continue;
      for (auto t : ds.manifest.tasks) {
        auto& pool = pools[{t, ds.id}];
        for (const auto& r : ds.records) {
          if (r.split == Split::Train && usable_for(r, t)) pool.push_back(&r);
        }
        std::sort(pool.begin(), pool.end(),
                  [](const Record* a, const Record* b) { return a->id < b->id; });
      }
    }
  }
};

/// Hierarchical with-replacement sampling: task ~ theta, dataset ~ rho(.|task),
/// record uniform within the pool. Each level draws from its own substream of
/// `seed`, so the output is a pure function of (datasets, weights, seed, length).
inline std::vector<TaskInstance> sample_schedule(const std::vector<Dataset>& datasets,
                                                 const MixtureWeights& weights, std::uint64_t seed,
                                                 std::size_t length) {
  std::vector<TaskInstance> out;
  if (length == 0) return out;
  const TrainPools pools(datasets);
  std::map<std::string, const DatasetManifest*> manifests;
  for (const auto& ds : datasets) manifests[ds.id] = &ds.manifest;

  std::vector<TaskId> tasks;
  std::vector<double> theta;
  for (const auto& [t, p] : weights.theta) {
    tasks.push_back(t);
    theta.push_back(p);
  }
  struct Level {
    std::vector<std::string> datasets;
    std::vector<double> probs;
  };
  std::map<TaskId, Level> levels;
  for (const auto& [t, rho] : weights.rho) {
    auto& lv = levels[t];
    for (const auto& [d, p] : rho) {
      lv.datasets.push_back(d);
      lv.probs.push_back(p);
    }
  }

  auto task_eng = rng::substream(seed, rng::kTaskDraw);
  auto dataset_eng = rng::substream(seed, rng::kDatasetDraw);
  auto example_eng = rng::substream(seed, rng::kExampleDraw);
  out.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    const TaskId t = tasks[rng::categorical(task_eng, theta)];
    const auto& lv = levels.at(t);
    const auto& d = lv.datasets[rng::categorical(dataset_eng, lv.probs)];
    auto it = pools.pools.find({t, d});
    if (it == pools.pools.end() || it->second.empty()) {
      throw std::logic_error("sample_schedule: empty pool for task '" +
                             std::string(to_string(t)) + "' dataset '" + d + "'");
    }
    const auto& pool = it->second;
    const Record* r = pool[rng::uniform_index(example_eng, pool.size())];
    out.push_back(render_instance(*r, task(t), *manifests.at(d)));
  }
  return out;
}

inline ojson to_json(const MixerConfig& c) {
  ojson j;
  j["strategy"] = to_string(c.strategy);
  j["balancing"] = to_string(c.balancing);
  j["temperature"] = c.temperature;
  j["gamma"] = c.cap;
  j["seed"] = c.seed;
  j["length"] = c.schedule_length;
  return j;
}

/// Reads the keys strategy, balancing, temperature, gamma, seed and length;
/// missing keys keep the default.
inline MixerConfig mixer_config_from_json(const ojson& j, MixerConfig c = {}) {
  if (j.contains("strategy")) {
    auto s = parse_strategy(j["strategy"].get<std::string>());
    if (!s) throw UsageError("unknown strategy '" + j["strategy"].get<std::string>() + "'");
    c.strategy = *s;
  }
  if (j.contains("balancing")) {
    auto b = parse_balancing(j["balancing"].get<std::string>());
    if (!b) throw UsageError("unknown balancing '" + j["balancing"].get<std::string>() + "'");
    c.balancing = *b;
  }
  if (j.contains("temperature")) c.temperature = j["temperature"].get<double>();
  if (j.contains("gamma")) c.cap = j["gamma"].get<std::size_t>();
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("length")) c.schedule_length = j["length"].get<std::size_t>();
  c.validate();
  return c;
}

inline ojson weights_report(const MixtureWeights& w) {
  ojson j;
  j["config"] = to_json(w.config);
  ojson tasks = ojson::array();
  for (const auto& [t, p] : w.theta) {
    ojson tj;
    tj["task"] = to_string(t);
    tj["count"] = w.task_counts.at(t);
    tj["theta"] = p;
    ojson ds = ojson::array();
    for (const auto& [d, r] : w.rho.at(t)) {
      ojson dj;
      dj["dataset"] = d;
      dj["count"] = w.dataset_counts.at(t).at(d);
      dj["rho"] = r;
      dj["joint"] = p * r;
      ds.push_back(dj);
    }
    tj["datasets"] = ds;
    tasks.push_back(tj);
  }
  j["tasks"] = tasks;
  j["notes"] = ojson::array(
      {"rho is normalized over the datasets of each task",
       w.config.balancing == Balancing::TaskOnly
           ? "tb: rho is the share of the task's concatenated train pool"
           : "tdb: rho uses the capped proportional rule per dataset",
       "sampling is hierarchical with replacement"});
  return j;
}

}  // namespace aekit
