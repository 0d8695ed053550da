#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <chrono>
#include <cmath>
#include <cstring>
#include <random>

#include "aekit/mixer.hpp"

namespace aekit {
namespace {

double sum(const auto& m) {
  double s = 0.0;
  for (const auto& [k, v] : m) s += v;
  return s;
}

// n train records; classification or drug-span records.
Dataset train_dataset(const std::string& id, std::size_t n, TaskId t) {
  std::vector<Record> recs;
  for (std::size_t i = 0; i < n; ++i) {
    Record r;
    r.id = id + "-" + std::to_string(i);
    r.text = "took aspirin " + std::to_string(i);
    r.split = Split::Train;
    if (t == TaskId::AssertAE) {
      r.label = i % 2 ? Label::Positive : Label::Negative;
    } else {
      r.label = Label::Unlabeled;
      r.spans.push_back({SpanKind::Drug, 5, 12, "aspirin"});
    }
    recs.push_back(std::move(r));
  }
  LoadOptions o;
  o.tasks = std::set<TaskId>{t};
  return make_dataset(id, std::move(recs), o);
}

DatasetManifest manifest(const std::string& id, TaskId t, std::size_t n) {
  DatasetManifest m;
  m.dataset = id;
  m.tasks = {t};
  m.total = {n, 0, 0};
  m.splits[Split::Train] = {n, 0, 0};
  m.train_pool[t] = n;
  return m;
}

MixerConfig config(MixStrategy s, Balancing b, double temperature = 2.0) {
  MixerConfig c;
  c.strategy = s;
  c.balancing = b;
  c.temperature = temperature;
  return c;
}

TEST(TaskWeights, Examples) {
  auto w = task_weights({{TaskId::AssertAE, 100}, {TaskId::NerAE, 300}}, 16384);
  EXPECT_DOUBLE_EQ(w[TaskId::AssertAE], 0.25);
  EXPECT_DOUBLE_EQ(w[TaskId::NerAE], 0.75);
  w = task_weights({{TaskId::AssertAE, 20000}, {TaskId::NerAE, 20000}}, 16384);
  EXPECT_EQ(w[TaskId::AssertAE], 0.5);
  EXPECT_EQ(w[TaskId::NerAE], 0.5);
  EXPECT_EQ(task_weights({{TaskId::NerDrug, 7}}, 3)[TaskId::NerDrug], 1.0);
}

TEST(DatasetWeights, Examples) {
  auto w = dataset_weights({{"d1", 780}, {"d2", 779}}, 16384);
  EXPECT_NEAR(w["d1"], 780.0 / 1559.0, 1e-15);
  EXPECT_NEAR(w["d2"], 779.0 / 1559.0, 1e-15);
  EXPECT_EQ(dataset_weights({{"d1", 50000}}, 16384)["d1"], 1.0);
  w = dataset_weights({{"d1", 16384}, {"d2", 32768}}, 16384);
  EXPECT_EQ(w["d1"], 0.5);
  EXPECT_EQ(w["d2"], 0.5);
}

TEST(Weights, Errors) {
  EXPECT_THROW(task_weights({}, 10), UsageError);
  EXPECT_THROW(task_weights({{TaskId::AssertAE, 0}}, 10), UsageError);
  EXPECT_THROW(dataset_weights({{"a", 1}}, 0), UsageError);
  EXPECT_THROW(temperature_scale(std::map<int, double>{{0, 1.0}}, 0.0), UsageError);
  EXPECT_THROW(temperature_scale(std::map<int, double>{{0, 1.0}}, -1.0), UsageError);
}

TEST(TemperatureScale, Examples) {
  const std::map<std::string, double> w{{"A", 0.25}, {"B", 0.75}};
  const auto t1 = temperature_scale(w, 1.0);
  EXPECT_EQ(std::memcmp(&t1.at("A"), &w.at("A"), sizeof(double)), 0);
  EXPECT_EQ(std::memcmp(&t1.at("B"), &w.at("B"), sizeof(double)), 0);
  const auto t2 = temperature_scale(w, 2.0);
  EXPECT_NEAR(t2.at("A"), 0.36602540378443865, 1e-15);
  EXPECT_NEAR(t2.at("B"), 0.6339745962155613, 1e-15);
  const auto t1000 = temperature_scale(w, 1000.0);
  EXPECT_NEAR(t1000.at("A"), 0.5, 1e-3);
  EXPECT_NEAR(t1000.at("B"), 0.5, 1e-3);
}

// {0.01, 0.99} at T=1000 lands 1.149e-3 from uniform, not within 1e-3.
// Pinned to the computed value; it still approaches 0.5 as T grows.
TEST(TemperatureScale, SkewedInputAtHighTemperature) {
  const std::map<std::string, double> w{{"A", 0.01}, {"B", 0.99}};
  const auto t = temperature_scale(w, 1000.0);
  const double a = std::pow(0.01, 1e-3), b = std::pow(0.99, 1e-3);
  EXPECT_NEAR(t.at("A"), a / (a + b), 1e-15);
  EXPECT_NEAR(t.at("A") - 0.5, -0.0011487779411517018, 1e-12);
  EXPECT_NEAR(temperature_scale(w, 1e4).at("A"), 0.5, 1e-3);
  EXPECT_NEAR(temperature_scale(w, 1e6).at("A"), 0.5, 1e-5);
}

TEST(BuildWeights, DegenerateCase) {
  for (auto s : {MixStrategy::ProportionalMixing, MixStrategy::TemperatureScaling}) {
    for (auto b : {Balancing::TaskOnly, Balancing::TaskAndDataset}) {
      const auto w = build_weights({manifest("d", TaskId::NerAE, 42)}, config(s, b));
      EXPECT_EQ(w.theta.at(TaskId::NerAE), 1.0);
      EXPECT_EQ(w.rho.at(TaskId::NerAE).at("d"), 1.0);
    }
  }
}

TEST(BuildWeights, TwoTasksProportional) {
  const auto w = build_weights({manifest("a", TaskId::AssertAE, 100), manifest("b", TaskId::NerAE, 300)},
                               config(MixStrategy::ProportionalMixing, Balancing::TaskAndDataset));
  EXPECT_DOUBLE_EQ(w.theta.at(TaskId::AssertAE), 0.25);
  EXPECT_DOUBLE_EQ(w.theta.at(TaskId::NerAE), 0.75);
  EXPECT_EQ(w.rho.at(TaskId::AssertAE).at("a"), 1.0);
  EXPECT_EQ(w.rho.at(TaskId::NerAE).at("b"), 1.0);
  EXPECT_EQ(w.task_counts.at(TaskId::NerAE), 300u);
}

TEST(BuildWeights, CapOnlyBitesUnderTdb) {
  const std::vector<DatasetManifest> ms{manifest("small", TaskId::NerAE, 100),
                                        manifest("large", TaskId::NerAE, 30000)};
  const auto tb = build_weights(ms, config(MixStrategy::ProportionalMixing, Balancing::TaskOnly));
  const auto tdb = build_weights(ms, config(MixStrategy::ProportionalMixing, Balancing::TaskAndDataset));
  EXPECT_NEAR(tb.rho.at(TaskId::NerAE).at("small"), 0.0033222591362126247, 1e-12);
  EXPECT_NEAR(tb.rho.at(TaskId::NerAE).at("large"), 30000.0 / 30100.0, 1e-12);
  EXPECT_NEAR(tdb.rho.at(TaskId::NerAE).at("small"), 0.006066488716330988, 1e-12);
  EXPECT_NEAR(tdb.rho.at(TaskId::NerAE).at("large"), 0.993933511283669, 1e-12);
  EXPECT_EQ(tb.task_counts.at(TaskId::NerAE), 30100u);
}

TEST(BuildWeights, TemperatureTouchesRhoOnlyUnderTdb) {
  const std::vector<DatasetManifest> ms{manifest("a", TaskId::NerAE, 100), manifest("b", TaskId::NerAE, 300),
                                        manifest("c", TaskId::AssertAE, 300)};
  const auto tb = build_weights(ms, config(MixStrategy::TemperatureScaling, Balancing::TaskOnly));
  const auto tdb = build_weights(ms, config(MixStrategy::TemperatureScaling, Balancing::TaskAndDataset));
  EXPECT_DOUBLE_EQ(tb.rho.at(TaskId::NerAE).at("a"), 0.25);
  EXPECT_NEAR(tdb.rho.at(TaskId::NerAE).at("a"), 0.36602540378443865, 1e-15);
  // theta: N = {300 (assert), 400 (ner)} -> sqrt-scaled either way
  const double a = std::sqrt(300.0 / 700.0), b = std::sqrt(400.0 / 700.0);
  EXPECT_NEAR(tb.theta.at(TaskId::AssertAE), a / (a + b), 1e-15);
  EXPECT_EQ(tb.theta, tdb.theta);
}

TEST(BuildWeights, Errors) {
  auto empty = manifest("e", TaskId::NerDrug, 0);
  empty.train_pool.clear();
  EXPECT_THROW(build_weights({manifest("a", TaskId::AssertAE, 5), empty}, MixerConfig{}), DataError);
  auto test_only = manifest("t", TaskId::AssertAE, 5);
  test_only.test_only = true;
  EXPECT_THROW(build_weights({test_only}, MixerConfig{}), DataError);
  MixerConfig bad;
  bad.temperature = 0.5;
  EXPECT_THROW(build_weights({manifest("a", TaskId::AssertAE, 5)}, bad), UsageError);
  bad.temperature = 2.0;
  bad.cap = 0;
  EXPECT_THROW(build_weights({manifest("a", TaskId::AssertAE, 5)}, bad), UsageError);
}

TEST(BuildWeights, TestOnlyDatasetsContributeNothing) {
  auto t = manifest("held", TaskId::AssertAE, 500);
  t.test_only = true;
  const auto w = build_weights({manifest("a", TaskId::AssertAE, 5), t}, MixerConfig{});
  EXPECT_EQ(w.rho.at(TaskId::AssertAE).size(), 1u);
}

// Property tests over random count maps.
std::map<std::string, std::size_t> random_counts(std::mt19937_64& gen) {
  std::map<std::string, std::size_t> m;
  const std::size_t k = 1 + gen() % 6;
  for (std::size_t i = 0; i < k; ++i) m["d" + std::to_string(i)] = 1 + gen() % 60000;
  return m;
}

TEST(MixerProperty, Normalization) {
  std::mt19937_64 gen(1);
  for (int c = 0; c < 1000; ++c) {
    const auto counts = random_counts(gen);
    const std::size_t cap = 1 + gen() % 40000;
    const auto w = dataset_weights(counts, cap);
    EXPECT_NEAR(sum(w), 1.0, 1e-12);
    const double t = 1.0 + static_cast<double>(gen() % 1000) / 10.0;
    const auto s = temperature_scale(w, t);
    EXPECT_NEAR(sum(s), 1.0, 1e-12);
    for (const auto& [k, v] : s) {
      EXPECT_GT(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(MixerProperty, CapMonotonicity) {
  std::mt19937_64 gen(2);
  for (int c = 0; c < 1000; ++c) {
    const auto counts = random_counts(gen);
    auto largest = counts.begin();
    for (auto it = counts.begin(); it != counts.end(); ++it) {
      if (it->second > largest->second) largest = it;
    }
    const std::size_t lo = 1 + gen() % 40000;
    const std::size_t hi = lo + gen() % 40000;
    EXPECT_LE(dataset_weights(counts, lo).at(largest->first),
              dataset_weights(counts, hi).at(largest->first) + 1e-15);
  }
}

TEST(MixerProperty, TemperaturePreservesOrder) {
  std::mt19937_64 gen(3);
  for (int c = 0; c < 1000; ++c) {
    const auto w = dataset_weights(random_counts(gen), 1u << 20);
    const double t = 1.0 + static_cast<double>(gen() % 10000) / 7.0;
    const auto s = temperature_scale(w, t);
    for (const auto& [a, wa] : w) {
      for (const auto& [b, wb] : w) {
        if (wa < wb) {
          EXPECT_LE(s.at(a), s.at(b));
        }
        if (wa == wb) {
          EXPECT_EQ(s.at(a), s.at(b));
        }
      }
    }
  }
}

TEST(MixerProperty, TemperatureOneIsIdentity) {
  std::mt19937_64 gen(4);
  for (int c = 0; c < 200; ++c) {
    const auto w = dataset_weights(random_counts(gen), 1 + gen() % 40000);
    EXPECT_EQ(temperature_scale(w, 1.0), w);
  }
}

TEST(MixerProperty, TbEqualsTdbForSingleOrEqualDatasets) {
  std::mt19937_64 gen(5);
  for (int c = 0; c < 300; ++c) {
    std::vector<DatasetManifest> ms;
    const std::size_t equal = 1 + gen() % 16384;
    const std::size_t k = 1 + gen() % 4;
    for (std::size_t i = 0; i < k; ++i) ms.push_back(manifest("ner" + std::to_string(i), TaskId::NerAE, equal));
    ms.push_back(manifest("single", TaskId::AssertAE, 1 + gen() % 100000));
    for (auto s : {MixStrategy::ProportionalMixing, MixStrategy::TemperatureScaling}) {
      const auto tb = build_weights(ms, config(s, Balancing::TaskOnly));
      const auto tdb = build_weights(ms, config(s, Balancing::TaskAndDataset));
      EXPECT_EQ(tb.theta, tdb.theta);
      for (const auto& [t, rho] : tb.rho) {
        for (const auto& [d, v] : rho) EXPECT_NEAR(v, tdb.rho.at(t).at(d), 1e-15);
      }
    }
  }
  // unequal counts under the cap diverge once temperature applies
  const std::vector<DatasetManifest> ms{manifest("a", TaskId::NerAE, 10), manifest("b", TaskId::NerAE, 30)};
  EXPECT_NE(build_weights(ms, config(MixStrategy::TemperatureScaling, Balancing::TaskOnly)).rho,
            build_weights(ms, config(MixStrategy::TemperatureScaling, Balancing::TaskAndDataset)).rho);
}

TEST(Schedule, LengthZeroAndSingleRecord) {
  const std::vector<Dataset> ds{train_dataset("one", 1, TaskId::AssertAE)};
  const auto w = build_weights({ds[0].manifest}, MixerConfig{});
  EXPECT_TRUE(sample_schedule(ds, w, 9, 0).empty());
  const auto s = sample_schedule(ds, w, 9, 5);
  ASSERT_EQ(s.size(), 5u);
  for (const auto& inst : s) {
    EXPECT_EQ(inst.record_id, "one-0");
    EXPECT_EQ(inst.input, s[0].input);
    EXPECT_EQ(inst.target, s[0].target);
  }
}

TEST(Schedule, Deterministic) {
  const std::vector<Dataset> ds{train_dataset("a", 50, TaskId::AssertAE), train_dataset("b", 70, TaskId::NerDrug)};
  const auto w = build_weights({ds[0].manifest, ds[1].manifest}, MixerConfig{});
  const auto s1 = sample_schedule(ds, w, 1234, 500);
  const auto s2 = sample_schedule(ds, w, 1234, 500);
  const auto s3 = sample_schedule(ds, w, 1235, 500);
  ASSERT_EQ(s1.size(), s2.size());
  std::size_t same_as_other_seed = 0;
  for (std::size_t i = 0; i < s1.size(); ++i) {
    EXPECT_EQ(to_json(s1[i]).dump(), to_json(s2[i]).dump());
    same_as_other_seed += s1[i].record_id == s3[i].record_id;
  }
  EXPECT_LT(same_as_other_seed, 100u);
}

TEST(Schedule, OnlyTrainRecordsAreDrawn) {
  auto d = train_dataset("a", 20, TaskId::AssertAE);
  for (std::size_t i = 0; i < 10; ++i) d.records[i].split = Split::Test;
  d.manifest = compute_manifest(d.id, d.records, d.manifest.tasks, false);
  const auto w = build_weights({d.manifest}, MixerConfig{});
  for (const auto& inst : sample_schedule({d}, w, 3, 1000)) {
    const auto n = std::stoi(inst.record_id.substr(2));
    EXPECT_GE(n, 10);
  }
}

TEST(Schedule, TemperatureScaledFrequenciesMatchTheta) {
  const std::vector<Dataset> ds{train_dataset("a", 100, TaskId::AssertAE), train_dataset("b", 300, TaskId::NerDrug)};
  const auto w = build_weights({ds[0].manifest, ds[1].manifest}, MixerConfig{});
  ASSERT_NEAR(w.theta.at(TaskId::AssertAE), 0.36602540378443865, 1e-15);
  const std::size_t n = 1000000;
  const auto s = sample_schedule(ds, w, 2024, n);
  std::size_t a = 0;
  for (const auto& inst : s) a += inst.task == TaskId::AssertAE;
  EXPECT_NEAR(static_cast<double>(a) / n, 0.36602540378443865, 0.002);
}

TEST(Schedule, JointFrequenciesPassChiSquare) {
  const std::vector<Dataset> ds{train_dataset("a1", 40, TaskId::AssertAE), train_dataset("a2", 400, TaskId::AssertAE),
                                train_dataset("a3", 4000, TaskId::AssertAE), train_dataset("n1", 90, TaskId::NerDrug),
                                train_dataset("n2", 900, TaskId::NerDrug)};
  std::vector<DatasetManifest> ms;
  for (const auto& d : ds) ms.push_back(d.manifest);
  for (auto b : {Balancing::TaskOnly, Balancing::TaskAndDataset}) {
    MixerConfig c = config(MixStrategy::TemperatureScaling, b);
    c.cap = 1000;
    const auto w = build_weights(ms, c);
    const std::size_t n = 100000;
    std::map<std::string, std::size_t> observed;
    for (const auto& inst : sample_schedule(ds, w, 77, n)) ++observed[inst.dataset];
    double chi2 = 0.0;
    std::size_t cells = 0;
    for (const auto& [t, rho] : w.rho) {
      for (const auto& [d, p] : rho) {
        const double expected = static_cast<double>(n) * w.theta.at(t) * p;
        const double diff = static_cast<double>(observed[d]) - expected;
        chi2 += diff * diff / expected;
        ++cells;
      }
    }
    const boost::math::chi_squared dist(static_cast<double>(cells - 1));
    EXPECT_GT(boost::math::cdf(boost::math::complement(dist, chi2)), 0.01) << "chi2=" << chi2;
  }
}

TEST(MixerConfigJson, RoundTrip) {
  MixerConfig c = config(MixStrategy::ProportionalMixing, Balancing::TaskOnly, 3.5);
  c.cap = 99;
  c.seed = 17;
  c.schedule_length = 1000;
  const auto back = mixer_config_from_json(to_json(c));
  EXPECT_EQ(back.strategy, c.strategy);
  EXPECT_EQ(back.balancing, c.balancing);
  EXPECT_EQ(back.temperature, c.temperature);
  EXPECT_EQ(back.cap, c.cap);
  EXPECT_EQ(back.seed, c.seed);
  EXPECT_EQ(back.schedule_length, c.schedule_length);
}

}  // namespace
}  // namespace aekit
