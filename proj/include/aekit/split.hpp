#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "aekit/corpus.hpp"
#include "aekit/error.hpp"
#include "aekit/rng.hpp"

namespace aekit {

struct SplitRatios {
  double train = 0.8;
  double validation = 0.1;
  double test = 0.1;

  std::array<double, 3> as_array() const { return {train, validation, test}; }
};

/// Apportions `n` items over `ratios` by the largest-remainder method: each
/// part gets floor(n * ratio), leftovers go to the largest fractional parts,
/// earlier parts first on ties.
inline std::array<std::size_t, 3> apportion(std::size_t n, const std::array<double, 3>& ratios) {
  std::array<std::size_t, 3> out{};
  std::array<double, 3> frac{};
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double quota = static_cast<double>(n) * ratios[i];
    // 1e-9 absorbs representation error in ratios such as 0.1 * 1548
    const double fl = std::floor(quota + 1e-9);
    out[i] = static_cast<std::size_t>(fl);
    frac[i] = quota - fl;
    assigned += out[i];
  }
  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return frac[a] > frac[b] + 1e-12; });
  for (std::size_t k = 0; assigned < n; k = (k + 1) % 3) {
    ++out[order[k]];
    ++assigned;
  }
  while (assigned > n) {
    // only reachable when ratios sum slightly above one
    for (std::size_t i = 3; i-- > 0 && assigned > n;) {
      if (out[i] > 0) {
        --out[i];
        --assigned;
      }
    }
  }
  return out;
}

/// Assigns Train/Validation/Test per label class. Within a class, record ids
/// are sorted, shuffled with the split substream of `seed`, and cut by the
/// apportioned counts, so the result depends only on (seed, ids, ratios).
inline Dataset stratified_split(const Dataset& ds, const SplitRatios& ratios, std::uint64_t seed) {
  if (ds.manifest.test_only) {
    throw UsageError("dataset '" + ds.id + "' is test-only and cannot be split");
  }
  const auto r = ratios.as_array();
  for (double v : r) {
    if (!(v > 0.0)) throw UsageError("split ratios must be positive");
  }
  if (std::abs(r[0] + r[1] + r[2] - 1.0) > 1e-9) throw UsageError("split ratios must sum to 1");

  std::map<Label, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < ds.records.size(); ++i) classes[ds.records[i].label].push_back(i);

  std::vector<Issue> issues;
  for (const auto& [label, members] : classes) {
    if (members.size() < r.size()) {
      issues.push_back({0, {}, "class '" + std::string(to_string(label)) + "' has " +
                                   std::to_string(members.size()) + " records, fewer than " +
                                   std::to_string(r.size()) + " splits"});
    }
  }
  if (!issues.empty()) throw DataError(std::move(issues));

  Dataset out = ds;
  for (auto& [label, members] : classes) {
    std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
      return ds.records[a].id < ds.records[b].id;
    });
    // one shuffle stream per class keeps classes independent of each other
    auto eng = rng::substream(rng::substream_seed(seed, rng::kSplitShuffle),
                              static_cast<std::uint64_t>(label));
    rng::shuffle(std::span<std::size_t>(members), eng);
    const auto sizes = apportion(members.size(), r);
    std::size_t k = 0;
    const std::array<Split, 3> names{Split::Train, Split::Validation, Split::Test};
    for (std::size_t s = 0; s < 3; ++s) {
      for (std::size_t c = 0; c < sizes[s]; ++c) out.records[members[k++]].split = names[s];
    }
  }
  out.manifest = compute_manifest(out.id, out.records, ds.manifest.tasks, false);
  return out;
}

}  // namespace aekit
