#pragma once

// Portable seeded randomness.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. Standard distributions are implementation-defined, so integer
// and real draws are derived from raw engine output here.
//
// Substreams: a component that needs independent streams derives one engine
// per stream with substream(seed, stream_id). The seed of stream k is
// splitmix64(seed + k * 0x9E3779B97F4A7C15). Stream ids in use:
//   0 task draw, 1 dataset draw, 2 example draw   (schedule sampling)
//   3 split shuffles                              (stratified splitting)
//   instance index                                (oracle corruption, under
//                                                  a seed already offset by 4)

#include <cstdint>
#include <random>
#include <span>

#include "aekit/error.hpp"

namespace aekit::rng {

using Engine = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed + stream * 0x9E3779B97F4A7C15ULL);
}

inline Engine substream(std::uint64_t seed, std::uint64_t stream) {
  return Engine(substream_seed(seed, stream));
}

enum Stream : std::uint64_t {
  kTaskDraw = 0,
  kDatasetDraw = 1,
  kExampleDraw = 2,
  kSplitShuffle = 3,
  kOracle = 4,
};

/// Uniform real in [0, 1) with 53 bits of precision.
inline double uniform01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n), rejection-sampled to avoid modulo bias.
inline std::uint64_t uniform_index(Engine& eng, std::uint64_t n) {
  if (n == 0) throw UsageError("uniform_index: empty range");
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
  std::uint64_t x;
  do {
    x = eng();
  } while (x >= limit);
  return x % n;
}

/// Draws an index from a discrete distribution given by probabilities that
/// sum to one. One engine call per draw.
inline std::size_t categorical(Engine& eng, std::span<const double> probs) {
  const double u = uniform01(eng);
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return i;
  }
  // u landed in the rounding slack above the last partial sum
  for (std::size_t i = probs.size(); i-- > 0;) {
    if (probs[i] > 0.0) return i;
  }
  throw UsageError("categorical: no positive probability");
}

/// Fisher-Yates shuffle driven by uniform_index.
template <typename T>
void shuffle(std::span<T> items, Engine& eng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_index(eng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace aekit::rng
