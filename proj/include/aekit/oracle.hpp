#pragma once

// Stand-in models for exercising the scoring pipeline end to end.
//   Echo       emits each instance's target
//   Majority   emits "health ok" for classification, "" for extraction
//   NoisyEcho  Echo, except that with probability `corruption_rate` an
//              instance has its label flipped (classification) or one of its
//              target spans deleted (extraction)
// Corruption of instance i draws from its own substream, so results do not
// depend on evaluation order.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "aekit/error.hpp"
#include "aekit/framing.hpp"
#include "aekit/predictions.hpp"
#include "aekit/rng.hpp"

namespace aekit {

enum class OracleKind { Echo, Majority, NoisyEcho };

constexpr std::string_view to_string(OracleKind k) {
  switch (k) {
    case OracleKind::Echo: return "echo";
    case OracleKind::Majority: return "majority";
    case OracleKind::NoisyEcho: return "noisy";
  }
  return "?";
}

inline std::optional<OracleKind> parse_oracle_kind(std::string_view s) {
  const auto v = detail::lower_ascii(s);
  if (v == "echo") return OracleKind::Echo;
  if (v == "majority") return OracleKind::Majority;
  if (v == "noisy" || v == "noisy_echo" || v == "noisyecho") return OracleKind::NoisyEcho;
  return std::nullopt;
}

struct OracleSpec {
  OracleKind kind = OracleKind::Echo;
  double corruption_rate = 0.0;
  std::uint64_t seed = 0;

  void validate() const {
    if (!(corruption_rate >= 0.0 && corruption_rate <= 1.0)) {
      throw UsageError("corruption rate must lie in [0, 1]");
    }
  }
};

inline std::string corrupt_target(const TaskInstance& inst, rng::Engine& eng) {
  if (task_kind(inst.task) == TaskKind::Classification) {
    return std::string(inst.target == kPositiveLabel ? kNegativeLabel : kPositiveLabel);
  }
  const auto pieces = parse_span_output(inst.target);
  if (pieces.empty()) return inst.target;
  const auto drop = rng::uniform_index(eng, pieces.size());
  std::string out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (i == drop) continue;
    if (!out.empty()) out += kSpanSeparator;
    out += pieces[i];
  }
  return out;
}

inline std::vector<Prediction> run_oracle(const OracleSpec& spec,
                                          const std::vector<TaskInstance>& instances) {
  spec.validate();
  std::vector<Prediction> out;
  out.reserve(instances.size());
  const auto base = rng::substream_seed(spec.seed, rng::kOracle);
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& inst = instances[i];
    Prediction p{inst.record_id, inst.task, {}};
    switch (spec.kind) {
      case OracleKind::Echo:
        p.output = inst.target;
        break;
      case OracleKind::Majority:
        p.output = task_kind(inst.task) == TaskKind::Classification ? std::string(kNegativeLabel) : "";
        break;
      case OracleKind::NoisyEcho: {
        auto eng = rng::substream(base, i);
        p.output = rng::uniform01(eng) < spec.corruption_rate ? corrupt_target(inst, eng) : inst.target;
        break;
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace aekit
