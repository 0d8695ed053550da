#pragma once

// IOB tag sequences to character-offset spans.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aekit/error.hpp"
#include "aekit/types.hpp"
#include "aekit/unicode.hpp"

namespace aekit {

struct IobTag {
  enum class Position { Outside, Begin, Inside } position = Position::Outside;
  SpanKind kind = SpanKind::AE;
};

/// Parses "O", "B-<kind>" or "I-<kind>". Kind names follow parse_span_kind.
/// Throws UsageError on anything else.
inline IobTag parse_iob_tag(std::string_view tag) {
  if (tag == "O") return {};
  if (tag.size() > 2 && (tag[0] == 'B' || tag[0] == 'I') && tag[1] == '-') {
    if (auto kind = parse_span_kind(tag.substr(2))) {
      return {tag[0] == 'B' ? IobTag::Position::Begin : IobTag::Position::Inside, *kind};
    }
  }
  throw UsageError("unknown IOB tag '" + std::string(tag) + "'");
}

struct IobConversion {
  std::vector<Span> spans;
  // index of every token whose dangling I- tag was rewritten to B-
  std::vector<std::size_t> repaired;
};

/// Converts a tagged token sequence into spans over the space-joined token
/// string. Offsets are code points. An I-x that does not continue a B-x/I-x
/// run is treated as B-x and reported in `repaired`.
inline IobConversion iob_to_spans(std::span<const std::string> tokens,
                                  std::span<const std::string> tags) {
  if (tokens.size() != tags.size()) {
    throw UsageError("iob_to_spans: " + std::to_string(tokens.size()) + " tokens but " +
                     std::to_string(tags.size()) + " tags");
  }
  IobConversion out;
  std::string joined;
  std::size_t offset = 0;
  struct Open {
    SpanKind kind;
    std::size_t start;
    std::size_t byte_start;
  };
  std::optional<Open> open;
  std::size_t open_end = 0;
  std::size_t open_byte_end = 0;

  auto close = [&] {
    if (!open) return;
    out.spans.push_back({open->kind, open->start, open_end,
                         joined.substr(open->byte_start, open_byte_end - open->byte_start)});
    open.reset();
  };

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) {
      joined.push_back(' ');
      ++offset;
    }
    const std::size_t start = offset;
    const std::size_t byte_start = joined.size();
    joined += tokens[i];
    offset += utf8::length(tokens[i]);

    auto tag = parse_iob_tag(tags[i]);
    if (tag.position == IobTag::Position::Inside && !(open && open->kind == tag.kind)) {
      tag.position = IobTag::Position::Begin;
      out.repaired.push_back(i);
    }
    switch (tag.position) {
      case IobTag::Position::Outside:
        close();
        break;
      case IobTag::Position::Begin:
        close();
        open = Open{tag.kind, start, byte_start};
        break;
      case IobTag::Position::Inside:
        break;
    }
    if (open) {
      open_end = offset;
      open_byte_end = joined.size();
    }
  }
  close();
  return out;
}

}  // namespace aekit
