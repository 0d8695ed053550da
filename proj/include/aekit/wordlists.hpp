#pragma once

// Word lists used by readability and span statistics. Both are bundled from
// data/ (one lowercase word per line); callers may load replacements.

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <unordered_set>

#include "aekit/error.hpp"
#include "aekit/unicode.hpp"
#include "aekit/wordlist_data.hpp"

namespace aekit {

using WordSet = std::unordered_set<std::string>;

inline WordSet parse_word_list(std::string_view text) {
  WordSet out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto word = utf8::trim(text.substr(pos, nl - pos));
    if (!word.empty() && word.front() != '#') out.insert(utf8::fold(word));
    pos = nl + 1;
  }
  return out;
}

inline WordSet load_word_list(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open word list '" + path.string() + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_word_list(text);
}

/// Dale-Chall list of familiar words (2,940 entries).
inline const WordSet& dale_chall_easy_words() {
  static const WordSet words = parse_word_list(data::kDaleChallEasyWords);
  return words;
}

/// English stopword list (126 entries).
inline const WordSet& english_stopwords() {
  static const WordSet words = parse_word_list(data::kEnglishStopwords);
  return words;
}

}  // namespace aekit
