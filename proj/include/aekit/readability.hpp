#pragma once

// Flesch Reading Ease, Automated Readability Index and Dale-Chall.
//
// Counting rules:
//   word      maximal run of word characters (ASCII letters and digits, plus
//             non-ASCII letters; Latin-1 symbols, general punctuation and
//             symbol blocks are separators)
//   sentence  a run of [.?!] followed by whitespace or end of text; at least 1
//   letters   word characters summed over all words
//   syllables per word: vowel groups over [aeiouy] and accented Latin-1
//             vowels; a final "e" after a consonant is silent when the word
//             has more than one group, except in consonant + "le" endings;
//             every word has at least one syllable
//   difficult a word that is not all digits and whose case-folded form is
//             not on the easy-word list

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "aekit/error.hpp"
#include "aekit/unicode.hpp"
#include "aekit/wordlists.hpp"

namespace aekit {

struct ReadabilityCounts {
  std::size_t words = 0;
  std::size_t sentences = 0;
  std::size_t syllables = 0;
  std::size_t letters = 0;
  std::size_t difficult_words = 0;
};

struct ReadabilityScores {
  double flesch_reading_ease = 0.0;
  double dale_chall = 0.0;
  double automated_readability_index = 0.0;
  ReadabilityCounts counts;
};

namespace readability_detail {

constexpr bool is_word_char(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z') || (cp >= U'0' && cp <= U'9');
  }
  if (cp < 0xC0 || cp == 0xD7 || cp == 0xF7) return false;
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;
  if (cp >= 0x3000 && cp <= 0x303F) return false;
  if (cp >= 0xFE30 && cp <= 0xFE4F) return false;
  if (cp >= 0xFF00 && cp <= 0xFF0F) return false;
  if (cp >= 0x1F000) return false;
  return true;
}

constexpr bool is_vowel(char32_t cp) {
  switch (cp) {
    case U'a': case U'e': case U'i': case U'o': case U'u': case U'y':
      return true;
    default:
      break;
  }
  return (cp >= 0xE0 && cp <= 0xE6) || (cp >= 0xE8 && cp <= 0xEF) ||
         (cp >= 0xF2 && cp <= 0xF6) || (cp >= 0xF8 && cp <= 0xFD) || cp == 0xFF;
}

constexpr bool is_letter(char32_t cp) { return !(cp >= U'0' && cp <= U'9'); }

}  // namespace readability_detail

/// Splits text into words by the counting rules above.
inline std::vector<std::u32string> split_words(std::u32string_view text) {
  std::vector<std::u32string> words;
  std::u32string cur;
  for (char32_t cp : text) {
    if (readability_detail::is_word_char(cp)) {
      cur.push_back(cp);
    } else if (!cur.empty()) {
      words.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) words.push_back(std::move(cur));
  return words;
}

inline std::size_t count_sentences(std::u32string_view text) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char32_t c = text[i];
    if (c != U'.' && c != U'?' && c != U'!') continue;
    std::size_t j = i;
    while (j + 1 < text.size() && (text[j + 1] == U'.' || text[j + 1] == U'?' || text[j + 1] == U'!')) ++j;
    if (j + 1 == text.size() || utf8::is_space(text[j + 1])) ++n;
    i = j;
  }
  return n == 0 ? 1 : n;
}

inline std::size_t count_syllables(std::u32string_view word) {
  using readability_detail::is_vowel;
  const auto w = utf8::fold(word);
  std::size_t groups = 0;
  bool prev_vowel = false;
  for (char32_t cp : w) {
    const bool v = is_vowel(cp);
    if (v && !prev_vowel) ++groups;
    prev_vowel = v;
  }
  const std::size_t n = w.size();
  if (groups > 1 && n >= 2 && w[n - 1] == U'e' && !is_vowel(w[n - 2]) &&
      readability_detail::is_letter(w[n - 2])) {
    const bool consonant_le = w[n - 2] == U'l' && n >= 3 && !is_vowel(w[n - 3]);
    if (!consonant_le) --groups;
  }
  return groups == 0 ? 1 : groups;
}

inline ReadabilityCounts readability_counts(std::string_view text, const WordSet& easy_words) {
  const auto cps = utf8::decode(text);
  if (!cps) throw UsageError("readability: text is not valid UTF-8");
  ReadabilityCounts c;
  c.sentences = count_sentences(*cps);
  for (const auto& w : split_words(*cps)) {
    ++c.words;
    c.letters += w.size();
    c.syllables += count_syllables(w);
    const bool numeric = std::all_of(w.begin(), w.end(), [](char32_t cp) { return cp >= U'0' && cp <= U'9'; });
    if (!numeric && !easy_words.contains(utf8::encode(utf8::fold(w)))) ++c.difficult_words;
  }
  return c;
}

inline ReadabilityScores readability_from_counts(const ReadabilityCounts& c) {
  if (c.words == 0) throw UsageError("readability: no words in text");
  const double words = static_cast<double>(c.words);
  const double wps = words / static_cast<double>(c.sentences);
  ReadabilityScores s;
  s.counts = c;
  s.flesch_reading_ease = 206.835 - 1.015 * wps - 84.6 * (static_cast<double>(c.syllables) / words);
  s.automated_readability_index = 4.71 * (static_cast<double>(c.letters) / words) + 0.5 * wps - 21.43;
  const double difficult_ratio = static_cast<double>(c.difficult_words) / words;
  s.dale_chall = 0.1579 * (100.0 * difficult_ratio) + 0.0496 * wps;
  if (difficult_ratio > 0.05) s.dale_chall += 3.6365;
  return s;
}

/// Throws UsageError when the text has no words.
inline ReadabilityScores readability(std::string_view text,
                                     const WordSet& easy_words = dale_chall_easy_words()) {
  return readability_from_counts(readability_counts(text, easy_words));
}

}  // namespace aekit
