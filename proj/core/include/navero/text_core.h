// Copyright 2026 The Navero Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NAVERO_TEXT_CORE_H_
#define NAVERO_TEXT_CORE_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "navero/lexicon.h"
#include "navero/types.h"

namespace navero {

struct Token {
  std::string surface;
  std::size_t start = 0;  // byte offset of surface in the source text
  std::size_t end = 0;    // one past the last byte
  std::string preceding_whitespace;

  bool operator==(const Token&) const = default;
};

// Tokens plus any whitespace after the last token, so that concatenating
// (preceding_whitespace + surface) for every token and then
// trailing_whitespace reproduces the source text byte for byte.
struct TokenSeq {
  std::vector<Token> tokens;
  std::string trailing_whitespace;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
  const Token& operator[](std::size_t i) const { return tokens[i]; }

  bool operator==(const TokenSeq&) const = default;
};

// Splits on ASCII whitespace and separates punctuation from words. A word is
// a run of ASCII letters/digits and non-ASCII bytes; '-' and '\'' stay inside
// a word when flanked by word characters, and '.' or ',' when flanked by
// digits. Every other ASCII punctuation byte is its own token. Case is kept.
TokenSeq Tokenize(std::string_view text);

// True when the token is a word (not punctuation).
bool IsWordToken(std::string_view surface);

// Replaces tokens [index, index + span) with `surface`. The whitespace before
// the first replaced token is kept; whitespace inside the span is dropped.
struct Replacement {
  std::string surface;
  std::size_t span = 1;
};

// Rebuilds text from tokens, applying replacements. Throws IndexOutOfRange if
// a replacement runs past the end or two replacements overlap.
std::string Detokenize(const TokenSeq& tokens,
                       const std::map<std::size_t, Replacement>& replacements = {});

// A lexicon hit over tokens [token_start, token_start + token_len).
struct SpanMatch {
  CategoryId category = CategoryId::kNoun;
  std::size_t token_start = 0;
  std::size_t token_len = 1;
  std::string matched_lemma;

  bool operator==(const SpanMatch&) const = default;
};

// Finds lexicon entries of the requested categories in the token sequence.
//
// Candidate spans consist of word tokens only. Comparison is
// case-insensitive, and the first word of a candidate may be an inflected
// form of the entry's first word (see LemmaCandidates). Among all candidates
// the longest are accepted first, ties going to the leftmost; a candidate
// overlapping an accepted one is dropped. When several categories match the
// same span, the first one in `categories` wins. Results are ordered by
// token_start.
std::vector<SpanMatch> FindPhraseMatches(const TokenSeq& tokens,
                                         const Lexicon& lexicon,
                                         std::span<const CategoryId> categories);

enum class Inflection { kPlain, kThirdPerson, kProgressive, kPast };

// Applies an inflection to a lemma: -s/-es/-ies, -ing (e-drop, ie->y,
// consonant doubling for single-syllable CVC words), -ed (the same spelling
// rules, plus an irregular past-tense table). Multi-word input is returned
// unchanged.
std::string Inflect(std::string_view lemma, Inflection inflection);

// Lowercased surface plus every lemma the inflection rules could have
// produced it from, in a fixed order, without duplicates. The surface itself
// always comes first.
std::vector<std::string> LemmaCandidates(std::string_view surface);

// Inflection class that maps `lemma` to `surface` under Inflect(), if any.
std::optional<Inflection> InflectionOf(std::string_view lemma,
                                       std::string_view surface);

// Guesses the inflection class of a surface form from its suffix alone.
Inflection GuessInflection(std::string_view surface);

// Re-inflects `replacement_lemma` the way `original_surface` is inflected and
// copies the case of its first character. When `original_lemma` is given the
// class is the one that maps it to the surface; otherwise it is guessed from
// the suffix. Multi-word arguments pass through unchanged (apart from case).
std::string InflectLike(std::string_view replacement_lemma,
                        std::string_view original_surface,
                        std::optional<std::string_view> original_lemma = std::nullopt);

std::string ToLower(std::string_view text);
bool EqualsIgnoreCase(std::string_view a, std::string_view b);

// Uppercases the first byte of `text` when `model` starts with an uppercase
// ASCII letter; otherwise returns `text` unchanged.
std::string CopyLeadingCase(std::string_view text, std::string_view model);

}  // namespace navero

#endif  // NAVERO_TEXT_CORE_H_
