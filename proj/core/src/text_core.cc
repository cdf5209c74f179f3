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

#include "navero/text_core.h"

#include <algorithm>
#include <cctype>
#include <unordered_map>
#include <unordered_set>

#include "navero/error.h"

namespace navero {
namespace {

bool IsAsciiSpace(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool IsWordByte(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

bool IsVowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

// Past tense of irregular verbs that occur in the builtin word lists or in
// everyday captions.
const std::unordered_map<std::string, std::string>& IrregularPast() {
  static const auto* table = new std::unordered_map<std::string, std::string>{
      {"be", "was"},        {"begin", "began"},   {"bend", "bent"},     {"bite", "bit"},
      {"blow", "blew"},     {"break", "broke"},   {"bring", "brought"},
      {"build", "built"},   {"buy", "bought"},    {"catch", "caught"},
      {"choose", "chose"},  {"come", "came"},     {"cut", "cut"},
      {"dig", "dug"},       {"draw", "drew"},     {"drink", "drank"},
      {"drive", "drove"},   {"eat", "ate"},       {"fall", "fell"},
      {"feed", "fed"},      {"feel", "felt"},     {"fight", "fought"},
      {"find", "found"},    {"fly", "flew"},      {"freeze", "froze"},
      {"get", "got"},       {"give", "gave"},     {"go", "went"},
      {"grow", "grew"},     {"hang", "hung"},     {"have", "had"},
      {"hear", "heard"},    {"hide", "hid"},      {"hit", "hit"},
      {"hold", "held"},     {"keep", "kept"},     {"know", "knew"},
      {"lay", "laid"},      {"lead", "led"},      {"leave", "left"},
      {"light", "lit"},     {"lose", "lost"},     {"make", "made"},
      {"meet", "met"},      {"pay", "paid"},      {"put", "put"},
      {"rewind", "rewound"}, {"ride", "rode"},     {"ring", "rang"},     {"rise", "rose"},
      {"run", "ran"},       {"say", "said"},      {"see", "saw"},
      {"sell", "sold"},     {"send", "sent"},     {"shake", "shook"},
      {"shine", "shone"},   {"shoot", "shot"},    {"shrink", "shrank"},
      {"shut", "shut"},     {"sing", "sang"},     {"sink", "sank"},
      {"sit", "sat"},       {"sleep", "slept"},   {"slide", "slid"},
      {"speak", "spoke"},   {"spend", "spent"},   {"spin", "spun"},
      {"split", "split"},   {"spread", "spread"}, {"stand", "stood"},
      {"steal", "stole"},   {"stick", "stuck"},   {"strike", "struck"},
      {"sweep", "swept"},   {"swim", "swam"},     {"swing", "swung"},
      {"take", "took"},     {"teach", "taught"},  {"tear", "tore"},
      {"tell", "told"},     {"think", "thought"}, {"throw", "threw"},
      {"wake", "woke"},     {"wear", "wore"},     {"weave", "wove"},
      {"win", "won"},       {"wind", "wound"},    {"write", "wrote"},
  };
  return *table;
}

const std::unordered_map<std::string, std::vector<std::string>>&
IrregularPastReverse() {
  static const auto* table = [] {
    auto* t = new std::unordered_map<std::string, std::vector<std::string>>;
    for (const auto& [lemma, past] : IrregularPast()) {
      (*t)[past].push_back(lemma);
    }
    for (auto& [past, lemmas] : *t) std::sort(lemmas.begin(), lemmas.end());
    return t;
  }();
  return *table;
}

int VowelGroups(std::string_view w) {
  int groups = 0;
  bool in_group = false;
  for (char c : w) {
    const bool v = IsVowel(c);
    if (v && !in_group) ++groups;
    in_group = v;
  }
  return groups;
}

// Longer verbs stressed on the last syllable, which double like "stop".
bool StressedFinalSyllable(std::string_view w) {
  static const auto* words = new std::unordered_set<std::string_view>{
      "admit",  "begin",  "commit", "compel", "control", "equip",    "expel",
      "forget", "occur",  "omit",   "patrol", "permit",  "prefer",   "propel",
      "rebel",  "refer",  "regret", "repel",  "submit",  "transfer", "upset",
  };
  return words->count(w) > 0;
}

// Consonant-vowel-consonant ending of a single syllable (swim, stop, rot)
// or of a verb stressed on its last syllable (begin, repel).
bool DoublesFinalConsonant(std::string_view w) {
  if (w.size() < 3) return false;
  if (VowelGroups(w) != 1 && !StressedFinalSyllable(w)) return false;
  const char last = w[w.size() - 1];
  const char mid = w[w.size() - 2];
  const char before = w[w.size() - 3];
  if (!std::isalpha(static_cast<unsigned char>(last)) || IsVowel(last) ||
      last == 'w' || last == 'x' || last == 'y') {
    return false;
  }
  return IsVowel(mid) && !IsVowel(before) &&
         std::isalpha(static_cast<unsigned char>(before));
}

bool ConsonantY(std::string_view w) {
  return w.size() >= 2 && w.back() == 'y' && !IsVowel(w[w.size() - 2]);
}

std::string Progressive(const std::string& w) {
  if (EndsWith(w, "ie")) return w.substr(0, w.size() - 2) + "ying";
  if (w.size() > 2 && w.back() == 'e' && !EndsWith(w, "ee") &&
      !EndsWith(w, "ye") && !EndsWith(w, "oe")) {
    return w.substr(0, w.size() - 1) + "ing";
  }
  if (DoublesFinalConsonant(w)) return w + w.back() + "ing";
  if (EndsWith(w, "ic")) return w + "king";
  return w + "ing";
}

std::string Past(const std::string& w) {
  const auto& irregular = IrregularPast();
  if (auto it = irregular.find(w); it != irregular.end()) return it->second;
  if (w.back() == 'e') return w + "d";
  if (ConsonantY(w)) return w.substr(0, w.size() - 1) + "ied";
  if (DoublesFinalConsonant(w)) return w + w.back() + "ed";
  if (EndsWith(w, "ic")) return w + "ked";
  return w + "ed";
}

std::string ThirdPerson(const std::string& w) {
  if (EndsWith(w, "s") || EndsWith(w, "x") || EndsWith(w, "z") ||
      EndsWith(w, "ch") || EndsWith(w, "sh")) {
    return w + "es";
  }
  if (ConsonantY(w)) return w.substr(0, w.size() - 1) + "ies";
  if (w.size() >= 2 && w.back() == 'o' && !IsVowel(w[w.size() - 2])) {
    return w + "es";
  }
  return w + "s";
}

bool HasSpace(std::string_view s) {
  return s.find(' ') != std::string_view::npos;
}

}  // namespace

std::string ToLower(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool EqualsIgnoreCase(std::string_view a, std::string_view b) {
  return a.size() == b.size() && ToLower(a) == ToLower(b);
}

std::string CopyLeadingCase(std::string_view text, std::string_view model) {
  std::string out(text);
  if (!out.empty() && !model.empty() &&
      std::isupper(static_cast<unsigned char>(model.front()))) {
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  }
  return out;
}

bool IsWordToken(std::string_view surface) {
  return !surface.empty() && IsWordByte(static_cast<unsigned char>(surface.front()));
}

TokenSeq Tokenize(std::string_view text) {
  TokenSeq seq;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto byte = [&](std::size_t k) { return static_cast<unsigned char>(text[k]); };
  while (i < n) {
    const std::size_t ws_start = i;
    while (i < n && IsAsciiSpace(byte(i))) ++i;
    if (i == n) {
      seq.trailing_whitespace = std::string(text.substr(ws_start));
      break;
    }
    Token tok;
    tok.preceding_whitespace = std::string(text.substr(ws_start, i - ws_start));
    tok.start = i;
    if (IsWordByte(byte(i))) {
      ++i;
      while (i < n) {
        const unsigned char c = byte(i);
        if (IsWordByte(c)) {
          ++i;
          continue;
        }
        const bool has_next = i + 1 < n;
        if ((c == '-' || c == '\'') && has_next && IsWordByte(byte(i + 1))) {
          i += 2;
          continue;
        }
        if ((c == '.' || c == ',') && has_next && std::isdigit(byte(i - 1)) &&
            std::isdigit(byte(i + 1))) {
          i += 2;
          continue;
        }
        break;
      }
    } else {
      ++i;
    }
    tok.end = i;
    tok.surface = std::string(text.substr(tok.start, tok.end - tok.start));
    seq.tokens.push_back(std::move(tok));
  }
  return seq;
}

std::string Detokenize(const TokenSeq& tokens,
                       const std::map<std::size_t, Replacement>& replacements) {
  std::size_t covered_until = 0;
  for (const auto& [index, replacement] : replacements) {
    if (replacement.span == 0 || index >= tokens.size() ||
        replacement.span > tokens.size() - index) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "replacement at token " + std::to_string(index) + " (span " +
                      std::to_string(replacement.span) + ") outside " +
                      std::to_string(tokens.size()) + " tokens");
    }
    if (index < covered_until) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "overlapping replacement at token " + std::to_string(index));
    }
    covered_until = index + replacement.span;
  }

  std::string out;
  auto next = replacements.begin();
  for (std::size_t i = 0; i < tokens.size();) {
    out += tokens[i].preceding_whitespace;
    if (next != replacements.end() && next->first == i) {
      out += next->second.surface;
      i += next->second.span;
      ++next;
    } else {
      out += tokens[i].surface;
      ++i;
    }
  }
  out += tokens.trailing_whitespace;
  return out;
}

std::vector<std::string> LemmaCandidates(std::string_view surface) {
  const std::string s = ToLower(surface);
  std::vector<std::string> out;
  auto add = [&out](std::string c) {
    if (!c.empty() && std::find(out.begin(), out.end(), c) == out.end()) {
      out.push_back(std::move(c));
    }
  };
  add(s);
  if (HasSpace(s)) return out;

  const auto& reverse = IrregularPastReverse();
  if (auto it = reverse.find(s); it != reverse.end()) {
    for (const auto& lemma : it->second) add(lemma);
  }
  const std::size_t n = s.size();
  if (EndsWith(s, "ies") && n > 4) add(s.substr(0, n - 3) + "y");
  if (EndsWith(s, "es") && n > 3) add(s.substr(0, n - 2));
  if (EndsWith(s, "s") && !EndsWith(s, "ss") && n > 2) add(s.substr(0, n - 1));
  if (EndsWith(s, "ying") && n >= 5) add(s.substr(0, n - 4) + "ie");
  if (EndsWith(s, "ing") && n > 4) {
    const std::string stem = s.substr(0, n - 3);
    add(stem);
    add(stem + "e");
    if (stem.size() >= 2 && stem.back() == stem[stem.size() - 2]) {
      add(stem.substr(0, stem.size() - 1));
    }
    if (EndsWith(stem, "ick")) add(stem.substr(0, stem.size() - 1));
  }
  if (EndsWith(s, "ied") && n > 4) add(s.substr(0, n - 3) + "y");
  if (EndsWith(s, "ed") && n > 3) {
    const std::string stem = s.substr(0, n - 2);
    add(stem);
    add(s.substr(0, n - 1));
    if (stem.size() >= 2 && stem.back() == stem[stem.size() - 2]) {
      add(stem.substr(0, stem.size() - 1));
    }
    if (EndsWith(stem, "ick")) add(stem.substr(0, stem.size() - 1));
  }
  return out;
}

std::string Inflect(std::string_view lemma, Inflection inflection) {
  const std::string w = ToLower(lemma);
  if (w.empty() || HasSpace(w)) return std::string(lemma);
  switch (inflection) {
    case Inflection::kPlain: return w;
    case Inflection::kThirdPerson: return ThirdPerson(w);
    case Inflection::kProgressive: return Progressive(w);
    case Inflection::kPast: return Past(w);
  }
  return w;
}

std::optional<Inflection> InflectionOf(std::string_view lemma,
                                       std::string_view surface) {
  const std::string s = ToLower(surface);
  for (Inflection inflection : {Inflection::kPlain, Inflection::kThirdPerson,
                                Inflection::kProgressive, Inflection::kPast}) {
    if (Inflect(lemma, inflection) == s) return inflection;
  }
  return std::nullopt;
}

Inflection GuessInflection(std::string_view surface) {
  const std::string s = ToLower(surface);
  if (EndsWith(s, "ing") && s.size() >= 5) return Inflection::kProgressive;
  if (IrregularPastReverse().count(s) > 0) return Inflection::kPast;
  if (EndsWith(s, "ed") && s.size() >= 4) return Inflection::kPast;
  if (EndsWith(s, "s") && s.size() >= 3 && !EndsWith(s, "ss") &&
      !EndsWith(s, "us") && !EndsWith(s, "is")) {
    return Inflection::kThirdPerson;
  }
  return Inflection::kPlain;
}

std::string InflectLike(std::string_view replacement_lemma,
                        std::string_view original_surface,
                        std::optional<std::string_view> original_lemma) {
  if (HasSpace(replacement_lemma) || HasSpace(original_surface) ||
      replacement_lemma.empty() || original_surface.empty()) {
    return CopyLeadingCase(replacement_lemma, original_surface);
  }
  Inflection inflection = GuessInflection(original_surface);
  if (original_lemma) {
    if (auto exact = InflectionOf(*original_lemma, original_surface)) {
      inflection = *exact;
    }
  }
  return CopyLeadingCase(Inflect(replacement_lemma, inflection),
                         original_surface);
}

std::vector<SpanMatch> FindPhraseMatches(const TokenSeq& tokens,
                                         const Lexicon& lexicon,
                                         std::span<const CategoryId> categories) {
  std::vector<SpanMatch> candidates;
  const std::size_t max_words = lexicon.max_phrase_words();
  for (std::size_t start = 0; start < tokens.size(); ++start) {
    if (!IsWordToken(tokens[start].surface)) continue;
    const std::vector<std::string> heads = LemmaCandidates(tokens[start].surface);
    std::string rest;
    for (std::size_t len = 1; len <= max_words && start + len <= tokens.size();
         ++len) {
      if (len > 1) {
        const Token& tok = tokens[start + len - 1];
        if (!IsWordToken(tok.surface) || tok.preceding_whitespace.empty()) break;
        rest += ' ';
        rest += ToLower(tok.surface);
      }
      bool found = false;
      for (CategoryId category : categories) {
        for (const auto& head : heads) {
          std::string phrase = head + rest;
          if (lexicon.Contains(category, phrase)) {
            candidates.push_back({category, start, len, std::move(phrase)});
            found = true;
            break;
          }
        }
        if (found) break;
      }
    }
  }

  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const SpanMatch& a, const SpanMatch& b) {
                     if (a.token_len != b.token_len) return a.token_len > b.token_len;
                     return a.token_start < b.token_start;
                   });
  std::vector<SpanMatch> accepted;
  std::vector<bool> used(tokens.size(), false);
  for (auto& candidate : candidates) {
    bool free = true;
    for (std::size_t k = 0; k < candidate.token_len; ++k) {
      if (used[candidate.token_start + k]) {
        free = false;
        break;
      }
    }
    if (!free) continue;
    for (std::size_t k = 0; k < candidate.token_len; ++k) {
      used[candidate.token_start + k] = true;
    }
    accepted.push_back(std::move(candidate));
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const SpanMatch& a, const SpanMatch& b) {
              return a.token_start < b.token_start;
            });
  return accepted;
}

}  // namespace navero
