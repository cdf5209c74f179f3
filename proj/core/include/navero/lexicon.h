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

#ifndef NAVERO_LEXICON_H_
#define NAVERO_LEXICON_H_

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "navero/rng.h"
#include "navero/types.h"

namespace navero {

// Category-indexed word and phrase lists. Immutable once constructed and safe
// to share between threads.
//
// File format (UTF-8):
//
//   # comment
//   [color]
//   red
//   light blue
//
// Section names are CategoryName() values. Entries are lowercased and runs of
// whitespace collapse to one space. A duplicate entry within a category, or
// an entry without any letter or digit, is a ValidationError; unknown or
// repeated sections and entries outside a section are ParseErrors.
class Lexicon {
 public:
  // The embedded word lists (version "builtin-v1").
  static const Lexicon& Builtin();

  static Lexicon FromFile(const std::filesystem::path& path);
  static Lexicon Parse(std::string_view text, std::string source);

  const std::vector<std::string>& Entries(CategoryId category) const {
    return entries_[Index(category)];
  }
  bool Contains(CategoryId category, std::string_view entry) const;

  // Largest number of space-separated words in any entry.
  std::size_t max_phrase_words() const { return max_phrase_words_; }

  // "builtin" or the file path the lexicon was read from.
  const std::string& source() const { return source_; }
  // "builtin-v1", or "file-<fnv1a hex of content>" for file lexicons.
  const std::string& version() const { return version_; }

 private:
  Lexicon() = default;
  static std::size_t Index(CategoryId c) { return static_cast<std::size_t>(c); }

  std::array<std::vector<std::string>, kNumCategories> entries_;
  std::array<std::unordered_set<std::string>, kNumCategories> index_;
  std::size_t max_phrase_words_ = 0;
  std::string source_;
  std::string version_;
};

// Which action list the rule-based Action mapping uses.
enum class ActionList { kAugmented, kOld };

// Rule-based row of the type division table: lexicon categories whose
// entries may replace a matched word for the given type.
std::vector<CategoryId> RuleCategories(
    CompType type, ActionList action_list = ActionList::kAugmented);

// LLM-based row of the type division table: the grammatical category that is
// masked for the given type.
std::vector<GrammCategory> LlmCategories(CompType type);

// Inverse mappings, used to label a round with the type it actually changed.
CompType CompTypeForCategory(CategoryId category);
// Throws InvalidArgument for GrammCategory::kOther.
CompType CompTypeForGramm(GrammCategory category);

// Uniform draw over Entries(category) with every entry in `exclude` removed,
// in lexicon order, using one rng.UniformIndex() call. Throws EmptyCategory
// when nothing is left.
std::string SampleReplacement(const Lexicon& lexicon, CategoryId category,
                              std::string_view exclude, Rng& rng);
std::string SampleReplacement(const Lexicon& lexicon, CategoryId category,
                              std::span<const std::string> exclude, Rng& rng);

// Lowercase and collapse whitespace runs to single spaces; trims both ends.
std::string NormalizeEntry(std::string_view text);

}  // namespace navero

#endif  // NAVERO_LEXICON_H_
