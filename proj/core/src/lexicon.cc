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

#include "navero/lexicon.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "navero/error.h"

namespace navero {
namespace internal {
extern const std::string_view kBuiltinLexiconText;
}  // namespace internal

namespace {

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)); }

std::string_view Trim(std::string_view s) {
  while (!s.empty() && IsSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsSpace(s.back())) s.remove_suffix(1);
  return s;
}

std::string Location(const std::string& source, std::size_t line) {
  return source + ":" + std::to_string(line);
}

}  // namespace

std::string NormalizeEntry(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : Trim(text)) {
    if (IsSpace(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

Lexicon Lexicon::Parse(std::string_view text, std::string source) {
  Lexicon lex;
  lex.source_ = std::move(source);
  lex.version_ = "file-";
  {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(Fnv1a64(text)));
    lex.version_ += buf;
  }

  std::array<bool, kNumCategories> seen{};
  std::optional<CategoryId> current;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw Error(ErrorCode::kParse, Location(lex.source_, line_no) +
                                           ": malformed section header '" +
                                           std::string(line) + "'");
      }
      const std::string name(Trim(line.substr(1, line.size() - 2)));
      current = ParseCategory(name);
      if (!current) {
        throw Error(ErrorCode::kParse, Location(lex.source_, line_no) +
                                           ": unknown category '" + name + "'");
      }
      if (seen[Index(*current)]) {
        throw Error(ErrorCode::kParse, Location(lex.source_, line_no) +
                                           ": repeated section [" + name + "]");
      }
      seen[Index(*current)] = true;
      continue;
    }

    if (!current) {
      throw Error(ErrorCode::kParse, Location(lex.source_, line_no) +
                                         ": entry outside any [category] section");
    }
    std::string entry = NormalizeEntry(line);
    const std::string category(CategoryName(*current));
    if (std::none_of(entry.begin(), entry.end(), [](char c) {
          return std::isalnum(static_cast<unsigned char>(c)) ||
                 static_cast<unsigned char>(c) >= 0x80;
        })) {
      throw Error(ErrorCode::kValidation, Location(lex.source_, line_no) +
                                              ": empty entry in category '" +
                                              category + "'");
    }
    auto& index = lex.index_[Index(*current)];
    if (!index.insert(entry).second) {
      throw Error(ErrorCode::kValidation,
                  Location(lex.source_, line_no) + ": duplicate entry '" +
                      entry + "' in category '" + category + "'");
    }
    const std::size_t words =
        1 + static_cast<std::size_t>(std::count(entry.begin(), entry.end(), ' '));
    lex.max_phrase_words_ = std::max(lex.max_phrase_words_, words);
    lex.entries_[Index(*current)].push_back(std::move(entry));
  }
  return lex;
}

Lexicon Lexicon::FromFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open lexicon file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return Parse(buf.str(), path.string());
}

const Lexicon& Lexicon::Builtin() {
  static const Lexicon* builtin = [] {
    auto* lex = new Lexicon(Parse(internal::kBuiltinLexiconText, "builtin"));
    lex->version_ = "builtin-v1";
    return lex;
  }();
  return *builtin;
}

bool Lexicon::Contains(CategoryId category, std::string_view entry) const {
  const auto& index = index_[Index(category)];
  return index.find(std::string(entry)) != index.end();
}

std::vector<CategoryId> RuleCategories(CompType type, ActionList action_list) {
  switch (type) {
    case CompType::kAction:
      return {action_list == ActionList::kOld ? CategoryId::kActionOld
                                              : CategoryId::kAction};
    case CompType::kAttribute:
      return {CategoryId::kColor, CategoryId::kMaterial, CategoryId::kState,
              CategoryId::kSize};
    case CompType::kRelation:
      return {CategoryId::kRelation};
    case CompType::kObject:
      return {CategoryId::kNoun};
  }
  return {};
}

std::vector<GrammCategory> LlmCategories(CompType type) {
  switch (type) {
    case CompType::kAction: return {GrammCategory::kVerb};
    case CompType::kAttribute: return {GrammCategory::kAdj};
    case CompType::kRelation: return {GrammCategory::kAdp};
    case CompType::kObject: return {GrammCategory::kNoun};
  }
  return {};
}

CompType CompTypeForCategory(CategoryId category) {
  switch (category) {
    case CategoryId::kAction:
    case CategoryId::kActionOld:
      return CompType::kAction;
    case CategoryId::kColor:
    case CategoryId::kSize:
    case CategoryId::kState:
    case CategoryId::kMaterial:
      return CompType::kAttribute;
    case CategoryId::kRelation:
      return CompType::kRelation;
    case CategoryId::kNoun:
      return CompType::kObject;
  }
  return CompType::kObject;
}

CompType CompTypeForGramm(GrammCategory category) {
  switch (category) {
    case GrammCategory::kVerb: return CompType::kAction;
    case GrammCategory::kAdj: return CompType::kAttribute;
    case GrammCategory::kAdp: return CompType::kRelation;
    case GrammCategory::kNoun: return CompType::kObject;
    case GrammCategory::kOther: break;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "OTHER has no compositional type");
}

std::string SampleReplacement(const Lexicon& lexicon, CategoryId category,
                              std::span<const std::string> exclude, Rng& rng) {
  std::vector<const std::string*> eligible;
  for (const auto& entry : lexicon.Entries(category)) {
    if (std::find(exclude.begin(), exclude.end(), entry) == exclude.end()) {
      eligible.push_back(&entry);
    }
  }
  if (eligible.empty()) {
    throw Error(ErrorCode::kEmptyCategory,
                "category '" + std::string(CategoryName(category)) +
                    "' has no entry other than the excluded ones");
  }
  return *eligible[rng.UniformIndex(eligible.size())];
}

std::string SampleReplacement(const Lexicon& lexicon, CategoryId category,
                              std::string_view exclude, Rng& rng) {
  const std::string excluded[] = {std::string(exclude)};
  return SampleReplacement(lexicon, category, excluded, rng);
}

}  // namespace navero
