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

#ifndef NAVERO_TYPES_H_
#define NAVERO_TYPES_H_

#include <array>
#include <optional>
#include <string_view>

namespace navero {

// The four compositional types a negative caption can corrupt.
enum class CompType { kAction, kAttribute, kRelation, kObject };

inline constexpr std::array<CompType, 4> kAllCompTypes = {
    CompType::kAction, CompType::kAttribute, CompType::kRelation,
    CompType::kObject};

// Coarse part-of-speech classes used by masked-token generation.
enum class GrammCategory { kNoun, kVerb, kAdj, kAdp, kOther };

// Word-list branches of the rule-based lexicon. kActionOld is the
// pre-expansion action list, kept only for ablation runs.
enum class CategoryId {
  kAction,
  kColor,
  kSize,
  kState,
  kMaterial,
  kNoun,
  kRelation,
  kActionOld,
};

inline constexpr std::size_t kNumCategories = 8;

// The seven categories used for matching when no type filter applies.
inline constexpr std::array<CategoryId, 7> kPrimaryCategories = {
    CategoryId::kAction,   CategoryId::kColor, CategoryId::kSize,
    CategoryId::kState,    CategoryId::kMaterial, CategoryId::kNoun,
    CategoryId::kRelation};

enum class GeneratorKind { kRule, kLlm, kMixed };

// Which generator actually produced a round. kLlmFallback marks a mixed-mode
// round whose rule draw found nothing to replace.
enum class RoundGenerator { kRule, kLlm, kLlmFallback };

// Lowercase identifiers used in files and on the command line.
std::string_view CompTypeName(CompType type);
// Capitalized form used in reports ("Action").
std::string_view CompTypeLabel(CompType type);
std::optional<CompType> ParseCompType(std::string_view name);

std::string_view GrammCategoryName(GrammCategory category);  // "NOUN", ...
std::optional<GrammCategory> ParseGrammCategory(std::string_view name);

std::string_view CategoryName(CategoryId category);  // "color", ...
std::optional<CategoryId> ParseCategory(std::string_view name);

std::string_view GeneratorKindName(GeneratorKind kind);
std::optional<GeneratorKind> ParseGeneratorKind(std::string_view name);

std::string_view RoundGeneratorName(RoundGenerator generator);
std::optional<RoundGenerator> ParseRoundGenerator(std::string_view name);

}  // namespace navero

#endif  // NAVERO_TYPES_H_
