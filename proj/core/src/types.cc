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

#include "navero/types.h"

#include <string>

namespace navero {
namespace {

template <typename Enum, std::size_t N>
std::optional<Enum> Lookup(std::string_view name,
                           const std::array<Enum, N>& values,
                           std::string_view (*to_name)(Enum)) {
  for (Enum value : values) {
    if (to_name(value) == name) return value;
  }
  return std::nullopt;
}

}  // namespace

std::string_view CompTypeName(CompType type) {
  switch (type) {
    case CompType::kAction: return "action";
    case CompType::kAttribute: return "attribute";
    case CompType::kRelation: return "relation";
    case CompType::kObject: return "object";
  }
  return "";
}

std::string_view CompTypeLabel(CompType type) {
  switch (type) {
    case CompType::kAction: return "Action";
    case CompType::kAttribute: return "Attribute";
    case CompType::kRelation: return "Relation";
    case CompType::kObject: return "Object";
  }
  return "";
}

std::optional<CompType> ParseCompType(std::string_view name) {
  if (auto t = Lookup(name, kAllCompTypes, &CompTypeName)) return t;
  return Lookup(name, kAllCompTypes, &CompTypeLabel);
}

std::string_view GrammCategoryName(GrammCategory category) {
  switch (category) {
    case GrammCategory::kNoun: return "NOUN";
    case GrammCategory::kVerb: return "VERB";
    case GrammCategory::kAdj: return "ADJ";
    case GrammCategory::kAdp: return "ADP";
    case GrammCategory::kOther: return "OTHER";
  }
  return "";
}

std::optional<GrammCategory> ParseGrammCategory(std::string_view name) {
  static constexpr std::array<GrammCategory, 5> kAll = {
      GrammCategory::kNoun, GrammCategory::kVerb, GrammCategory::kAdj,
      GrammCategory::kAdp, GrammCategory::kOther};
  return Lookup(name, kAll, &GrammCategoryName);
}

std::string_view CategoryName(CategoryId category) {
  switch (category) {
    case CategoryId::kAction: return "action";
    case CategoryId::kColor: return "color";
    case CategoryId::kSize: return "size";
    case CategoryId::kState: return "state";
    case CategoryId::kMaterial: return "material";
    case CategoryId::kNoun: return "noun";
    case CategoryId::kRelation: return "relation";
    case CategoryId::kActionOld: return "action_old";
  }
  return "";
}

std::optional<CategoryId> ParseCategory(std::string_view name) {
  static constexpr std::array<CategoryId, kNumCategories> kAll = {
      CategoryId::kAction,   CategoryId::kColor,    CategoryId::kSize,
      CategoryId::kState,    CategoryId::kMaterial, CategoryId::kNoun,
      CategoryId::kRelation, CategoryId::kActionOld};
  return Lookup(name, kAll, &CategoryName);
}

std::string_view GeneratorKindName(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kRule: return "rule";
    case GeneratorKind::kLlm: return "llm";
    case GeneratorKind::kMixed: return "mixed";
  }
  return "";
}

std::optional<GeneratorKind> ParseGeneratorKind(std::string_view name) {
  static constexpr std::array<GeneratorKind, 3> kAll = {
      GeneratorKind::kRule, GeneratorKind::kLlm, GeneratorKind::kMixed};
  return Lookup(name, kAll, &GeneratorKindName);
}

std::string_view RoundGeneratorName(RoundGenerator generator) {
  switch (generator) {
    case RoundGenerator::kRule: return "rule";
    case RoundGenerator::kLlm: return "llm";
    case RoundGenerator::kLlmFallback: return "llm_fallback";
  }
  return "";
}

std::optional<RoundGenerator> ParseRoundGenerator(std::string_view name) {
  static constexpr std::array<RoundGenerator, 3> kAll = {
      RoundGenerator::kRule, RoundGenerator::kLlm,
      RoundGenerator::kLlmFallback};
  return Lookup(name, kAll, &RoundGeneratorName);
}

}  // namespace navero
