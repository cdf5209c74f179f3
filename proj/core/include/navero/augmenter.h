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

#ifndef NAVERO_AUGMENTER_H_
#define NAVERO_AUGMENTER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "navero/lexicon.h"
#include "navero/provider.h"
#include "navero/rng.h"
#include "navero/tagger.h"
#include "navero/types.h"

namespace navero {

struct AugConfig {
  GeneratorKind generator = GeneratorKind::kMixed;
  int rounds = 5;
  // Types a round may corrupt; nullopt means any of the four.
  std::optional<std::vector<CompType>> types;
  std::uint64_t seed = 0;
  // Probability that a mixed round tries the rule generator first.
  double mix_probability = 0.5;
  ActionList action_list = ActionList::kAugmented;
  int top_k = 10;  // candidates requested from the provider

  // Throws InvalidArgument on rounds < 1, mix_probability outside [0, 1],
  // top_k < 1 or an empty type set.
  void Validate() const;
};

struct RoundTrace {
  int round_index = 0;  // 1-based position in the configured schedule
  RoundGenerator generator_used = RoundGenerator::kRule;
  CompType comp_type_effective = CompType::kObject;
  // Lexicon category name for rule rounds, grammatical tag for llm rounds.
  std::string category;
  std::size_t token_start = 0;
  std::size_t token_len = 1;
  std::string original_surface;  // exact source text of the replaced span
  std::string replacement;       // text inserted in its place
  std::optional<std::string> replacement_lemma;  // rule rounds only
  std::optional<double> provider_latency_ms;

  bool operator==(const RoundTrace&) const = default;
};

struct AugResult {
  std::string negative_caption;
  std::vector<RoundTrace> trace;

  bool operator==(const AugResult&) const = default;
};

struct RoundOutput {
  std::string caption;
  RoundTrace trace;
};

// Collaborators of the generators. `provider` may be null for pure rule
// generation.
struct AugmentDeps {
  const Lexicon* lexicon = &Lexicon::Builtin();
  const Tagger* tagger = nullptr;
  UnmaskProvider* provider = nullptr;
};

// Replaces one lexicon-matched span with another entry of the same category.
// `types` restricts the categories (nullopt: all seven). The span is chosen
// uniformly among matches whose category has another entry, then the
// replacement is drawn uniformly from the category minus the matched lemma
// and inflected like the original. Throws NoReplacementCandidate.
RoundOutput RuleAugmentOnce(std::string_view caption,
                            const std::optional<std::vector<CompType>>& types,
                            const Lexicon& lexicon, Rng& rng,
                            ActionList action_list = ActionList::kAugmented);

// Masks one token whose tag belongs to `types` (chosen uniformly) and
// substitutes the highest-scoring provider candidate that differs from it
// case-insensitively. Throws NoEligibleToken, NoDistinctCandidate or
// ProviderError.
RoundOutput LlmAugmentOnce(std::string_view caption,
                           const std::optional<std::vector<CompType>>& types,
                           const Tagger& tagger, UnmaskProvider& provider,
                           Rng& rng, int top_k = 10);

// Chooses rule with probability cfg.mix_probability, else llm. A rule draw
// that finds nothing falls back to llm within the same round. Throws
// RoundFailed when the chosen path (and its fallback) cannot produce an edit.
// ProviderError propagates unchanged.
RoundOutput MixedAugmentOnce(std::string_view caption, const AugConfig& cfg,
                             const AugmentDeps& deps, Rng& rng);

// Runs cfg.rounds rounds, feeding each output into the next. Round r draws
// from Rng(DeriveSeed(cfg.seed, sample_id, r)). A round that fails, or that
// would restore the original caption, is skipped. Throws AllRoundsFailed when
// no round succeeds.
AugResult GenerateNegative(std::string_view caption, std::string_view sample_id,
                           const AugConfig& cfg, const AugmentDeps& deps);

// GenerateNegative with every round restricted to `type`. The substream key
// is sample_id + "|" + CompTypeName(type).
AugResult BuildTypedNegative(std::string_view caption,
                             std::string_view sample_id, CompType type,
                             const AugConfig& cfg, const AugmentDeps& deps);

// Categories a rule round searches for the given type set.
std::vector<CategoryId> RuleCategoriesFor(
    const std::optional<std::vector<CompType>>& types, ActionList action_list);

// Grammatical tags an llm round may mask for the given type set.
std::vector<GrammCategory> LlmCategoriesFor(
    const std::optional<std::vector<CompType>>& types);

// Re-applies a stored trace to `caption`, checking that every round replaced
// exactly the recorded span. Returns nullopt with a message in `error` on
// the first inconsistency.
std::optional<std::string> ReplayTrace(std::string_view caption,
                                       const std::vector<RoundTrace>& trace,
                                       std::string* error);

}  // namespace navero

#endif  // NAVERO_AUGMENTER_H_
