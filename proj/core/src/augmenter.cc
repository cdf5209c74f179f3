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

#include "navero/augmenter.h"

#include <algorithm>
#include <map>

#include "navero/error.h"
#include "navero/text_core.h"

namespace navero {
namespace {

bool Includes(const std::optional<std::vector<CompType>>& types, CompType t) {
  return !types || std::find(types->begin(), types->end(), t) != types->end();
}

std::string SpanText(std::string_view caption, const TokenSeq& tokens,
                     std::size_t start, std::size_t len) {
  const std::size_t begin = tokens[start].start;
  const std::size_t end = tokens[start + len - 1].end;
  return std::string(caption.substr(begin, end - begin));
}

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

void AugConfig::Validate() const {
  if (rounds < 1) {
    throw Error(ErrorCode::kInvalidArgument, "rounds must be at least 1");
  }
  if (!(mix_probability >= 0.0 && mix_probability <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "mix_probability must lie in [0, 1]");
  }
  if (top_k < 1) {
    throw Error(ErrorCode::kInvalidArgument, "top_k must be at least 1");
  }
  if (types && types->empty()) {
    throw Error(ErrorCode::kInvalidArgument, "type set must not be empty");
  }
}

std::vector<CategoryId> RuleCategoriesFor(
    const std::optional<std::vector<CompType>>& types, ActionList action_list) {
  std::vector<CategoryId> out;
  for (CompType t : kAllCompTypes) {
    if (!Includes(types, t)) continue;
    for (CategoryId c : RuleCategories(t, action_list)) {
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
  }
  return out;
}

std::vector<GrammCategory> LlmCategoriesFor(
    const std::optional<std::vector<CompType>>& types) {
  std::vector<GrammCategory> out;
  for (CompType t : kAllCompTypes) {
    if (!Includes(types, t)) continue;
    for (GrammCategory g : LlmCategories(t)) {
      if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
    }
  }
  return out;
}

RoundOutput RuleAugmentOnce(std::string_view caption,
                            const std::optional<std::vector<CompType>>& types,
                            const Lexicon& lexicon, Rng& rng,
                            ActionList action_list) {
  if (caption.empty()) {
    throw Error(ErrorCode::kEmptyCaption, "cannot augment an empty caption");
  }
  const TokenSeq tokens = Tokenize(caption);
  const std::vector<CategoryId> categories =
      RuleCategoriesFor(types, action_list);
  std::vector<SpanMatch> matches;
  for (SpanMatch& m : FindPhraseMatches(tokens, lexicon, categories)) {
    const auto& entries = lexicon.Entries(m.category);
    const bool has_other = std::any_of(
        entries.begin(), entries.end(),
        [&](const std::string& e) { return e != m.matched_lemma; });
    if (has_other) matches.push_back(std::move(m));
  }
  if (matches.empty()) {
    throw Error(ErrorCode::kNoReplacementCandidate,
                "no lexicon span with an alternative entry in '" +
                    std::string(caption) + "'");
  }
  const SpanMatch& match = matches[rng.UniformIndex(matches.size())];
  const std::string original =
      SpanText(caption, tokens, match.token_start, match.token_len);

  // Inflecting a different lemma can, rarely, reproduce the original surface
  // (irregular forms); such entries are excluded and the draw repeated.
  std::vector<std::string> exclude = {match.matched_lemma};
  std::string lemma;
  std::string surface;
  while (true) {
    try {
      lemma = SampleReplacement(lexicon, match.category, exclude, rng);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kEmptyCategory) throw;
      throw Error(ErrorCode::kNoReplacementCandidate,
                  "every entry of '" + std::string(CategoryName(match.category)) +
                      "' renders as '" + original + "'");
    }
    surface = InflectLike(lemma, original, match.matched_lemma);
    if (!EqualsIgnoreCase(surface, original)) break;
    exclude.push_back(lemma);
  }

  RoundOutput out;
  out.caption =
      Detokenize(tokens, {{match.token_start, {surface, match.token_len}}});
  RoundTrace& trace = out.trace;
  trace.generator_used = RoundGenerator::kRule;
  trace.comp_type_effective = CompTypeForCategory(match.category);
  trace.category = std::string(CategoryName(match.category));
  trace.token_start = match.token_start;
  trace.token_len = match.token_len;
  trace.original_surface = original;
  trace.replacement = surface;
  trace.replacement_lemma = lemma;
  return out;
}

RoundOutput LlmAugmentOnce(std::string_view caption,
                           const std::optional<std::vector<CompType>>& types,
                           const Tagger& tagger, UnmaskProvider& provider,
                           Rng& rng, int top_k) {
  if (caption.empty()) {
    throw Error(ErrorCode::kEmptyCaption, "cannot augment an empty caption");
  }
  const TaggedCaption tagged = tagger.Tag(Tokenize(caption));
  const TokenSeq& tokens = tagged.tokens;
  const std::vector<GrammCategory> wanted = LlmCategoriesFor(types);
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (IsWordToken(tokens[i].surface) &&
        std::find(wanted.begin(), wanted.end(), tagged.tags[i]) != wanted.end()) {
      eligible.push_back(i);
    }
  }
  if (eligible.empty()) {
    throw Error(ErrorCode::kNoEligibleToken,
                "no token of the requested category in '" +
                    std::string(caption) + "'");
  }
  const std::size_t index = eligible[rng.UniformIndex(eligible.size())];
  const std::string& original = tokens[index].surface;
  const GrammCategory tag = tagged.tags[index];

  UnmaskRequest request;
  request.masked_text =
      Detokenize(tokens, {{index, {std::string(kMaskToken), 1}}});
  request.target_category = tag;
  request.top_k = top_k;
  const UnmaskResponse response = provider.Unmask(request);

  const UnmaskCandidate* chosen = nullptr;
  for (const auto& candidate : response.candidates) {
    const std::string token = Trim(candidate.token);
    if (token.empty() || token.find(kMaskToken) != std::string::npos) continue;
    if (!EqualsIgnoreCase(token, original)) {
      chosen = &candidate;
      break;
    }
  }
  if (chosen == nullptr) {
    throw Error(ErrorCode::kNoDistinctCandidate,
                "every provider candidate equals '" + original + "'");
  }
  const std::string surface = CopyLeadingCase(Trim(chosen->token), original);

  RoundOutput out;
  out.caption = Detokenize(tokens, {{index, {surface, 1}}});
  RoundTrace& trace = out.trace;
  trace.generator_used = RoundGenerator::kLlm;
  trace.comp_type_effective = CompTypeForGramm(tag);
  trace.category = std::string(GrammCategoryName(tag));
  trace.token_start = index;
  trace.token_len = 1;
  trace.original_surface = original;
  trace.replacement = surface;
  trace.provider_latency_ms = response.latency_ms;
  return out;
}

namespace {

const Tagger& TaggerOf(const AugmentDeps& deps, HeuristicTagger& local) {
  return deps.tagger != nullptr ? *deps.tagger : local;
}

UnmaskProvider& ProviderOf(const AugmentDeps& deps) {
  if (deps.provider == nullptr) {
    throw Error(ErrorCode::kInvalidArgument,
                "llm generation requires an unmasking provider");
  }
  return *deps.provider;
}

bool IsRoundMiss(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kNoReplacementCandidate:
    case ErrorCode::kNoEligibleToken:
    case ErrorCode::kNoDistinctCandidate:
    case ErrorCode::kRoundFailed:
      return true;
    default:
      return false;
  }
}

}  // namespace

RoundOutput MixedAugmentOnce(std::string_view caption, const AugConfig& cfg,
                             const AugmentDeps& deps, Rng& rng) {
  HeuristicTagger local(*deps.lexicon);
  const Tagger& tagger = TaggerOf(deps, local);
  const bool rule_first = rng.UniformReal() < cfg.mix_probability;
  if (rule_first) {
    try {
      return RuleAugmentOnce(caption, cfg.types, *deps.lexicon, rng,
                             cfg.action_list);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoReplacementCandidate) throw;
    }
  }
  try {
    RoundOutput out = LlmAugmentOnce(caption, cfg.types, tagger,
                                     ProviderOf(deps), rng, cfg.top_k);
    if (rule_first) out.trace.generator_used = RoundGenerator::kLlmFallback;
    return out;
  } catch (const ProviderError&) {
    throw;
  } catch (const Error& e) {
    if (!IsRoundMiss(e)) throw;
    throw Error(ErrorCode::kRoundFailed,
                std::string(rule_first ? "rule and llm fallback" : "llm") +
                    " found no edit: " + e.what());
  }
}

namespace {

AugResult RunRounds(std::string_view caption, std::string_view key,
                    const AugConfig& cfg, const AugmentDeps& deps) {
  cfg.Validate();
  if (caption.empty()) {
    throw Error(ErrorCode::kEmptyCaption, "cannot augment an empty caption");
  }
  HeuristicTagger local(*deps.lexicon);
  const Tagger& tagger = TaggerOf(deps, local);
  AugmentDeps resolved = deps;
  resolved.tagger = &tagger;

  AugResult result;
  std::string current(caption);
  std::string last_failure;
  for (int round = 1; round <= cfg.rounds; ++round) {
    Rng rng(DeriveSeed(cfg.seed, key, static_cast<std::uint64_t>(round)));
    RoundOutput out;
    try {
      switch (cfg.generator) {
        case GeneratorKind::kRule:
          out = RuleAugmentOnce(current, cfg.types, *deps.lexicon, rng,
                                cfg.action_list);
          break;
        case GeneratorKind::kLlm:
          out = LlmAugmentOnce(current, cfg.types, tagger, ProviderOf(deps),
                               rng, cfg.top_k);
          break;
        case GeneratorKind::kMixed:
          out = MixedAugmentOnce(current, cfg, resolved, rng);
          break;
      }
    } catch (const ProviderError&) {
      throw;
    } catch (const Error& e) {
      if (!IsRoundMiss(e)) throw;
      last_failure = e.what();
      continue;
    }
    if (out.caption == caption) {
      last_failure = "round " + std::to_string(round) +
                     " restored the original caption";
      continue;
    }
    out.trace.round_index = round;
    current = std::move(out.caption);
    result.trace.push_back(std::move(out.trace));
  }
  if (result.trace.empty()) {
    throw Error(ErrorCode::kAllRoundsFailed,
                "no round produced a negative for '" + std::string(caption) +
                    "' (last: " + last_failure + ")");
  }
  result.negative_caption = std::move(current);
  return result;
}

}  // namespace

AugResult GenerateNegative(std::string_view caption, std::string_view sample_id,
                           const AugConfig& cfg, const AugmentDeps& deps) {
  return RunRounds(caption, sample_id, cfg, deps);
}

AugResult BuildTypedNegative(std::string_view caption,
                             std::string_view sample_id, CompType type,
                             const AugConfig& cfg, const AugmentDeps& deps) {
  AugConfig typed = cfg;
  typed.types = std::vector<CompType>{type};
  const std::string key =
      std::string(sample_id) + "|" + std::string(CompTypeName(type));
  return RunRounds(caption, key, typed, deps);
}

std::optional<std::string> ReplayTrace(std::string_view caption,
                                       const std::vector<RoundTrace>& trace,
                                       std::string* error) {
  auto fail = [&](int round, const std::string& why) {
    if (error != nullptr) {
      *error = "round " + std::to_string(round) + ": " + why;
    }
    return std::nullopt;
  };
  std::string current(caption);
  int previous_index = 0;
  for (const RoundTrace& t : trace) {
    if (t.round_index <= previous_index) {
      return fail(t.round_index, "round indices not increasing");
    }
    previous_index = t.round_index;
    const TokenSeq tokens = Tokenize(current);
    if (t.token_len == 0 || t.token_start >= tokens.size() ||
        t.token_len > tokens.size() - t.token_start) {
      return fail(t.round_index, "span outside the caption");
    }
    if (SpanText(current, tokens, t.token_start, t.token_len) !=
        t.original_surface) {
      return fail(t.round_index, "span text differs from '" +
                                     t.original_surface + "'");
    }
    if (EqualsIgnoreCase(t.replacement, t.original_surface)) {
      return fail(t.round_index, "replacement equals the original span");
    }
    current = Detokenize(tokens, {{t.token_start, {t.replacement, t.token_len}}});
  }
  return current;
}

}  // namespace navero
