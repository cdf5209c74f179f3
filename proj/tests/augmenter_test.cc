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

#include <functional>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "navero/error.h"
#include "navero/text_core.h"
#include "test_support.h"

namespace navero {
namespace {

using ::navero::testing::CheckAugmentation;
using ::navero::testing::RecordingProvider;

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::kIo;
}

class ThrowingProvider final : public UnmaskProvider {
 public:
  UnmaskResponse Unmask(const UnmaskRequest&) override {
    throw ProviderError("down", 3);
  }
};

class EchoProvider final : public UnmaskProvider {
 public:
  UnmaskResponse Unmask(const UnmaskRequest&) override {
    UnmaskResponse r;
    r.candidates = {{"Talking", 0.9}, {"  ", 0.5}, {"[MASK]", 0.4}};
    return r;
  }
};

class MockTableAugmenterTest : public ::testing::Test {
 protected:
  void SetUp() override {
    mock_.LoadTable(testing::FixturePath("mock_table.jsonl"));
    deps_.provider = &mock_;
  }
  MockUnmaskProvider mock_;
  AugmentDeps deps_;
};

AugConfig Config(GeneratorKind generator, int rounds, std::uint64_t seed) {
  AugConfig cfg;
  cfg.generator = generator;
  cfg.rounds = rounds;
  cfg.seed = seed;
  return cfg;
}

TEST(AugConfigTest, Validate) {
  AugConfig cfg;
  EXPECT_NO_THROW(cfg.Validate());
  cfg.rounds = 0;
  EXPECT_EQ(CodeOf([&] { cfg.Validate(); }), ErrorCode::kInvalidArgument);
  cfg = AugConfig();
  cfg.mix_probability = 1.5;
  EXPECT_EQ(CodeOf([&] { cfg.Validate(); }), ErrorCode::kInvalidArgument);
  cfg = AugConfig();
  cfg.top_k = 0;
  EXPECT_EQ(CodeOf([&] { cfg.Validate(); }), ErrorCode::kInvalidArgument);
  cfg = AugConfig();
  cfg.types = std::vector<CompType>{};
  EXPECT_EQ(CodeOf([&] { cfg.Validate(); }), ErrorCode::kInvalidArgument);
}

TEST(CategoriesForTest, UnionInTypeOrder) {
  EXPECT_EQ(RuleCategoriesFor(std::nullopt, ActionList::kAugmented),
            (std::vector<CategoryId>{CategoryId::kAction, CategoryId::kColor,
                                     CategoryId::kMaterial, CategoryId::kState,
                                     CategoryId::kSize, CategoryId::kRelation,
                                     CategoryId::kNoun}));
  EXPECT_EQ(RuleCategoriesFor(std::vector<CompType>{CompType::kObject,
                                                    CompType::kAction},
                              ActionList::kOld),
            (std::vector<CategoryId>{CategoryId::kActionOld, CategoryId::kNoun}));
  EXPECT_EQ(LlmCategoriesFor(std::vector<CompType>{CompType::kRelation}),
            std::vector<GrammCategory>{GrammCategory::kAdp});
  EXPECT_EQ(LlmCategoriesFor(std::nullopt).size(), 4u);
}

TEST(RuleAugmentTest, ReplacesOneAttribute) {
  Rng rng(0);
  const auto out =
      RuleAugmentOnce("man wearing white shoe",
                      std::vector<CompType>{CompType::kAttribute},
                      Lexicon::Builtin(), rng);
  const RoundTrace& t = out.trace;
  EXPECT_EQ(t.generator_used, RoundGenerator::kRule);
  EXPECT_EQ(t.comp_type_effective, CompType::kAttribute);
  EXPECT_EQ(t.token_start, 2u);
  EXPECT_EQ(t.original_surface, "white");
  ASSERT_TRUE(t.replacement_lemma.has_value());
  EXPECT_NE(*t.replacement_lemma, "white");
  EXPECT_EQ(out.caption, "man wearing " + t.replacement + " shoe");
}

TEST(RuleAugmentTest, KeepsInflectionAndCase) {
  Rng rng(4);
  const auto out = RuleAugmentOnce("Running dogs",
                                   std::vector<CompType>{CompType::kAction},
                                   Lexicon::Builtin(), rng);
  EXPECT_EQ(out.trace.original_surface, "Running");
  ASSERT_TRUE(out.trace.replacement_lemma.has_value());
  EXPECT_EQ(out.trace.replacement,
            CopyLeadingCase(Inflect(*out.trace.replacement_lemma,
                                    Inflection::kProgressive),
                            "Running"));
}

TEST(RuleAugmentTest, MultiWordSpan) {
  const Lexicon lex = Lexicon::Parse("[relation]\nin front of\nbehind\n", "t");
  Rng rng(1);
  const auto out = RuleAugmentOnce("a car in front of a house",
                                   std::nullopt, lex, rng);
  EXPECT_EQ(out.caption, "a car behind a house");
  EXPECT_EQ(out.trace.token_len, 3u);
  EXPECT_EQ(out.trace.original_surface, "in front of");
}

TEST(RuleAugmentTest, SkipsCategoriesWithoutAlternative) {
  const Lexicon lex = Lexicon::Parse("[noun]\ncar\n[color]\nred\nblue\n", "t");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    EXPECT_EQ(RuleAugmentOnce("a red car", std::nullopt, lex, rng).caption,
              "a blue car");
  }
  Rng rng(0);
  EXPECT_EQ(CodeOf([&] { RuleAugmentOnce("a car", std::nullopt, lex, rng); }),
            ErrorCode::kNoReplacementCandidate);
}

TEST(RuleAugmentTest, Failures) {
  Rng rng(0);
  EXPECT_EQ(CodeOf([&] {
              RuleAugmentOnce("so it goes", std::nullopt, Lexicon::Builtin(), rng);
            }),
            ErrorCode::kNoReplacementCandidate);
  EXPECT_EQ(CodeOf([&] {
              RuleAugmentOnce("", std::nullopt, Lexicon::Builtin(), rng);
            }),
            ErrorCode::kEmptyCaption);
}

TEST(RuleAugmentTest, UniformOverMatches) {
  std::vector<int> counts(4, 0);
  for (std::uint64_t seed = 0; seed < 4000; ++seed) {
    Rng rng(seed);
    const auto out = RuleAugmentOnce("a red car near a blue house",
                                     std::nullopt, Lexicon::Builtin(), rng);
    const std::size_t pos = out.trace.token_start;
    ASSERT_TRUE(pos == 1 || pos == 2 || pos == 3 || pos == 5 || pos == 6)
        << pos;
    const int slot = pos == 1 ? 0 : pos == 2 ? 1 : pos == 5 ? 2 : 3;
    if (pos != 3) ++counts[slot];
  }
  // Five matches (red, car, near, blue, house); four are counted here.
  for (int c : counts) EXPECT_NEAR(c, 800, 90);
}

TEST_F(MockTableAugmenterTest, LlmUsesTableCandidate) {
  HeuristicTagger tagger;
  Rng rng(0);
  const auto out = LlmAugmentOnce("a man and a woman are talking at a bus stop",
                                  std::vector<CompType>{CompType::kAction},
                                  tagger, mock_, rng);
  EXPECT_EQ(out.caption, "a man and a woman are pictured at a bus stop");
  EXPECT_EQ(out.trace.generator_used, RoundGenerator::kLlm);
  EXPECT_EQ(out.trace.category, "VERB");
  EXPECT_EQ(out.trace.comp_type_effective, CompType::kAction);
  EXPECT_FALSE(out.trace.replacement_lemma.has_value());
  EXPECT_FALSE(out.trace.provider_latency_ms.has_value());
}

TEST(LlmAugmentTest, SkipsCandidatesEqualToOriginal) {
  HeuristicTagger tagger;
  MockUnmaskProvider mock;
  mock.Add("The dog [MASK] the mat", GrammCategory::kAdp,
           {{"ON", 0.9}, {" under ", 0.1}});
  Rng rng(0);
  const auto out = LlmAugmentOnce("The dog on the mat",
                                  std::vector<CompType>{CompType::kRelation},
                                  tagger, mock, rng);
  EXPECT_EQ(out.caption, "The dog under the mat");
  EXPECT_EQ(out.trace.replacement, "under");
}

TEST(LlmAugmentTest, Failures) {
  HeuristicTagger tagger;
  EchoProvider echo;
  Rng rng(0);
  EXPECT_EQ(CodeOf([&] {
              LlmAugmentOnce("they are talking",
                             std::vector<CompType>{CompType::kAction}, tagger,
                             echo, rng);
            }),
            ErrorCode::kNoDistinctCandidate);
  EXPECT_EQ(CodeOf([&] {
              LlmAugmentOnce("it is", std::vector<CompType>{CompType::kAttribute},
                             tagger, echo, rng);
            }),
            ErrorCode::kNoEligibleToken);
  ThrowingProvider down;
  try {
    LlmAugmentOnce("a dog runs", std::nullopt, tagger, down, rng);
    FAIL();
  } catch (const ProviderError& e) {
    EXPECT_EQ(e.attempts(), 3);
  }
}

TEST_F(MockTableAugmenterTest, TypedPaperExamples) {
  AugConfig rule = Config(GeneratorKind::kRule, 1, 0);
  EXPECT_EQ(BuildTypedNegative("man wearing white shoe", "white-shoe",
                               CompType::kAttribute, rule, deps_)
                .negative_caption,
            "man wearing beige shoe");
  AugConfig llm = Config(GeneratorKind::kLlm, 1, 0);
  EXPECT_EQ(BuildTypedNegative("a man and a woman are talking at a bus stop",
                               "bus-stop", CompType::kAction, llm, deps_)
                .negative_caption,
            "a man and a woman are pictured at a bus stop");
  EXPECT_EQ(BuildTypedNegative("people are singing at the beach", "beach",
                               CompType::kRelation, llm, deps_)
                .negative_caption,
            "people are singing made of the beach");
}

TEST_F(MockTableAugmenterTest, MixedFallsBackToLlmOnLexiconMiss) {
  AugConfig cfg = Config(GeneratorKind::kMixed, 1, 0);
  cfg.mix_probability = 1.0;
  Rng rng(3);
  const auto out = MixedAugmentOnce("a pianist smiles", cfg, deps_, rng);
  EXPECT_EQ(out.trace.generator_used, RoundGenerator::kLlmFallback);
  EXPECT_NE(out.caption, "a pianist smiles");
}

TEST_F(MockTableAugmenterTest, MixedHonorsExtremeProbabilities) {
  AugConfig cfg = Config(GeneratorKind::kMixed, 1, 0);
  cfg.mix_probability = 1.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng(s);
    EXPECT_EQ(MixedAugmentOnce("a red car", cfg, deps_, rng).trace.generator_used,
              RoundGenerator::kRule);
  }
  cfg.mix_probability = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng(s);
    EXPECT_EQ(MixedAugmentOnce("a red car", cfg, deps_, rng).trace.generator_used,
              RoundGenerator::kLlm);
  }
}

TEST(MixedAugmentTest, LlmMissIsRoundFailed) {
  AugmentDeps deps;
  EchoProvider echo;
  deps.provider = &echo;
  AugConfig cfg = Config(GeneratorKind::kMixed, 1, 0);
  cfg.mix_probability = 0.0;
  cfg.types = std::vector<CompType>{CompType::kAction};
  Rng rng(0);
  EXPECT_EQ(CodeOf([&] { MixedAugmentOnce("they are talking", cfg, deps, rng); }),
            ErrorCode::kRoundFailed);
}

TEST(MixedAugmentTest, ProviderErrorPropagates) {
  AugmentDeps deps;
  ThrowingProvider down;
  deps.provider = &down;
  AugConfig cfg = Config(GeneratorKind::kMixed, 3, 0);
  cfg.mix_probability = 0.0;
  EXPECT_THROW(GenerateNegative("a dog runs", "x", cfg, deps), ProviderError);
}

TEST(GenerateNegativeTest, NeedsProviderForLlm) {
  AugmentDeps deps;
  EXPECT_EQ(CodeOf([&] {
              GenerateNegative("a dog", "x", Config(GeneratorKind::kLlm, 1, 0),
                               deps);
            }),
            ErrorCode::kInvalidArgument);
}

TEST(GenerateNegativeTest, AllRoundsFailed) {
  AugmentDeps deps;
  EXPECT_EQ(CodeOf([&] {
              GenerateNegative("so it goes", "x",
                               Config(GeneratorKind::kRule, 5, 0), deps);
            }),
            ErrorCode::kAllRoundsFailed);
}

TEST(GenerateNegativeTest, RoundsUseIndependentSubstreams) {
  AugmentDeps deps;
  const AugConfig cfg = Config(GeneratorKind::kRule, 1, 9);
  const auto one = GenerateNegative("a red car near a blue house", "id", cfg, deps);
  Rng rng(DeriveSeed(9, "id", 1));
  const auto direct = RuleAugmentOnce("a red car near a blue house", std::nullopt,
                                      Lexicon::Builtin(), rng);
  EXPECT_EQ(one.negative_caption, direct.caption);
  EXPECT_EQ(one.trace.at(0).round_index, 1);
}

TEST(GenerateNegativeTest, TypedUsesTypeKey) {
  AugmentDeps deps;
  const AugConfig cfg = Config(GeneratorKind::kRule, 1, 2);
  const auto typed = BuildTypedNegative("a red car near a blue house", "id",
                                        CompType::kObject, cfg, deps);
  Rng rng(DeriveSeed(2, "id|object", 1));
  const auto direct = RuleAugmentOnce("a red car near a blue house",
                                      std::vector<CompType>{CompType::kObject},
                                      Lexicon::Builtin(), rng);
  EXPECT_EQ(typed.negative_caption, direct.caption);
}

TEST(GenerateNegativeTest, MultiRoundTraceReplays) {
  AugmentDeps deps;
  MockUnmaskProvider mock;
  RecordingProvider recording(mock);
  deps.provider = &recording;
  const std::string caption =
      "a man in a red shirt is riding a horse next to a wooden fence";
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto r = GenerateNegative(caption, "multi",
                                    Config(GeneratorKind::kMixed, 5, seed), deps);
    EXPECT_LE(r.trace.size(), 5u);
    EXPECT_EQ(CheckAugmentation(caption, r, Lexicon::Builtin(), &recording), "");
    std::string error;
    const auto replay = ReplayTrace(caption, r.trace, &error);
    ASSERT_TRUE(replay.has_value()) << error;
    EXPECT_EQ(*replay, r.negative_caption);
  }
}

TEST(GenerateNegativeTest, Deterministic) {
  AugmentDeps deps;
  MockUnmaskProvider mock;
  deps.provider = &mock;
  const AugConfig cfg = Config(GeneratorKind::kMixed, 5, 17);
  const std::string c = "two dogs are playing with a small ball on the grass";
  EXPECT_EQ(GenerateNegative(c, "k", cfg, deps), GenerateNegative(c, "k", cfg, deps));
  std::set<std::string> outputs;
  for (std::uint64_t s = 0; s < 10; ++s) {
    outputs.insert(
        GenerateNegative(c, "k", Config(GeneratorKind::kMixed, 5, s), deps)
            .negative_caption);
  }
  EXPECT_GT(outputs.size(), 5u);
}

TEST(ReplayTraceTest, DetectsTampering) {
  AugmentDeps deps;
  const std::string caption = "a red car near a blue house";
  const auto r = GenerateNegative(caption, "t", Config(GeneratorKind::kRule, 2, 1),
                                  deps);
  std::string error;
  auto bad = r.trace;
  bad[0].original_surface = "zebra";
  EXPECT_FALSE(ReplayTrace(caption, bad, &error).has_value());
  EXPECT_FALSE(error.empty());
  bad = r.trace;
  bad[0].token_start = 99;
  EXPECT_FALSE(ReplayTrace(caption, bad, &error).has_value());
  bad = r.trace;
  bad[0].replacement = bad[0].original_surface;
  EXPECT_FALSE(ReplayTrace(caption, bad, &error).has_value());
}

// Property sweep over the fixture corpus.
TEST(AugmenterPropertyTest, CorpusInvariants) {
  const auto& corpus = testing::Corpus();
  MockUnmaskProvider mock;
  RecordingProvider recording(mock);
  AugmentDeps deps;
  deps.provider = &recording;
  int checked = 0;
  for (std::size_t i = 0; i < corpus.size(); i += 2) {
    const auto& pair = corpus[i];
    const GeneratorKind gen = static_cast<GeneratorKind>(i % 3);
    const AugConfig cfg = Config(gen, 1 + static_cast<int>(i % 5), i);
    try {
      const auto r = GenerateNegative(pair.caption, pair.id, cfg, deps);
      ASSERT_EQ(CheckAugmentation(pair.caption, r, Lexicon::Builtin(), &recording), "")
          << pair.caption;
      ++checked;
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::kAllRoundsFailed) << e.what();
    }
    const CompType type = kAllCompTypes[i % 4];
    try {
      const auto r = BuildTypedNegative(pair.caption, pair.id, type, cfg, deps);
      ASSERT_EQ(CheckAugmentation(pair.caption, r, Lexicon::Builtin(), &recording,
                                  type),
                "")
          << pair.caption;
      ++checked;
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::kAllRoundsFailed) << e.what();
    }
  }
  EXPECT_GT(checked, 400);
}

}  // namespace
}  // namespace navero
