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
#include <map>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <gtest/gtest.h>

#include "navero/error.h"
#include "navero/lexicon.h"
#include "navero/rng.h"
#include "test_support.h"

namespace navero {
namespace {

std::vector<std::string> Surfaces(const TokenSeq& seq) {
  std::vector<std::string> out;
  for (const auto& t : seq.tokens) out.push_back(t.surface);
  return out;
}

TEST(TokenizeTest, SplitsWordsAndPunctuation) {
  EXPECT_EQ(Surfaces(Tokenize("A man, in a red-striped shirt, isn't here.")),
            (std::vector<std::string>{"A", "man", ",", "in", "a", "red-striped",
                                      "shirt", ",", "isn't", "here", "."}));
  EXPECT_EQ(Surfaces(Tokenize("costs 3.50 or 1,000 (approx)")),
            (std::vector<std::string>{"costs", "3.50", "or", "1,000", "(",
                                      "approx", ")"}));
  EXPECT_EQ(Surfaces(Tokenize("end. next")),
            (std::vector<std::string>{"end", ".", "next"}));
  EXPECT_EQ(Surfaces(Tokenize("-dash- 'quote'")),
            (std::vector<std::string>{"-", "dash", "-", "'", "quote", "'"}));
  EXPECT_TRUE(Tokenize("   ").empty());
}

TEST(TokenizeTest, RecordsOffsetsAndWhitespace) {
  const TokenSeq seq = Tokenize("  two\tdogs ");
  ASSERT_EQ(seq.size(), 2u);
  EXPECT_EQ(seq[0].start, 2u);
  EXPECT_EQ(seq[0].end, 5u);
  EXPECT_EQ(seq[0].preceding_whitespace, "  ");
  EXPECT_EQ(seq[1].preceding_whitespace, "\t");
  EXPECT_EQ(seq.trailing_whitespace, " ");
}

TEST(TokenizeTest, KeepsNonAsciiInsideWords) {
  EXPECT_EQ(Surfaces(Tokenize("un café crème")),
            (std::vector<std::string>{"un", "café", "crème"}));
}

TEST(DetokenizeTest, RoundTripsRandomText) {
  const std::string alphabet = "ab Z9 ,.'-\t\n()";
  Rng rng(2024);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string text;
    const std::size_t len = rng.UniformIndex(30);
    for (std::size_t i = 0; i < len; ++i) {
      text += alphabet[rng.UniformIndex(alphabet.size())];
    }
    const TokenSeq seq = Tokenize(text);
    ASSERT_EQ(Detokenize(seq), text) << "'" << text << "'";
    for (const auto& t : seq.tokens) {
      ASSERT_EQ(text.substr(t.start, t.end - t.start), t.surface);
    }
  }
}

TEST(DetokenizeTest, AppliesReplacements) {
  const TokenSeq seq = Tokenize("the dog  in front of the car.");
  EXPECT_EQ(Detokenize(seq, {{2, {"behind", 3}}}), "the dog  behind the car.");
  EXPECT_EQ(Detokenize(seq, {{1, {"cat", 1}}, {6, {"bus", 1}}}),
            "the cat  in front of the bus.");
}

TEST(DetokenizeTest, RejectsBadReplacements) {
  const TokenSeq seq = Tokenize("a b c");
  for (const auto& reps : std::vector<std::map<std::size_t, Replacement>>{
           {{2, {"x", 2}}}, {{0, {"x", 2}}, {1, {"y", 1}}}, {{5, {"x", 1}}}}) {
    try {
      Detokenize(seq, reps);
      ADD_FAILURE() << "expected IndexOutOfRange";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kIndexOutOfRange);
    }
  }
}

TEST(IsWordTokenTest, Basics) {
  EXPECT_TRUE(IsWordToken("dog"));
  EXPECT_TRUE(IsWordToken("3.5"));
  EXPECT_FALSE(IsWordToken(","));
  EXPECT_FALSE(IsWordToken(""));
}

// Standard English forms, written out by hand.
const std::vector<std::tuple<std::string, std::string, std::string, std::string>>&
VerbForms() {
  static const auto* forms = new std::vector<
      std::tuple<std::string, std::string, std::string, std::string>>{
      {"run", "runs", "running", "ran"},
      {"ride", "rides", "riding", "rode"},
      {"tie", "ties", "tying", "tied"},
      {"lie", "lies", "lying", "lied"},
      {"stop", "stops", "stopping", "stopped"},
      {"visit", "visits", "visiting", "visited"},
      {"open", "opens", "opening", "opened"},
      {"cry", "cries", "crying", "cried"},
      {"play", "plays", "playing", "played"},
      {"kiss", "kisses", "kissing", "kissed"},
      {"fix", "fixes", "fixing", "fixed"},
      {"go", "goes", "going", "went"},
      {"watch", "watches", "watching", "watched"},
      {"wash", "washes", "washing", "washed"},
      {"sit", "sits", "sitting", "sat"},
      {"swim", "swims", "swimming", "swam"},
      {"hold", "holds", "holding", "held"},
      {"cut", "cuts", "cutting", "cut"},
      {"dance", "dances", "dancing", "danced"},
      {"see", "sees", "seeing", "saw"},
      {"agree", "agrees", "agreeing", "agreed"},
      {"dye", "dyes", "dyeing", "dyed"},
      {"throw", "throws", "throwing", "threw"},
      {"snow", "snows", "snowing", "snowed"},
      {"relax", "relaxes", "relaxing", "relaxed"},
      {"enjoy", "enjoys", "enjoying", "enjoyed"},
      {"ski", "skis", "skiing", "skied"},
      {"echo", "echoes", "echoing", "echoed"},
      {"buzz", "buzzes", "buzzing", "buzzed"},
      {"begin", "begins", "beginning", "began"},
      {"repel", "repels", "repelling", "repelled"},
      {"panic", "panics", "panicking", "panicked"},
      {"travel", "travels", "traveling", "traveled"},
      {"wear", "wears", "wearing", "wore"},
      {"make", "makes", "making", "made"},
      {"climb", "climbs", "climbing", "climbed"},
      {"talk", "talks", "talking", "talked"},
      {"sing", "sings", "singing", "sang"},
      {"spin", "spins", "spinning", "spun"},
      {"shop", "shops", "shopping", "shopped"},
  };
  return *forms;
}

TEST(InflectTest, MatchesHandTable) {
  for (const auto& [lemma, third, progressive, past] : VerbForms()) {
    EXPECT_EQ(Inflect(lemma, Inflection::kPlain), lemma);
    EXPECT_EQ(Inflect(lemma, Inflection::kThirdPerson), third) << lemma;
    EXPECT_EQ(Inflect(lemma, Inflection::kProgressive), progressive) << lemma;
    EXPECT_EQ(Inflect(lemma, Inflection::kPast), past) << lemma;
  }
}

TEST(InflectTest, Plurals) {
  for (const auto& [noun, plural] :
       std::vector<std::pair<std::string, std::string>>{{"car", "cars"},
                                                        {"bus", "buses"},
                                                        {"box", "boxes"},
                                                        {"baby", "babies"},
                                                        {"day", "days"},
                                                        {"church", "churches"}}) {
    EXPECT_EQ(Inflect(noun, Inflection::kThirdPerson), plural);
  }
}

TEST(InflectTest, MultiWordUnchanged) {
  EXPECT_EQ(Inflect("in front of", Inflection::kProgressive), "in front of");
}

TEST(LemmaCandidatesTest, RecoversLemmaOfEveryForm) {
  for (const auto& [lemma, third, progressive, past] : VerbForms()) {
    for (const std::string& form : {third, progressive, past}) {
      const auto candidates = LemmaCandidates(form);
      EXPECT_EQ(candidates.front(), form);
      EXPECT_NE(std::find(candidates.begin(), candidates.end(), lemma),
                candidates.end())
          << form << " -> " << lemma;
    }
  }
}

TEST(LemmaCandidatesTest, BuiltinActionsRoundTrip) {
  for (const auto& lemma : Lexicon::Builtin().Entries(CategoryId::kAction)) {
    if (lemma.find(' ') != std::string::npos) continue;
    for (Inflection inf : {Inflection::kThirdPerson, Inflection::kProgressive,
                           Inflection::kPast}) {
      const std::string form = Inflect(lemma, inf);
      const auto candidates = LemmaCandidates(form);
      EXPECT_NE(std::find(candidates.begin(), candidates.end(), lemma),
                candidates.end())
          << form;
      const auto back = InflectionOf(lemma, form);
      ASSERT_TRUE(back.has_value()) << form;
      EXPECT_EQ(Inflect(lemma, *back), form);
    }
  }
}

TEST(LemmaCandidatesTest, NoDuplicates) {
  for (const char* s : {"running", "cried", "shoes", "held", "seeing"}) {
    auto c = LemmaCandidates(s);
    std::sort(c.begin(), c.end());
    EXPECT_EQ(std::adjacent_find(c.begin(), c.end()), c.end()) << s;
  }
}

TEST(InflectionOfTest, Basics) {
  EXPECT_EQ(InflectionOf("run", "running"), Inflection::kProgressive);
  EXPECT_EQ(InflectionOf("run", "run"), Inflection::kPlain);
  EXPECT_EQ(InflectionOf("hold", "held"), Inflection::kPast);
  EXPECT_EQ(InflectionOf("shoe", "shoes"), Inflection::kThirdPerson);
  EXPECT_FALSE(InflectionOf("run", "walked").has_value());
}

TEST(GuessInflectionTest, Suffixes) {
  EXPECT_EQ(GuessInflection("jumping"), Inflection::kProgressive);
  EXPECT_EQ(GuessInflection("jumped"), Inflection::kPast);
  EXPECT_EQ(GuessInflection("held"), Inflection::kPast);
  EXPECT_EQ(GuessInflection("jumps"), Inflection::kThirdPerson);
  EXPECT_EQ(GuessInflection("jump"), Inflection::kPlain);
}

TEST(InflectLikeTest, FollowsOriginal) {
  EXPECT_EQ(InflectLike("throw", "Running"), "Throwing");
  EXPECT_EQ(InflectLike("beige", "white", std::string_view("white")), "beige");
  EXPECT_EQ(InflectLike("cut", "held", std::string_view("hold")), "cut");
  EXPECT_EQ(InflectLike("car", "shoes", std::string_view("shoe")), "cars");
  EXPECT_EQ(InflectLike("in front of", "On"), "In front of");
  EXPECT_EQ(InflectLike("sing", "rides", std::string_view("ride")), "sings");
}

TEST(CaseHelpersTest, Basics) {
  EXPECT_EQ(ToLower("MiXeD"), "mixed");
  EXPECT_TRUE(EqualsIgnoreCase("Dog", "dOG"));
  EXPECT_FALSE(EqualsIgnoreCase("dog", "dogs"));
  EXPECT_EQ(CopyLeadingCase("cat", "Dog"), "Cat");
  EXPECT_EQ(CopyLeadingCase("cat", "dog"), "cat");
  EXPECT_EQ(CopyLeadingCase("cat", "1dog"), "cat");
}

class PhraseMatchTest : public ::testing::Test {
 protected:
  std::vector<SpanMatch> Match(const std::string& text,
                               std::vector<CategoryId> cats = {
                                   kPrimaryCategories.begin(),
                                   kPrimaryCategories.end()}) {
    return FindPhraseMatches(Tokenize(text), lex_, cats);
  }
  const Lexicon lex_ = Lexicon::Parse(
      "[action]\nrun\nhold\n[color]\nwhite\nlight blue\n[noun]\nfront\nshoe\n"
      "car\n[relation]\nin\nin front of\nof\n[state]\nwhite\n",
      "test");
};

TEST_F(PhraseMatchTest, LongestFirst) {
  const auto m = Match("a car in front of a shoe");
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(m[0], (SpanMatch{CategoryId::kNoun, 1, 1, "car"}));
  EXPECT_EQ(m[1], (SpanMatch{CategoryId::kRelation, 2, 3, "in front of"}));
  EXPECT_EQ(m[2], (SpanMatch{CategoryId::kNoun, 6, 1, "shoe"}));
}

TEST_F(PhraseMatchTest, CaseInsensitiveAndInflected) {
  const auto m = Match("He Runs, holding Shoes");
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(m[0], (SpanMatch{CategoryId::kAction, 1, 1, "run"}));
  EXPECT_EQ(m[1], (SpanMatch{CategoryId::kAction, 3, 1, "hold"}));
  EXPECT_EQ(m[2], (SpanMatch{CategoryId::kNoun, 4, 1, "shoe"}));
}

TEST_F(PhraseMatchTest, FirstRequestedCategoryWins) {
  auto m = Match("white car", {CategoryId::kState, CategoryId::kColor});
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].category, CategoryId::kState);
  m = Match("white car", {CategoryId::kColor, CategoryId::kState});
  EXPECT_EQ(m[0].category, CategoryId::kColor);
}

TEST_F(PhraseMatchTest, PunctuationBreaksPhrases) {
  const auto m = Match("light, blue", {CategoryId::kColor});
  EXPECT_TRUE(m.empty());
  const auto m2 = Match("LIGHT  BLUE", {CategoryId::kColor});
  ASSERT_EQ(m2.size(), 1u);
  EXPECT_EQ(m2[0].token_len, 2u);
}

TEST_F(PhraseMatchTest, CategoryFilter) {
  EXPECT_TRUE(Match("a car", {CategoryId::kColor}).empty());
}

TEST(PhraseMatchBuiltinTest, MatchesArePairwiseDisjointAndOrdered) {
  const Lexicon& lex = Lexicon::Builtin();
  for (const char* text :
       {"a man in front of a white car is holding a wooden guitar",
        "two dogs are running next to the old red house on the beach",
        "man wearing white shoe"}) {
    const TokenSeq seq = Tokenize(text);
    const auto m = FindPhraseMatches(seq, lex, kPrimaryCategories);
    ASSERT_FALSE(m.empty());
    for (std::size_t i = 0; i < m.size(); ++i) {
      EXPECT_LE(m[i].token_start + m[i].token_len, seq.size());
      EXPECT_TRUE(lex.Contains(m[i].category, m[i].matched_lemma));
      if (i > 0) {
        EXPECT_LE(m[i - 1].token_start + m[i - 1].token_len, m[i].token_start);
      }
    }
  }
}

// Brute-force oracle: does tokens[start, start + len) spell an entry of
// `category`, allowing an inflected first word?
bool SpanIsEntry(const TokenSeq& seq, std::size_t start, std::size_t len,
                 const Lexicon& lex, CategoryId category, std::string* lemma) {
  std::string rest;
  for (std::size_t k = start; k < start + len; ++k) {
    if (!IsWordToken(seq[k].surface)) return false;
    if (k > start) rest += " " + ToLower(seq[k].surface);
  }
  for (const auto& head : LemmaCandidates(seq[start].surface)) {
    if (lex.Contains(category, head + rest)) {
      if (lemma) *lemma = head + rest;
      return true;
    }
  }
  return false;
}

TEST(PhraseMatchPropertyTest, SoundAndMaximalOnCorpus) {
  const Lexicon& lex = Lexicon::Builtin();
  for (const auto& pair : testing::Corpus()) {
    const TokenSeq seq = Tokenize(pair.caption);
    const auto matches = FindPhraseMatches(seq, lex, kPrimaryCategories);
    for (const SpanMatch& m : matches) {
      std::string lemma;
      ASSERT_TRUE(SpanIsEntry(seq, m.token_start, m.token_len, lex, m.category,
                              &lemma))
          << pair.caption;
      EXPECT_EQ(lemma, m.matched_lemma);
      // A strictly longer candidate covering m must collide with some other
      // accepted match, or it would have been taken instead.
      for (std::size_t start = 0; start <= m.token_start; ++start) {
        for (std::size_t len = 1;
             len <= lex.max_phrase_words() && start + len <= seq.size(); ++len) {
          const std::size_t end = start + len;
          if (end < m.token_start + m.token_len || len <= m.token_len) continue;
          bool is_candidate = false;
          for (CategoryId c : kPrimaryCategories) {
            is_candidate |= SpanIsEntry(seq, start, len, lex, c, nullptr);
          }
          if (!is_candidate) continue;
          bool collides = false;
          for (const SpanMatch& other : matches) {
            if (&other == &m) continue;
            collides |= other.token_start < end &&
                        start < other.token_start + other.token_len;
          }
          EXPECT_TRUE(collides) << pair.caption << " span " << start << "+" << len;
        }
      }
    }
  }
}

TEST(PhraseMatchPropertyTest, DeterministicAcrossThreads) {
  const auto& corpus = testing::Corpus();
  std::vector<std::vector<SpanMatch>> serial;
  for (const auto& p : corpus) {
    serial.push_back(FindPhraseMatches(Tokenize(p.caption), Lexicon::Builtin(),
                                       kPrimaryCategories));
  }
  std::vector<std::vector<SpanMatch>> parallel(corpus.size());
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      for (std::size_t i = t; i < corpus.size(); i += 4) {
        parallel[i] = FindPhraseMatches(Tokenize(corpus[i].caption),
                                        Lexicon::Builtin(), kPrimaryCategories);
      }
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(serial, parallel);
}

}  // namespace
}  // namespace navero
