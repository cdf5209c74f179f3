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

#ifndef NAVERO_TAGGER_H_
#define NAVERO_TAGGER_H_

#include <vector>

#include "navero/lexicon.h"
#include "navero/text_core.h"
#include "navero/types.h"

namespace navero {

struct TaggedCaption {
  TokenSeq tokens;
  std::vector<GrammCategory> tags;  // one per token
};

// Assigns a GrammCategory to every token. Implementations must be pure and
// thread-safe.
class Tagger {
 public:
  virtual ~Tagger() = default;
  virtual TaggedCaption Tag(const TokenSeq& tokens) const = 0;
};

// Deterministic rule-based tagger.
//
// Closed-class lists decide adpositions, determiners, pronouns, auxiliaries
// and common adverbs. Open-class words are looked up in the lexicon (noun
// list -> NOUN, attribute lists -> ADJ, action list -> VERB) together with
// small built-in vocabularies of frequent caption words; lexicon membership
// takes precedence over suffix rules (-ing, -ed, -ly, adjective suffixes).
// Words that could be several classes are resolved from the previous tag and
// whether the next word looks like a noun. Unknown words default to NOUN.
class HeuristicTagger final : public Tagger {
 public:
  explicit HeuristicTagger(const Lexicon& lexicon = Lexicon::Builtin());

  TaggedCaption Tag(const TokenSeq& tokens) const override;

 private:
  const Lexicon& lexicon_;
};

// Tags with a HeuristicTagger over the builtin lexicon.
TaggedCaption Tag(const TokenSeq& tokens);

}  // namespace navero

#endif  // NAVERO_TAGGER_H_
