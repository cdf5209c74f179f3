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

#include "navero/tagger.h"

#include <cctype>
#include <string>
#include <unordered_set>

namespace navero {
namespace {

using WordSet = std::unordered_set<std::string_view>;

const WordSet kAdpositions = {
    "about",   "above",  "across",  "after",   "against", "along",
    "amid",    "among",  "around",  "at",      "atop",    "before",
    "behind",  "below",  "beneath", "beside",  "besides", "between",
    "beyond",  "by",     "despite", "down",    "during",  "except",
    "for",     "from",   "in",      "inside",  "into",    "near",
    "of",      "off",    "on",      "onto",    "opposite", "out",
    "outside", "over",   "past",    "per",     "through", "throughout",
    "toward",  "towards", "under",  "underneath", "until", "up",
    "upon",    "via",    "with",    "within",  "without", "to"};

// Articles, demonstratives, possessives and quantifiers: they open a noun
// phrase.
const WordSet kDeterminers = {
    "a",     "an",    "the",   "this",  "that",    "these", "those",
    "my",    "your",  "his",   "her",   "its",     "our",   "their",
    "some",  "any",   "each",  "every", "another", "no",    "either",
    "neither", "both", "all",  "many",  "much",    "most",  "several"};

const WordSet kNumbers = {
    "one",  "two",   "three", "four",  "five",   "six",     "seven",
    "eight", "nine", "ten",   "eleven", "twelve", "twenty", "hundred",
    "dozen"};

const WordSet kSubjectPronouns = {
    "i",  "you",  "he",      "she",      "it",     "we",      "they",
    "someone", "somebody", "everyone", "everybody", "nobody", "anyone",
    "who"};

const WordSet kOtherClosed = {
    // pronouns
    "me", "him", "us", "them", "himself", "herself", "itself", "themselves",
    "myself", "yourself", "something", "anything", "everything", "nothing",
    "whom", "whose", "which", "what", "where", "when", "why", "how",
    // conjunctions
    "and", "or", "but", "nor", "so", "yet", "because", "while", "if", "than",
    "as", "whether", "though", "although",
    // auxiliaries and modals
    "is", "are", "was", "were", "be", "been", "being", "am", "do", "does",
    "did", "can", "could", "will", "would", "shall", "should", "may",
    "might", "must", "'s", "'re", "'m", "n't", "not",
    // adverbs
    "very", "too", "also", "just", "only", "really", "then", "now", "there",
    "here", "together", "away", "again", "still", "always", "never",
    "almost", "quite", "even", "ever", "back", "around", "then", "later",
    "soon", "already", "instead", "else", "how", "well", "about"};

const WordSet kBeAux = {"is", "are", "was", "were", "be", "been", "being",
                        "am", "'s", "'re", "'m", "looks", "look", "seems",
                        "becomes", "gets", "get"};

const WordSet kHave = {"have", "has", "had", "having"};

const WordSet kCommonNouns = {
    "man", "men", "woman", "women", "person", "people", "child", "children",
    "kid", "kids", "guy", "guys", "lady", "ladies", "baby", "babies", "player",
    "group", "video", "clip", "game", "song", "music", "food", "bus",
    "street", "road", "city", "field", "stage", "cake", "table", "chair",
    "ball", "bike", "bicycle", "boat", "book", "phone", "computer", "screen",
    "show", "news", "movie", "scene", "character", "cat", "bird", "tree",
    "park", "mountain", "snow", "sky", "sun", "shirt", "hat", "jacket", "bag",
    "box", "cup", "bottle", "plate", "bowl", "hand", "head", "face", "arm",
    "leg", "floor", "ground", "door", "track", "race", "court", "pool",
    "woods", "lake", "sea", "desk", "recipe", "dish", "meat", "chicken",
    "rice", "bread", "pan", "pot", "oven", "stove", "wheel", "hill", "rock",
    "audience", "interview", "host", "reporter", "student", "class",
    "mother", "father", "son", "friend", "couple", "band", "drum", "singer",
    "chef", "team", "makeup", "pasta", "weather", "concert", "toy", "board",
    "mat", "highway", "flour", "dirt", "picture", "front", "top", "side",
    "middle", "way", "thing", "things", "time", "day", "world", "water",
    "body", "website", "product", "car", "truck", "road", "building",
    "office", "player", "fans", "crowd", "speech", "president", "lesson"};

const WordSet kPluralNouns = {"men",      "women", "people", "children",
                              "kids",     "guys",  "ladies", "babies",
                              "fans",     "things"};

const WordSet kCommonVerbs = {
    "talk", "sing", "play", "dance", "speak", "cook", "eat", "drink", "sit",
    "stand", "look", "watch", "make", "show", "give", "take", "put", "hold",
    "go", "come", "get", "see", "say", "tell", "use", "try", "explain",
    "discuss", "perform", "prepare", "drive", "fight", "shoot", "hit",
    "read", "paint", "laugh", "smile", "cry", "sleep", "carry", "describe",
    "demonstrate", "present", "sell", "buy", "clean", "chop", "fry", "bake",
    "boil", "film", "record", "ask", "answer", "teach", "learn", "work",
    "help", "build", "fix", "score", "pass", "win", "lose", "lie", "lay",
    "pet", "chase", "fall", "crash", "celebrate", "interview", "slice",
    "park", "sit", "zoom", "apply", "brush", "race", "bring", "lead",
    "leave", "let", "begin", "keep", "hang", "shop", "travel", "visit",
    "wait", "want", "need", "like", "love", "try", "put", "set", "serve",
    "practice", "exercise", "fold", "talk", "walk", "run", "lie"};

const WordSet kCommonAdjectives = {
    "beautiful", "cute", "pretty", "happy", "nice", "funny", "hot", "cold",
    "warm", "cool", "busy", "crowded", "full", "dark", "bright", "quiet",
    "loud", "fast", "slow", "strong", "weak", "rich", "poor", "famous",
    "popular", "real", "live", "local", "ugly", "angry", "scary",
    "delicious", "fancy", "animated", "male", "female", "professional",
    "various", "asian", "african", "american", "indian", "chinese",
    "japanese", "british", "french", "english", "blonde", "shiny", "tasty",
    "fluffy", "messy", "spicy", "huge", "clear", "deep", "easy", "hard",
    "free", "open", "empty", "dead", "alive", "sweet", "sour", "bitter",
    "silly", "crazy", "excited", "nervous", "serious", "special", "entire",
    "whole", "main", "top", "upper", "lower", "simple", "traditional"};

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

bool IsDigitWord(std::string_view w) {
  for (char c : w) {
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '.' && c != ',') {
      return false;
    }
  }
  return !w.empty();
}

enum class Closed { kNone, kAdp, kDet, kNum, kSubject, kOther, kHave, kTo };

struct Features {
  std::string lower;
  bool word = false;
  Closed closed = Closed::kNone;
  bool noun = false;
  bool adj = false;
  bool color = false;
  bool material_only = false;  // attribute evidence comes only from materials
  bool plural = false;
  bool verb = false;
  bool verb_inflected = false;  // an inflected form of a verb lemma
  bool ing = false;
  bool past = false;
  bool third_person = false;
};

class FeatureExtractor {
 public:
  explicit FeatureExtractor(const Lexicon& lexicon) : lexicon_(lexicon) {}

  Features Extract(std::string_view surface) const {
    Features f;
    f.lower = ToLower(surface);
    f.word = IsWordToken(surface);
    if (!f.word) return f;
    const std::string_view w = f.lower;
    if (IsDigitWord(w) || kNumbers.count(w)) {
      f.closed = Closed::kNum;
    } else if (w == "to") {
      f.closed = Closed::kTo;
    } else if (kHave.count(w)) {
      f.closed = Closed::kHave;
    } else if (kDeterminers.count(w)) {
      f.closed = Closed::kDet;
    } else if (kSubjectPronouns.count(w)) {
      f.closed = Closed::kSubject;
    } else if (kAdpositions.count(w)) {
      f.closed = Closed::kAdp;
    } else if (kOtherClosed.count(w)) {
      f.closed = Closed::kOther;
    }
    if (f.closed != Closed::kNone) return f;

    f.ing = EndsWith(w, "ing") && w.size() >= 5;
    for (CategoryId c : {CategoryId::kColor, CategoryId::kSize,
                         CategoryId::kState, CategoryId::kMaterial}) {
      if (lexicon_.Contains(c, w)) {
        f.adj = true;
        if (c == CategoryId::kColor) f.color = true;
      }
    }
    f.material_only = f.adj && !f.color &&
                      !lexicon_.Contains(CategoryId::kSize, w) &&
                      !lexicon_.Contains(CategoryId::kState, w);
    if (kCommonAdjectives.count(w)) {
      f.adj = true;
      f.material_only = false;
    }
    f.plural = kPluralNouns.count(w) > 0;

    const std::vector<std::string> lemmas = LemmaCandidates(w);
    for (const auto& lemma : lemmas) {
      const bool is_noun = lexicon_.Contains(CategoryId::kNoun, lemma) ||
                           kCommonNouns.count(lemma) > 0;
      const bool is_verb = lexicon_.Contains(CategoryId::kAction, lemma) ||
                           kCommonVerbs.count(lemma) > 0;
      if (lemma == w) {
        f.noun |= is_noun;
        f.verb |= is_verb;
        continue;
      }
      // Only plural -s forms count as noun evidence.
      if (is_noun && InflectionOf(lemma, w) == Inflection::kThirdPerson) {
        f.noun = true;
        f.plural = true;
      }
      if (is_verb) {
        if (auto inflection = InflectionOf(lemma, w)) {
          f.verb = true;
          f.verb_inflected = true;
          f.past |= *inflection == Inflection::kPast;
          f.third_person |= *inflection == Inflection::kThirdPerson;
        }
      }
    }
    if (!f.verb_inflected) {
      f.past = EndsWith(w, "ed") && w.size() >= 4;
    }
    return f;
  }

 private:
  const Lexicon& lexicon_;
};

bool AdjectiveSuffix(std::string_view w) {
  if (w.size() < 5) return false;
  for (std::string_view suffix :
       {"ful", "ous", "ive", "able", "ible", "ical", "less", "ish", "ese"}) {
    if (EndsWith(w, suffix)) return true;
  }
  return false;
}

// Whether `f` plausibly heads or continues a noun phrase.
bool LooksNominal(const Features& f) {
  if (!f.word || f.closed != Closed::kNone) return false;
  if (f.ing && !f.noun) return false;
  if (f.verb_inflected && !f.noun) return false;
  if (EndsWith(f.lower, "ly")) return false;
  return f.noun || f.adj || !f.verb;
}

}  // namespace

HeuristicTagger::HeuristicTagger(const Lexicon& lexicon) : lexicon_(lexicon) {}

TaggedCaption HeuristicTagger::Tag(const TokenSeq& tokens) const {
  const FeatureExtractor extractor(lexicon_);
  std::vector<Features> features;
  features.reserve(tokens.size());
  for (const auto& tok : tokens.tokens) {
    features.push_back(extractor.Extract(tok.surface));
  }

  TaggedCaption out;
  out.tokens = tokens;
  out.tags.assign(tokens.size(), GrammCategory::kOther);

  // np_open: inside a noun phrase opened by a determiner, number or
  // adjective and not yet closed by a verb, adposition or function word.
  bool np_open = false;
  bool after_be = false;
  bool after_subject = false;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Features& f = features[i];
    const Features* next = i + 1 < tokens.size() ? &features[i + 1] : nullptr;
    const bool next_nominal = next != nullptr && LooksNominal(*next);
    const GrammCategory prev =
        i > 0 ? out.tags[i - 1] : GrammCategory::kOther;
    const bool prev_det = i > 0 && features[i - 1].closed == Closed::kDet;
    GrammCategory tag = GrammCategory::kNoun;

    if (!f.word) {
      tag = GrammCategory::kOther;
    } else {
      switch (f.closed) {
        case Closed::kAdp:
          tag = GrammCategory::kAdp;
          break;
        case Closed::kTo:
          // Infinitival "to" before a bare verb; adposition otherwise.
          tag = next != nullptr && next->verb && !next->noun &&
                        !next->verb_inflected
                    ? GrammCategory::kOther
                    : GrammCategory::kAdp;
          break;
        case Closed::kHave:
          tag = next != nullptr && (next->past || next->lower == "been")
                    ? GrammCategory::kOther
                    : GrammCategory::kVerb;
          break;
        case Closed::kDet:
        case Closed::kNum:
        case Closed::kSubject:
        case Closed::kOther:
          tag = GrammCategory::kOther;
          break;
        case Closed::kNone: {
          const bool in_np = np_open || prev_det;
          const bool prev_to =
              i > 0 && features[i - 1].closed == Closed::kTo &&
              out.tags[i - 1] == GrammCategory::kOther;
          if (prev_to && f.verb) {
            tag = GrammCategory::kVerb;
          } else if (f.ing) {
            tag = f.noun && in_np ? GrammCategory::kNoun : GrammCategory::kVerb;
          } else if (f.material_only && !f.noun && !f.verb && !next_nominal) {
            tag = GrammCategory::kNoun;
          } else if (f.adj && (f.color || !f.noun) &&
                     (!f.verb || after_be || (in_np && next_nominal))) {
            tag = GrammCategory::kAdj;
            if (in_np && !next_nominal && f.noun) tag = GrammCategory::kNoun;
          } else if (f.adj && f.noun) {
            tag = GrammCategory::kNoun;
          } else if (f.past && !f.noun) {
            tag = prev_det && next_nominal ? GrammCategory::kAdj
                                           : GrammCategory::kVerb;
          } else if (f.verb && f.noun) {
            // Determiner or an open noun phrase wins over the verb reading,
            // except for an inflected verb right after the phrase head.
            if (prev_det || prev == GrammCategory::kAdj) {
              tag = GrammCategory::kNoun;
            } else if (np_open && prev == GrammCategory::kNoun) {
              tag = f.third_person || f.past || features[i - 1].plural
                        ? GrammCategory::kVerb
                        : GrammCategory::kNoun;
            } else if (prev == GrammCategory::kAdp ||
                       prev == GrammCategory::kVerb) {
              tag = GrammCategory::kNoun;
            } else {
              tag = GrammCategory::kVerb;
            }
          } else if (f.verb) {
            if (prev_det || prev == GrammCategory::kAdj) {
              tag = GrammCategory::kNoun;
            } else if (np_open && prev == GrammCategory::kNoun &&
                       !f.verb_inflected && !features[i - 1].plural) {
              tag = GrammCategory::kNoun;
            } else if (f.adj && after_be) {
              tag = GrammCategory::kAdj;
            } else {
              tag = GrammCategory::kVerb;
            }
          } else if (f.adj) {
            tag = GrammCategory::kAdj;
          } else if (f.noun) {
            tag = GrammCategory::kNoun;
          } else if (EndsWith(f.lower, "ly") && f.lower.size() >= 4) {
            tag = GrammCategory::kOther;
          } else if (AdjectiveSuffix(f.lower)) {
            tag = GrammCategory::kAdj;
          } else if (f.past) {
            tag = GrammCategory::kVerb;
          } else if (after_subject && !in_np) {
            tag = GrammCategory::kVerb;
          } else {
            tag = GrammCategory::kNoun;
          }
          break;
        }
      }
    }
    out.tags[i] = tag;

    // Update phrase state for the next token.
    if (f.closed == Closed::kDet || f.closed == Closed::kNum) {
      np_open = true;
    } else if (tag == GrammCategory::kAdj && np_open) {
      np_open = true;
    } else if (tag == GrammCategory::kNoun) {
      np_open = np_open || prev_det;
    } else {
      np_open = false;
    }
    after_be = f.word && kBeAux.count(f.lower) > 0;
    after_subject = f.closed == Closed::kSubject ||
                    (tag == GrammCategory::kNoun && after_subject) ||
                    (tag == GrammCategory::kNoun && i == 0);
    if (tag == GrammCategory::kNoun && (np_open || i == 0)) {
      after_subject = true;
    }
    if (tag == GrammCategory::kVerb || tag == GrammCategory::kAdp) {
      after_subject = false;
    }
  }
  return out;
}

TaggedCaption Tag(const TokenSeq& tokens) {
  static const HeuristicTagger* tagger = new HeuristicTagger();
  return tagger->Tag(tokens);
}

}  // namespace navero
