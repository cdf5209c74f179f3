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

#include "test_support.h"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "cli.h"
#include "navero/text_core.h"

namespace navero::testing {

std::filesystem::path FixturePath(const std::string& name) {
  return std::filesystem::path(NAVERO_FIXTURE_DIR) / name;
}

std::string ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFileBytes(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  std::random_device rd;
  path_ = std::filesystem::temp_directory_path() /
          ("navero-test-" + std::to_string(rd()) + "-" +
           std::to_string(counter++));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

const std::vector<VideoTextPair>& Corpus() {
  static const auto* corpus =
      new std::vector<VideoTextPair>(ReadPairs(FixturePath("corpus_500.jsonl")));
  return *corpus;
}

UnmaskResponse RecordingProvider::Unmask(const UnmaskRequest& request) {
  UnmaskResponse response = inner_.Unmask(request);
  std::lock_guard<std::mutex> lock(mu_);
  log_.emplace_back(request, response);
  return response;
}

std::vector<std::string> RecordingProvider::CandidatesFor(
    const std::string& masked_text) const {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<std::string> out;
  for (const auto& [request, response] : log_) {
    if (request.masked_text != masked_text) continue;
    for (const auto& c : response.candidates) out.push_back(c.token);
  }
  return out;
}

std::size_t RecordingProvider::calls() const {
  std::lock_guard<std::mutex> lock(mu_);
  return log_.size();
}

std::string CheckAugmentation(const std::string& caption, const AugResult& result,
                              const Lexicon& lexicon,
                              const RecordingProvider* provider,
                              std::optional<CompType> type) {
  if (result.trace.empty()) return "empty trace";
  if (result.negative_caption == caption) return "negative equals caption";
  std::string current = caption;
  int last_index = 0;
  for (const RoundTrace& t : result.trace) {
    const std::string where = "round " + std::to_string(t.round_index) + ": ";
    if (t.round_index <= last_index) return where + "indices not increasing";
    last_index = t.round_index;
    const TokenSeq tokens = Tokenize(current);
    if (t.token_len == 0 || t.token_start + t.token_len > tokens.size()) {
      return where + "span out of range";
    }
    const std::size_t begin = tokens[t.token_start].start;
    const std::size_t end = tokens[t.token_start + t.token_len - 1].end;
    if (current.substr(begin, end - begin) != t.original_surface) {
      return where + "original surface mismatch";
    }
    if (EqualsIgnoreCase(t.replacement, t.original_surface)) {
      return where + "replacement equals original";
    }
    if (t.generator_used == RoundGenerator::kRule) {
      const auto category = ParseCategory(t.category);
      if (!category) return where + "unknown category " + t.category;
      if (!t.replacement_lemma ||
          !lexicon.Contains(*category, *t.replacement_lemma)) {
        return where + "replacement lemma not in " + t.category;
      }
      const auto lemmas = LemmaCandidates(t.replacement);
      if (!EqualsIgnoreCase(t.replacement, *t.replacement_lemma) &&
          std::find(lemmas.begin(), lemmas.end(), *t.replacement_lemma) ==
              lemmas.end()) {
        return where + "replacement is not a form of its lemma";
      }
      if (CompTypeForCategory(*category) != t.comp_type_effective) {
        return where + "effective type disagrees with category";
      }
      if (type) {
        const auto allowed = RuleCategories(*type);
        if (std::find(allowed.begin(), allowed.end(), *category) == allowed.end()) {
          return where + "category outside the requested type";
        }
      }
    } else {
      if (t.token_len != 1) return where + "llm round spans several tokens";
      const auto tag = ParseGrammCategory(t.category);
      if (!tag || *tag == GrammCategory::kOther) {
        return where + "bad grammatical category " + t.category;
      }
      if (CompTypeForGramm(*tag) != t.comp_type_effective) {
        return where + "effective type disagrees with tag";
      }
      if (type && LlmCategories(*type).front() != *tag) {
        return where + "tag outside the requested type";
      }
      if (provider != nullptr) {
        const std::string masked = current.substr(0, begin) +
                                   std::string(kMaskToken) + current.substr(end);
        bool offered = false;
        for (const auto& candidate : provider->CandidatesFor(masked)) {
          const auto first = candidate.find_first_not_of(" \t\r\n");
          const auto last = candidate.find_last_not_of(" \t\r\n");
          if (first == std::string::npos) continue;
          if (EqualsIgnoreCase(candidate.substr(first, last - first + 1),
                               t.replacement)) {
            offered = true;
          }
        }
        if (!offered) return where + "replacement was not a provider candidate";
      }
    }
    if (type && t.comp_type_effective != *type) return where + "type impurity";
    current = current.substr(0, begin) + t.replacement + current.substr(end);
  }
  if (current != result.negative_caption) {
    return "spliced trace gives '" + current + "', stored '" +
           result.negative_caption + "'";
  }
  return "";
}

CliResult RunCli(const std::vector<std::string>& args) {
  std::vector<const char*> argv = {"navero"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  CliResult result;
  result.code = cli::Run(static_cast<int>(argv.size()), argv.data(), out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

}  // namespace navero::testing
