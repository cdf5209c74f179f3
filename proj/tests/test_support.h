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

#ifndef NAVERO_TESTS_TEST_SUPPORT_H_
#define NAVERO_TESTS_TEST_SUPPORT_H_

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "navero/augmenter.h"
#include "navero/dataset_io.h"
#include "navero/provider.h"

namespace navero::testing {

std::filesystem::path FixturePath(const std::string& name);

std::string ReadFileBytes(const std::filesystem::path& path);
void WriteFileBytes(const std::filesystem::path& path, const std::string& text);

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

// The 500-pair caption corpus.
const std::vector<VideoTextPair>& Corpus();

// Forwards to another provider and remembers every response, so tests can
// check that llm replacements came from the candidates offered.
class RecordingProvider final : public UnmaskProvider {
 public:
  explicit RecordingProvider(UnmaskProvider& inner) : inner_(inner) {}
  UnmaskResponse Unmask(const UnmaskRequest& request) override;

  // Candidates of every response recorded so far for `masked_text`.
  std::vector<std::string> CandidatesFor(const std::string& masked_text) const;
  std::size_t calls() const;

 private:
  UnmaskProvider& inner_;
  mutable std::mutex mu_;
  std::vector<std::pair<UnmaskRequest, UnmaskResponse>> log_;
};

// Checks a generated negative against its trace without using the
// library's own replay code: every round is re-applied by splicing the
// recorded replacement into the previous caption at the recorded token span.
// Also checks that rule replacements come from the recorded lexicon category
// and llm replacements from the candidates `provider` returned for that
// masked caption, and, when `type` is set, that every round stayed within
// that type. Returns an empty string when everything holds.
std::string CheckAugmentation(const std::string& caption, const AugResult& result,
                              const Lexicon& lexicon,
                              const RecordingProvider* provider,
                              std::optional<CompType> type = std::nullopt);

// Runs the CLI in-process and captures both streams.
struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};
CliResult RunCli(const std::vector<std::string>& args);

}  // namespace navero::testing

#endif  // NAVERO_TESTS_TEST_SUPPORT_H_
