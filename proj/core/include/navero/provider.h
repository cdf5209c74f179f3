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

#ifndef NAVERO_PROVIDER_H_
#define NAVERO_PROVIDER_H_

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <semaphore>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "navero/lexicon.h"
#include "navero/types.h"

namespace navero {

inline constexpr std::string_view kMaskToken = "[MASK]";

struct UnmaskRequest {
  std::string masked_text;  // contains exactly one mask_token
  std::string mask_token = std::string(kMaskToken);
  GrammCategory target_category = GrammCategory::kNoun;
  int top_k = 10;
};

struct UnmaskCandidate {
  std::string token;
  double score = 0.0;

  bool operator==(const UnmaskCandidate&) const = default;
};

struct UnmaskResponse {
  std::string model_id;
  std::vector<UnmaskCandidate> candidates;  // non-empty, scores descending
  std::optional<double> latency_ms;         // set by network providers
};

// Masked-token prediction service. Implementations must be safe to call from
// several threads at once.
class UnmaskProvider {
 public:
  virtual ~UnmaskProvider() = default;
  virtual UnmaskResponse Unmask(const UnmaskRequest& request) = 0;
};

// Wire format of POST /unmask:
//   request  {"masked_text": "...", "mask_token": "[MASK]",
//             "target_category": "VERB", "top_k": 10}
//   response {"model_id": "...", "candidates": [{"token": "...",
//             "score": 0.93}, ...]}
std::string EncodeUnmaskRequest(const UnmaskRequest& request);
UnmaskRequest DecodeUnmaskRequest(std::string_view body);
std::string EncodeUnmaskResponse(const UnmaskResponse& response);
// Throws ProviderError (attempts = 1) on malformed JSON, missing fields,
// an empty candidate list or non-finite scores. Candidates are stably sorted
// by descending score.
UnmaskResponse DecodeUnmaskResponse(std::string_view body);

// Checks that `masked_text` contains exactly one mask token.
void ValidateUnmaskRequest(const UnmaskRequest& request);

// Hermetic provider for tests and offline runs.
//
// Requests are first looked up in a table keyed by
// (Fnv1a64(masked_text), target_category). On a miss it answers with top_k
// consecutive entries of the lexicon list for the category (VERB: action,
// ADJ: color + size + state + material, ADP: relation, NOUN: noun), starting
// at offset Fnv1a64(masked_text + "|" + category) modulo the list size, with
// scores 1/(rank + 1).
class MockUnmaskProvider final : public UnmaskProvider {
 public:
  explicit MockUnmaskProvider(const Lexicon& lexicon = Lexicon::Builtin());

  void Add(std::string_view masked_text, GrammCategory category,
           std::vector<UnmaskCandidate> candidates);

  // Loads JSONL records {"masked_text": ..., "target_category": ...,
  // "candidates": [{"token": ..., "score": ...}, ...]}.
  void LoadTable(const std::filesystem::path& path);

  std::size_t table_size() const { return table_.size(); }

  UnmaskResponse Unmask(const UnmaskRequest& request) override;

  static constexpr std::string_view kModelId = "navero-mock-v1";

 private:
  const Lexicon& lexicon_;
  std::map<std::pair<std::uint64_t, GrammCategory>,
           std::vector<UnmaskCandidate>>
      table_;
};

struct HttpProviderOptions {
  std::string url;         // http://host[:port][/prefix]; POSTs to prefix/unmask
  int timeout_ms = 5000;   // connect, read and write timeout per request
  int retries = 2;         // extra attempts after the first failure
  int max_in_flight = 4;   // concurrent requests across all threads
};

// Client for a remote unmasking service speaking the wire format above.
// Non-2xx statuses, transport errors, timeouts and malformed bodies are
// retried up to `retries` times and then surface as ProviderError.
class HttpUnmaskProvider final : public UnmaskProvider {
 public:
  explicit HttpUnmaskProvider(HttpProviderOptions options);
  ~HttpUnmaskProvider() override;

  UnmaskResponse Unmask(const UnmaskRequest& request) override;

  const std::string& host() const { return host_; }
  int port() const { return port_; }
  const std::string& path() const { return path_; }

 private:
  HttpProviderOptions options_;
  std::string host_;
  int port_ = 80;
  std::string path_;
  std::counting_semaphore<> in_flight_;
};

}  // namespace navero

#endif  // NAVERO_PROVIDER_H_
