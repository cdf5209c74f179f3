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

#include "navero/provider.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "navero/error.h"
#include "navero/rng.h"

namespace navero {
namespace {

using json = nlohmann::ordered_json;

std::size_t CountOccurrences(std::string_view text, std::string_view needle) {
  if (needle.empty()) return 0;
  std::size_t count = 0;
  for (std::size_t pos = text.find(needle); pos != std::string_view::npos;
       pos = text.find(needle, pos + needle.size())) {
    ++count;
  }
  return count;
}

std::vector<UnmaskCandidate> ParseCandidates(const json& array) {
  if (!array.is_array()) {
    throw ProviderError("'candidates' is not an array", 1);
  }
  std::vector<UnmaskCandidate> out;
  for (const auto& item : array) {
    if (!item.is_object() || !item.contains("token") ||
        !item["token"].is_string() || !item.contains("score") ||
        !item["score"].is_number()) {
      throw ProviderError("candidate needs string 'token' and number 'score'",
                          1);
    }
    const double score = item["score"].get<double>();
    if (!std::isfinite(score)) {
      throw ProviderError("non-finite candidate score", 1);
    }
    out.push_back({item["token"].get<std::string>(), score});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const UnmaskCandidate& a, const UnmaskCandidate& b) {
                     return a.score > b.score;
                   });
  return out;
}

}  // namespace

void ValidateUnmaskRequest(const UnmaskRequest& request) {
  if (request.mask_token.empty() ||
      CountOccurrences(request.masked_text, request.mask_token) != 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "masked text must contain exactly one " + request.mask_token +
                    ": '" + request.masked_text + "'");
  }
  if (request.top_k < 1) {
    throw Error(ErrorCode::kInvalidArgument, "top_k must be positive");
  }
}

std::string EncodeUnmaskRequest(const UnmaskRequest& request) {
  json body;
  body["masked_text"] = request.masked_text;
  body["mask_token"] = request.mask_token;
  body["target_category"] = std::string(GrammCategoryName(request.target_category));
  body["top_k"] = request.top_k;
  return body.dump();
}

UnmaskRequest DecodeUnmaskRequest(std::string_view body) {
  try {
    const json j = json::parse(body);
    UnmaskRequest request;
    request.masked_text = j.at("masked_text").get<std::string>();
    request.mask_token = j.value("mask_token", std::string(kMaskToken));
    const auto category =
        ParseGrammCategory(j.at("target_category").get<std::string>());
    if (!category) {
      throw Error(ErrorCode::kParse, "unknown target_category");
    }
    request.target_category = *category;
    request.top_k = j.value("top_k", 10);
    return request;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad unmask request: ") + e.what());
  }
}

std::string EncodeUnmaskResponse(const UnmaskResponse& response) {
  json body;
  body["model_id"] = response.model_id;
  body["candidates"] = json::array();
  for (const auto& c : response.candidates) {
    body["candidates"].push_back({{"token", c.token}, {"score", c.score}});
  }
  return body.dump();
}

UnmaskResponse DecodeUnmaskResponse(std::string_view body) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception& e) {
    throw ProviderError(std::string("malformed response body: ") + e.what(), 1);
  }
  if (!j.is_object() || !j.contains("candidates")) {
    throw ProviderError("response lacks 'candidates'", 1);
  }
  UnmaskResponse response;
  if (j.contains("model_id") && j["model_id"].is_string()) {
    response.model_id = j["model_id"].get<std::string>();
  }
  response.candidates = ParseCandidates(j["candidates"]);
  if (response.candidates.empty()) {
    throw ProviderError("empty candidate list", 1);
  }
  return response;
}

MockUnmaskProvider::MockUnmaskProvider(const Lexicon& lexicon)
    : lexicon_(lexicon) {}

void MockUnmaskProvider::Add(std::string_view masked_text,
                             GrammCategory category,
                             std::vector<UnmaskCandidate> candidates) {
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const UnmaskCandidate& a, const UnmaskCandidate& b) {
                     return a.score > b.score;
                   });
  table_[{Fnv1a64(masked_text), category}] = std::move(candidates);
}

void MockUnmaskProvider::LoadTable(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open mock table " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    try {
      const json j = json::parse(line);
      const auto category =
          ParseGrammCategory(j.at("target_category").get<std::string>());
      if (!category) throw Error(ErrorCode::kParse, where + ": bad target_category");
      Add(j.at("masked_text").get<std::string>(), *category,
          ParseCandidates(j.at("candidates")));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParse, where + ": " + e.what());
    } catch (const ProviderError& e) {
      throw Error(ErrorCode::kParse, where + ": " + e.what());
    }
  }
}

UnmaskResponse MockUnmaskProvider::Unmask(const UnmaskRequest& request) {
  ValidateUnmaskRequest(request);
  UnmaskResponse response;
  response.model_id = std::string(kModelId);
  auto it = table_.find({Fnv1a64(request.masked_text), request.target_category});
  if (it != table_.end()) {
    response.candidates = it->second;
    if (static_cast<int>(response.candidates.size()) > request.top_k) {
      response.candidates.resize(request.top_k);
    }
    return response;
  }

  std::vector<CategoryId> sources;
  switch (request.target_category) {
    case GrammCategory::kVerb: sources = {CategoryId::kAction}; break;
    case GrammCategory::kAdj:
      sources = {CategoryId::kColor, CategoryId::kSize, CategoryId::kState,
                 CategoryId::kMaterial};
      break;
    case GrammCategory::kAdp: sources = {CategoryId::kRelation}; break;
    case GrammCategory::kNoun: sources = {CategoryId::kNoun}; break;
    case GrammCategory::kOther: break;
  }
  std::vector<const std::string*> pool;
  for (CategoryId c : sources) {
    for (const auto& entry : lexicon_.Entries(c)) {
      if (std::none_of(pool.begin(), pool.end(),
                       [&](const std::string* p) { return *p == entry; })) {
        pool.push_back(&entry);
      }
    }
  }
  if (pool.empty()) {
    throw ProviderError("mock has no vocabulary for category " +
                            std::string(GrammCategoryName(request.target_category)),
                        1);
  }
  const std::string key = request.masked_text + "|" +
                          std::string(GrammCategoryName(request.target_category));
  const std::size_t offset = Fnv1a64(key) % pool.size();
  const std::size_t k =
      std::min(pool.size(), static_cast<std::size_t>(request.top_k));
  for (std::size_t rank = 0; rank < k; ++rank) {
    response.candidates.push_back(
        {*pool[(offset + rank) % pool.size()], 1.0 / static_cast<double>(rank + 1)});
  }
  return response;
}

HttpUnmaskProvider::HttpUnmaskProvider(HttpProviderOptions options)
    : options_(std::move(options)),
      in_flight_(std::max(1, options_.max_in_flight)) {
  std::string_view url = options_.url;
  constexpr std::string_view kScheme = "http://";
  if (url.substr(0, kScheme.size()) != kScheme) {
    throw Error(ErrorCode::kInvalidArgument,
                "provider url must start with http:// : " + options_.url);
  }
  url.remove_prefix(kScheme.size());
  const std::size_t slash = url.find('/');
  std::string_view authority = url.substr(0, slash);
  std::string prefix =
      slash == std::string_view::npos ? "" : std::string(url.substr(slash));
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  path_ = prefix + "/unmask";
  if (authority.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "provider url has no host");
  }
  if (const std::size_t colon = authority.rfind(':');
      colon != std::string_view::npos) {
    host_ = std::string(authority.substr(0, colon));
    try {
      port_ = std::stoi(std::string(authority.substr(colon + 1)));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "bad port in provider url");
    }
  } else {
    host_ = std::string(authority);
  }
  if (host_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "provider url has no host");
  }
  if (options_.timeout_ms <= 0 || options_.retries < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "provider timeout must be positive and retries non-negative");
  }
}

HttpUnmaskProvider::~HttpUnmaskProvider() = default;

UnmaskResponse HttpUnmaskProvider::Unmask(const UnmaskRequest& request) {
  ValidateUnmaskRequest(request);
  const std::string body = EncodeUnmaskRequest(request);
  const auto timeout = std::chrono::milliseconds(options_.timeout_ms);

  in_flight_.acquire();
  struct Release {
    std::counting_semaphore<>& sem;
    ~Release() { sem.release(); }
  } release{in_flight_};

  std::string last_error;
  const int attempts = 1 + options_.retries;
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    httplib::Client client(host_, port_);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    const auto started = std::chrono::steady_clock::now();
    auto result = client.Post(path_, body, "application/json");
    const double latency =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - started)
            .count();
    if (!result) {
      last_error = "transport error: " + httplib::to_string(result.error());
      continue;
    }
    if (result->status < 200 || result->status >= 300) {
      last_error = "HTTP status " + std::to_string(result->status);
      continue;
    }
    try {
      UnmaskResponse response = DecodeUnmaskResponse(result->body);
      response.latency_ms = latency;
      return response;
    } catch (const ProviderError& e) {
      last_error = e.what();
    }
  }
  throw ProviderError("unmask request to " + options_.url + " failed: " +
                          last_error,
                      attempts);
}

}  // namespace navero
