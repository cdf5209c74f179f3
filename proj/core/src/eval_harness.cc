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

#include "navero/eval_harness.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "navero/error.h"

namespace navero {
namespace {

using json = nlohmann::ordered_json;

void RequireNonEmpty(std::span<const ScoreRecord> records) {
  if (records.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no score records");
  }
}

}  // namespace

double Accuracy(std::span<const ScoreRecord> records) {
  RequireNonEmpty(records);
  std::size_t wins = 0;
  for (const auto& r : records) {
    if (r.pos_score > r.neg_score) ++wins;
  }
  return static_cast<double>(wins) / static_cast<double>(records.size());
}

double HardAccuracy(std::span<const ScoreRecord> records) {
  RequireNonEmpty(records);
  std::size_t hits = 0;
  for (const auto& r : records) {
    if (r.pos_score > 0.5) ++hits;
    if (r.neg_score < 0.5) ++hits;
  }
  return static_cast<double>(hits) / (2.0 * static_cast<double>(records.size()));
}

std::vector<ScoreRecord> ParseScores(std::string_view text,
                                     std::string_view source) {
  std::vector<ScoreRecord> out;
  std::unordered_set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = std::string(source) + ":" + std::to_string(line_no);
    ScoreRecord r;
    try {
      const json j = json::parse(line);
      r.id = j.at("id").get<std::string>();
      r.pos_score = j.at("pos_score").get<double>();
      r.neg_score = j.at("neg_score").get<double>();
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParse, where + ": " + e.what());
    }
    for (double s : {r.pos_score, r.neg_score}) {
      if (!std::isfinite(s) || s < 0.0 || s > 1.0) {
        throw Error(ErrorCode::kValidation,
                    where + ": score of '" + r.id + "' is outside [0, 1]");
      }
    }
    if (!seen.insert(r.id).second) {
      throw Error(ErrorCode::kDuplicateId, where + ": id '" + r.id + "' repeated");
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ScoreRecord> ReadScores(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseScores(buffer.str(), path.string());
}

MetricReport Report(const BenchmarkBundle& bundle,
                    const std::map<CompType, std::vector<ScoreRecord>>& scores) {
  MetricReport report;
  double sum_acc = 0.0;
  double sum_hard = 0.0;
  std::size_t present = 0;
  for (CompType type : kAllCompTypes) {
    const auto& records = bundle.Records(type);
    auto it = scores.find(type);
    if (it == scores.end()) {
      if (!records.empty()) {
        throw Error(ErrorCode::kMissingType,
                    "no scores for type " + std::string(CompTypeName(type)));
      }
      continue;
    }
    std::unordered_set<std::string> ids;
    for (const auto& r : records) ids.insert(r.pair.id);
    std::unordered_set<std::string> scored;
    for (const auto& s : it->second) {
      if (ids.count(s.id) == 0) {
        throw Error(ErrorCode::kIdMismatch,
                    "score id '" + s.id + "' is not in the " +
                        std::string(CompTypeName(type)) + " benchmark");
      }
      scored.insert(s.id);
    }
    TypeMetrics m;
    m.acc = Accuracy(it->second);
    m.hard_acc = HardAccuracy(it->second);
    m.n = it->second.size();
    m.benchmark_n = records.size();
    for (const auto& r : records) {
      if (scored.count(r.pair.id) == 0) m.unscored_ids.push_back(r.pair.id);
    }
    sum_acc += m.acc;
    sum_hard += m.hard_acc;
    ++present;
    report.per_type[static_cast<std::size_t>(type)] = std::move(m);
  }
  if (present == 0) {
    throw Error(ErrorCode::kEmptyInput, "no type has both records and scores");
  }
  report.avg_acc = sum_acc / static_cast<double>(present);
  report.avg_hard_acc = sum_hard / static_cast<double>(present);
  return report;
}

std::string FormatPercent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * fraction);
  return buf;
}

std::string RenderTable(const MetricReport& report) {
  auto cell = [](double acc, double hard) {
    return FormatPercent(acc) + "/" + FormatPercent(hard);
  };
  auto pad = [](std::string s, std::size_t width) {
    // Width counts code points, not bytes.
    std::size_t visible = 0;
    for (unsigned char c : s) {
      if ((c & 0xC0) != 0x80) ++visible;
    }
    if (visible < width) s.append(width - visible, ' ');
    return s;
  };
  constexpr std::size_t kFirst = 10;
  constexpr std::size_t kWidth = 15;

  std::string header = pad("", kFirst);
  std::string values = pad("acc/âcc", kFirst);
  std::string counts = pad("n", kFirst);
  for (CompType type : kAllCompTypes) {
    header += pad(std::string(CompTypeLabel(type)), kWidth);
    const auto& m = report.For(type);
    values += pad(m ? cell(m->acc, m->hard_acc) : "-", kWidth);
    counts += pad(m ? std::to_string(m->n) : "-", kWidth);
  }
  header += "Avg";
  values += cell(report.avg_acc, report.avg_hard_acc);
  auto rstrip = [](std::string s) {
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s;
  };
  return rstrip(header) + "\n" + rstrip(values) + "\n" + rstrip(counts) + "\n";
}

std::string RenderJson(const MetricReport& report) {
  json j;
  j["per_type"] = json::object();
  for (CompType type : kAllCompTypes) {
    const auto& m = report.For(type);
    if (!m) continue;
    j["per_type"][std::string(CompTypeName(type))] = {
        {"acc", m->acc},
        {"hard_acc", m->hard_acc},
        {"n", m->n},
        {"benchmark_n", m->benchmark_n},
        {"unscored_ids", m->unscored_ids},
    };
  }
  std::size_t present = 0;
  for (const auto& m : report.per_type) present += m ? 1 : 0;
  j["average"] = {{"acc", report.avg_acc},
                  {"hard_acc", report.avg_hard_acc},
                  {"types", present}};
  return j.dump(2) + "\n";
}

}  // namespace navero
