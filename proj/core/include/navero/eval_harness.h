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

#ifndef NAVERO_EVAL_HARNESS_H_
#define NAVERO_EVAL_HARNESS_H_

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "navero/dataset_io.h"
#include "navero/types.h"

namespace navero {

// Matching probabilities for one benchmark record: pos_score = p(T|V),
// neg_score = p(T_neg|V).
struct ScoreRecord {
  std::string id;
  double pos_score = 0.0;
  double neg_score = 0.0;

  bool operator==(const ScoreRecord&) const = default;
};

// Fraction of records with pos_score > neg_score. Ties count as wrong.
// Throws EmptyInput.
double Accuracy(std::span<const ScoreRecord> records);

// (#{pos_score > 0.5} + #{neg_score < 0.5}) / (2N). Throws EmptyInput.
double HardAccuracy(std::span<const ScoreRecord> records);

// JSONL {"id", "pos_score", "neg_score"}. Scores must be finite and in
// [0, 1] (ValidationError); ids must be unique (DuplicateId).
std::vector<ScoreRecord> ReadScores(const std::filesystem::path& path);
std::vector<ScoreRecord> ParseScores(std::string_view text,
                                     std::string_view source);

struct TypeMetrics {
  double acc = 0.0;
  double hard_acc = 0.0;
  std::size_t n = 0;            // scored records
  std::size_t benchmark_n = 0;  // records in the benchmark file
  std::vector<std::string> unscored_ids;  // benchmark ids without a score

  bool operator==(const TypeMetrics&) const = default;
};

struct MetricReport {
  std::array<std::optional<TypeMetrics>, 4> per_type;  // by CompType
  // Unweighted mean over the types present in per_type.
  double avg_acc = 0.0;
  double avg_hard_acc = 0.0;

  const std::optional<TypeMetrics>& For(CompType type) const {
    return per_type[static_cast<std::size_t>(type)];
  }
};

// Joins score records with the bundle. Every type with benchmark records
// needs scores (MissingType); every scored id must exist in that type's file
// (IdMismatch). Benchmark records without a score are reported as coverage
// gaps and excluded from the metrics.
MetricReport Report(const BenchmarkBundle& bundle,
                    const std::map<CompType, std::vector<ScoreRecord>>& scores);

// Text table with one column per type plus Avg; cells "acc/âcc" as percentages with two decimals.
std::string RenderTable(const MetricReport& report);
std::string RenderJson(const MetricReport& report);

// 0.98765 -> "98.77".
std::string FormatPercent(double fraction);

}  // namespace navero

#endif  // NAVERO_EVAL_HARNESS_H_
