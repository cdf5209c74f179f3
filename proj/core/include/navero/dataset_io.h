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

#ifndef NAVERO_DATASET_IO_H_
#define NAVERO_DATASET_IO_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "navero/augmenter.h"
#include "navero/types.h"

namespace navero {

// Version string written into benchmark manifests.
std::string_view ToolVersion();

enum class Split { kTrain, kTest };

std::string_view SplitName(Split split);

struct VideoTextPair {
  std::string id;
  std::string media_id;
  std::string caption;
  Split split = Split::kTrain;

  bool operator==(const VideoTextPair&) const = default;
};

struct AugmentedPair {
  VideoTextPair pair;
  std::string negative_caption;
  std::optional<CompType> comp_type;  // nullopt is written as "mixed"
  GeneratorKind generator = GeneratorKind::kMixed;
  int rounds_applied = 0;
  std::uint64_t seed = 0;
  std::vector<RoundTrace> trace;

  bool operator==(const AugmentedPair&) const = default;
};

// Reads JSONL records {"id", "media_id", "caption", "split"?}. split
// defaults to "train". Blank lines are ignored. Throws ParseError (with the
// line number), DuplicateId or EmptyCaption; IoError when unreadable.
std::vector<VideoTextPair> ReadPairs(const std::filesystem::path& path);
std::vector<VideoTextPair> ParsePairs(std::string_view text,
                                      std::string_view source);

// One record per line, fixed field order, trailing newline.
std::string SerializeAugmented(const AugmentedPair& pair);
void WriteAugmented(const std::vector<AugmentedPair>& pairs,
                    const std::filesystem::path& path);
// Inverse of WriteAugmented. Also checks negative_caption != caption and
// rounds_applied == trace length (ValidationError).
std::vector<AugmentedPair> ReadAugmented(const std::filesystem::path& path);
std::vector<AugmentedPair> ParseAugmented(std::string_view text,
                                          std::string_view source);

struct AugmentRun {
  std::vector<AugmentedPair> pairs;  // input order
  std::vector<std::string> skipped;  // ids where every round failed
};

// GenerateNegative over every pair on `workers` threads. Output order and
// content do not depend on `workers`.
AugmentRun AugmentPairs(const std::vector<VideoTextPair>& pairs,
                        const AugConfig& cfg, const AugmentDeps& deps,
                        int workers = 1);

struct BenchmarkManifest {
  std::string source;
  std::string tool_version;
  std::string lexicon_version;
  std::uint64_t seed = 0;
  GeneratorKind generator = GeneratorKind::kMixed;
  int rounds = 0;
  double mix_probability = 0.5;
  std::array<std::size_t, 4> counts{};                  // by CompType
  std::array<std::vector<std::string>, 4> skipped;      // ids, by CompType

  bool operator==(const BenchmarkManifest&) const = default;
};

struct BenchmarkBundle {
  BenchmarkManifest manifest;
  std::array<std::vector<AugmentedPair>, 4> records;  // by CompType

  const std::vector<AugmentedPair>& Records(CompType type) const {
    return records[static_cast<std::size_t>(type)];
  }
  bool operator==(const BenchmarkBundle&) const = default;
};

// File name of a type's record file inside a bundle ("action.jsonl", ...).
std::string BenchmarkFileName(CompType type);

// For every pair and type, BuildTypedNegative; samples where all rounds fail
// are listed in manifest.skipped. Every pair must have split == test
// (ValidationError otherwise).
BenchmarkBundle BuildBenchmark(const std::vector<VideoTextPair>& pairs,
                               const AugConfig& cfg, const AugmentDeps& deps,
                               std::string source, int workers = 1);

std::string SerializeManifest(const BenchmarkManifest& manifest);

// Creates `dir` if needed and writes the four type files and manifest.json.
void WriteBenchmark(const BenchmarkBundle& bundle,
                    const std::filesystem::path& dir);
BenchmarkBundle ReadBenchmark(const std::filesystem::path& dir);

struct ValidationReport {
  std::vector<std::string> violations;
  std::array<std::size_t, 4> records_checked{};

  bool ok() const { return violations.empty(); }
};

// Re-checks a bundle on disk: files parse, record types match their file,
// ids are unique per file, manifest counts equal line counts, skipped ids
// are absent, negatives differ from captions, and every stored trace
// replays to the stored negative with one span per round. When `lexicon`
// has the manifest's lexicon version, rule replacements must belong to the
// recorded category. Never throws for content problems.
ValidationReport ValidateBenchmark(const std::filesystem::path& dir,
                                   const Lexicon* lexicon = nullptr);

}  // namespace navero

#endif  // NAVERO_DATASET_IO_H_
