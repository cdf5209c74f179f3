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

#include "navero/dataset_io.h"

#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "navero/error.h"
#include "navero/parallel.h"

#ifndef NAVERO_VERSION
#define NAVERO_VERSION "0.0.0"
#endif

namespace navero {
namespace {

using json = nlohmann::ordered_json;

std::string Where(std::string_view source, std::size_t line) {
  return std::string(source) + ":" + std::to_string(line);
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  return buffer.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot create " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
}

// Calls fn(line_text, line_number) for every non-blank line.
template <typename Fn>
void ForEachLine(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") != std::string_view::npos) {
      fn(line, line_no);
    }
    pos = end + 1;
  }
}

bool IsBlank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

const std::string& RequireString(const json& j, const char* key,
                                 const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw Error(ErrorCode::kParse, where + ": missing \"" + key + "\"");
  }
  if (!it->is_string()) {
    throw Error(ErrorCode::kParse, where + ": \"" + key + "\" is not a string");
  }
  return it->get_ref<const std::string&>();
}

json ParseObject(std::string_view line, const std::string& where) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, where + ": invalid JSON (" + e.what() + ")");
  }
  if (!j.is_object()) {
    throw Error(ErrorCode::kParse, where + ": record is not a JSON object");
  }
  return j;
}

VideoTextPair PairFromJson(const json& j, const std::string& where) {
  VideoTextPair pair;
  pair.id = RequireString(j, "id", where);
  pair.media_id = RequireString(j, "media_id", where);
  pair.caption = RequireString(j, "caption", where);
  if (auto it = j.find("split"); it != j.end()) {
    if (!it->is_string()) {
      throw Error(ErrorCode::kParse, where + ": \"split\" is not a string");
    }
    const auto& s = it->get_ref<const std::string&>();
    if (s == "train") {
      pair.split = Split::kTrain;
    } else if (s == "test") {
      pair.split = Split::kTest;
    } else {
      throw Error(ErrorCode::kParse, where + ": unknown split '" + s + "'");
    }
  }
  if (pair.id.empty()) throw Error(ErrorCode::kParse, where + ": empty id");
  if (IsBlank(pair.caption)) {
    throw Error(ErrorCode::kEmptyCaption,
                where + ": record '" + pair.id + "' has an empty caption");
  }
  return pair;
}

json TraceToJson(const RoundTrace& t) {
  json j;
  j["round_index"] = t.round_index;
  j["generator_used"] = std::string(RoundGeneratorName(t.generator_used));
  j["comp_type_effective"] = std::string(CompTypeName(t.comp_type_effective));
  j["category"] = t.category;
  j["token_start"] = t.token_start;
  j["token_len"] = t.token_len;
  j["original_surface"] = t.original_surface;
  j["replacement"] = t.replacement;
  if (t.replacement_lemma) j["replacement_lemma"] = *t.replacement_lemma;
  if (t.provider_latency_ms) j["provider_latency_ms"] = *t.provider_latency_ms;
  return j;
}

RoundTrace TraceFromJson(const json& j, const std::string& where) {
  if (!j.is_object()) {
    throw Error(ErrorCode::kParse, where + ": trace entry is not an object");
  }
  RoundTrace t;
  try {
    t.round_index = j.at("round_index").get<int>();
    const auto generator =
        ParseRoundGenerator(j.at("generator_used").get<std::string>());
    const auto type =
        ParseCompType(j.at("comp_type_effective").get<std::string>());
    if (!generator || !type) {
      throw Error(ErrorCode::kParse, where + ": bad trace generator or type");
    }
    t.generator_used = *generator;
    t.comp_type_effective = *type;
    t.category = j.at("category").get<std::string>();
    t.token_start = j.at("token_start").get<std::size_t>();
    t.token_len = j.at("token_len").get<std::size_t>();
    t.original_surface = j.at("original_surface").get<std::string>();
    t.replacement = j.at("replacement").get<std::string>();
    if (j.contains("replacement_lemma")) {
      t.replacement_lemma = j["replacement_lemma"].get<std::string>();
    }
    if (j.contains("provider_latency_ms")) {
      t.provider_latency_ms = j["provider_latency_ms"].get<double>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, where + ": bad trace entry (" + e.what() + ")");
  }
  return t;
}

json AugmentedToJson(const AugmentedPair& p) {
  json j;
  j["id"] = p.pair.id;
  j["media_id"] = p.pair.media_id;
  j["caption"] = p.pair.caption;
  j["split"] = std::string(SplitName(p.pair.split));
  j["negative_caption"] = p.negative_caption;
  j["comp_type"] =
      p.comp_type ? std::string(CompTypeName(*p.comp_type)) : "mixed";
  j["generator"] = std::string(GeneratorKindName(p.generator));
  j["rounds_applied"] = p.rounds_applied;
  j["seed"] = p.seed;
  j["trace"] = json::array();
  for (const auto& t : p.trace) j["trace"].push_back(TraceToJson(t));
  return j;
}

AugmentedPair AugmentedFromJson(const json& j, const std::string& where) {
  AugmentedPair p;
  p.pair = PairFromJson(j, where);
  p.negative_caption = RequireString(j, "negative_caption", where);
  const std::string& type = RequireString(j, "comp_type", where);
  if (type != "mixed") {
    p.comp_type = ParseCompType(type);
    if (!p.comp_type) {
      throw Error(ErrorCode::kParse, where + ": unknown comp_type '" + type + "'");
    }
  }
  const auto generator = ParseGeneratorKind(RequireString(j, "generator", where));
  if (!generator) throw Error(ErrorCode::kParse, where + ": unknown generator");
  p.generator = *generator;
  try {
    p.rounds_applied = j.at("rounds_applied").get<int>();
    p.seed = j.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, where + ": " + e.what());
  }
  auto trace = j.find("trace");
  if (trace == j.end() || !trace->is_array()) {
    throw Error(ErrorCode::kParse, where + ": missing \"trace\" array");
  }
  for (const auto& t : *trace) p.trace.push_back(TraceFromJson(t, where));
  if (p.negative_caption == p.pair.caption) {
    throw Error(ErrorCode::kValidation,
                where + ": negative caption of '" + p.pair.id +
                    "' equals its caption");
  }
  if (p.rounds_applied != static_cast<int>(p.trace.size())) {
    throw Error(ErrorCode::kValidation,
                where + ": rounds_applied " + std::to_string(p.rounds_applied) +
                    " but trace has " + std::to_string(p.trace.size()) +
                    " entries");
  }
  return p;
}

AugmentedPair MakeAugmented(const VideoTextPair& pair, AugResult result,
                            const AugConfig& cfg,
                            std::optional<CompType> type) {
  AugmentedPair out;
  out.pair = pair;
  out.negative_caption = std::move(result.negative_caption);
  out.comp_type = type;
  out.generator = cfg.generator;
  out.rounds_applied = static_cast<int>(result.trace.size());
  out.seed = cfg.seed;
  out.trace = std::move(result.trace);
  return out;
}

constexpr std::size_t TypeIndex(CompType t) {
  return static_cast<std::size_t>(t);
}

}  // namespace

std::string_view ToolVersion() { return NAVERO_VERSION; }

std::string_view SplitName(Split split) {
  return split == Split::kTest ? "test" : "train";
}

std::vector<VideoTextPair> ParsePairs(std::string_view text,
                                      std::string_view source) {
  std::vector<VideoTextPair> pairs;
  std::unordered_set<std::string> seen;
  ForEachLine(text, [&](std::string_view line, std::size_t line_no) {
    const std::string where = Where(source, line_no);
    VideoTextPair pair = PairFromJson(ParseObject(line, where), where);
    if (!seen.insert(pair.id).second) {
      throw Error(ErrorCode::kDuplicateId,
                  where + ": id '" + pair.id + "' already used");
    }
    pairs.push_back(std::move(pair));
  });
  return pairs;
}

std::vector<VideoTextPair> ReadPairs(const std::filesystem::path& path) {
  return ParsePairs(ReadFile(path), path.string());
}

std::string SerializeAugmented(const AugmentedPair& pair) {
  return AugmentedToJson(pair).dump() + "\n";
}

void WriteAugmented(const std::vector<AugmentedPair>& pairs,
                    const std::filesystem::path& path) {
  std::string content;
  for (const auto& p : pairs) content += SerializeAugmented(p);
  WriteFile(path, content);
}

std::vector<AugmentedPair> ParseAugmented(std::string_view text,
                                          std::string_view source) {
  std::vector<AugmentedPair> pairs;
  std::unordered_set<std::string> seen;
  ForEachLine(text, [&](std::string_view line, std::size_t line_no) {
    const std::string where = Where(source, line_no);
    AugmentedPair p = AugmentedFromJson(ParseObject(line, where), where);
    if (!seen.insert(p.pair.id).second) {
      throw Error(ErrorCode::kDuplicateId,
                  where + ": id '" + p.pair.id + "' already used");
    }
    pairs.push_back(std::move(p));
  });
  return pairs;
}

std::vector<AugmentedPair> ReadAugmented(const std::filesystem::path& path) {
  return ParseAugmented(ReadFile(path), path.string());
}

AugmentRun AugmentPairs(const std::vector<VideoTextPair>& pairs,
                        const AugConfig& cfg, const AugmentDeps& deps,
                        int workers) {
  cfg.Validate();
  std::optional<CompType> type;
  if (cfg.types && cfg.types->size() == 1) type = cfg.types->front();

  std::vector<std::optional<AugmentedPair>> slots(pairs.size());
  ParallelFor(pairs.size(), workers, [&](std::size_t i) {
    try {
      slots[i] = MakeAugmented(
          pairs[i], GenerateNegative(pairs[i].caption, pairs[i].id, cfg, deps),
          cfg, type);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kAllRoundsFailed) throw;
    }
  });
  AugmentRun run;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (slots[i]) {
      run.pairs.push_back(std::move(*slots[i]));
    } else {
      run.skipped.push_back(pairs[i].id);
    }
  }
  return run;
}

std::string BenchmarkFileName(CompType type) {
  return std::string(CompTypeName(type)) + ".jsonl";
}

BenchmarkBundle BuildBenchmark(const std::vector<VideoTextPair>& pairs,
                               const AugConfig& cfg, const AugmentDeps& deps,
                               std::string source, int workers) {
  cfg.Validate();
  for (const auto& p : pairs) {
    if (p.split != Split::kTest) {
      throw Error(ErrorCode::kValidation,
                  "benchmark input '" + p.id + "' is not a test-split pair");
    }
  }
  std::vector<std::array<std::optional<AugmentedPair>, 4>> slots(pairs.size());
  ParallelFor(pairs.size(), workers, [&](std::size_t i) {
    for (CompType type : kAllCompTypes) {
      try {
        slots[i][TypeIndex(type)] = MakeAugmented(
            pairs[i],
            BuildTypedNegative(pairs[i].caption, pairs[i].id, type, cfg, deps),
            cfg, type);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kAllRoundsFailed) throw;
      }
    }
  });

  BenchmarkBundle bundle;
  BenchmarkManifest& m = bundle.manifest;
  m.source = std::move(source);
  m.tool_version = std::string(ToolVersion());
  m.lexicon_version = deps.lexicon->version();
  m.seed = cfg.seed;
  m.generator = cfg.generator;
  m.rounds = cfg.rounds;
  m.mix_probability = cfg.mix_probability;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (CompType type : kAllCompTypes) {
      auto& slot = slots[i][TypeIndex(type)];
      if (slot) {
        bundle.records[TypeIndex(type)].push_back(std::move(*slot));
      } else {
        m.skipped[TypeIndex(type)].push_back(pairs[i].id);
      }
    }
  }
  for (CompType type : kAllCompTypes) {
    m.counts[TypeIndex(type)] = bundle.records[TypeIndex(type)].size();
  }
  return bundle;
}

std::string SerializeManifest(const BenchmarkManifest& m) {
  json j;
  j["source"] = m.source;
  j["tool_version"] = m.tool_version;
  j["lexicon_version"] = m.lexicon_version;
  j["seed"] = m.seed;
  j["generator"] = std::string(GeneratorKindName(m.generator));
  j["rounds"] = m.rounds;
  j["mix_probability"] = m.mix_probability;
  json counts = json::object();
  json skipped = json::object();
  for (CompType type : kAllCompTypes) {
    const std::string name(CompTypeName(type));
    counts[name] = m.counts[TypeIndex(type)];
    skipped[name] = m.skipped[TypeIndex(type)];
  }
  j["counts"] = counts;
  j["skipped"] = skipped;
  return j.dump(2) + "\n";
}

namespace {

BenchmarkManifest ParseManifest(std::string_view text, const std::string& where) {
  BenchmarkManifest m;
  try {
    const json j = json::parse(text);
    m.source = j.at("source").get<std::string>();
    m.tool_version = j.at("tool_version").get<std::string>();
    m.lexicon_version = j.at("lexicon_version").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    const auto generator = ParseGeneratorKind(j.at("generator").get<std::string>());
    if (!generator) throw Error(ErrorCode::kParse, where + ": unknown generator");
    m.generator = *generator;
    m.rounds = j.at("rounds").get<int>();
    m.mix_probability = j.value("mix_probability", 0.5);
    for (CompType type : kAllCompTypes) {
      const std::string name(CompTypeName(type));
      m.counts[TypeIndex(type)] = j.at("counts").at(name).get<std::size_t>();
      m.skipped[TypeIndex(type)] =
          j.at("skipped").at(name).get<std::vector<std::string>>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, where + ": bad manifest (" + e.what() + ")");
  }
  return m;
}

}  // namespace

void WriteBenchmark(const BenchmarkBundle& bundle,
                    const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " +
                                    ec.message());
  }
  for (CompType type : kAllCompTypes) {
    WriteAugmented(bundle.Records(type), dir / BenchmarkFileName(type));
  }
  WriteFile(dir / "manifest.json", SerializeManifest(bundle.manifest));
}

BenchmarkBundle ReadBenchmark(const std::filesystem::path& dir) {
  BenchmarkBundle bundle;
  const auto manifest_path = dir / "manifest.json";
  bundle.manifest = ParseManifest(ReadFile(manifest_path), manifest_path.string());
  for (CompType type : kAllCompTypes) {
    bundle.records[TypeIndex(type)] =
        ReadAugmented(dir / BenchmarkFileName(type));
  }
  return bundle;
}

ValidationReport ValidateBenchmark(const std::filesystem::path& dir,
                                   const Lexicon* lexicon) {
  ValidationReport report;
  auto& v = report.violations;

  std::optional<BenchmarkManifest> manifest;
  const auto manifest_path = dir / "manifest.json";
  try {
    manifest = ParseManifest(ReadFile(manifest_path), manifest_path.string());
  } catch (const Error& e) {
    v.push_back(e.what());
  }
  const bool check_lexicon = lexicon != nullptr && manifest &&
                             manifest->lexicon_version == lexicon->version();

  for (CompType type : kAllCompTypes) {
    const std::string file = BenchmarkFileName(type);
    std::string text;
    try {
      text = ReadFile(dir / file);
    } catch (const Error& e) {
      v.push_back(e.what());
      continue;
    }
    std::unordered_set<std::string> ids;
    std::size_t lines = 0;
    ForEachLine(text, [&](std::string_view line, std::size_t line_no) {
      ++lines;
      const std::string where = file + ":" + std::to_string(line_no);
      AugmentedPair p;
      try {
        p = AugmentedFromJson(ParseObject(line, where), where);
      } catch (const Error& e) {
        v.push_back(e.what());
        return;
      }
      const std::string rec = where + " id '" + p.pair.id + "': ";
      if (!ids.insert(p.pair.id).second) v.push_back(rec + "duplicate id");
      if (p.comp_type != type) {
        v.push_back(rec + "comp_type does not match the file type");
      }
      if (p.trace.empty()) v.push_back(rec + "empty trace");
      for (const RoundTrace& t : p.trace) {
        if (t.comp_type_effective != type) {
          v.push_back(rec + "round " + std::to_string(t.round_index) +
                      " changed a " +
                      std::string(CompTypeName(t.comp_type_effective)) +
                      " span");
        }
        if (check_lexicon && t.generator_used == RoundGenerator::kRule) {
          const auto category = ParseCategory(t.category);
          if (!category || !t.replacement_lemma ||
              !lexicon->Contains(*category, *t.replacement_lemma)) {
            v.push_back(rec + "round " + std::to_string(t.round_index) +
                        " replacement is not in category '" + t.category + "'");
          }
        }
      }
      std::string error;
      const auto replayed = ReplayTrace(p.pair.caption, p.trace, &error);
      if (!replayed) {
        v.push_back(rec + "trace does not replay (" + error + ")");
      } else if (*replayed != p.negative_caption) {
        v.push_back(rec + "trace replays to '" + *replayed +
                    "' instead of the stored negative");
      }
    });
    report.records_checked[TypeIndex(type)] = lines;
    if (manifest) {
      if (manifest->counts[TypeIndex(type)] != lines) {
        v.push_back("manifest count for " + std::string(CompTypeName(type)) +
                    " is " + std::to_string(manifest->counts[TypeIndex(type)]) +
                    " but " + file + " has " + std::to_string(lines) +
                    " records");
      }
      for (const auto& id : manifest->skipped[TypeIndex(type)]) {
        if (ids.count(id) != 0) {
          v.push_back("id '" + id + "' is listed as skipped but present in " +
                      file);
        }
      }
    }
  }
  return report;
}

}  // namespace navero
