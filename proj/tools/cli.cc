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

#include "cli.h"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "navero/augmenter.h"
#include "navero/dataset_io.h"
#include "navero/error.h"
#include "navero/eval_harness.h"
#include "navero/lexicon.h"
#include "navero/loss_lab.h"
#include "navero/provider.h"
#include "navero/tagger.h"

namespace navero::cli {
namespace {

namespace fs = std::filesystem;

// Options shared by augment and build-benchmark.
struct GenerationFlags {
  std::string generator = "mixed";
  int rounds = 5;
  std::uint64_t seed = 0;
  std::string types = "any";
  double mix_probability = 0.5;
  int top_k = 10;
  int workers = 1;
  std::string lexicon;
  std::string action_list = "augmented";
  std::string provider_url;
  int provider_timeout_ms = 5000;
  int provider_retries = 2;
  int max_in_flight = 4;
  std::string mock_table;
};

struct Flags {
  bool quiet = false;
  GenerationFlags gen;
  std::string input;
  std::string output;
  std::string source;
  std::string benchmark;
  std::string augmented;
  std::string scores_dir;
  std::vector<std::string> scores;
  bool json = false;
  int batch = 4;
  int dim = 8;
  double sigma = 0.5;
  double eps = 1e-5;
  double tolerance = 1e-5;
  std::uint64_t loss_seed = 0;
  loss::ToyTrainConfig toy;
  std::string objectives = "vtc,vtm,neg_vtm";
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(' ');
    const auto last = item.find_last_not_of(' ');
    if (first != std::string::npos) out.push_back(item.substr(first, last - first + 1));
  }
  return out;
}

std::optional<std::vector<CompType>> ParseTypes(const std::string& text) {
  if (text == "any") return std::nullopt;
  std::vector<CompType> types;
  for (const auto& name : SplitList(text)) {
    const auto type = ParseCompType(name);
    if (!type) throw UsageError("unknown type '" + name + "' in --types");
    if (std::find(types.begin(), types.end(), *type) == types.end()) {
      types.push_back(*type);
    }
  }
  if (types.empty()) throw UsageError("--types must name at least one type");
  return types;
}

void AddGenerationOptions(CLI::App* cmd, GenerationFlags* g, bool with_types) {
  cmd->add_option("--generator", g->generator, "rule, llm or mixed")
      ->check(CLI::IsMember({"rule", "llm", "mixed"}))
      ->capture_default_str();
  cmd->add_option("--rounds", g->rounds, "Augmentation rounds per negative")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", g->seed, "Random seed")->capture_default_str();
  if (with_types) {
    cmd->add_option("--types", g->types,
                    "Comma-separated types to corrupt (action, attribute, "
                    "relation, object) or 'any'")
        ->capture_default_str();
  }
  cmd->add_option("--mix-probability", g->mix_probability,
                  "Probability of the rule generator in mixed rounds")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--top-k", g->top_k, "Candidates requested from the provider")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--workers", g->workers, "Parallel augmentation workers")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--lexicon", g->lexicon, "Lexicon file (default: builtin)")
      ->envname("NAVERO_LEXICON");
  cmd->add_option("--action-list", g->action_list,
                  "Action word list for rule rounds: augmented or old")
      ->check(CLI::IsMember({"augmented", "old"}))
      ->capture_default_str();
  cmd->add_option("--provider-url", g->provider_url,
                  "Unmasking service base URL (default: builtin mock)")
      ->envname("NAVERO_PROVIDER_URL");
  cmd->add_option("--provider-timeout-ms", g->provider_timeout_ms,
                  "Per-request provider timeout")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--provider-retries", g->provider_retries,
                  "Retries after a failed provider request")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--max-in-flight", g->max_in_flight,
                  "Concurrent provider requests")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--mock-table", g->mock_table,
                  "JSONL lookup table for the builtin mock provider")
      ->check(CLI::ExistingFile);
}

// Owns the collaborators a generation run needs.
struct Pipeline {
  std::optional<Lexicon> file_lexicon;
  const Lexicon* lexicon = nullptr;
  std::unique_ptr<HeuristicTagger> tagger;
  std::unique_ptr<UnmaskProvider> provider;
  AugConfig cfg;

  AugmentDeps deps() const { return {lexicon, tagger.get(), provider.get()}; }
};

std::unique_ptr<Pipeline> MakePipeline(const GenerationFlags& g,
                                       std::optional<std::vector<CompType>> types,
                                       bool quiet, std::ostream& err) {
  auto p = std::make_unique<Pipeline>();
  if (!g.lexicon.empty()) {
    p->file_lexicon = Lexicon::FromFile(g.lexicon);
    p->lexicon = &*p->file_lexicon;
  } else {
    p->lexicon = &Lexicon::Builtin();
  }
  p->tagger = std::make_unique<HeuristicTagger>(*p->lexicon);

  AugConfig& cfg = p->cfg;
  cfg.generator = *ParseGeneratorKind(g.generator);
  cfg.rounds = g.rounds;
  cfg.types = std::move(types);
  cfg.seed = g.seed;
  cfg.mix_probability = g.mix_probability;
  cfg.action_list = g.action_list == "old" ? ActionList::kOld : ActionList::kAugmented;
  cfg.top_k = g.top_k;
  cfg.Validate();

  if (cfg.generator != GeneratorKind::kRule) {
    if (!g.provider_url.empty()) {
      HttpProviderOptions options;
      options.url = g.provider_url;
      options.timeout_ms = g.provider_timeout_ms;
      options.retries = g.provider_retries;
      options.max_in_flight = g.max_in_flight;
      p->provider = std::make_unique<HttpUnmaskProvider>(options);
    } else {
      auto mock = std::make_unique<MockUnmaskProvider>(*p->lexicon);
      if (!g.mock_table.empty()) mock->LoadTable(g.mock_table);
      if (!quiet) {
        err << "navero: no --provider-url given; using the builtin mock "
               "unmasking provider\n";
      }
      p->provider = std::move(mock);
    }
  }
  return p;
}

int RunAugment(const Flags& f, std::ostream& err) {
  auto p = MakePipeline(f.gen, ParseTypes(f.gen.types), f.quiet, err);
  const auto pairs = ReadPairs(f.input);
  const AugmentRun run = AugmentPairs(pairs, p->cfg, p->deps(), f.gen.workers);
  WriteAugmented(run.pairs, f.output);
  if (!f.quiet) {
    err << "navero: wrote " << run.pairs.size() << " augmented pairs to "
        << f.output << " (" << run.skipped.size() << " skipped)\n";
    for (const auto& id : run.skipped) err << "  skipped: " << id << "\n";
  }
  return kExitOk;
}

int RunBuildBenchmark(const Flags& f, std::ostream& err) {
  auto p = MakePipeline(f.gen, std::nullopt, f.quiet, err);
  std::vector<VideoTextPair> test;
  std::size_t ignored = 0;
  for (auto& pair : ReadPairs(f.input)) {
    if (pair.split == Split::kTest) {
      test.push_back(std::move(pair));
    } else {
      ++ignored;
    }
  }
  if (test.empty()) {
    err << "navero: " << f.input << " has no test-split pairs\n";
    return kExitValidation;
  }
  if (ignored > 0 && !f.quiet) {
    err << "navero: ignoring " << ignored << " train-split pairs\n";
  }
  const std::string source =
      f.source.empty() ? fs::path(f.input).stem().string() : f.source;
  const BenchmarkBundle bundle =
      BuildBenchmark(test, p->cfg, p->deps(), source, f.gen.workers);
  WriteBenchmark(bundle, f.output);
  if (!f.quiet) {
    err << "navero: wrote benchmark to " << f.output << ":";
    for (CompType t : kAllCompTypes) {
      err << " " << CompTypeName(t) << "="
          << bundle.manifest.counts[static_cast<std::size_t>(t)];
    }
    err << "\n";
  }
  return kExitOk;
}

int RunValidate(const Flags& f, std::ostream& out, std::ostream& err) {
  std::optional<Lexicon> file_lexicon;
  const Lexicon* lexicon = &Lexicon::Builtin();
  if (!f.gen.lexicon.empty()) {
    file_lexicon = Lexicon::FromFile(f.gen.lexicon);
    lexicon = &*file_lexicon;
  }
  std::vector<std::string> violations;
  if (!f.benchmark.empty()) {
    const ValidationReport report = ValidateBenchmark(f.benchmark, lexicon);
    violations = report.violations;
    std::size_t total = 0;
    for (auto n : report.records_checked) total += n;
    out << "checked " << total << " benchmark records in " << f.benchmark << "\n";
  } else {
    std::vector<AugmentedPair> pairs;
    try {
      pairs = ReadAugmented(f.augmented);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kIo) throw;
      violations.push_back(e.what());
    }
    for (const auto& p : pairs) {
      std::string error;
      const auto replayed = ReplayTrace(p.pair.caption, p.trace, &error);
      if (!replayed) {
        violations.push_back("id '" + p.pair.id + "': " + error);
      } else if (*replayed != p.negative_caption) {
        violations.push_back("id '" + p.pair.id +
                             "': trace does not reproduce the negative");
      }
    }
    out << "checked " << pairs.size() << " augmented records in " << f.augmented
        << "\n";
  }
  for (const auto& v : violations) err << "violation: " << v << "\n";
  out << (violations.empty() ? "PASS" : "FAIL") << " (" << violations.size()
      << " violations)\n";
  return violations.empty() ? kExitOk : kExitValidation;
}

int RunEvaluate(const Flags& f, std::ostream& out) {
  if (f.scores_dir.empty() == f.scores.empty()) {
    throw UsageError("evaluate needs exactly one of --scores-dir or --scores");
  }
  const BenchmarkBundle bundle = ReadBenchmark(f.benchmark);
  std::map<CompType, std::vector<ScoreRecord>> scores;
  if (!f.scores_dir.empty()) {
    for (CompType t : kAllCompTypes) {
      const fs::path path = fs::path(f.scores_dir) / BenchmarkFileName(t);
      if (fs::exists(path)) scores[t] = ReadScores(path);
    }
  } else {
    for (const auto& spec : f.scores) {
      const auto eq = spec.find('=');
      const auto type = eq == std::string::npos
                            ? std::nullopt
                            : ParseCompType(spec.substr(0, eq));
      if (!type) throw UsageError("--scores expects type=path, got '" + spec + "'");
      scores[*type] = ReadScores(spec.substr(eq + 1));
    }
  }
  const MetricReport report = Report(bundle, scores);
  out << (f.json ? RenderJson(report) : RenderTable(report));
  return kExitOk;
}

int RunLossCheck(const Flags& f, std::ostream& out) {
  std::vector<loss::GradientCheck> checks;
  try {
    checks = loss::CheckAllGradients(f.batch, f.dim, f.sigma, f.loss_seed, f.eps);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kRejectedEps ||
        e.code() == ErrorCode::kNonPositiveSigma) {
      throw UsageError(e.what());
    }
    throw;
  }
  nlohmann::ordered_json j;
  j["batch"] = f.batch;
  j["dim"] = f.dim;
  j["sigma"] = f.sigma;
  j["seed"] = f.loss_seed;
  j["eps"] = f.eps;
  j["tolerance"] = f.tolerance;
  j["losses"] = nlohmann::ordered_json::array();
  bool all = true;
  for (const auto& c : checks) {
    const bool pass = c.max_rel_error < f.tolerance;
    all = all && pass;
    j["losses"].push_back({{"loss", c.loss},
                           {"value", c.value},
                           {"max_rel_error", c.max_rel_error},
                           {"pass", pass}});
  }
  j["pass"] = all;
  out << j.dump(2) << "\n";
  return all ? kExitOk : kExitValidation;
}

int RunToyTrain(const Flags& f, std::ostream& out) {
  loss::ToyTrainConfig cfg = f.toy;
  cfg.objectives.clear();
  for (const auto& name : SplitList(f.objectives)) {
    loss::Objective o;
    if (!loss::ParseObjective(name, &o)) {
      throw UsageError("unknown objective '" + name + "'");
    }
    cfg.objectives.insert(o);
  }
  const auto trajectory = loss::ToyTrain(cfg);
  std::ostringstream csv;
  csv.precision(17);
  csv << "step,loss,margin\n";
  for (const auto& s : trajectory) {
    csv << s.step << "," << s.loss << "," << s.margin << "\n";
  }
  if (f.output.empty()) {
    out << csv.str();
  } else {
    std::ofstream file(f.output, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(ErrorCode::kIo, "cannot create " + f.output);
    file << csv.str();
    if (!file) throw Error(ErrorCode::kIo, "cannot write " + f.output);
  }
  return kExitOk;
}

int ExitCodeFor(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kProvider:
      return kExitProvider;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kRejectedEps:
    case ErrorCode::kNonPositiveSigma:
      return kExitUsage;
    default:
      return kExitValidation;
  }
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Hard-negative caption generation, benchmark building, "
               "evaluation and loss verification",
               "navero"};
  app.require_subcommand(1);
  app.add_flag("-q,--quiet", f.quiet, "Suppress notices on standard error");
  app.set_version_flag("--version", std::string(ToolVersion()));

  auto* augment = app.add_subcommand("augment", "Generate a negative caption per pair");
  augment->add_option("--input", f.input, "Input pairs (JSONL)")
      ->required()
      ->check(CLI::ExistingFile);
  augment->add_option("--output", f.output, "Augmented pairs (JSONL)")->required();
  AddGenerationOptions(augment, &f.gen, true);

  auto* build = app.add_subcommand("build-benchmark",
                                   "Build a four-type benchmark from test pairs");
  build->add_option("--input", f.input, "Input pairs (JSONL)")
      ->required()
      ->check(CLI::ExistingFile);
  build->add_option("--output", f.output, "Bundle directory")->required();
  build->add_option("--source", f.source, "Corpus name for the manifest");
  AddGenerationOptions(build, &f.gen, false);

  auto* validate = app.add_subcommand("validate", "Re-check a bundle or augmented file");
  auto* vb = validate->add_option("--benchmark", f.benchmark, "Bundle directory")
                 ->check(CLI::ExistingDirectory);
  auto* va = validate->add_option("--augmented", f.augmented, "Augmented JSONL file")
                 ->check(CLI::ExistingFile);
  vb->excludes(va);
  validate->add_option("--lexicon", f.gen.lexicon, "Lexicon used for the build")
      ->envname("NAVERO_LEXICON");

  auto* evaluate = app.add_subcommand("evaluate", "Score a bundle with acc and hard acc");
  evaluate->add_option("--benchmark", f.benchmark, "Bundle directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  evaluate->add_option("--scores-dir", f.scores_dir,
                       "Directory with <type>.jsonl score files")
      ->check(CLI::ExistingDirectory);
  evaluate->add_option("--scores", f.scores, "Score file as type=path (repeatable)");
  evaluate->add_flag("--json", f.json, "Emit JSON instead of a table");

  auto* loss_check = app.add_subcommand(
      "loss-check", "Compare analytic loss gradients with finite differences");
  loss_check->add_option("--batch", f.batch)->check(CLI::Range(2, 4096))->capture_default_str();
  loss_check->add_option("--dim", f.dim)->check(CLI::Range(2, 4096))->capture_default_str();
  loss_check->add_option("--sigma", f.sigma)->capture_default_str();
  loss_check->add_option("--seed", f.loss_seed)->capture_default_str();
  loss_check->add_option("--eps", f.eps)->capture_default_str();
  loss_check->add_option("--tolerance", f.tolerance, "Largest accepted relative error")
      ->capture_default_str();

  auto* toy = app.add_subcommand("toy-train",
                                 "Train synthetic embeddings and print the margin");
  toy->add_option("--batch", f.toy.batch)->check(CLI::Range(2, 4096))->capture_default_str();
  toy->add_option("--dim", f.toy.dim)->check(CLI::Range(2, 4096))->capture_default_str();
  toy->add_option("--steps", f.toy.steps)->check(CLI::NonNegativeNumber)->capture_default_str();
  toy->add_option("--lr", f.toy.lr)->capture_default_str();
  toy->add_option("--sigma", f.toy.sigma)->capture_default_str();
  toy->add_option("--seed", f.toy.seed)->capture_default_str();
  toy->add_option("--objectives", f.objectives,
                  "Comma-separated subset of vtc, vtm, neg_vtc, neg_vtm")
      ->capture_default_str();
  toy->add_option("--output", f.output, "CSV file (default: standard output)");

  try {
    app.parse(argc, argv);
    if (validate->parsed() && f.benchmark.empty() && f.augmented.empty()) {
      throw CLI::RequiredError("--benchmark or --augmented");
    }
  } catch (const CLI::CallForHelp&) {
    CLI::App* target = &app;
    for (CLI::App* sub : app.get_subcommands()) target = sub;
    out << target->help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << ToolVersion() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    CLI::App* target = &app;
    for (CLI::App* sub : {augment, build, validate, evaluate, loss_check, toy}) {
      if (sub->parsed()) target = sub;
    }
    err << "navero: " << e.what() << "\n" << target->help();
    return kExitUsage;
  }

  try {
    if (augment->parsed()) return RunAugment(f, err);
    if (build->parsed()) return RunBuildBenchmark(f, err);
    if (validate->parsed()) return RunValidate(f, out, err);
    if (evaluate->parsed()) return RunEvaluate(f, out);
    if (loss_check->parsed()) return RunLossCheck(f, out);
    if (toy->parsed()) return RunToyTrain(f, out);
  } catch (const UsageError& e) {
    err << "navero: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ProviderError& e) {
    err << "navero: " << e.what() << "\n";
    return kExitProvider;
  } catch (const Error& e) {
    err << "navero: " << e.what() << "\n";
    return ExitCodeFor(e);
  } catch (const std::exception& e) {
    err << "navero: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}

}  // namespace navero::cli
