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

#include <cstdlib>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "cli.h"
#include "navero/dataset_io.h"
#include "test_support.h"

namespace navero {
namespace {

using testing::CliResult;
using testing::FixturePath;
using testing::ReadFileBytes;
using testing::RunCli;
using testing::TempDir;
using testing::WriteFileBytes;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    unsetenv("NAVERO_PROVIDER_URL");
    unsetenv("NAVERO_LEXICON");
    corpus_ = FixturePath("corpus_500.jsonl").string();
  }
  std::string Path(const std::string& name) const { return (dir_ / name).string(); }
  TempDir dir_;
  std::string corpus_;
};

TEST_F(CliTest, NoArgumentsIsUsageError) {
  EXPECT_EQ(RunCli({}).code, cli::kExitUsage);
  const CliResult r = RunCli({"augment"});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("--input"), std::string::npos);
}

TEST_F(CliTest, HelpAndVersion) {
  EXPECT_EQ(RunCli({"--help"}).code, cli::kExitOk);
  const CliResult v = RunCli({"--version"});
  EXPECT_EQ(v.code, cli::kExitOk);
  EXPECT_EQ(v.out, std::string(ToolVersion()) + "\n");
  EXPECT_NE(RunCli({"toy-train", "--help"}).out.find("--objectives"),
            std::string::npos);
}

TEST_F(CliTest, BadFlagValues) {
  EXPECT_EQ(RunCli({"augment", "--input", corpus_, "--output", Path("o"),
                    "--generator", "magic"})
                .code,
            cli::kExitUsage);
  EXPECT_EQ(RunCli({"augment", "--input", corpus_, "--output", Path("o"),
                    "--rounds", "0"})
                .code,
            cli::kExitUsage);
  EXPECT_EQ(RunCli({"augment", "--input", corpus_, "--output", Path("o"),
                    "--types", "colour"})
                .code,
            cli::kExitUsage);
  EXPECT_EQ(RunCli({"augment", "--input", corpus_, "--output", Path("o"),
                    "--mix-probability", "2"})
                .code,
            cli::kExitUsage);
  EXPECT_EQ(RunCli({"loss-check", "--eps", "1e-9"}).code, cli::kExitUsage);
  EXPECT_EQ(RunCli({"loss-check", "--sigma", "0"}).code, cli::kExitUsage);
  EXPECT_EQ(RunCli({"toy-train", "--objectives", "vtc,bogus"}).code,
            cli::kExitUsage);
  EXPECT_EQ(RunCli({"validate"}).code, cli::kExitUsage);
}

TEST_F(CliTest, MissingInputIsUsageError) {
  const CliResult r = RunCli({"augment", "--input", Path("missing.jsonl"),
                              "--output", Path("o.jsonl"), "--generator", "rule"});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("missing.jsonl"), std::string::npos);
}

TEST_F(CliTest, AugmentDeterministicAcrossWorkers) {
  const CliResult a = RunCli({"augment", "--input", corpus_, "--output",
                              Path("a.jsonl"), "--seed", "3", "--workers", "1"});
  ASSERT_EQ(a.code, cli::kExitOk) << a.err;
  EXPECT_NE(a.err.find("builtin mock"), std::string::npos);
  const CliResult b = RunCli({"-q", "augment", "--input", corpus_, "--output",
                              Path("b.jsonl"), "--seed", "3", "--workers", "8"});
  ASSERT_EQ(b.code, cli::kExitOk) << b.err;
  EXPECT_EQ(b.err.find("builtin mock"), std::string::npos);
  EXPECT_EQ(ReadFileBytes(Path("a.jsonl")), ReadFileBytes(Path("b.jsonl")));
  const auto records = ReadAugmented(Path("a.jsonl"));
  EXPECT_GT(records.size(), 450u);
  EXPECT_EQ(RunCli({"validate", "--augmented", Path("a.jsonl")}).code, cli::kExitOk);
}

TEST_F(CliTest, AugmentRuleOnlyNeedsNoProvider) {
  const CliResult r = RunCli({"augment", "--input", corpus_, "--output",
                              Path("r.jsonl"), "--generator", "rule", "--types",
                              "object"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(r.err.find("builtin mock"), std::string::npos);
  for (const auto& p : ReadAugmented(Path("r.jsonl"))) {
    EXPECT_EQ(p.comp_type, CompType::kObject);
    for (const auto& t : p.trace) EXPECT_EQ(t.category, "noun");
  }
}

TEST_F(CliTest, BuildValidateEvaluate) {
  const std::string bench = Path("bench");
  const CliResult b = RunCli({"build-benchmark", "--input", corpus_, "--output",
                              bench, "--source", "fixture", "--workers", "4"});
  ASSERT_EQ(b.code, cli::kExitOk) << b.err;
  const CliResult v = RunCli({"validate", "--benchmark", bench});
  EXPECT_EQ(v.code, cli::kExitOk) << v.err;
  EXPECT_NE(v.out.find("PASS"), std::string::npos);

  const BenchmarkBundle bundle = ReadBenchmark(bench);
  EXPECT_EQ(bundle.manifest.source, "fixture");
  const std::string scores = Path("scores");
  std::filesystem::create_directories(scores);
  for (CompType t : kAllCompTypes) {
    std::string text;
    for (const auto& r : bundle.Records(t)) {
      text += nlohmann::json{{"id", r.pair.id}, {"pos_score", 0.8},
                             {"neg_score", 0.3}}
                  .dump() +
              "\n";
    }
    WriteFileBytes(std::filesystem::path(scores) / BenchmarkFileName(t), text);
  }
  const CliResult e = RunCli({"evaluate", "--benchmark", bench, "--scores-dir", scores});
  ASSERT_EQ(e.code, cli::kExitOk) << e.err;
  EXPECT_NE(e.out.find("100.00/100.00"), std::string::npos) << e.out;
  const CliResult j = RunCli({"evaluate", "--benchmark", bench, "--scores-dir",
                              scores, "--json"});
  ASSERT_EQ(j.code, cli::kExitOk);
  EXPECT_DOUBLE_EQ(nlohmann::json::parse(j.out).at("average").at("acc").get<double>(),
                   1.0);
  const CliResult partial = RunCli(
      {"evaluate", "--benchmark", bench, "--scores",
       "action=" + (std::filesystem::path(scores) / "action.jsonl").string()});
  EXPECT_EQ(partial.code, cli::kExitValidation);
  EXPECT_NE(partial.err.find("MissingType"), std::string::npos) << partial.err;
}

TEST_F(CliTest, ValidateReportsCorruption) {
  const std::string bench = Path("bench");
  ASSERT_EQ(RunCli({"build-benchmark", "--input", corpus_, "--output", bench,
                    "--generator", "rule"})
                .code,
            cli::kExitOk);
  auto manifest = nlohmann::ordered_json::parse(ReadFileBytes(bench + "/manifest.json"));
  manifest["counts"]["object"] = manifest["counts"]["object"].get<int>() + 1;
  WriteFileBytes(bench + "/manifest.json", manifest.dump(2) + "\n");
  const CliResult v = RunCli({"validate", "--benchmark", bench});
  EXPECT_EQ(v.code, cli::kExitValidation);
  EXPECT_NE(v.out.find("FAIL"), std::string::npos);
  EXPECT_NE(v.err.find("manifest count for object"), std::string::npos);
}

TEST_F(CliTest, BuildWithoutTestPairs) {
  WriteFileBytes(Path("train.jsonl"),
                 "{\"id\": \"a\", \"media_id\": \"m\", \"caption\": \"a red car\"}\n");
  EXPECT_EQ(RunCli({"build-benchmark", "--input", Path("train.jsonl"), "--output",
                    Path("b")})
                .code,
            cli::kExitValidation);
}

TEST_F(CliTest, UnreachableProviderExitsThree) {
  int port = 0;
  {
    httplib::Server probe;
    port = probe.bind_to_any_port("127.0.0.1");
  }
  const CliResult r = RunCli(
      {"augment", "--input", corpus_, "--output", Path("o.jsonl"), "--generator",
       "llm", "--provider-url", "http://127.0.0.1:" + std::to_string(port),
       "--provider-retries", "0", "--provider-timeout-ms", "200"});
  EXPECT_EQ(r.code, cli::kExitProvider) << r.err;
}

TEST_F(CliTest, ProviderUrlFromEnvironment) {
  httplib::Server server;
  server.Post("/unmask", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"model_id":"env","candidates":[{"token":"zebra","score":1}]})",
                    "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  WriteFileBytes(Path("one.jsonl"),
                 "{\"id\": \"a\", \"media_id\": \"m\", \"caption\": \"a dog runs\"}\n");
  setenv("NAVERO_PROVIDER_URL", ("http://127.0.0.1:" + std::to_string(port)).c_str(), 1);
  const CliResult r = RunCli({"augment", "--input", Path("one.jsonl"), "--output",
                              Path("o.jsonl"), "--generator", "llm", "--rounds", "1",
                              "--types", "object"});
  unsetenv("NAVERO_PROVIDER_URL");
  server.stop();
  thread.join();
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto out = ReadAugmented(Path("o.jsonl"));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].negative_caption, "a zebra runs");
  EXPECT_TRUE(out[0].trace[0].provider_latency_ms.has_value());
}

TEST_F(CliTest, MockTableFlag) {
  WriteFileBytes(Path("one.jsonl"),
                 "{\"id\": \"bus\", \"media_id\": \"m\", \"caption\": \"a man and a "
                 "woman are talking at a bus stop\"}\n");
  const CliResult r = RunCli(
      {"augment", "--input", Path("one.jsonl"), "--output", Path("o.jsonl"),
       "--generator", "llm", "--rounds", "1", "--types", "action", "--mock-table",
       FixturePath("mock_table.jsonl").string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(ReadAugmented(Path("o.jsonl"))[0].negative_caption,
            "a man and a woman are pictured at a bus stop");
}

TEST_F(CliTest, CustomLexicon) {
  WriteFileBytes(Path("l.lex"), "[color]\nred\nteal\n");
  WriteFileBytes(Path("one.jsonl"),
                 "{\"id\": \"a\", \"media_id\": \"m\", \"caption\": \"a red car\"}\n");
  const CliResult r = RunCli({"augment", "--input", Path("one.jsonl"), "--output",
                              Path("o.jsonl"), "--generator", "rule", "--lexicon",
                              Path("l.lex"), "--rounds", "1"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(ReadAugmented(Path("o.jsonl"))[0].negative_caption, "a teal car");
}

TEST_F(CliTest, LossCheckJson) {
  const CliResult r = RunCli({"loss-check", "--batch", "4", "--dim", "8"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.out << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.at("pass").get<bool>());
  EXPECT_EQ(j.at("losses").size(), 4u);
  EXPECT_EQ(j.at("losses").at(0).at("loss"), "vtc");
}

TEST_F(CliTest, ToyTrainCsv) {
  const CliResult r = RunCli({"toy-train", "--steps", "20", "--output", Path("t.csv")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const std::string csv = ReadFileBytes(Path("t.csv"));
  EXPECT_EQ(csv.rfind("step,loss,margin\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 22);
  const CliResult d = RunCli({"toy-train", "--lr", "1000"});
  EXPECT_EQ(d.code, cli::kExitValidation);
  EXPECT_NE(d.err.find("DivergenceDetected"), std::string::npos) << d.err;
}

}  // namespace
}  // namespace navero
