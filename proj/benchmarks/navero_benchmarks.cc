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

#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "navero/augmenter.h"
#include "navero/eval_harness.h"
#include "navero/lexicon.h"
#include "navero/loss_lab.h"
#include "navero/provider.h"
#include "navero/rng.h"
#include "navero/text_core.h"

namespace navero {
namespace {

const std::vector<std::string>& Captions() {
  static const std::vector<std::string> captions = {
      "a man in a red shirt is running on the beach",
      "two small dogs are playing with a wooden ball near the old fence",
      "a woman wearing a blue dress is dancing in front of the car",
      "someone is cooking pasta in a large metal pot",
  };
  return captions;
}

void BM_Tokenize(benchmark::State& state) {
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Tokenize(Captions()[i++ % Captions().size()]));
  }
}
BENCHMARK(BM_Tokenize);

void BM_FindPhraseMatches(benchmark::State& state) {
  std::vector<TokenSeq> tokens;
  for (const auto& c : Captions()) tokens.push_back(Tokenize(c));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        FindPhraseMatches(tokens[i++ % tokens.size()], Lexicon::Builtin(),
                          kPrimaryCategories));
  }
}
BENCHMARK(BM_FindPhraseMatches);

void BM_GenerateNegative(benchmark::State& state) {
  MockUnmaskProvider mock;
  AugmentDeps deps;
  deps.provider = &mock;
  AugConfig cfg;
  cfg.generator = static_cast<GeneratorKind>(state.range(0));
  std::uint64_t n = 0;
  for (auto _ : state) {
    cfg.seed = n++;
    benchmark::DoNotOptimize(
        GenerateNegative(Captions()[n % Captions().size()], "bench", cfg, deps));
  }
}
BENCHMARK(BM_GenerateNegative)
    ->Arg(static_cast<int>(GeneratorKind::kRule))
    ->Arg(static_cast<int>(GeneratorKind::kLlm))
    ->Arg(static_cast<int>(GeneratorKind::kMixed));

loss::Matrix Gaussian(int rows, int cols, Rng& rng) {
  loss::Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = rng.Normal();
  }
  return m;
}

void BM_VtcLoss(benchmark::State& state) {
  Rng rng(1);
  const int b = static_cast<int>(state.range(0));
  const loss::Matrix t = Gaussian(b, 256, rng);
  const loss::Matrix v = Gaussian(b, 256, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(loss::VtcLoss(t, v, loss::kDefaultSigma));
  }
}
BENCHMARK(BM_VtcLoss)->Arg(8)->Arg(64)->Arg(256);

void BM_NegVtcLoss(benchmark::State& state) {
  Rng rng(2);
  const int b = static_cast<int>(state.range(0));
  const loss::NegBatch batch{Gaussian(b, 256, rng), Gaussian(b, 256, rng),
                             Gaussian(b, 256, rng)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(loss::NegVtcLoss(batch, loss::kDefaultSigma));
  }
}
BENCHMARK(BM_NegVtcLoss)->Arg(8)->Arg(64)->Arg(256);

void BM_VtmLoss(benchmark::State& state) {
  Rng rng(3);
  const int b = static_cast<int>(state.range(0));
  const loss::Matrix t = Gaussian(b, 256, rng);
  const loss::Matrix v = Gaussian(b, 256, rng);
  loss::VtmHeadParams head;
  head.w = Gaussian(256, 1, rng).col(0) / 16.0;
  const auto negatives =
      loss::SampleHardNegatives(loss::Similarity(t, v, loss::kDefaultSigma), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(loss::VtmLoss(t, v, head, negatives));
  }
}
BENCHMARK(BM_VtmLoss)->Arg(8)->Arg(64)->Arg(256);

void BM_Metrics(benchmark::State& state) {
  Rng rng(4);
  std::vector<ScoreRecord> records;
  for (int i = 0; i < state.range(0); ++i) {
    records.push_back({std::to_string(i), rng.UniformReal(), rng.UniformReal()});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(Accuracy(records));
    benchmark::DoNotOptimize(HardAccuracy(records));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Metrics)->Arg(1000)->Arg(100000);

}  // namespace
}  // namespace navero

BENCHMARK_MAIN();
