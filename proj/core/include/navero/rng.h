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

#ifndef NAVERO_RNG_H_
#define NAVERO_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace navero {

// Portable seeded random source.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The engine is seeded with SplitMix64(seed); distributions are
// implemented here (not with <random> distributions, whose algorithms are
// implementation-defined) so draws are reproducible across platforms:
//
//   UniformIndex(n): r = next(); accept when r >= (2^64 - n) mod n; return
//                    r mod n.
//   UniformReal():   (next() >> 11) * 2^-53, in [0, 1).
//   Normal():        Box-Muller, u1 = 1 - UniformReal(), u2 = UniformReal(),
//                    sqrt(-2 ln u1) * cos(2 pi u2). One value per two draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t NextU64() { return engine_(); }

  // Uniform integer in [0, n). n must be positive.
  std::size_t UniformIndex(std::size_t n);

  double UniformReal();

  double Normal();

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer applied to `x`.
std::uint64_t SplitMix64(std::uint64_t x);

// 64-bit FNV-1a over the bytes of `text`.
std::uint64_t Fnv1a64(std::string_view text);

// Seed for an independent substream identified by (seed, key, index):
// SplitMix64(SplitMix64(seed ^ Fnv1a64(key)) + index).
std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view key,
                         std::uint64_t index);

}  // namespace navero

#endif  // NAVERO_RNG_H_
