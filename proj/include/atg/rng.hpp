// Copyright 2026 The atgsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

namespace atg {

// SplitMix64 (Steele, Lea, Flood 2014). Chosen over std::mt19937_64 because
// the whole pipeline, including Bernoulli draws, must be reproducible
// bit-for-bit across platforms and languages; the standard distributions are
// not specified tightly enough for that.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Stream-splitting rule, fixed as part of the output format:
//   trial_seed = mix64(mix64(master ^ GOLDEN*(stream+1)) ^ GOLDEN*(trial+1))
// where GOLDEN = 0x9E3779B97F4A7C15. `stream` indexes the sweep point
// (p-index), `trial` the Monte Carlo trial.
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t stream,
                                std::uint64_t trial) {
  constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
  return mix64(mix64(master ^ kGolden * (stream + 1)) ^ kGolden * (trial + 1));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Bernoulli(p) by threshold comparison on the raw 64-bit draw.
  bool bernoulli(double p) {
    if (p <= 0.0) {
      next_u64();  // keep stream position independent of p
      return false;
    }
    if (p >= 1.0) {
      next_u64();
      return true;
    }
    const auto threshold = static_cast<std::uint64_t>(p * 18446744073709551616.0L);
    return next_u64() < threshold;
  }

  // Uniform integer in [0, n) via Lemire reduction (n > 0).
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  std::uint64_t state_;
};

}  // namespace atg
