// Copyright 2026 The pubcoin Authors
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

#pragma once

#include <cstdint>

namespace pubcoin {

std::uint64_t splitmix64(std::uint64_t x);

/// Seed for sub-stream `index` of `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Counter-based public coin stream: word k is splitmix64(seed + (k+1)*gamma),
/// so a stream is fully described by its seed and the number of words drawn.
class CoinStream {
 public:
  explicit CoinStream(std::uint64_t seed = 0) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t words_used() const { return counter_; }

  std::uint64_t next_u64();
  /// `count` uniform bits (count <= 64) in the low end of the result.
  std::uint64_t bits(unsigned count);
  /// Uniform in [0, bound), bound >= 1, by rejection.
  std::uint64_t below(std::uint64_t bound);
  bool coin() { return bits(1) != 0; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace pubcoin
