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

#include "pubcoin/circuit.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace pubcoin {

/// Distribution over m-bit strings with probabilities c / 2^n_bits.
/// Only strings with positive mass are stored, sorted by value.
class ExactDist {
 public:
  using Entry = std::pair<std::uint32_t, std::uint64_t>;

  ExactDist() = default;
  ExactDist(unsigned m, unsigned n_bits, std::vector<Entry> mass);

  unsigned m() const { return m_; }
  unsigned n_bits() const { return n_bits_; }
  const std::vector<Entry>& entries() const { return mass_; }
  std::size_t support_size() const { return mass_.size(); }

  std::uint64_t numerator(std::uint32_t y) const;
  Rational probability(std::uint32_t y) const;

  json to_json() const;

 private:
  unsigned m_ = 0;
  unsigned n_bits_ = 0;
  std::vector<Entry> mass_;
};

/// Enumerates all 2^n inputs of c.
ExactDist exact_dist(const Circuit& c);
ExactDist dist_from_table(unsigned n, unsigned m, const std::vector<std::uint32_t>& table);

}  // namespace pubcoin
