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

#include "pubcoin/histogram.hpp"

#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace pubcoin {

/// Brute-force facts about a circuit: its full table, preimage lists and
/// distribution. Provers use all of it; verifiers only use the table, as a
/// cache for evaluating C.
class CircuitKnowledge {
 public:
  explicit CircuitKnowledge(Circuit c);

  const Circuit& circuit() const { return circuit_; }
  unsigned n() const { return circuit_.n(); }
  unsigned m() const { return circuit_.m(); }

  std::uint32_t eval(std::uint32_t x) const { return table_[x]; }
  const std::vector<std::uint32_t>& table() const { return table_; }
  std::uint64_t count(std::uint32_t y) const { return offsets_[y + 1] - offsets_[y]; }
  /// C^{-1}(y), ascending.
  std::span<const std::uint32_t> preimages(std::uint32_t y) const;
  const ExactDist& dist() const { return dist_; }

  /// Bucket of P(y) without the t limit, or nullopt when P(y) = 0.
  std::optional<long long> label(std::uint32_t y, const Rational& eps) const;

 private:
  Circuit circuit_;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint64_t> offsets_;
  std::vector<std::uint32_t> flat_;
  ExactDist dist_;
};

using KnowledgePtr = std::shared_ptr<const CircuitKnowledge>;

KnowledgePtr make_knowledge(const Circuit& c);

}  // namespace pubcoin
