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

#include "pubcoin/knowledge.hpp"

namespace pubcoin {

CircuitKnowledge::CircuitKnowledge(Circuit c) : circuit_(std::move(c)) {
  table_ = circuit_.tabulate();
  const std::size_t outputs = std::size_t{1} << circuit_.m();
  offsets_.assign(outputs + 1, 0);
  for (auto y : table_) ++offsets_[y + 1];
  for (std::size_t y = 0; y < outputs; ++y) offsets_[y + 1] += offsets_[y];
  flat_.resize(table_.size());
  std::vector<std::uint64_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t x = 0; x < table_.size(); ++x) flat_[fill[table_[x]]++] = static_cast<std::uint32_t>(x);
  std::vector<ExactDist::Entry> mass;
  for (std::size_t y = 0; y < outputs; ++y) {
    auto c = offsets_[y + 1] - offsets_[y];
    if (c != 0) mass.emplace_back(static_cast<std::uint32_t>(y), c);
  }
  dist_ = ExactDist(circuit_.m(), circuit_.n(), std::move(mass));
}

std::span<const std::uint32_t> CircuitKnowledge::preimages(std::uint32_t y) const {
  return {flat_.data() + offsets_[y], flat_.data() + offsets_[y + 1]};
}

std::optional<long long> CircuitKnowledge::label(std::uint32_t y, const Rational& eps) const {
  auto c = count(y);
  if (c == 0) return std::nullopt;
  BucketParams unbounded(eps, std::numeric_limits<long long>::max());
  return bucket_index_dyadic(c, n(), unbounded);
}

KnowledgePtr make_knowledge(const Circuit& c) { return std::make_shared<const CircuitKnowledge>(c); }

}  // namespace pubcoin
