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

#include "pubcoin/exact_dist.hpp"

#include <algorithm>

namespace pubcoin {

ExactDist::ExactDist(unsigned m, unsigned n_bits, std::vector<Entry> mass)
    : m_(m), n_bits_(n_bits), mass_(std::move(mass)) {
  if (m > kMaxWidth) throw WidthError("support width exceeds 24");
  if (n_bits > 62) throw WidthError("denominator exponent too large");
  std::sort(mass_.begin(), mass_.end());
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < mass_.size(); ++k) {
    const auto& [y, c] = mass_[k];
    if (c == 0) throw DomainError("zero-mass entries must be omitted");
    if (m < 32 && (y >> m) != 0) throw WidthError("support point wider than m");
    if (k > 0 && mass_[k - 1].first == y) throw DomainError("duplicate support point");
    total += c;
  }
  if (total != (std::uint64_t{1} << n_bits)) throw DomainError("numerators must sum to 2^n");
}

std::uint64_t ExactDist::numerator(std::uint32_t y) const {
  auto it = std::lower_bound(mass_.begin(), mass_.end(), Entry{y, 0});
  return (it != mass_.end() && it->first == y) ? it->second : 0;
}

Rational ExactDist::probability(std::uint32_t y) const {
  return Rational(BigInt(static_cast<unsigned long>(numerator(y)))) * pow2(-static_cast<long long>(n_bits_));
}

json ExactDist::to_json() const {
  json mass = json::array();
  for (const auto& [y, c] : mass_) mass.push_back({bits_to_string(y, m_), c});
  return {{"m", m_}, {"n_bits", n_bits_}, {"mass", std::move(mass)}};
}

ExactDist dist_from_table(unsigned n, unsigned m, const std::vector<std::uint32_t>& table) {
  if (m > kMaxWidth) throw WidthError("support width exceeds 24");
  std::vector<std::uint64_t> counts(std::size_t{1} << m, 0);
  for (auto y : table) ++counts.at(y);
  std::vector<ExactDist::Entry> mass;
  for (std::size_t y = 0; y < counts.size(); ++y) {
    if (counts[y] != 0) mass.emplace_back(static_cast<std::uint32_t>(y), counts[y]);
  }
  return ExactDist(m, n, std::move(mass));
}

ExactDist exact_dist(const Circuit& c) {
  if (c.n() > kMaxWidth) throw BudgetError("enumeration limited to n <= 24");
  return dist_from_table(c.n(), c.m(), c.tabulate());
}

}  // namespace pubcoin
