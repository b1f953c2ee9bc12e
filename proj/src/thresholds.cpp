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

#include "pubcoin/thresholds.hpp"

#include <cmath>

namespace pubcoin {

ThresholdDist::ThresholdDist(Rational alpha0, Rational delta) : alpha0_(std::move(alpha0)), delta_(std::move(delta)) {
  if (sgn(delta_) <= 0 || delta_ >= Rational(1, 3)) throw DomainError("delta must lie in (0, 1/3)");
  build();
}

ThresholdDist ThresholdDist::unchecked(Rational alpha0, Rational delta) {
  if (sgn(delta) <= 0) throw DomainError("delta must be positive");
  ThresholdDist td;
  td.alpha0_ = std::move(alpha0);
  td.delta_ = std::move(delta);
  td.build();
  return td;
}

void ThresholdDist::build() {
  if (sgn(alpha0_) <= 0) throw DomainError("alpha0 must be positive");
  BigInt count = floor_of(Rational(1) / delta_);
  if (count > 1000000) throw BudgetError("threshold support too large");
  const Rational ratio = 1 + 3 * delta_;
  Rational a = alpha0_;
  for (long i = 0; i <= count.get_si(); ++i) {
    support_.push_back(a);
    a *= ratio;
  }
}

Rational sample_threshold(const ThresholdDist& td, CoinStream& coins) {
  return td.support()[coins.below(td.support().size())];
}

std::vector<bool> yes_set(const NondetCircuit& v) {
  std::vector<bool> out(std::size_t{1} << v.m());
  for (std::size_t y = 0; y < out.size(); ++y) out[y] = v.find_witness(static_cast<std::uint32_t>(y)).has_value();
  return out;
}

bool is_heavy(std::uint64_t numerator, unsigned n_bits, unsigned m, const Rational& alpha) {
  // c / 2^n >= alpha / 2^m  <=>  c 2^m >= alpha 2^n
  Rational lhs = Rational(BigInt(static_cast<unsigned long>(numerator))) * pow2(m);
  return lhs >= alpha * pow2(n_bits);
}

GammaProbs gamma_probs(const ExactDist& d, const std::vector<bool>& yes, const Rational& alpha) {
  if (yes.size() != (std::size_t{1} << d.m())) throw WidthError("verifier width does not match circuit m");
  if (sgn(alpha) <= 0) throw DomainError("alpha must be positive");
  GammaProbs g;
  BigInt heavy_mass, light_yes_mass, heavy_count, yes_count;
  for (const auto& [y, c] : d.entries()) {
    if (is_heavy(c, d.n_bits(), d.m(), alpha)) {
      heavy_mass += static_cast<unsigned long>(c);
      ++heavy_count;
    } else if (yes[y]) {
      light_yes_mass += static_cast<unsigned long>(c);
    }
  }
  for (bool b : yes) yes_count += b ? 1 : 0;
  const Rational unit = pow2(-static_cast<long long>(d.n_bits()));
  const Rational uniform = pow2(-static_cast<long long>(d.m()));
  g.gH = Rational(heavy_mass) * unit;
  g.gYL = Rational(light_yes_mass) * unit;
  g.gUH = Rational(heavy_count) * uniform;
  g.gUY = Rational(yes_count) * uniform;
  return g;
}

GammaProbs gamma_probs(const Circuit& c, const NondetCircuit& v, const Rational& alpha) {
  if (v.m() != c.m()) throw WidthError("verifier width does not match circuit m");
  return gamma_probs(exact_dist(c), yes_set(v), alpha);
}

Rational mass_near_threshold(const ExactDist& d, const Rational& alpha, const Rational& band) {
  if (sgn(band) < 0) throw DomainError("band must be nonnegative");
  const Rational center = alpha * pow2(-static_cast<long long>(d.m()));
  const Rational lo = (1 - band) * center;
  const Rational hi = (1 + band) * center;
  const Rational unit = pow2(-static_cast<long long>(d.n_bits()));
  BigInt mass;
  for (const auto& [y, c] : d.entries()) {
    Rational p = Rational(BigInt(static_cast<unsigned long>(c))) * unit;
    if (p >= lo && p <= hi) mass += static_cast<unsigned long>(c);
  }
  return Rational(mass) * unit;
}

double tail_bound(TailKind kind, long long k, double dev, double range) {
  if (k < 1) throw DomainError("tail bound needs k >= 1");
  if (dev < 0) throw DomainError("deviation must be nonnegative");
  if (dev == 0) return 1.0;
  if (kind == TailKind::Chernoff) return std::exp(-dev * dev * static_cast<double>(k) / 2.0);
  if (range <= 0) throw DomainError("range must be positive");
  return std::exp(-2.0 * dev * dev * static_cast<double>(k) / (range * range));
}

}  // namespace pubcoin
