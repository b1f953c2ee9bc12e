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

#include "pubcoin/coins.hpp"
#include "pubcoin/exact_dist.hpp"

#include <vector>

namespace pubcoin {

/// Uniform distribution on {alpha0 (1+3 delta)^i : 0 <= i <= floor(1/delta)}.
class ThresholdDist {
 public:
  /// Requires delta in (0, 1/3).
  ThresholdDist(Rational alpha0, Rational delta);
  /// Any delta > 0; used where a caller needs the grid outside the usual range.
  static ThresholdDist unchecked(Rational alpha0, Rational delta);

  const Rational& alpha0() const { return alpha0_; }
  const Rational& delta() const { return delta_; }
  const std::vector<Rational>& support() const { return support_; }

 private:
  ThresholdDist() = default;
  void build();

  Rational alpha0_;
  Rational delta_;
  std::vector<Rational> support_;
};

Rational sample_threshold(const ThresholdDist& td, CoinStream& coins);

struct GammaProbs {
  Rational gH;   // Pr_{y <- P}[P(y) >= alpha 2^-m]
  Rational gUH;  // Pr_{y uniform}[P(y) >= alpha 2^-m]
  Rational gUY;  // Pr_{y uniform}[y in V]
  Rational gYL;  // Pr_{y <- P}[P(y) < alpha 2^-m and y in V]
};

/// y in V for every y in {0,1}^m, by witness search.
std::vector<bool> yes_set(const NondetCircuit& v);

/// P(y) >= alpha 2^-m, exactly.
bool is_heavy(std::uint64_t numerator, unsigned n_bits, unsigned m, const Rational& alpha);

GammaProbs gamma_probs(const ExactDist& d, const std::vector<bool>& yes, const Rational& alpha);
GammaProbs gamma_probs(const Circuit& c, const NondetCircuit& v, const Rational& alpha);

/// Mass of y with (1-band) alpha 2^-m <= P(y) <= (1+band) alpha 2^-m.
Rational mass_near_threshold(const ExactDist& d, const Rational& alpha, const Rational& band);

enum class TailKind { Chernoff, Hoeffding };

/// exp(-dev^2 k / 2) or exp(-2 dev^2 k / range^2).
double tail_bound(TailKind kind, long long k, double dev, double range = 1.0);

}  // namespace pubcoin
