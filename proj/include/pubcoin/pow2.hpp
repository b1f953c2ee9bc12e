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

// Exact arithmetic on finite sums  sum_r c_r * 2^(r/q)  with rational c_r.
//
// These numbers form the field Q(2^(1/q)). Since x^q - 2 is irreducible over
// Q, the powers 2^(r/q) for 0 <= r < q are linearly independent, so an element
// is zero exactly when all of its coefficients vanish. Signs of nonzero
// elements are therefore always decidable by refining rigorous interval
// enclosures (MPFR with directed rounding) until the interval excludes zero.

#include "pubcoin/rational.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace pubcoin {

struct Interval {
  Rational lo;
  Rational hi;
};

/// Sign of x - 2^e for rational x and a rational exponent e, decided with
/// the integer comparison x^q <=> 2^p where e = p/q.
int compare_with_pow2(const Rational& x, const Rational& e);

class Pow2Sum {
 public:
  Pow2Sum() = default;
  Pow2Sum(const Rational& value);  // NOLINT(google-explicit-constructor)
  Pow2Sum(long value) : Pow2Sum(Rational(value)) {}  // NOLINT

  /// coeff * 2^exponent (the denominator of the exponent becomes the root order).
  static Pow2Sum power(const Rational& coeff, const Rational& exponent);
  /// coeff * 2^(numerator / q).
  static Pow2Sum power(const Rational& coeff, long long numerator, std::uint64_t q);

  std::uint64_t root_order() const { return q_; }
  /// Adds coeff * 2^(numerator / root_order()).
  void add_power(const Rational& coeff, long long numerator);

  bool is_zero() const { return coeffs_.empty(); }
  bool is_rational() const;
  /// Coefficient of 2^0; equals the value when is_rational().
  Rational rational_part() const;

  int sign() const;
  int compare(const Rational& r) const;
  int compare(const Pow2Sum& other) const;
  BigInt floor() const;
  BigInt ceil() const;

  Interval enclose(unsigned precision_bits) const;
  double to_double() const;
  /// log2 estimate good to about 1e-12 relative; value must be positive.
  double log2_estimate() const;

  std::string to_string() const;

  Pow2Sum& operator+=(const Pow2Sum& rhs);
  Pow2Sum& operator-=(const Pow2Sum& rhs);
  Pow2Sum& operator*=(const Rational& rhs);
  Pow2Sum operator-() const;

  friend Pow2Sum operator+(Pow2Sum lhs, const Pow2Sum& rhs) { return lhs += rhs; }
  friend Pow2Sum operator-(Pow2Sum lhs, const Pow2Sum& rhs) { return lhs -= rhs; }
  friend Pow2Sum operator*(Pow2Sum lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Pow2Sum operator*(const Pow2Sum& lhs, const Pow2Sum& rhs);
  friend bool operator==(const Pow2Sum& lhs, const Pow2Sum& rhs);

  /// Same value expressed over root order `order` (a multiple of root_order()).
  Pow2Sum lifted(std::uint64_t order) const;

  const std::map<std::uint64_t, Rational>& coefficients() const { return coeffs_; }

 private:
  std::uint64_t q_ = 1;
  std::map<std::uint64_t, Rational> coeffs_;  // residue r -> coefficient of 2^(r/q)
};

Pow2Sum pow_int(const Pow2Sum& base, unsigned exponent);

/// Largest integer k with 2^k <= v; v must be positive.
long long floor_log2(const Pow2Sum& v);

/// |d| <= R^(1/k) with R >= 0, decided exactly.
bool abs_le(const Pow2Sum& d, const Rational& radius_power, unsigned k);
bool abs_le(const Rational& d, const Rational& radius_power, unsigned k);

/// x in [center - R^(1/k), center + R^(1/k)].
bool in_window(const Pow2Sum& x, const Rational& center, const Rational& radius_power, unsigned k);

}  // namespace pubcoin
