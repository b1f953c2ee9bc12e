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

#include "pubcoin/pow2.hpp"

#include <mpfr.h>

#include <cmath>
#include <numeric>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace pubcoin {

namespace {

constexpr unsigned kStartPrecision = 64;
constexpr unsigned kMaxPrecision = 1u << 20;

// RAII holder for an MPFR value.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

Rational to_rational(const Mpfr& v) {
  Rational out;
  mpfr_get_q(out.get_mpq_t(), v.get());
  return out;
}

struct RootKey {
  std::uint64_t q;
  std::uint64_t r;
  unsigned prec;
  bool operator==(const RootKey&) const = default;
};

struct RootKeyHash {
  std::size_t operator()(const RootKey& k) const {
    std::uint64_t h = k.q * 0x9E3779B97F4A7C15ull;
    h ^= k.r + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
    h ^= k.prec + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

// Rigorous enclosure of 2^(r/q).
const Interval& root_enclosure(std::uint64_t q, std::uint64_t r, unsigned prec) {
  thread_local std::unordered_map<RootKey, Interval, RootKeyHash> cache;
  RootKey key{q, r, prec};
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  if (cache.size() > 200000) cache.clear();

  Mpfr e(prec + 64), v(prec);
  Interval out;
  mpfr_set_ui(e.get(), r, MPFR_RNDD);
  mpfr_div_ui(e.get(), e.get(), q, MPFR_RNDD);
  mpfr_exp2(v.get(), e.get(), MPFR_RNDD);
  out.lo = to_rational(v);
  mpfr_set_ui(e.get(), r, MPFR_RNDU);
  mpfr_div_ui(e.get(), e.get(), q, MPFR_RNDU);
  mpfr_exp2(v.get(), e.get(), MPFR_RNDU);
  out.hi = to_rational(v);
  return cache.emplace(key, std::move(out)).first->second;
}

// Enclosure of R^(1/k), R >= 0.
Interval radical_enclosure(const Rational& radius_power, unsigned k, unsigned prec) {
  Mpfr x(prec), y(prec);
  Interval out;
  mpfr_set_q(x.get(), radius_power.get_mpq_t(), MPFR_RNDD);
  mpfr_rootn_ui(y.get(), x.get(), k, MPFR_RNDD);
  out.lo = to_rational(y);
  mpfr_set_q(x.get(), radius_power.get_mpq_t(), MPFR_RNDU);
  mpfr_rootn_ui(y.get(), x.get(), k, MPFR_RNDU);
  out.hi = to_rational(y);
  return out;
}

// Splits numerator/q into floor part s and residue r in [0, q).
std::pair<long long, std::uint64_t> split_exponent(long long numerator, std::uint64_t q) {
  const long long qq = static_cast<long long>(q);
  long long s = numerator / qq;
  long long r = numerator % qq;
  if (r < 0) {
    r += qq;
    --s;
  }
  return {s, static_cast<std::uint64_t>(r)};
}

}  // namespace

int compare_with_pow2(const Rational& x, const Rational& e) {
  if (sgn(x) <= 0) return -1;
  const BigInt& p = e.get_num();
  const BigInt& qbig = e.get_den();
  if (!qbig.fits_ulong_p() || !p.fits_slong_p()) throw DomainError("exponent too large");
  const unsigned long q = qbig.get_ui();
  const long pe = p.get_si();
  BigInt lhs, rhs;
  mpz_pow_ui(lhs.get_mpz_t(), x.get_num_mpz_t(), q);
  mpz_pow_ui(rhs.get_mpz_t(), x.get_den_mpz_t(), q);
  if (pe >= 0) {
    mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), static_cast<mp_bitcnt_t>(pe));
  } else {
    mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), static_cast<mp_bitcnt_t>(-pe));
  }
  return cmp(lhs, rhs) < 0 ? -1 : (lhs == rhs ? 0 : 1);
}

Pow2Sum::Pow2Sum(const Rational& value) {
  if (sgn(value) != 0) coeffs_.emplace(0, value);
}

Pow2Sum Pow2Sum::power(const Rational& coeff, const Rational& exponent) {
  if (!exponent.get_den().fits_ulong_p() || !exponent.get_num().fits_slong_p()) {
    throw DomainError("exponent too large");
  }
  return power(coeff, exponent.get_num().get_si(), exponent.get_den().get_ui());
}

Pow2Sum Pow2Sum::power(const Rational& coeff, long long numerator, std::uint64_t q) {
  if (q == 0) throw DomainError("root order must be positive");
  Pow2Sum out;
  out.q_ = q;
  out.add_power(coeff, numerator);
  return out;
}

void Pow2Sum::add_power(const Rational& coeff, long long numerator) {
  if (sgn(coeff) == 0) return;
  auto [s, r] = split_exponent(numerator, q_);
  Rational term = coeff * pow2(s);
  auto [it, inserted] = coeffs_.try_emplace(r, term);
  if (!inserted) {
    it->second += term;
    if (sgn(it->second) == 0) coeffs_.erase(it);
  }
}

bool Pow2Sum::is_rational() const {
  return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_.begin()->first == 0);
}

Rational Pow2Sum::rational_part() const {
  auto it = coeffs_.find(0);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

Interval Pow2Sum::enclose(unsigned precision_bits) const {
  Interval out{Rational(0), Rational(0)};
  for (const auto& [r, c] : coeffs_) {
    if (r == 0) {
      out.lo += c;
      out.hi += c;
      continue;
    }
    const Interval& root = root_enclosure(q_, r, precision_bits);
    if (sgn(c) > 0) {
      out.lo += c * root.lo;
      out.hi += c * root.hi;
    } else {
      out.lo += c * root.hi;
      out.hi += c * root.lo;
    }
  }
  return out;
}

int Pow2Sum::sign() const {
  if (is_rational()) return sgn(rational_part());
  for (unsigned prec = kStartPrecision; prec <= kMaxPrecision; prec *= 2) {
    Interval iv = enclose(prec);
    if (sgn(iv.lo) > 0) return 1;
    if (sgn(iv.hi) < 0) return -1;
  }
  throw Error("sign refinement did not converge");
}

int Pow2Sum::compare(const Rational& r) const {
  Pow2Sum diff = *this;
  diff -= Pow2Sum(r);
  return diff.sign();
}

int Pow2Sum::compare(const Pow2Sum& other) const { return (*this - other).sign(); }

BigInt Pow2Sum::floor() const {
  if (is_rational()) return floor_of(rational_part());
  for (unsigned prec = kStartPrecision; prec <= kMaxPrecision; prec *= 2) {
    Interval iv = enclose(prec);
    BigInt lo = floor_of(iv.lo);
    if (lo == floor_of(iv.hi)) return lo;
  }
  throw Error("floor refinement did not converge");
}

BigInt Pow2Sum::ceil() const {
  if (is_rational()) return ceil_of(rational_part());
  // An irrational value is never an integer.
  return floor() + 1;
}

double Pow2Sum::to_double() const {
  Interval iv = enclose(kStartPrecision);
  return (iv.lo.get_d() + iv.hi.get_d()) / 2.0;
}

double Pow2Sum::log2_estimate() const {
  Interval iv = enclose(kStartPrecision);
  if (sgn(iv.lo) <= 0) iv = enclose(512);
  if (sgn(iv.hi) <= 0) throw DomainError("log2 of a non-positive value");
  const Rational& probe = sgn(iv.lo) > 0 ? iv.lo : iv.hi;
  Mpfr x(kStartPrecision);
  mpfr_set_q(x.get(), probe.get_mpq_t(), MPFR_RNDN);
  mpfr_log2(x.get(), x.get(), MPFR_RNDN);
  return mpfr_get_d(x.get(), MPFR_RNDN);
}

std::string Pow2Sum::to_string() const {
  if (coeffs_.empty()) return "0/1";
  std::ostringstream out;
  bool first = true;
  for (const auto& [r, c] : coeffs_) {
    if (!first) out << " + ";
    first = false;
    out << pubcoin::to_string(c);
    if (r != 0) out << "*2^(" << r << "/" << q_ << ")";
  }
  return out.str();
}

Pow2Sum Pow2Sum::lifted(std::uint64_t order) const {
  if (order == q_) return *this;
  if (order % q_ != 0) throw DomainError("root order lift must be a multiple");
  const std::uint64_t factor = order / q_;
  Pow2Sum out;
  out.q_ = order;
  for (const auto& [r, c] : coeffs_) out.coeffs_.emplace(r * factor, c);
  return out;
}

Pow2Sum& Pow2Sum::operator+=(const Pow2Sum& rhs) {
  if (rhs.coeffs_.empty()) return *this;
  if (rhs.q_ != q_) {
    const std::uint64_t order = std::lcm(q_, rhs.q_);
    if (order != q_) *this = lifted(order);
    if (order != rhs.q_) return *this += rhs.lifted(order);
  }
  for (const auto& [r, c] : rhs.coeffs_) {
    auto [it, inserted] = coeffs_.try_emplace(r, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) coeffs_.erase(it);
    }
  }
  return *this;
}

Pow2Sum& Pow2Sum::operator-=(const Pow2Sum& rhs) { return *this += -rhs; }

Pow2Sum& Pow2Sum::operator*=(const Rational& rhs) {
  if (sgn(rhs) == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [r, c] : coeffs_) c *= rhs;
  return *this;
}

Pow2Sum Pow2Sum::operator-() const {
  Pow2Sum out = *this;
  for (auto& [r, c] : out.coeffs_) c = -c;
  return out;
}

Pow2Sum operator*(const Pow2Sum& lhs, const Pow2Sum& rhs) {
  const std::uint64_t order = std::lcm(lhs.q_, rhs.q_);
  const Pow2Sum a = lhs.lifted(order);
  const Pow2Sum b = rhs.lifted(order);
  Pow2Sum out;
  out.q_ = order;
  for (const auto& [ra, ca] : a.coeffs_) {
    for (const auto& [rb, cb] : b.coeffs_) {
      out.add_power(ca * cb, static_cast<long long>(ra + rb));
    }
  }
  return out;
}

bool operator==(const Pow2Sum& lhs, const Pow2Sum& rhs) { return (lhs - rhs).is_zero(); }

Pow2Sum pow_int(const Pow2Sum& base, unsigned exponent) {
  Pow2Sum out(Rational(1));
  Pow2Sum b = base;
  while (exponent > 0) {
    if (exponent & 1u) out = out * b;
    exponent >>= 1;
    if (exponent > 0) b = b * b;
  }
  return out;
}

long long floor_log2(const Pow2Sum& v) {
  if (v.sign() <= 0) throw DomainError("floor_log2 of a non-positive value");
  long long k = static_cast<long long>(std::floor(v.log2_estimate()));
  while (v.compare(pow2(k)) < 0) --k;
  while (v.compare(pow2(k + 1)) >= 0) ++k;
  return k;
}

bool abs_le(const Rational& d, const Rational& radius_power, unsigned k) {
  if (sgn(radius_power) < 0) throw DomainError("negative radius");
  Rational a = abs(d);
  return cmp(rational_pow(a, k), radius_power) <= 0;
}

bool abs_le(const Pow2Sum& d, const Rational& radius_power, unsigned k) {
  if (d.is_rational()) return abs_le(d.rational_part(), radius_power, k);
  if (sgn(radius_power) < 0) throw DomainError("negative radius");
  for (unsigned prec = kStartPrecision; prec <= 1024; prec *= 2) {
    Interval iv = d.enclose(prec);
    Rational abs_lo, abs_hi;
    if (sgn(iv.lo) >= 0) {
      abs_lo = iv.lo;
      abs_hi = iv.hi;
    } else if (sgn(iv.hi) <= 0) {
      abs_lo = -iv.hi;
      abs_hi = -iv.lo;
    } else {
      abs_lo = 0;
      abs_hi = cmp(-iv.lo, iv.hi) > 0 ? Rational(-iv.lo) : iv.hi;
    }
    Interval root = radical_enclosure(radius_power, k, prec);
    if (cmp(abs_hi, root.lo) <= 0) return true;
    if (cmp(abs_lo, root.hi) > 0) return false;
  }
  // Near-tie: decide |d|^k <= R exactly in the field.
  Pow2Sum a = d.sign() < 0 ? -d : d;
  return pow_int(a, k).compare(radius_power) <= 0;
}

bool in_window(const Pow2Sum& x, const Rational& center, const Rational& radius_power, unsigned k) {
  return abs_le(x - Pow2Sum(center), radius_power, k);
}

}  // namespace pubcoin
