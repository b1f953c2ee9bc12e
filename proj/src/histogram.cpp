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

#include "pubcoin/histogram.hpp"

#include <unordered_map>

namespace pubcoin {

namespace {

constexpr long long kDenseJsonLimit = 4096;

long long bit_length(const BigInt& v) { return static_cast<long long>(mpz_sizeinbase(v.get_mpz_t(), 2)); }

// Bit length of c^q, memoised per thread.
long long power_bit_length(std::uint64_t c, unsigned long q) {
  struct Key {
    std::uint64_t c;
    unsigned long q;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const { return std::hash<std::uint64_t>()(k.c * 1000003u ^ k.q); }
  };
  thread_local std::unordered_map<Key, long long, KeyHash> memo;
  Key key{c, q};
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  if (memo.size() > 1u << 20) memo.clear();
  BigInt base(static_cast<unsigned long>(c)), power;
  mpz_pow_ui(power.get_mpz_t(), base.get_mpz_t(), q);
  long long out = bit_length(power);
  memo.emplace(key, out);
  return out;
}

Rational parse_entry(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw ParseError("histogram entries must be rational strings");
}

}  // namespace

BucketParams::BucketParams(Rational eps_value, long long t_value) : eps(std::move(eps_value)), t(t_value) {
  eps.canonicalize();
  if (sgn(eps) <= 0 || eps >= 1) throw DomainError("eps must lie in (0,1)");
  if (t < 1) throw DomainError("t must be at least 1");
  if (!eps.get_den().fits_ulong_p()) throw DomainError("eps denominator too large");
}

long long default_t(unsigned n, const Rational& eps) {
  BigInt t = ceil_of(Rational(n) / eps);
  if (!t.fits_slong_p()) throw DomainError("t too large");
  return std::max<long long>(1, t.get_si());
}

long long raw_bucket_index(const Rational& prob, const Rational& eps) {
  if (sgn(prob) <= 0) throw DomainError("zero probability has no bucket");
  if (prob > 1) throw DomainError("probability exceeds 1");
  const unsigned long q = eps.get_den().get_ui();
  const unsigned long p = eps.get_num().get_ui();
  BigInt nq, dq, ratio;
  mpz_pow_ui(nq.get_mpz_t(), prob.get_num_mpz_t(), q);
  mpz_pow_ui(dq.get_mpz_t(), prob.get_den_mpz_t(), q);
  mpz_fdiv_q(ratio.get_mpz_t(), dq.get_mpz_t(), nq.get_mpz_t());
  // s = max{s : N^q 2^s <= D^q}; then i = floor(s / p).
  long long s = bit_length(ratio) - 1;
  return s / static_cast<long long>(p);
}

std::optional<long long> bucket_index(const Rational& prob, const BucketParams& params) {
  long long i = raw_bucket_index(prob, params.eps);
  if (i > params.t) return std::nullopt;
  return i;
}

std::optional<long long> bucket_index_dyadic(std::uint64_t c, unsigned n, const BucketParams& params) {
  if (c == 0) throw DomainError("zero probability has no bucket");
  if (n < 64 && c > (std::uint64_t{1} << n)) throw DomainError("probability exceeds 1");
  const unsigned long q = params.q();
  const long long p = static_cast<long long>(params.p());
  long long s;
  if ((c & (c - 1)) == 0) {
    long long e = __builtin_ctzll(c);
    s = (static_cast<long long>(n) - e) * static_cast<long long>(q);
  } else {
    s = static_cast<long long>(n) * static_cast<long long>(q) - power_bit_length(c, q);
  }
  long long i = s / p;
  if (i > params.t) return std::nullopt;
  return i;
}

Histogram::Histogram(BucketParams params, const std::vector<Rational>& dense) : params_(std::move(params)) {
  if (static_cast<long long>(dense.size()) != params_.t + 1) throw DomainError("histogram needs t+1 entries");
  for (std::size_t i = 0; i < dense.size(); ++i) set(static_cast<long long>(i), dense[i]);
}

Rational Histogram::at(long long i) const {
  auto it = h_.find(i);
  return it == h_.end() ? Rational(0) : it->second;
}

void Histogram::set(long long i, const Rational& v) {
  if (i < 0 || i > params_.t) throw DomainError("histogram index out of range");
  if (sgn(v) == 0) {
    h_.erase(i);
  } else {
    h_[i] = v;
  }
}

void Histogram::add(long long i, const Rational& v) { set(i, at(i) + v); }

Rational Histogram::total() const {
  Rational s;
  for (const auto& [i, v] : h_) s += v;
  return s;
}

bool Histogram::is_distribution() const {
  for (const auto& [i, v] : h_) {
    if (sgn(v) < 0 || v > 1) return false;
  }
  return total() == 1;
}

std::vector<Rational> Histogram::dense() const {
  std::vector<Rational> out(static_cast<std::size_t>(params_.t + 1));
  for (const auto& [i, v] : h_) out[static_cast<std::size_t>(i)] = v;
  return out;
}

json Histogram::to_json() const {
  json j{{"eps", to_string(params_.eps)}, {"t", params_.t}, {"excluded_mass", to_string(excluded_)}};
  if (params_.t <= kDenseJsonLimit) {
    json h = json::array();
    for (const auto& v : dense()) h.push_back(to_string(v));
    j["h"] = std::move(h);
  } else {
    json sparse = json::array();
    for (const auto& [i, v] : h_) sparse.push_back({i, to_string(v)});
    j["sparse"] = std::move(sparse);
  }
  return j;
}

Histogram Histogram::from_json(const json& j) {
  try {
    if (!j.is_object()) throw ParseError("histogram must be an object");
    Rational eps = parse_rational(j.at("eps").get<std::string>());
    long long t = j.at("t").get<long long>();
    Histogram out(BucketParams(eps, t));
    if (j.contains("h")) {
      const json& h = j.at("h");
      if (!h.is_array() || static_cast<long long>(h.size()) != t + 1) {
        throw ParseError("histogram 'h' must have t+1 entries");
      }
      for (std::size_t i = 0; i < h.size(); ++i) out.set(static_cast<long long>(i), parse_entry(h[i]));
    } else if (j.contains("sparse")) {
      for (const auto& e : j.at("sparse")) {
        if (!e.is_array() || e.size() != 2) throw ParseError("sparse entries are [index, value] pairs");
        long long i = e[0].get<long long>();
        if (i < 0 || i > t) throw ParseError("sparse index out of range");
        out.add(i, parse_entry(e[1]));
      }
    } else {
      throw ParseError("histogram needs 'h' or 'sparse'");
    }
    if (j.contains("excluded_mass")) out.set_excluded_mass(parse_entry(j.at("excluded_mass")));
    return out;
  } catch (const json::exception& e) {
    throw ParseError(std::string("histogram json: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("histogram json: ") + e.what());
  }
}

Histogram compute_histogram(const ExactDist& d, const BucketParams& params) {
  Histogram h(params);
  std::unordered_map<std::uint64_t, std::optional<long long>> memo;
  std::map<long long, BigInt> sums;
  BigInt excluded;
  for (const auto& [y, c] : d.entries()) {
    auto it = memo.find(c);
    if (it == memo.end()) it = memo.emplace(c, bucket_index_dyadic(c, d.n_bits(), params)).first;
    if (it->second) {
      sums[*it->second] += static_cast<unsigned long>(c);
    } else {
      excluded += static_cast<unsigned long>(c);
    }
  }
  const Rational unit = pow2(-static_cast<long long>(d.n_bits()));
  for (const auto& [i, c] : sums) h.set(i, Rational(c) * unit);
  h.set_excluded_mass(Rational(excluded) * unit);
  return h;
}

Wasserstein wasserstein(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  if (x.size() != y.size()) throw DomainError("wasserstein inputs differ in length");
  if (x.size() < 2) throw DomainError("wasserstein needs t >= 1");
  Rational sx, sy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) < 0 || sgn(y[i]) < 0) throw DomainError("wasserstein inputs must be nonnegative");
    sx += x[i];
    sy += y[i];
  }
  if (sx != 1 || sy != 1) throw DomainError("wasserstein inputs must be distribution vectors");
  Wasserstein w;
  Rational a, b;
  for (std::size_t i = 0; i < x.size(); ++i) {
    a += x[i];
    b += y[i];
    if (a > b) {
      w.right += a - b;
    } else {
      w.left += b - a;
    }
  }
  const Rational inv_t(1, static_cast<unsigned long>(x.size() - 1));
  w.right *= inv_t;
  w.left *= inv_t;
  w.total = w.right + w.left;
  return w;
}

Wasserstein prefix_distance(const Histogram& x, const Histogram& y) {
  if (x.t() != y.t()) throw DomainError("wasserstein inputs differ in length");
  const long long t = x.t();
  Wasserstein w;
  Rational diff;  // prefix(x) - prefix(y) on the current run
  auto ix = x.entries().begin(), iy = y.entries().begin();
  const auto ex = x.entries().end(), ey = y.entries().end();
  long long pos = 0;
  while (ix != ex || iy != ey) {
    long long next = std::min(ix != ex ? ix->first : t + 1, iy != ey ? iy->first : t + 1);
    // Indices pos..next-1 share the current difference.
    Rational run = diff * Rational(static_cast<long>(next - pos));
    if (sgn(run) > 0) {
      w.right += run;
    } else {
      w.left -= run;
    }
    if (ix != ex && ix->first == next) diff += (ix++)->second;
    if (iy != ey && iy->first == next) diff -= (iy++)->second;
    pos = next;
  }
  Rational run = diff * Rational(static_cast<long>(t + 1 - pos));
  if (sgn(run) > 0) {
    w.right += run;
  } else {
    w.left -= run;
  }
  const Rational inv_t(1, static_cast<unsigned long>(t));
  w.right *= inv_t;
  w.left *= inv_t;
  w.total = w.right + w.left;
  return w;
}

Wasserstein wasserstein(const Histogram& x, const Histogram& y) {
  if (x.t() != y.t()) throw DomainError("wasserstein inputs differ in length");
  if (!x.is_distribution() || !y.is_distribution()) {
    throw DomainError("wasserstein inputs must be distribution vectors");
  }
  return prefix_distance(x, y);
}

std::pair<Pow2Sum, Pow2Sum> bucket_size_bounds(const Rational& h_i, long long i, const BucketParams& params) {
  if (sgn(h_i) < 0 || h_i > 1) throw DomainError("bucket mass must lie in [0,1]");
  const long long p = static_cast<long long>(params.p());
  const auto q = params.q();
  return {Pow2Sum::power(h_i, i * p, q), Pow2Sum::power(h_i, (i + 1) * p, q)};
}

}  // namespace pubcoin
