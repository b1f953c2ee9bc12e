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

#include "pubcoin/exact_dist.hpp"
#include "pubcoin/pow2.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace pubcoin {

/// Bucket width eps = p/q in (0,1) and largest index t.
struct BucketParams {
  Rational eps;
  long long t = 1;

  BucketParams() = default;
  BucketParams(Rational eps_value, long long t_value);

  unsigned long p() const { return eps.get_num().get_ui(); }
  unsigned long q() const { return eps.get_den().get_ui(); }
};

/// ceil(n / eps).
long long default_t(unsigned n, const Rational& eps);

/// Index i with 2^{-(i+1)eps} < prob <= 2^{-i eps}, or nullopt when i > t.
std::optional<long long> bucket_index(const Rational& prob, const BucketParams& params);
/// Same for prob = c / 2^n, memo friendly.
std::optional<long long> bucket_index_dyadic(std::uint64_t c, unsigned n, const BucketParams& params);
/// Unbounded index of prob (no t limit).
long long raw_bucket_index(const Rational& prob, const Rational& eps);

/// Sparse histogram: absent indices hold zero.
class Histogram {
 public:
  Histogram() = default;
  explicit Histogram(BucketParams params) : params_(std::move(params)) {}
  Histogram(BucketParams params, const std::vector<Rational>& dense);

  const BucketParams& params() const { return params_; }
  long long t() const { return params_.t; }

  Rational at(long long i) const;
  void set(long long i, const Rational& v);
  void add(long long i, const Rational& v);
  const std::map<long long, Rational>& entries() const { return h_; }

  Rational total() const;
  /// Every entry in [0,1] and the entries sum to exactly 1.
  bool is_distribution() const;
  std::vector<Rational> dense() const;

  const Rational& excluded_mass() const { return excluded_; }
  void set_excluded_mass(const Rational& v) { excluded_ = v; }

  json to_json() const;
  static Histogram from_json(const json& j);

  friend bool operator==(const Histogram& a, const Histogram& b) {
    return a.params_.eps == b.params_.eps && a.params_.t == b.params_.t && a.h_ == b.h_;
  }

 private:
  BucketParams params_;
  std::map<long long, Rational> h_;
  Rational excluded_;
};

Histogram compute_histogram(const ExactDist& d, const BucketParams& params);

struct Wasserstein {
  Rational right;
  Rational left;
  Rational total;
};

/// First Wasserstein distance of two distribution vectors of equal length,
/// over prefix sums and scaled by 1/t.
Wasserstein wasserstein(const std::vector<Rational>& x, const std::vector<Rational>& y);
Wasserstein wasserstein(const Histogram& x, const Histogram& y);
/// Same prefix-sum formula without the distribution check.
Wasserstein prefix_distance(const Histogram& x, const Histogram& y);

/// (h_i 2^{i eps}, h_i 2^{(i+1) eps}).
std::pair<Pow2Sum, Pow2Sum> bucket_size_bounds(const Rational& h_i, long long i, const BucketParams& params);

}  // namespace pubcoin
