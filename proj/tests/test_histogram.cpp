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

#include "pubcoin/campaigns.hpp"
#include "pubcoin/generators.hpp"
#include "pubcoin/histogram.hpp"

#include <doctest.h>

#include <cmath>

using namespace pubcoin;

namespace {

ExactDist three_quarters() { return ExactDist(2, 2, {{0b00, 3}, {0b01, 1}}); }

std::vector<Rational> v(std::initializer_list<Rational> xs) { return xs; }

}  // namespace

TEST_CASE("bucket index examples") {
  BucketParams half(Rational(1, 2), 8);
  CHECK(bucket_index(Rational(1), half) == 0);
  CHECK(bucket_index(Rational(1), BucketParams(Rational(1, 7), 3)) == 0);
  CHECK(bucket_index(Rational(1, 4), half) == 4);
  CHECK(bucket_index(Rational(3, 4), half) == 0);
  CHECK(bucket_index_dyadic(1, 2, half) == 4);
  CHECK(bucket_index_dyadic(3, 2, half) == 0);
  CHECK(bucket_index(Rational(1, 1024), half) == std::nullopt);
  CHECK_THROWS(bucket_index(Rational(0), half));
  CHECK(raw_bucket_index(Rational(1, 1024), Rational(1, 2)) == 20);
  CHECK(default_t(10, Rational(1, 4)) == 40);
  CHECK(default_t(10, Rational(3, 7)) == 24);
  CHECK_THROWS(BucketParams(Rational(1), 3));
  CHECK_THROWS(BucketParams(Rational(1, 2), 0));
}

TEST_CASE("bucket index agrees with a float reference away from boundaries") {
  CoinStream coins(5);
  static const Rational kEps[] = {Rational(1, 2), Rational(1, 3), Rational(2, 7), Rational(1, 10), Rational(3, 4)};
  for (int rep = 0; rep < 2000; ++rep) {
    const Rational& eps = kEps[coins.below(5)];
    const unsigned n = 1 + static_cast<unsigned>(coins.below(20));
    const std::uint64_t c = 1 + coins.below(std::uint64_t{1} << n);
    BucketParams params(eps, default_t(n, eps) + 5);
    const double x = -std::log2(static_cast<double>(c)) + n;
    const double e = eps.get_d();
    const double ratio = x / e;
    const auto exact = bucket_index_dyadic(c, n, params);
    REQUIRE(exact);
    // Buckets are (2^{-(i+1)e}, 2^{-ie}], so the float index is ceil(ratio) - 1
    // unless ratio sits on an integer.
    if (std::abs(ratio - std::round(ratio)) > 1e-9) {
      CHECK(*exact == static_cast<long long>(std::floor(ratio)));
    } else {
      CHECK(*exact == static_cast<long long>(std::round(ratio)));
    }
    CHECK(bucket_index(Rational(static_cast<unsigned long>(c)) * pow2(-static_cast<long long>(n)), params) == exact);
  }
}

TEST_CASE("histogram examples") {
  Histogram u = compute_histogram(exact_dist(identity_circuit(3)), BucketParams(Rational(1, 2), 6));
  CHECK(u.at(6) == 1);
  CHECK(u.total() == 1);
  CHECK(u.entries().size() == 1);

  Histogram point = compute_histogram(exact_dist(constant_circuit(4, 2, 1)), BucketParams(Rational(1, 3), 12));
  CHECK(point.at(0) == 1);

  Histogram h = compute_histogram(three_quarters(), BucketParams(Rational(1, 2), 4));
  CHECK(h.dense() == v({Rational(3, 4), 0, 0, 0, Rational(1, 4)}));
  CHECK(h.is_distribution());

  Histogram cut = compute_histogram(three_quarters(), BucketParams(Rational(1, 2), 3));
  CHECK(cut.total() == Rational(3, 4));
  CHECK(cut.excluded_mass() == Rational(1, 4));
  CHECK_FALSE(cut.is_distribution());
}

TEST_CASE("histogram json round trip") {
  Histogram h = compute_histogram(three_quarters(), BucketParams(Rational(1, 2), 4));
  json j = h.to_json();
  CHECK(j["eps"] == "1/2");
  CHECK(j["t"] == 4);
  CHECK(j["h"][0] == "3/4");
  CHECK(Histogram::from_json(j) == h);
  Histogram big(BucketParams(Rational(1, 625), 7000));
  big.set(6999, Rational(1, 3));
  big.set(3, Rational(2, 3));
  json sj = big.to_json();
  CHECK(sj.contains("sparse"));
  CHECK(Histogram::from_json(sj) == big);
  CHECK_THROWS(Histogram::from_json(json::parse(R"({"eps":"1/2","t":2,"h":["1/2","1/2"]})")));
  CHECK_THROWS(Histogram::from_json(json::parse(R"({"eps":"1/2","t":1,"h":["x","1/2"]})")));
}

TEST_CASE("wasserstein examples") {
  Wasserstein same = wasserstein(v({Rational(1, 2), Rational(1, 2)}), v({Rational(1, 2), Rational(1, 2)}));
  CHECK(same.total == 0);
  Wasserstein w = wasserstein(v({1, 0}), v({0, 1}));
  CHECK(w.right == 1);
  CHECK(w.left == 0);
  CHECK(w.total == 1);
  Wasserstein w3 = wasserstein(v({Rational(1, 2), Rational(1, 2), 0}), v({0, Rational(1, 2), Rational(1, 2)}));
  CHECK(w3.right == Rational(1, 2));
  CHECK(w3.left == 0);
  CHECK(wasserstein(v({0, Rational(1, 2), Rational(1, 2)}), v({Rational(1, 2), Rational(1, 2), 0})).left ==
        Rational(1, 2));
  CHECK_THROWS(wasserstein(v({1, 0}), v({1, 0, 0})));
  CHECK_THROWS(wasserstein(v({Rational(1, 2), 0}), v({1, 0})));
}

TEST_CASE("sparse and dense wasserstein agree") {
  CoinStream coins(9);
  for (int rep = 0; rep < 200; ++rep) {
    const long long t = 1 + static_cast<long long>(coins.below(30));
    std::vector<Rational> a(t + 1), b(t + 1);
    auto fill = [&](std::vector<Rational>& x) {
      long total = 0;
      std::vector<long> w(x.size());
      for (auto& z : w) total += z = coins.below(2) ? static_cast<long>(coins.below(9)) : 0;
      if (total == 0) w[0] = total = 1;
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = Rational(w[i], static_cast<unsigned long>(total)), x[i].canonicalize();
    };
    fill(a);
    fill(b);
    BucketParams params(Rational(1, 3), t);
    Wasserstein dense = wasserstein(a, b);
    Wasserstein sparse = wasserstein(Histogram(params, a), Histogram(params, b));
    CHECK(dense.total == sparse.total);
    CHECK(dense.right == sparse.right);
    CHECK(dense.left == sparse.left);
    CHECK(dense.total == dense.right + dense.left);
  }
}

TEST_CASE("wasserstein metric axioms on random triples") {
  CampaignResult r = wasserstein_axioms_campaign(300, 21);
  CHECK(r.checked == 300);
  CHECK(r.violations == 0);
}

TEST_CASE("bucket size bounds") {
  BucketParams half(Rational(1, 2), 8);
  auto [z0, z1] = bucket_size_bounds(0, 3, half);
  CHECK(z0.is_zero());
  CHECK(z1.is_zero());
  // Uniform over 2^3 strings sits in bucket 6 with bounds (2^3, 2^{3.5}).
  auto [lo, hi] = bucket_size_bounds(1, 6, half);
  CHECK(lo == Pow2Sum(8));
  CHECK(hi == Pow2Sum::power(1, Rational(7, 2)));
  auto [l4, h4] = bucket_size_bounds(Rational(1, 4), 4, half);
  CHECK(l4 == Pow2Sum(1));
  CHECK(h4.to_double() == doctest::Approx(std::pow(2.0, 2.5) / 4));
  CHECK(l4.compare(Rational(1)) <= 0);
  CHECK(h4.compare(Rational(1)) >= 0);
}

TEST_CASE("bucket size bounds hold on random circuits and histograms sum to one") {
  CampaignResult r = bucket_bounds_campaign(100, 4);
  CHECK(r.checked == 100);
  CHECK(r.violations == 0);
}
