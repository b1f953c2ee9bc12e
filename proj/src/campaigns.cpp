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

#include <algorithm>

namespace pubcoin {

namespace {

Rational random_fraction(CoinStream& coins, long max_num, unsigned long max_den) {
  auto den = static_cast<unsigned long>(1 + coins.below(max_den));
  auto num = static_cast<long>(coins.below(static_cast<std::uint64_t>(2 * max_num + 1))) - max_num;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::vector<Rational> random_distribution(CoinStream& coins, std::size_t size) {
  std::vector<Rational> v(size);
  long total = 0;
  std::vector<long> w(size);
  for (auto& x : w) {
    x = coins.below(3) == 0 ? 0 : static_cast<long>(coins.below(20));
    total += x;
  }
  if (total == 0) {
    w[coins.below(size)] = 1;
    total = 1;
  }
  for (std::size_t i = 0; i < size; ++i) {
    v[i] = Rational(w[i], static_cast<unsigned long>(total));
    v[i].canonicalize();
  }
  return v;
}

// Window [ceil((1-band) a 2^{n-m}), floor((1+band) a 2^{n-m})] on counts,
// answered from counts sorted ascending with prefix masses.
struct CountIndex {
  std::vector<std::uint64_t> counts;
  std::vector<BigInt> prefix;  // prefix[i] = sum of counts[0..i)
  unsigned n = 0;
  unsigned m = 0;

  explicit CountIndex(const ExactDist& d) : n(d.n_bits()), m(d.m()) {
    for (const auto& [y, c] : d.entries()) counts.push_back(c);
    std::sort(counts.begin(), counts.end());
    prefix.resize(counts.size() + 1);
    for (std::size_t i = 0; i < counts.size(); ++i) prefix[i + 1] = prefix[i] + static_cast<unsigned long>(counts[i]);
  }

  Rational mass_near(const Rational& alpha, const Rational& band) const {
    const Rational centre = alpha * pow2(static_cast<long long>(n) - static_cast<long long>(m));
    const BigInt lo = ceil_of((1 - band) * centre);
    const BigInt hi = floor_of((1 + band) * centre);
    if (hi < lo || hi < 0) return 0;
    auto first = std::lower_bound(counts.begin(), counts.end(), lo,
                                  [](std::uint64_t c, const BigInt& v) { return BigInt(static_cast<unsigned long>(c)) < v; });
    auto last = std::upper_bound(counts.begin(), counts.end(), hi,
                                 [](const BigInt& v, std::uint64_t c) { return v < BigInt(static_cast<unsigned long>(c)); });
    BigInt sum = prefix[static_cast<std::size_t>(last - counts.begin())] - prefix[static_cast<std::size_t>(first - counts.begin())];
    return Rational(sum) * pow2(-static_cast<long long>(n));
  }
};

bool same(const std::vector<Rational>& a, const std::vector<Rational>& b) { return a == b; }

}  // namespace

json CampaignResult::to_json() const {
  return json{{"name", name},
              {"generated", generated},
              {"checked", checked},
              {"violations", violations},
              {"ok", ok()},
              {"details", details}};
}

ExactDist random_skewed_dist(unsigned n, unsigned m, CoinStream& coins) {
  const std::uint64_t outputs = std::uint64_t{1} << m;
  const std::uint64_t support = 1 + coins.below(std::min<std::uint64_t>(outputs, 256));
  std::map<std::uint32_t, std::uint64_t> weights;
  for (std::uint64_t k = 0; k < support; ++k) {
    auto y = static_cast<std::uint32_t>(coins.below(outputs));
    weights[y] += 1 + coins.below(std::uint64_t{1} << coins.below(10));
  }
  std::uint64_t total = 0;
  for (const auto& [y, w] : weights) total += w;
  const std::uint64_t inputs = std::uint64_t{1} << n;
  std::vector<ExactDist::Entry> entries;
  std::uint64_t assigned = 0;
  for (const auto& [y, w] : weights) {
    std::uint64_t c = static_cast<std::uint64_t>((static_cast<unsigned __int128>(w) * inputs) / total);
    entries.emplace_back(y, c);
    assigned += c;
  }
  for (std::size_t i = 0; assigned < inputs; i = (i + 1) % entries.size(), ++assigned) ++entries[i].second;
  entries.erase(std::remove_if(entries.begin(), entries.end(), [](const auto& e) { return e.second == 0; }),
                entries.end());
  return ExactDist(m, n, std::move(entries));
}

CampaignResult weighted_prefix_campaign(std::size_t count, std::uint64_t seed) {
  CampaignResult r;
  r.name = "prefix-weight";
  CoinStream coins(seed);
  static const long kDens[] = {4, 5, 8, 10, 16};
  Rational worst_margin = 1;
  const std::size_t max_attempts = 50 * count + 100;
  while (r.checked < count && r.generated < max_attempts) {
    ++r.generated;
    const Rational eps_tilde(1, static_cast<unsigned long>(kDens[coins.below(5)]));
    const long long t = 20 + static_cast<long long>(coins.below(181));
    const long long js = static_cast<long long>(coins.below(static_cast<std::uint64_t>(t + 1)));
    const auto m = static_cast<unsigned>(ceil_of(Rational(static_cast<long>(js)) * eps_tilde).get_ui() + coins.below(2));

    std::vector<Rational> hc = random_distribution(coins, static_cast<std::size_t>(t + 1));
    std::vector<Rational> h = hc;
    const auto moves = 1 + coins.below(6);
    for (std::uint64_t k = 0; k < moves; ++k) {
      auto a = static_cast<long long>(coins.below(static_cast<std::uint64_t>(t + 1)));
      long long b = std::clamp<long long>(a + static_cast<long long>(coins.below(11)) - 5, 0, t);
      Rational w = h[a] * ratio(static_cast<long>(1 + coins.below(8)), 8UL);
      h[a] -= w;
      h[b] += w;
    }
    DiffVector d{{}, js};
    for (long long j = 0; j <= t; ++j) d.d.push_back(h[j] - hc[j]);
    Rational head;
    for (long long j = 0; j <= js; ++j) head += d.d[j];
    static const Rational kSlack[] = {Rational(0), Rational(1, 100), Rational(1, 20)};
    const Rational delta = abs(head) + kSlack[coins.below(3)];
    auto verdict = check_weighted_prefix_bound(d, delta, eps_tilde, m);
    if (!verdict) continue;
    ++r.checked;
    if (!*verdict) ++r.violations;
    Pow2Sum value = weighted_prefix(d.d, js, eps_tilde) * pow2(-static_cast<long long>(m));
    const Rational bound = delta + 40 * eps_tilde;
    Pow2Sum gap = Pow2Sum(bound) - (value.sign() < 0 ? -value : value);
    Rational g(gap.to_double());
    if (g / bound < worst_margin) worst_margin = g / bound;
  }
  r.details["attempts"] = r.generated;
  r.details["smallest_relative_margin"] = worst_margin.get_d();
  if (r.checked < count) ++r.violations, r.details["error"] = "rejection sampling did not reach the requested count";
  return r;
}

CampaignResult random_threshold_campaign(std::size_t distributions, std::uint64_t seed,
                                         const std::vector<Rational>& deltas) {
  CampaignResult r;
  r.name = "random-threshold";
  CoinStream coins(seed);
  static const Rational kAlpha0[] = {Rational(1, 2), Rational(1), Rational(2)};
  double worst = 0.0;
  for (std::size_t k = 0; k < distributions; ++k) {
    const auto n = static_cast<unsigned>(8 + coins.below(5));
    const auto m = static_cast<unsigned>(2 + coins.below(std::min(n, 10U) - 1));
    ExactDist d = random_skewed_dist(n, m, coins);
    CountIndex index(d);
    for (const auto& delta : deltas) {
      ++r.generated;
      ThresholdDist td(kAlpha0[coins.below(3)], delta);
      Rational sum;
      for (const auto& alpha : td.support()) sum += index.mass_near(alpha, delta);
      Rational mean = sum / Rational(static_cast<long>(td.support().size()));
      ++r.checked;
      if (mean > delta) ++r.violations;
      worst = std::max(worst, Rational(mean / delta).get_d());
      if (k == 0) {
        // Cross-check of the indexed window sum against the direct scan.
        for (const auto& alpha : td.support()) {
          if (index.mass_near(alpha, delta) != mass_near_threshold(d, alpha, delta)) ++r.violations;
        }
      }
    }
  }
  r.details["largest_mean_over_delta"] = worst;
  return r;
}

CampaignResult threshold_band_campaign(std::size_t distributions, std::uint64_t seed, const Rational& eps,
                                       bool band_sqrt) {
  CampaignResult r;
  r.name = band_sqrt ? "threshold-band-sqrt" : "threshold-band-linear";
  Rational root;
  if (!exact_sqrt(eps, root)) throw DomainError("threshold band campaign needs a rational sqrt(eps)");
  const Rational delta = 4 * eps;
  const Rational band = band_sqrt ? Rational(4 * root) : delta;
  const Rational mass_limit = root / 5;
  const Rational fraction_limit = 20 * root;
  CoinStream coins(seed);
  static const Rational kAlpha0[] = {Rational(1, 2), Rational(1), Rational(2)};
  Rational worst;
  for (std::size_t k = 0; k < distributions; ++k) {
    ++r.generated;
    const auto n = static_cast<unsigned>(8 + coins.below(5));
    const auto m = static_cast<unsigned>(2 + coins.below(std::min(n, 10U) - 1));
    ExactDist d = random_skewed_dist(n, m, coins);
    CountIndex index(d);
    ThresholdDist td = ThresholdDist::unchecked(kAlpha0[coins.below(3)], delta);
    long bad = 0;
    for (const auto& alpha : td.support()) {
      if (index.mass_near(alpha, band) > mass_limit) ++bad;
    }
    Rational fraction(bad, static_cast<unsigned long>(td.support().size()));
    fraction.canonicalize();
    ++r.checked;
    if (fraction > fraction_limit) ++r.violations;
    worst = std::max(worst, fraction);
  }
  r.details["band"] = to_string(band);
  r.details["largest_bad_fraction"] = to_string(worst);
  r.details["allowed_bad_fraction"] = to_string(fraction_limit);
  return r;
}

CampaignResult gain_loss_campaign(std::size_t count, std::uint64_t seed) {
  CampaignResult r;
  r.name = "gain-loss";
  CoinStream coins(seed);
  static const Rational kEps[] = {Rational(1), Rational(1, 2), Rational(1, 3), Rational(2, 5), Rational(1, 4)};
  for (std::size_t c = 0; c < count; ++c) {
    ++r.generated;
    const auto k = static_cast<std::size_t>(1 + coins.below(30));
    const Rational& eps = kEps[coins.below(5)];
    const auto m = static_cast<unsigned>(1 + coins.below(8));
    auto label = [&]() -> Label {
      if (coins.below(10) == 0) return std::nullopt;
      return static_cast<long long>(coins.below(21));
    };
    std::vector<Label> u(k), up(k);
    for (std::size_t i = 0; i < k; ++i) {
      u[i] = label();
      up[i] = coins.below(3) == 0 ? u[i] : label();
    }
    std::vector<std::size_t> A;
    for (std::size_t i = 0; i < k; ++i) {
      if (coins.coin()) A.push_back(i);
    }
    auto [gain, loss] = gain_loss(up, u, A, eps, m, k);
    ++r.checked;
    Pow2Sum lhs = weighted_label_sum(u, A, eps, m, k);
    Pow2Sum rhs = weighted_label_sum(up, A, eps, m, k) + gain - loss;
    if (!(lhs == rhs) || gain.sign() < 0 || loss.sign() < 0) ++r.violations;
  }
  return r;
}

CampaignResult difference_transform_campaign(std::size_t count, std::uint64_t seed) {
  CampaignResult r;
  r.name = "difference-transforms";
  CoinStream coins(seed);
  static const long kDens[] = {2, 4, 5, 8, 10};
  std::size_t steps_total = 0;
  json failures = json::object();
  auto fail = [&](const char* what) {
    ++r.violations;
    failures[what] = failures.value(what, 0) + 1;
  };
  for (std::size_t c = 0; c < count; ++c) {
    ++r.generated;
    const Rational eps_tilde(1, static_cast<unsigned long>(kDens[coins.below(5)]));
    const auto t = static_cast<long long>(2 + coins.below(39));
    DiffVector d{{}, static_cast<long long>(coins.below(static_cast<std::uint64_t>(t + 1)))};
    for (long long j = 0; j <= t; ++j) d.d.push_back(coins.below(4) == 0 ? Rational(0) : random_fraction(coins, 10, 12));
    ++r.checked;

    DiffVector dp = dprime(d);
    if (mean_abs_prefix(dp.d) > mean_abs_prefix(d.d)) fail("dprime-mean");
    if (weighted_prefix(dp.d, d.jstar, eps_tilde).compare(weighted_prefix(d.d, d.jstar, eps_tilde)) < 0) {
      fail("dprime-weighted");
    }
    auto pd = prefix_sums(d.d), pdp = prefix_sums(dp.d);
    for (long long i = 0; i <= t; ++i) {
      Rational want = i < d.jstar ? Rational(std::min(pd[i], Rational(0))) : pd[i];
      if (i <= d.jstar ? pdp[i] != want : dp.d[i] != d.d[i]) fail("dprime-definition");
    }

    DiffVector dpp = ddoubleprime(dp);
    const Rational delta = abs(pd[d.jstar]);
    auto pdpp = prefix_sums(dpp.d);
    if (pdpp[d.jstar] != 0) fail("ddoubleprime-total");
    if (std::any_of(pdpp.begin(), pdpp.end(), [](const Rational& v) { return sgn(v) > 0; })) fail("ddoubleprime-prefix");
    if (mean_abs_prefix(dpp.d) > mean_abs_prefix(dp.d)) fail("ddoubleprime-mean");
    const auto q = eps_tilde.get_den().get_ui();
    Pow2Sum corrected = weighted_prefix(dp.d, d.jstar, eps_tilde) -
                        Pow2Sum::power(delta, d.jstar * eps_tilde.get_num().get_si(), q);
    if (weighted_prefix(dpp.d, d.jstar, eps_tilde).compare(corrected) < 0) fail("ddoubleprime-weighted");

    auto steps = flow_decompose(dpp, true);
    steps_total += steps.size();
    std::vector<Rational> rebuilt(dpp.d.size());
    for (const auto& s : steps) {
      if (!(s.i < s.ip && s.ip <= d.jstar && sgn(s.w) > 0)) fail("flow-step-shape");
      if (!bernoulli_step_holds(s, eps_tilde)) fail("flow-bernoulli");
      rebuilt[s.i] -= s.w;
      rebuilt[s.ip] += s.w;
    }
    if (!same(rebuilt, dpp.d)) fail("flow-reconstruction");
    if (steps.size() > dpp.d.size()) fail("flow-length");
  }
  r.details["flow_steps"] = steps_total;
  r.details["failures"] = std::move(failures);
  return r;
}

CampaignResult bucket_bounds_campaign(std::size_t circuits, std::uint64_t seed) {
  CampaignResult r;
  r.name = "bucket-bounds";
  CoinStream coins(seed);
  static const Rational kEps[] = {Rational(1, 2), Rational(1, 4), Rational(1, 10)};
  std::size_t buckets = 0;
  for (std::size_t c = 0; c < circuits; ++c) {
    ++r.generated;
    const auto n = static_cast<unsigned>(1 + coins.below(12));
    const auto m = static_cast<unsigned>(1 + coins.below(12));
    std::vector<std::uint32_t> table(std::size_t{1} << n);
    // Random functions with a random number of distinct outputs, so both
    // flat and peaked distributions appear.
    const auto range = 1 + coins.below(std::uint64_t{1} << m);
    for (auto& y : table) y = static_cast<std::uint32_t>(coins.below(range));
    ExactDist d = dist_from_table(n, m, table);
    const Rational& eps = kEps[coins.below(3)];
    BucketParams params(eps, default_t(n, eps));
    Histogram h = compute_histogram(d, params);
    std::map<long long, long> sizes;
    for (const auto& [y, cnt] : d.entries()) {
      auto i = bucket_index(d.probability(y), params);
      if (i) ++sizes[*i];
    }
    ++r.checked;
    if (h.total() != 1) ++r.violations;
    for (long long i = 0; i <= params.t; ++i) {
      auto [lo, hi] = bucket_size_bounds(h.at(i), i, params);
      const Rational size(sizes.count(i) ? sizes[i] : 0L);
      if (lo.compare(size) > 0 || hi.compare(size) < 0) ++r.violations;
      ++buckets;
    }
  }
  r.details["buckets"] = buckets;
  return r;
}

CampaignResult wasserstein_axioms_campaign(std::size_t triples, std::uint64_t seed) {
  CampaignResult r;
  r.name = "wasserstein-axioms";
  CoinStream coins(seed);
  for (std::size_t c = 0; c < triples; ++c) {
    ++r.generated;
    const auto size = static_cast<std::size_t>(2 + coins.below(40));
    auto x = random_distribution(coins, size);
    auto y = coins.below(8) == 0 ? x : random_distribution(coins, size);
    auto z = random_distribution(coins, size);
    ++r.checked;
    const Rational xy = wasserstein(x, y).total, yx = wasserstein(y, x).total;
    const Rational xz = wasserstein(x, z).total, yz = wasserstein(y, z).total;
    if (wasserstein(x, x).total != 0) ++r.violations;
    if (xy != yx || sgn(xy) < 0) ++r.violations;
    if (xz > xy + yz) ++r.violations;
    if ((sgn(xy) == 0) != same(x, y)) ++r.violations;
  }
  return r;
}

}  // namespace pubcoin
