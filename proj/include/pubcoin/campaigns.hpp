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

#include "pubcoin/analysis.hpp"
#include "pubcoin/thresholds.hpp"

namespace pubcoin {

struct CampaignResult {
  std::string name;
  std::size_t generated = 0;
  std::size_t checked = 0;  // instances meeting the hypotheses
  std::size_t violations = 0;
  json details = json::object();

  bool ok() const { return violations == 0; }
  json to_json() const;
};

/// Skewed random distribution over m-bit strings with denominators 2^n.
ExactDist random_skewed_dist(unsigned n, unsigned m, CoinStream& coins);

/// Random difference vectors meeting the hypotheses of the weighted prefix
/// bound, rejection sampled until `count` of them pass; every accepted one
/// must satisfy the conclusion.
CampaignResult weighted_prefix_campaign(std::size_t count, std::uint64_t seed);

/// For each distribution and delta: mean over the threshold grid of the mass
/// within (1 +- delta) alpha 2^-m is at most delta.
CampaignResult random_threshold_campaign(std::size_t distributions, std::uint64_t seed,
                                         const std::vector<Rational>& deltas);

/// Fraction of alpha in A_{alpha0, 4 eps} whose mass within (1 +- band)
/// alpha 2^-m exceeds sqrt(eps)/5, compared with 20 sqrt(eps). `band` is
/// either 4 sqrt(eps) or 4 eps; sqrt(eps) must be rational.
CampaignResult threshold_band_campaign(std::size_t distributions, std::uint64_t seed, const Rational& eps,
                                       bool band_sqrt);

/// Sum over u = sum over u' + Gain - Loss on random labelings.
CampaignResult gain_loss_campaign(std::size_t count, std::uint64_t seed);

/// d' and d'' inequalities, flow decomposition reconstruction, loop
/// invariants and the per-step Bernoulli bound on random difference vectors.
CampaignResult difference_transform_campaign(std::size_t count, std::uint64_t seed);

/// Every y in bucket i has h_i 2^{i eps} <= |B_i| < h_i 2^{(i+1) eps} (as
/// counts of support points) on random circuits.
CampaignResult bucket_bounds_campaign(std::size_t circuits, std::uint64_t seed);

/// Identity, symmetry, triangle inequality and definiteness of the
/// Wasserstein distance on random distribution vectors.
CampaignResult wasserstein_axioms_campaign(std::size_t triples, std::uint64_t seed);

}  // namespace pubcoin
