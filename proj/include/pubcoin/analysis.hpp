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

#include "pubcoin/hiding.hpp"
#include "pubcoin/pow2.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace pubcoin {

/// Differences d_0..d_t of two histograms, with the index j*.
struct DiffVector {
  std::vector<Rational> d;
  long long jstar = 0;

  long long t() const { return static_cast<long long>(d.size()) - 1; }
};

/// -w at i, +w at ip.
struct FlowStep {
  long long i = 0;
  long long ip = 0;
  Rational w;

  friend bool operator==(const FlowStep&, const FlowStep&) = default;
};

/// (1/k) sum_{i in A} 2^m 2^{-u(i) eps}; infinite labels add nothing.
Pow2Sum weighted_label_sum(const std::vector<Label>& u, const std::vector<std::size_t>& A, const Rational& eps,
                           unsigned m, std::size_t k);

/// (Gain_A(u', u), Loss_A(u', u)) for honest labels u' and claimed labels u.
std::pair<Pow2Sum, Pow2Sum> gain_loss(const std::vector<Label>& u_honest, const std::vector<Label>& u,
                                      const std::vector<std::size_t>& A, const Rational& eps, unsigned m,
                                      std::size_t k);

std::vector<Rational> prefix_sums(const std::vector<Rational>& d);
/// (1/t) sum_{i=0..t} |sum_{j <= i} d_j|.
Rational mean_abs_prefix(const std::vector<Rational>& d);
/// sum_{j <= upto} d_j 2^{j eps}.
Pow2Sum weighted_prefix(const std::vector<Rational>& d, long long upto, const Rational& eps);

/// Prefix sums below j* clipped at zero, prefix at j* and entries above it kept.
DiffVector dprime(const DiffVector& d);
/// Zeroes the total up to j* at j* and drops everything above j*.
DiffVector ddoubleprime(const DiffVector& dp);

/// Greedy pairing of the first nonzero entry with the next positive one.
/// Requires zero total up to j*, nonpositive prefixes and zeros above j*.
/// With check_invariants every iteration re-verifies both invariants.
std::vector<FlowStep> flow_decompose(const DiffVector& dpp, bool check_invariants = false);

/// 1 - 2^{(i - ip) eps} <= (ip - i)(1 - 2^{-eps}).
bool bernoulli_step_holds(const FlowStep& step, const Rational& eps);

/// Bound on the weighted prefix of a difference vector: under
/// |sum_{j<=j*} d_j| <= delta, mean |prefix| <= 20/t and j* eps <= m, checks
/// |2^-m sum_{j<=j*} d_j 2^{j eps}| <= delta + 40 eps. Returns nullopt when a
/// hypothesis fails.
std::optional<bool> check_weighted_prefix_bound(const DiffVector& d, const Rational& delta, const Rational& eps_tilde,
                                                unsigned m);

}  // namespace pubcoin
