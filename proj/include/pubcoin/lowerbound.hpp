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

#include "pubcoin/hashing.hpp"
#include "pubcoin/knowledge.hpp"
#include "pubcoin/session.hpp"

#include <string>
#include <vector>

namespace pubcoin {

struct LBConfig {
  Rational eps{1, 5};
  /// Claims of size at most this are checked by listing every element.
  Rational s_direct{4096};
  /// Hash mode keeps T = s / 2^{m'} at least target_factor / eps^2 ...
  Rational target_factor{32};
  /// ... and asks for ceil((1 - eps * slack) T) elements.
  Rational slack{1, 2};
  /// Membership of bucket-union elements is certified one level deeper.
  int max_depth = 2;
};

enum class ClaimKind { Preimage, BucketUnion };

/// |C^{-1}(y)| >= size, or |{y : P(y) > 2^{-(bucket+1) bucket_eps}}| >= size.
struct LBClaim {
  ClaimKind kind = ClaimKind::Preimage;
  std::uint32_t y = 0;
  long long bucket = 0;
  Rational bucket_eps;
  Pow2Sum size;

  static LBClaim preimage(std::uint32_t y, Pow2Sum size);
  static LBClaim bucket_union(long long bucket, const Rational& bucket_eps, Pow2Sum size);
  /// Size each member must certify: 2^n 2^{-(bucket+1) bucket_eps}.
  Pow2Sum member_size(unsigned n) const;
  std::string key() const;
};

struct ClaimOutcome {
  LBClaim claim;
  std::string mode;  // direct, hash, trivial
  unsigned hash_width = 0;
  std::uint64_t required = 0;
  std::uint64_t received = 0;
  bool passed = false;
  std::string reason;

  json to_json() const;
};

struct LBResult {
  bool accepted = true;
  std::string failed_check;
  std::vector<ClaimOutcome> outcomes;
  /// Size of the nested membership run, when one happened.
  std::size_t member_claims = 0;
  bool members_accepted = true;

  json to_json() const;
};

/// Verifier side of the parallel lower bound protocol. Identical claims are
/// merged; each distinct claim gets its own hash. Runs inside `session`.
LBResult run_lower_bound(Session& session, const CircuitKnowledge& eval, const std::vector<LBClaim>& claims,
                         const LBConfig& config, const std::string& phase, int depth = 1);

/// Honest answer to an "lb" challenge.
json honest_lb_answer(const CircuitKnowledge& know, const json& challenge);

struct LBInstance {
  KnowledgePtr circuit;
  Rational eps;
  std::vector<std::pair<std::uint32_t, Rational>> claims;

  std::string digest() const;
  static std::vector<std::pair<std::uint32_t, Rational>> claims_from_json(const json& j, unsigned m);
};

Transcript run_lowerbound(const LBInstance& inst, ProverStrategy& prover, std::uint64_t seed,
                          LBConfig config = {}, Budget budget = {});
VerifierFn lowerbound_verifier(const LBInstance& inst, LBConfig config);

}  // namespace pubcoin
