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

#include "pubcoin/lowerbound.hpp"

#include <optional>

namespace pubcoin {

enum class VHVerdict { Yes, No, OutsidePromise };

const char* to_string(VHVerdict v);

struct VHInstance {
  KnowledgePtr circuit;
  Histogram h;

  std::string digest() const;
};

struct VHProtocolParams {
  std::optional<long long> k_pre;   // default 400 t^2
  std::optional<Rational> tau_pre;  // default 10 / t
  LBConfig lb;
  long long max_samples = 10'000'000;
};

struct VHMode {
  bool protocol = false;
  VHProtocolParams params;

  static VHMode oracle() { return {}; }
  static VHMode interactive(VHProtocolParams p = {}) { return {true, std::move(p)}; }
};

struct VHOracleResult {
  VHVerdict verdict = VHVerdict::Yes;
  Histogram hc;
  /// Wasserstein distance to h^C; absent when h is not a distribution vector.
  std::optional<Rational> distance;
};

/// Exact decision. A vector h that is not a distribution is a no-instance.
VHOracleResult decide_oracle_detail(const ExactDist& d, const Histogram& h);
VHVerdict decide_oracle(const ExactDist& d, const Histogram& h);
VHVerdict decide_oracle(const VHInstance& inst);

/// Runs VerifyHist on (C, h.eps, h) inside `session`; rejects through it.
void verify_histogram(Session& session, const CircuitKnowledge& eval, const Histogram& h, const VHMode& mode,
                      const std::string& phase);

Transcript run_verifyhist(const VHInstance& inst, const VHMode& mode, ProverStrategy& prover, std::uint64_t seed,
                          Budget budget = {});
VerifierFn verifyhist_verifier(const VHInstance& inst, const VHMode& mode);

}  // namespace pubcoin
