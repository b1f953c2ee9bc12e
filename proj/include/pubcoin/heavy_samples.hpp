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

#include "pubcoin/verifyhist.hpp"

namespace pubcoin {

/// (4/100)^2 eps^2.
Rational heavy_eps_tilde(const Rational& eps);
/// ceil(25 / sqrt(eps_tilde)), the half width of the band in check (a).
long long heavy_band(const Rational& eps_tilde);

struct HeavyInstance {
  KnowledgePtr circuit;
  Rational pH;
  Rational pUH;
  Rational eps;
  Rational alpha;

  Rational eps_tilde() const { return heavy_eps_tilde(eps); }
  long long t() const { return default_t(circuit->n(), eps_tilde()); }
  std::string digest() const;
};

/// max{j >= 0 : 2^{-(j+1) eps_tilde} > alpha 2^{-m}}.
long long jstar(const Rational& eps_tilde, const Rational& alpha, unsigned m);

struct HSChecks {
  bool passed = true;
  std::string failed;  // "a", "b" or "c"
  long long jstar = 0;
  long long band = 0;
  Rational band_mass;
  Rational heavy_mass;   // sum_{j <= j*} h_j
  Pow2Sum uniform_mass;  // 2^-m sum_{j <= j*} h_j 2^{j eps_tilde}

  json to_json() const;
};

HSChecks hs_verifier_checks(const Histogram& h, long long j_star, const Rational& pH, const Rational& pUH,
                            const Rational& eps_tilde, unsigned m);

Transcript run_heavy_samples(const HeavyInstance& inst, const VHMode& vh_mode, ProverStrategy& prover,
                             std::uint64_t seed, Budget budget = {});
VerifierFn heavy_samples_verifier(const HeavyInstance& inst, const VHMode& vh_mode);

}  // namespace pubcoin
