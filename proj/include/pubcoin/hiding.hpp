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

/// A bucket label; nullopt stands for the infinite label (claimed zero mass).
using Label = std::optional<long long>;

/// ceil(ln(2/eps) alpha^2 9 / (2 eps^2)); BudgetError above 10^7.
long long sample_count(const Rational& eps, const Rational& alpha);

struct HideInstance {
  KnowledgePtr circuit;
  std::shared_ptr<const NondetCircuit> v;
  Rational pH;
  Rational pUH;
  Rational pYL;
  Rational eps;
  Rational alpha;
  Rational advice_gUY;

  long long k() const { return sample_count(eps, alpha); }
  long long t() const { return default_t(circuit->n(), eps); }
  std::string digest() const;
};

/// 2^{-(u+1) eps} < alpha 2^-m; the infinite label is always light.
bool is_light_label(const Label& u, const Rational& eps, const Rational& alpha, unsigned m);

/// Prover message of the hiding protocol.
struct HideAnswer {
  std::vector<Label> labels;
  std::vector<std::size_t> yes;
  std::vector<std::uint32_t> witnesses;  // parallel to yes

  static HideAnswer from_json(const json& j, std::size_t k, long long t, unsigned l);
};

struct HideChecks {
  bool passed = true;
  std::string failed;  // first failing check among a..e
  std::size_t light = 0;
  std::size_t heavy = 0;
  Rational yes_fraction;   // |Y| / k
  Rational heavy_fraction; // |H| / k
  Pow2Sum light_sum;       // (1/k) sum_{i in L} 2^m 2^{-u(i) eps}
  Pow2Sum light_yes_sum;   // (1/k) sum_{i in L and Y} 2^m 2^{-u(i) eps}
  json margins = json::object();

  json to_json() const;
};

HideChecks hide_verifier_checks(const std::vector<std::uint32_t>& ys, const HideAnswer& answer,
                                const HideInstance& inst);

Transcript run_hiding(const HideInstance& inst, ProverStrategy& prover, std::uint64_t seed, Budget budget = {});
VerifierFn hiding_verifier(const HideInstance& inst);

}  // namespace pubcoin
