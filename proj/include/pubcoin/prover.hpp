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

#include "pubcoin/knowledge.hpp"
#include "pubcoin/session.hpp"

#include <map>
#include <memory>

namespace pubcoin {

/// Honest prover for every protocol in the library. It dispatches on the
/// challenge "type"; adversaries override single answers.
class HonestProver : public ProverStrategy {
 public:
  explicit HonestProver(KnowledgePtr know, std::shared_ptr<const NondetCircuit> v = nullptr);

  std::string name() const override { return "honest"; }
  json respond(const std::string& phase, const json& challenge) override;

  const CircuitKnowledge& knowledge() const { return *know_; }

 protected:
  virtual json answer_lb(const std::string& phase, const json& challenge);
  virtual json answer_vh_labels(const json& challenge);
  virtual json answer_histogram(const json& challenge);
  virtual json answer_hide(const json& challenge);

  /// True label of y, or -1 for zero mass.
  long long true_label(std::uint32_t y, const Rational& eps);
  const Histogram& true_histogram(const BucketParams& params);
  bool in_v(std::uint32_t y);

  KnowledgePtr know_;
  std::shared_ptr<const NondetCircuit> v_;

 private:
  std::map<std::string, std::vector<long long>> label_cache_;
  std::map<std::string, Histogram> hist_cache_;
  std::vector<signed char> yes_cache_;
};

std::unique_ptr<ProverStrategy> honest_lb_prover(KnowledgePtr know);
std::unique_ptr<ProverStrategy> honest_vh_prover(KnowledgePtr know);
std::unique_ptr<ProverStrategy> honest_hs_prover(KnowledgePtr know);
std::unique_ptr<ProverStrategy> honest_hiding_prover(KnowledgePtr know, std::shared_ptr<const NondetCircuit> v);

}  // namespace pubcoin
