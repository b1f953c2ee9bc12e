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

#include "pubcoin/prover.hpp"

#include "pubcoin/lowerbound.hpp"

namespace pubcoin {

HonestProver::HonestProver(KnowledgePtr know, std::shared_ptr<const NondetCircuit> v)
    : know_(std::move(know)), v_(std::move(v)) {}

json HonestProver::respond(const std::string& phase, const json& challenge) {
  const std::string type = challenge.at("type").get<std::string>();
  if (type == "lb") return answer_lb(phase, challenge);
  if (type == "vh-labels") return answer_vh_labels(challenge);
  if (type == "hs-histogram") return answer_histogram(challenge);
  if (type == "hide-samples") return answer_hide(challenge);
  throw ParseError("unknown challenge type '" + type + "'");
}

long long HonestProver::true_label(std::uint32_t y, const Rational& eps) {
  auto& labels = label_cache_[to_string(eps)];
  if (labels.empty()) {
    labels.assign(std::size_t{1} << know_->m(), -2);
  }
  long long& slot = labels[y];
  if (slot == -2) {
    auto l = know_->label(y, eps);
    slot = l ? *l : -1;
  }
  return slot;
}

const Histogram& HonestProver::true_histogram(const BucketParams& params) {
  const std::string key = to_string(params.eps) + "|" + std::to_string(params.t);
  auto it = hist_cache_.find(key);
  if (it == hist_cache_.end()) it = hist_cache_.emplace(key, compute_histogram(know_->dist(), params)).first;
  return it->second;
}

bool HonestProver::in_v(std::uint32_t y) {
  if (!v_) throw Error("this prover has no verifier circuit");
  if (yes_cache_.empty()) yes_cache_.assign(std::size_t{1} << v_->m(), -1);
  auto& slot = yes_cache_[y];
  if (slot < 0) slot = v_->find_witness(y).has_value() ? 1 : 0;
  return slot == 1;
}

json HonestProver::answer_lb(const std::string&, const json& challenge) { return honest_lb_answer(*know_, challenge); }

json HonestProver::answer_vh_labels(const json& challenge) {
  const Rational eps = parse_rational(challenge.at("eps").get<std::string>());
  const long long t = challenge.at("t").get<long long>();
  json labels = json::array();
  for (const auto& s : challenge.at("samples")) {
    long long l = true_label(s.get<std::uint32_t>(), eps);
    labels.push_back(std::min(l < 0 ? t : l, t));
  }
  return json{{"labels", std::move(labels)}};
}

json HonestProver::answer_histogram(const json& challenge) {
  BucketParams params(parse_rational(challenge.at("eps").get<std::string>()), challenge.at("t").get<long long>());
  return json{{"histogram", true_histogram(params).to_json()}};
}

json HonestProver::answer_hide(const json& challenge) {
  const Rational eps = parse_rational(challenge.at("eps").get<std::string>());
  json labels = json::array();
  json yes = json::array();
  json witnesses = json::array();
  std::size_t i = 0;
  for (const auto& s : challenge.at("samples")) {
    auto y = s.get<std::uint32_t>();
    long long l = true_label(y, eps);
    if (l < 0) {
      labels.push_back(nullptr);
    } else {
      labels.push_back(l);
    }
    if (v_) {
      if (auto w = v_->find_witness(y)) {
        yes.push_back(i);
        witnesses.push_back(*w);
      }
    }
    ++i;
  }
  return json{{"labels", std::move(labels)}, {"yes", std::move(yes)}, {"witnesses", std::move(witnesses)}};
}

std::unique_ptr<ProverStrategy> honest_lb_prover(KnowledgePtr know) {
  return std::make_unique<HonestProver>(std::move(know));
}

std::unique_ptr<ProverStrategy> honest_vh_prover(KnowledgePtr know) {
  return std::make_unique<HonestProver>(std::move(know));
}

std::unique_ptr<ProverStrategy> honest_hs_prover(KnowledgePtr know) {
  return std::make_unique<HonestProver>(std::move(know));
}

std::unique_ptr<ProverStrategy> honest_hiding_prover(KnowledgePtr know, std::shared_ptr<const NondetCircuit> v) {
  return std::make_unique<HonestProver>(std::move(know), std::move(v));
}

}  // namespace pubcoin
