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

#include "pubcoin/adversary.hpp"

#include <algorithm>
#include <numeric>

namespace pubcoin {

std::optional<long long> RelabelingProver::claimed_label(std::uint32_t y, const Rational& eps, long long t) {
  long long truth = true_label(y, eps);
  if (truth < 0) return std::nullopt;
  long long l = std::max(0LL, relabel(y, truth, eps));
  if (l > t) return std::nullopt;
  return l;
}

Histogram RelabelingProver::claimed_histogram(const BucketParams& params) {
  Histogram h(params);
  std::map<long long, BigInt> sums;
  BigInt excluded;
  const auto outputs = std::uint64_t{1} << know_->m();
  for (std::uint64_t y = 0; y < outputs; ++y) {
    auto c = know_->count(static_cast<std::uint32_t>(y));
    if (c == 0) continue;
    auto l = claimed_label(static_cast<std::uint32_t>(y), params.eps, params.t);
    if (l) {
      sums[*l] += static_cast<unsigned long>(c);
    } else {
      excluded += static_cast<unsigned long>(c);
    }
  }
  const Rational unit = pow2(-static_cast<long long>(know_->n()));
  for (const auto& [i, c] : sums) h.set(i, Rational(c) * unit);
  h.set_excluded_mass(Rational(excluded) * unit);
  return h;
}

json RelabelingProver::answer_vh_labels(const json& challenge) {
  const Rational eps = parse_rational(challenge.at("eps").get<std::string>());
  const long long t = challenge.at("t").get<long long>();
  json labels = json::array();
  for (const auto& s : challenge.at("samples")) {
    auto l = claimed_label(s.get<std::uint32_t>(), eps, t);
    labels.push_back(l ? *l : t);
  }
  return json{{"labels", std::move(labels)}};
}

json RelabelingProver::answer_histogram(const json& challenge) {
  BucketParams params(parse_rational(challenge.at("eps").get<std::string>()), challenge.at("t").get<long long>());
  return json{{"histogram", claimed_histogram(params).to_json()}};
}

long long LBInflater::relabel(std::uint32_t, long long truth, const Rational&) { return truth - 1; }

HistShifter::HistShifter(KnowledgePtr know, long long buckets, const Rational& mass)
    : RelabelingProver(std::move(know)), buckets_(buckets) {
  std::vector<std::uint32_t> order(std::size_t{1} << know_->m());
  std::iota(order.begin(), order.end(), 0U);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return know_->count(a) > know_->count(b); });
  const BigInt limit = floor_of(mass * pow2(know_->n()));
  BigInt taken;
  for (auto y : order) {
    auto c = know_->count(y);
    if (c == 0) break;
    if (taken + static_cast<unsigned long>(c) > limit) continue;
    taken += static_cast<unsigned long>(c);
    moved_.insert(y);
  }
}

long long HistShifter::relabel(std::uint32_t y, long long truth, const Rational&) {
  return moved_.count(y) ? truth + buckets_ : truth;
}

NearThresholdLiar::NearThresholdLiar(KnowledgePtr know, const Rational& eps, const Rational& alpha)
    : RelabelingProver(std::move(know)), alpha_(alpha) {
  upper_ = alpha * pow2(-static_cast<long long>(know_->m()));
  lower_ = (1 - 4 * eps) * upper_;
}

long long NearThresholdLiar::relabel(std::uint32_t y, long long truth, const Rational& eps) {
  Rational p = Rational(static_cast<unsigned long>(know_->count(y))) * pow2(-static_cast<long long>(know_->n()));
  if (p < lower_ || p >= upper_) return truth;
  // j*: the last bucket lying entirely above the threshold.
  long long j = truth;
  while (j > 0 && compare_with_pow2(upper_, Rational(static_cast<long>(-(j + 1))) * eps) >= 0) --j;
  return j;
}

YesSuppressor::YesSuppressor(KnowledgePtr know, std::shared_ptr<const NondetCircuit> v, const Rational& fraction)
    : HonestProver(std::move(know), std::move(v)), fraction_(fraction) {
  if (fraction < 0 || fraction > 1) throw DomainError("suppressed fraction must lie in [0, 1]");
}

json YesSuppressor::answer_hide(const json& challenge) {
  json reply = HonestProver::answer_hide(challenge);
  json yes = json::array();
  json witnesses = json::array();
  const auto& y_in = reply.at("yes");
  const auto& w_in = reply.at("witnesses");
  for (std::size_t j = 0; j < y_in.size(); ++j) {
    // Drops entry j when floor((j + 1) f) passes an integer.
    const long jl = static_cast<long>(j);
    if (floor_of(Rational(jl + 1) * fraction_) != floor_of(Rational(jl) * fraction_)) continue;
    yes.push_back(y_in[j]);
    witnesses.push_back(w_in[j]);
  }
  reply["yes"] = std::move(yes);
  reply["witnesses"] = std::move(witnesses);
  return reply;
}

json LabelLightener::answer_hide(const json& challenge) {
  json reply = HonestProver::answer_hide(challenge);
  for (auto& l : reply.at("labels")) {
    if (!l.is_null()) l = std::max(0LL, l.get<long long>() - 2);
  }
  return reply;
}

const std::vector<std::string>& adversary_names() {
  static const std::vector<std::string> names{"honest",         "lb-inflater",     "hist-shifter",
                                              "near-threshold-liar", "yes-suppressor", "label-lightener",
                                              "honest-labels-wrong-pYL"};
  return names;
}

std::unique_ptr<ProverStrategy> adversary(const std::string& name, const AdversaryParams& params, KnowledgePtr know,
                                          std::shared_ptr<const NondetCircuit> v) {
  if (name == "honest") return std::make_unique<HonestProver>(std::move(know), std::move(v));
  if (name == "lb-inflater") return std::make_unique<LBInflater>(std::move(know), std::move(v));
  if (name == "hist-shifter") return std::make_unique<HistShifter>(std::move(know), params.buckets, params.mass);
  if (name == "near-threshold-liar") return std::make_unique<NearThresholdLiar>(std::move(know), params.eps, params.alpha);
  if (name == "yes-suppressor") return std::make_unique<YesSuppressor>(std::move(know), std::move(v), params.fraction);
  if (name == "label-lightener") return std::make_unique<LabelLightener>(std::move(know), std::move(v));
  if (name == "honest-labels-wrong-pYL") return std::make_unique<WrongPYLProver>(std::move(know), std::move(v));
  throw DomainError("unknown prover '" + name + "'");
}

}  // namespace pubcoin
