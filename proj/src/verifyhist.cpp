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

#include "pubcoin/verifyhist.hpp"

#include <set>

namespace pubcoin {

const char* to_string(VHVerdict v) {
  switch (v) {
    case VHVerdict::Yes: return "yes";
    case VHVerdict::No: return "no";
    case VHVerdict::OutsidePromise: return "outside-promise";
  }
  return "?";
}

std::string VHInstance::digest() const {
  json j{{"circuit", circuit->circuit().to_json()}, {"h", h.to_json()}};
  return hex64(fnv1a64(j.dump()));
}

VHOracleResult decide_oracle_detail(const ExactDist& d, const Histogram& h) {
  if (h.t() != default_t(d.n_bits(), h.params().eps)) throw DomainError("histogram t must equal ceil(n/eps)");
  VHOracleResult r;
  r.hc = compute_histogram(d, h.params());
  if (h == r.hc) {
    r.verdict = VHVerdict::Yes;
    r.distance = Rational(0);
    return r;
  }
  if (!h.is_distribution()) {
    r.verdict = VHVerdict::No;
    return r;
  }
  r.distance = wasserstein(r.hc, h).total;
  r.verdict = *r.distance > ratio(20, static_cast<unsigned long>(h.t())) ? VHVerdict::No : VHVerdict::OutsidePromise;
  return r;
}

VHVerdict decide_oracle(const ExactDist& d, const Histogram& h) { return decide_oracle_detail(d, h).verdict; }

VHVerdict decide_oracle(const VHInstance& inst) { return decide_oracle(inst.circuit->dist(), inst.h); }

namespace {

void preimage_test(Session& session, const CircuitKnowledge& eval, const Histogram& h, const VHProtocolParams& p,
                   const std::string& phase, json& report) {
  const BucketParams& params = h.params();
  const long long t = params.t;
  const long long k = p.k_pre.value_or(400 * t * t);
  if (k < 1) throw DomainError("preimage sample count must be positive");
  if (k > p.max_samples) throw BudgetError("preimage test needs " + std::to_string(k) + " samples");
  const Rational tau = p.tau_pre.value_or(ratio(10, static_cast<unsigned long>(t)));

  json samples = json::array();
  std::vector<std::uint32_t> ys(static_cast<std::size_t>(k));
  for (auto& y : ys) {
    y = eval.eval(static_cast<std::uint32_t>(session.coins().bits(eval.n())));
    samples.push_back(y);
  }
  json reply = session.exchange(phase + "/labels", json{{"type", "vh-labels"},
                                                         {"eps", to_string(params.eps)},
                                                         {"t", t},
                                                         {"samples", std::move(samples)}});
  const json& labels = reply.at("labels");
  if (!labels.is_array() || static_cast<long long>(labels.size()) != k) {
    session.reject("malformed", "one label per sample expected");
  }
  std::map<long long, long long> counts;
  std::set<std::pair<std::uint32_t, long long>> pairs;
  for (long long j = 0; j < k; ++j) {
    const json& l = labels[static_cast<std::size_t>(j)];
    if (!l.is_number_integer()) session.reject("malformed", "labels must be integers");
    long long v = l.get<long long>();
    if (v < 0 || v > t) session.reject("malformed", "label outside (t)");
    ++counts[v];
    pairs.emplace(ys[static_cast<std::size_t>(j)], v);
  }

  Histogram empirical(params);
  for (const auto& [i, c] : counts) empirical.set(i, ratio(static_cast<long>(c), static_cast<unsigned long>(k)));
  if (!h.is_distribution()) session.reject("vh-histogram", "claimed histogram is not a distribution vector");
  Rational distance = wasserstein(h, empirical).total;
  report["preimage_samples"] = k;
  report["preimage_distance"] = to_string(distance);

  const auto q = params.q();
  const long long pnum = static_cast<long long>(params.p());
  const long long base = static_cast<long long>(eval.n()) * static_cast<long long>(q);
  std::vector<LBClaim> claims;
  claims.reserve(pairs.size());
  for (const auto& [y, l] : pairs) claims.push_back(LBClaim::preimage(y, Pow2Sum::power(1, base - (l + 1) * pnum, q)));
  LBResult lb = run_lower_bound(session, eval, claims, p.lb, phase + "/preimage-lb");
  report["preimage_claims"] = claims.size();
  report["preimage_lb"] = lb.accepted;
  if (!lb.accepted) session.reject("vh-preimage-lb", "a label overstates its probability (" + lb.failed_check + ")");
  if (distance > tau) session.reject("vh-preimage-distance", "labels disagree with the claimed histogram");
}

void image_test(Session& session, const CircuitKnowledge& eval, const Histogram& h, const VHProtocolParams& p,
                const std::string& phase, json& report) {
  const BucketParams& params = h.params();
  const auto q = params.q();
  const long long pnum = static_cast<long long>(params.p());
  // W_i only grows with i, so prefixes ending at an empty bucket are implied
  // by the previous claim. |W_i| is an integer and the claim is rounded up.
  std::vector<LBClaim> claims;
  Pow2Sum w;
  for (const auto& [i, v] : h.entries()) {
    w += Pow2Sum::power(v, i * pnum, q);
    claims.push_back(LBClaim::bucket_union(i, params.eps, Pow2Sum(Rational(w.ceil()))));
  }
  LBResult lb = run_lower_bound(session, eval, claims, p.lb, phase + "/image-lb");
  report["image_claims"] = claims.size();
  report["image_lb"] = lb.accepted;
  if (!lb.accepted) session.reject("vh-image", "a prefix of buckets is smaller than claimed (" + lb.failed_check + ")");
}

}  // namespace

void verify_histogram(Session& session, const CircuitKnowledge& eval, const Histogram& h, const VHMode& mode,
                      const std::string& phase) {
  json& report = session.report()["verifyhist"];
  report = json::object();
  if (h.t() != default_t(eval.n(), h.params().eps)) session.reject("malformed", "histogram t must equal ceil(n/eps)");
  if (!mode.protocol) {
    VHOracleResult r = decide_oracle_detail(eval.dist(), h);
    report["mode"] = "oracle";
    report["oracle_verdict"] = to_string(r.verdict);
    if (r.distance) report["distance"] = to_string(*r.distance);
    if (r.verdict == VHVerdict::No) session.reject("verifyhist", "histogram is far from the true histogram");
    return;
  }
  report["mode"] = "protocol";
  preimage_test(session, eval, h, mode.params, phase, report);
  image_test(session, eval, h, mode.params, phase, report);
}

VerifierFn verifyhist_verifier(const VHInstance& inst, const VHMode& mode) {
  return [inst, mode](Session& session) { verify_histogram(session, *inst.circuit, inst.h, mode, "vh"); };
}

Transcript run_verifyhist(const VHInstance& inst, const VHMode& mode, ProverStrategy& prover, std::uint64_t seed,
                          Budget budget) {
  return run_session("verifyhist", inst.digest(), verifyhist_verifier(inst, mode), prover, seed, budget);
}

}  // namespace pubcoin
