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

#include "pubcoin/lowerbound.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace pubcoin {

namespace {

struct Plan {
  LBClaim claim;
  std::string mode;
  unsigned width = 0;
  unsigned hash_width = 0;
  AffineHash hash;
  std::uint64_t required = 0;
};

const char* kind_name(ClaimKind k) { return k == ClaimKind::Preimage ? "preimage" : "union"; }

std::vector<std::uint32_t> parse_elements(const json& list, unsigned width) {
  if (!list.is_array()) throw ParseError("element list must be an array");
  std::vector<std::uint32_t> out;
  out.reserve(list.size());
  const std::uint64_t limit = std::uint64_t{1} << width;
  for (const auto& e : list) {
    if (!e.is_number_unsigned() && !e.is_number_integer()) throw ParseError("elements must be integers");
    auto v = e.get<long long>();
    if (v < 0 || static_cast<std::uint64_t>(v) >= limit) throw ParseError("element outside the domain");
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

}  // namespace

LBClaim LBClaim::preimage(std::uint32_t y, Pow2Sum size) {
  LBClaim c;
  c.kind = ClaimKind::Preimage;
  c.y = y;
  c.size = std::move(size);
  return c;
}

LBClaim LBClaim::bucket_union(long long bucket, const Rational& bucket_eps, Pow2Sum size) {
  LBClaim c;
  c.kind = ClaimKind::BucketUnion;
  c.bucket = bucket;
  c.bucket_eps = bucket_eps;
  c.size = std::move(size);
  return c;
}

Pow2Sum LBClaim::member_size(unsigned n) const {
  const long long p = bucket_eps.get_num().get_si();
  const auto q = bucket_eps.get_den().get_ui();
  return Pow2Sum::power(Rational(1), static_cast<long long>(n) * static_cast<long long>(q) - (bucket + 1) * p, q);
}

std::string LBClaim::key() const {
  if (kind == ClaimKind::Preimage) return "p:" + std::to_string(y) + ":" + size.to_string();
  return "u:" + std::to_string(bucket) + ":" + to_string(bucket_eps) + ":" + size.to_string();
}

json ClaimOutcome::to_json() const {
  json j{{"kind", kind_name(claim.kind)},
         {"size", claim.size.to_string()},
         {"mode", mode},
         {"required", required},
         {"received", received},
         {"passed", passed}};
  if (claim.kind == ClaimKind::Preimage) {
    j["y"] = claim.y;
  } else {
    j["bucket"] = claim.bucket;
  }
  if (mode == "hash") j["hash_width"] = hash_width;
  if (!reason.empty()) j["reason"] = reason;
  return j;
}

json LBResult::to_json() const {
  json claims = json::array();
  for (const auto& o : outcomes) claims.push_back(o.to_json());
  json j{{"accepted", accepted}, {"claims", std::move(claims)}};
  if (!failed_check.empty()) j["failed_check"] = failed_check;
  if (member_claims > 0) j["members"] = {{"claims", member_claims}, {"accepted", members_accepted}};
  return j;
}

LBResult run_lower_bound(Session& session, const CircuitKnowledge& eval, const std::vector<LBClaim>& claims,
                         const LBConfig& config, const std::string& phase, int depth) {
  LBResult result;
  const Rational& eps = config.eps;

  std::vector<Plan> plans;
  std::unordered_map<std::string, std::size_t> seen;
  for (const auto& c : claims) {
    if (seen.emplace(c.key(), plans.size()).second) {
      Plan p;
      p.claim = c;
      p.width = c.kind == ClaimKind::Preimage ? eval.n() : eval.m();
      plans.push_back(std::move(p));
    }
  }

  auto fail = [&](ClaimOutcome& o, const std::string& check, const std::string& reason) {
    o.passed = false;
    o.reason = reason;
    if (result.accepted) {
      result.accepted = false;
      result.failed_check = check;
    }
  };

  // Modes and coins. A claim larger than its whole domain can never hold.
  std::vector<ClaimOutcome> outcomes(plans.size());
  json challenge_claims = json::array();
  for (std::size_t k = 0; k < plans.size(); ++k) {
    Plan& p = plans[k];
    ClaimOutcome& o = outcomes[k];
    o.claim = p.claim;
    json cj{{"kind", kind_name(p.claim.kind)}, {"size", p.claim.size.to_string()}, {"width", p.width}};
    if (p.claim.kind == ClaimKind::Preimage) {
      cj["y"] = p.claim.y;
    } else {
      cj["bucket"] = p.claim.bucket;
      cj["bucket_eps"] = to_string(p.claim.bucket_eps);
    }
    if (p.claim.size.sign() <= 0) {
      p.mode = "trivial";
    } else if (p.claim.size.compare(pow2(p.width)) > 0) {
      p.mode = "vacuous";
    } else if (p.claim.size.compare(config.s_direct) <= 0) {
      p.mode = "direct";
      p.required = to_u64(p.claim.size.ceil());
    } else {
      p.mode = "hash";
      Pow2Sum scaled = p.claim.size * (eps * eps / config.target_factor);
      long long mp = scaled.sign() > 0 ? floor_log2(scaled) : 0;
      mp = std::clamp<long long>(mp, 0, p.width);
      p.hash_width = static_cast<unsigned>(mp);
      p.hash = AffineHash::random(p.width, p.hash_width, session.coins());
      Pow2Sum target = p.claim.size * pow2(-mp);
      p.required = to_u64((target * (1 - eps * config.slack)).ceil());
      cj["hash"] = p.hash.to_json();
    }
    o.mode = p.mode;
    o.hash_width = p.hash_width;
    o.required = p.required;
    cj["mode"] = p.mode;
    cj["required"] = p.required;
    challenge_claims.push_back(std::move(cj));
  }

  json reply = session.exchange(phase, json{{"type", "lb"}, {"eps", to_string(eps)}, {"claims", challenge_claims}});
  if (!reply.is_object() || !reply.contains("elements") || !reply["elements"].is_array() ||
      reply["elements"].size() != plans.size()) {
    session.reject("malformed", "lower bound reply needs one element list per claim");
  }

  std::map<std::uint32_t, Pow2Sum> member_sizes;
  std::vector<std::size_t> union_claims;
  for (std::size_t k = 0; k < plans.size(); ++k) {
    const Plan& p = plans[k];
    ClaimOutcome& o = outcomes[k];
    std::vector<std::uint32_t> elements;
    try {
      elements = parse_elements(reply["elements"][k], p.width);
    } catch (const ParseError& e) {
      session.reject("malformed", e.what());
    }
    o.received = elements.size();
    o.passed = true;
    if (p.mode == "trivial") continue;
    if (p.mode == "vacuous") {
      fail(o, "lb-vacuous", "claimed size exceeds the domain");
      continue;
    }
    std::vector<std::uint32_t> sorted = elements;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      fail(o, "lb-duplicate", "repeated element");
      continue;
    }
    if (elements.size() < p.required) {
      fail(o, "lb-count", "too few elements");
      continue;
    }
    bool ok = true;
    for (auto x : elements) {
      if (p.mode == "hash" && p.hash.eval(x) != 0) {
        fail(o, "lb-hash", "element outside the hashed cell");
        ok = false;
        break;
      }
      if (p.claim.kind == ClaimKind::Preimage && eval.eval(x) != p.claim.y) {
        fail(o, "lb-membership", "element is not a preimage");
        ok = false;
        break;
      }
    }
    if (!ok || p.claim.kind != ClaimKind::BucketUnion) continue;
    union_claims.push_back(k);
    Pow2Sum member = p.claim.member_size(eval.n());
    for (auto y : elements) {
      auto [it, inserted] = member_sizes.try_emplace(y, member);
      if (!inserted && member.compare(it->second) > 0) it->second = member;
    }
  }

  if (!member_sizes.empty()) {
    result.member_claims = member_sizes.size();
    if (depth + 1 > config.max_depth) {
      result.members_accepted = false;
      for (auto k : union_claims) fail(outcomes[k], "lb-depth", "membership nesting too deep");
    } else {
      std::vector<LBClaim> nested;
      nested.reserve(member_sizes.size());
      for (const auto& [y, s] : member_sizes) nested.push_back(LBClaim::preimage(y, s));
      LBResult inner = run_lower_bound(session, eval, nested, config, phase + "/members", depth + 1);
      result.members_accepted = inner.accepted;
      if (!inner.accepted) {
        for (auto k : union_claims) fail(outcomes[k], "lb-members", "membership not certified");
      }
    }
  }
  result.outcomes = std::move(outcomes);
  return result;
}

json honest_lb_answer(const CircuitKnowledge& know, const json& challenge) {
  json lists = json::array();
  for (const auto& c : challenge.at("claims")) {
    const std::string mode = c.at("mode").get<std::string>();
    json list = json::array();
    if (mode == "trivial" || mode == "vacuous") {
      lists.push_back(std::move(list));
      continue;
    }
    const auto required = c.at("required").get<std::uint64_t>();
    std::optional<AffineHash> hash;
    if (mode == "hash") hash = AffineHash::from_json(c.at("hash"));
    auto offer = [&](std::uint32_t x) {
      if (list.size() >= required) return false;
      if (!hash || hash->eval(x) == 0) list.push_back(x);
      return list.size() < required;
    };
    if (c.at("kind").get<std::string>() == "preimage") {
      for (auto x : know.preimages(c.at("y").get<std::uint32_t>())) {
        if (!offer(x)) break;
      }
    } else {
      const long long bucket = c.at("bucket").get<long long>();
      const Rational eps = parse_rational(c.at("bucket_eps").get<std::string>());
      const std::uint64_t outputs = std::uint64_t{1} << know.m();
      for (std::uint64_t y = 0; y < outputs; ++y) {
        auto label = know.label(static_cast<std::uint32_t>(y), eps);
        if (label && *label <= bucket && !offer(static_cast<std::uint32_t>(y))) break;
      }
    }
    lists.push_back(std::move(list));
  }
  return json{{"elements", std::move(lists)}};
}

std::string LBInstance::digest() const {
  json claims_json = json::array();
  for (const auto& [y, s] : claims) claims_json.push_back({y, to_string(s)});
  json j{{"circuit", circuit->circuit().to_json()}, {"eps", to_string(eps)}, {"claims", std::move(claims_json)}};
  return hex64(fnv1a64(j.dump()));
}

std::vector<std::pair<std::uint32_t, Rational>> LBInstance::claims_from_json(const json& j, unsigned m) {
  std::vector<std::pair<std::uint32_t, Rational>> out;
  try {
    const json& list = j.is_object() ? j.at("claims") : j;
    for (const auto& c : list) {
      auto y = c.at("y").get<std::string>();
      if (y.size() != m) throw WidthError("claim string '" + y + "' does not have width m");
      Rational s = c.at("s").is_string() ? parse_rational(c.at("s").get<std::string>()) : Rational(c.at("s").get<long>());
      if (sgn(s) <= 0) throw DomainError("claimed sizes must be positive");
      out.emplace_back(static_cast<std::uint32_t>(bits_from_string(y, m)), s);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("claims json: ") + e.what());
  }
  return out;
}

VerifierFn lowerbound_verifier(const LBInstance& inst, LBConfig config) {
  config.eps = inst.eps;
  return [inst, config](Session& session) {
    std::vector<LBClaim> claims;
    for (const auto& [y, s] : inst.claims) claims.push_back(LBClaim::preimage(y, Pow2Sum(s)));
    LBResult r = run_lower_bound(session, *inst.circuit, claims, config, "lb");
    session.report()["lb"] = r.to_json();
    if (!r.accepted) session.reject(r.failed_check, "lower bound claim failed");
  };
}

Transcript run_lowerbound(const LBInstance& inst, ProverStrategy& prover, std::uint64_t seed, LBConfig config,
                          Budget budget) {
  return run_session("lowerbound", inst.digest(), lowerbound_verifier(inst, config), prover, seed, budget);
}

}  // namespace pubcoin
