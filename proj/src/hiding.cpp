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

#include "pubcoin/hiding.hpp"

#include <mpfr.h>

#include <map>

namespace pubcoin {

namespace {

constexpr long long kMaxSamples = 10'000'000;

Rational log_bound(const Rational& x, mpfr_rnd_t dir, unsigned prec) {
  mpfr_t v;
  mpfr_init2(v, prec);
  mpfr_set_q(v, x.get_mpq_t(), dir);
  mpfr_log(v, v, dir);
  Rational out;
  mpfr_get_q(out.get_mpq_t(), v);
  mpfr_clear(v);
  return out;
}

}  // namespace

long long sample_count(const Rational& eps, const Rational& alpha) {
  if (sgn(eps) <= 0 || eps >= 1) throw DomainError("eps must lie in (0,1)");
  if (sgn(alpha) <= 0) throw DomainError("alpha must be positive");
  const Rational arg = Rational(2) / eps;
  const Rational factor = alpha * alpha * 9 / (2 * eps * eps);
  for (unsigned prec = 64; prec <= 4096; prec *= 2) {
    BigInt lo = ceil_of(log_bound(arg, MPFR_RNDD, prec) * factor);
    BigInt hi = ceil_of(log_bound(arg, MPFR_RNDU, prec) * factor);
    if (lo == hi) {
      if (lo > static_cast<long>(kMaxSamples)) throw BudgetError("hiding needs " + lo.get_str() + " samples");
      return lo.get_si();
    }
  }
  throw Error("sample count refinement did not converge");
}

std::string HideInstance::digest() const {
  json j{{"circuit", circuit->circuit().to_json()},
         {"v", v->to_json()},
         {"pH", to_string(pH)},
         {"pUH", to_string(pUH)},
         {"pYL", to_string(pYL)},
         {"eps", to_string(eps)},
         {"alpha", to_string(alpha)},
         {"advice_gUY", to_string(advice_gUY)}};
  return hex64(fnv1a64(j.dump()));
}

bool is_light_label(const Label& u, const Rational& eps, const Rational& alpha, unsigned m) {
  if (!u) return true;
  return compare_with_pow2(alpha * pow2(-static_cast<long long>(m)), -Rational(static_cast<long>(*u + 1)) * eps) > 0;
}

HideAnswer HideAnswer::from_json(const json& j, std::size_t k, long long t, unsigned l) {
  HideAnswer a;
  const json& labels = j.at("labels");
  if (!labels.is_array() || labels.size() != k) throw ParseError("one label per sample expected");
  a.labels.reserve(k);
  for (const auto& u : labels) {
    if (u.is_null()) {
      a.labels.emplace_back(std::nullopt);
      continue;
    }
    if (!u.is_number_integer()) throw ParseError("labels must be integers or null");
    long long v = u.get<long long>();
    if (v < 0 || v > t) throw ParseError("label outside (t)");
    a.labels.emplace_back(v);
  }
  const json& yes = j.at("yes");
  const json& wit = j.at("witnesses");
  if (!yes.is_array() || !wit.is_array() || yes.size() != wit.size()) {
    throw ParseError("yes set and witnesses must be parallel arrays");
  }
  for (std::size_t r = 0; r < yes.size(); ++r) {
    if (!yes[r].is_number_integer() || !wit[r].is_number_integer()) throw ParseError("yes entries must be integers");
    long long i = yes[r].get<long long>();
    long long w = wit[r].get<long long>();
    if (i < 0 || static_cast<std::size_t>(i) >= k) throw ParseError("yes index out of range");
    if (!a.yes.empty() && static_cast<std::size_t>(i) <= a.yes.back()) throw ParseError("yes indices must increase");
    if (w < 0 || (static_cast<unsigned long long>(w) >> l) != 0) throw ParseError("witness wider than l");
    a.yes.push_back(static_cast<std::size_t>(i));
    a.witnesses.push_back(static_cast<std::uint32_t>(w));
  }
  return a;
}

json HideChecks::to_json() const {
  return {{"passed", passed},
          {"failed_check", failed},
          {"light", light},
          {"heavy", heavy},
          {"yes_fraction", to_string(yes_fraction)},
          {"heavy_fraction", to_string(heavy_fraction)},
          {"light_sum", light_sum.to_double()},
          {"light_yes_sum", light_yes_sum.to_double()},
          {"margins", margins}};
}

HideChecks hide_verifier_checks(const std::vector<std::uint32_t>& ys, const HideAnswer& answer,
                                const HideInstance& inst) {
  HideChecks r;
  const std::size_t k = ys.size();
  const unsigned m = inst.circuit->m();
  const Rational& eps = inst.eps;
  const auto q = eps.get_den().get_ui();
  const long long p = eps.get_num().get_si();
  const Rational inv_k(1, static_cast<unsigned long>(k));

  std::vector<bool> in_yes(k, false);
  for (auto i : answer.yes) in_yes[i] = true;

  std::map<long long, long long> light_counts, light_yes_counts;
  for (std::size_t i = 0; i < k; ++i) {
    const Label& u = answer.labels[i];
    if (is_light_label(u, eps, inst.alpha, m)) {
      ++r.light;
      if (u) {
        ++light_counts[*u];
        if (in_yes[i]) ++light_yes_counts[*u];
      }
    } else {
      ++r.heavy;
    }
  }
  for (const auto& [u, c] : light_counts) {
    r.light_sum += Pow2Sum::power(Rational(static_cast<long>(c)) * inv_k, static_cast<long long>(m) * static_cast<long long>(q) - u * p, q);
  }
  for (const auto& [u, c] : light_yes_counts) {
    r.light_yes_sum +=
        Pow2Sum::power(Rational(static_cast<long>(c)) * inv_k, static_cast<long long>(m) * static_cast<long long>(q) - u * p, q);
  }
  r.yes_fraction = Rational(static_cast<long>(answer.yes.size())) * inv_k;
  r.heavy_fraction = Rational(static_cast<long>(r.heavy)) * inv_k;

  const Rational d_a = r.yes_fraction - inst.advice_gUY;
  const Rational d_c = r.heavy_fraction - inst.pUH;
  const Pow2Sum d_d = r.light_sum - Pow2Sum(1 - inst.pH);
  const Pow2Sum d_e = r.light_yes_sum - Pow2Sum(inst.pYL);
  r.margins = {{"a", d_a.get_d()}, {"c", d_c.get_d()}, {"d", d_d.to_double()}, {"e", d_e.to_double()}};

  auto fail = [&](const char* which) {
    if (r.passed) {
      r.passed = false;
      r.failed = which;
    }
  };
  if (!abs_le(d_a, eps, 1)) fail("a");
  for (std::size_t j = 0; j < answer.yes.size(); ++j) {
    if (!inst.v->check(ys[answer.yes[j]], answer.witnesses[j])) {
      fail("b");
      break;
    }
  }
  if (!abs_le(d_c, 9 * eps, 2)) fail("c");
  if (!abs_le(d_d, 25 * eps, 2)) fail("d");
  if (!abs_le(d_e, 25 * eps, 2)) fail("e");
  return r;
}

VerifierFn hiding_verifier(const HideInstance& inst) {
  return [inst](Session& session) {
    const unsigned m = inst.circuit->m();
    const unsigned n = inst.circuit->n();
    if (inst.v->m() != m) throw WidthError("verifier circuit width does not match circuit m");
    const long long k = inst.k();
    const long long t = inst.t();
    std::vector<std::uint32_t> ys(static_cast<std::size_t>(k));
    json samples = json::array();
    for (auto& y : ys) {
      y = static_cast<std::uint32_t>(session.coins().bits(m));
      samples.push_back(y);
    }
    json reply = session.exchange("hide/samples", json{{"type", "hide-samples"},
                                                        {"eps", to_string(inst.eps)},
                                                        {"t", t},
                                                        {"samples", std::move(samples)}});
    HideAnswer answer = HideAnswer::from_json(reply, ys.size(), t, inst.v->l());
    HideChecks checks = hide_verifier_checks(ys, answer, inst);
    json& report = session.report();
    report["k"] = k;
    report["checks"] = checks.to_json();
    report["estimate"] = checks.light_yes_sum.to_double();
    report["estimate_exact"] = checks.light_yes_sum.to_string();
    if (!checks.passed) session.reject("hide-" + checks.failed, "hiding check (" + checks.failed + ") failed");

    const auto q = inst.eps.get_den().get_ui();
    const long long p = inst.eps.get_num().get_si();
    std::vector<LBClaim> claims;
    for (std::size_t i = 0; i < ys.size(); ++i) {
      const Label& u = answer.labels[i];
      if (!u) continue;
      claims.push_back(LBClaim::preimage(
          ys[i], Pow2Sum::power(1, static_cast<long long>(n) * static_cast<long long>(q) - (*u + 1) * p, q)));
    }
    LBConfig lb;
    lb.eps = inst.eps / 2;
    LBResult r = run_lower_bound(session, *inst.circuit, claims, lb, "hide/lb");
    report["lb"] = r.to_json();
    if (!r.accepted) session.reject("hide-lb", "a label overstates its probability (" + r.failed_check + ")");
  };
}

Transcript run_hiding(const HideInstance& inst, ProverStrategy& prover, std::uint64_t seed, Budget budget) {
  return run_session("hiding", inst.digest(), hiding_verifier(inst), prover, seed, budget);
}

}  // namespace pubcoin
