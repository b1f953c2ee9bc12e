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

#include "pubcoin/heavy_samples.hpp"

namespace pubcoin {

Rational heavy_eps_tilde(const Rational& eps) { return Rational(1, 25) * Rational(1, 25) * eps * eps; }

long long heavy_band(const Rational& eps_tilde) {
  // Smallest N with N^2 eps_tilde >= 625.
  BigInt lower = floor_of(Rational(625) / eps_tilde);
  BigInt n;
  mpz_sqrt(n.get_mpz_t(), lower.get_mpz_t());
  while (Rational(n * n) * eps_tilde < 625) ++n;
  while (n > 0 && Rational((n - 1) * (n - 1)) * eps_tilde >= 625) --n;
  if (!n.fits_slong_p()) throw DomainError("band too wide");
  return n.get_si();
}

std::string HeavyInstance::digest() const {
  json j{{"circuit", circuit->circuit().to_json()},
         {"pH", to_string(pH)},
         {"pUH", to_string(pUH)},
         {"eps", to_string(eps)},
         {"alpha", to_string(alpha)}};
  return hex64(fnv1a64(j.dump()));
}

long long jstar(const Rational& eps_tilde, const Rational& alpha, unsigned m) {
  if (sgn(alpha) <= 0) throw DomainError("alpha must be positive");
  const Rational threshold = alpha * pow2(-static_cast<long long>(m));
  auto holds = [&](long long j) { return compare_with_pow2(threshold, -Rational(static_cast<long>(j + 1)) * eps_tilde) < 0; };
  if (!holds(0)) throw DomainError("no index j satisfies 2^{-(j+1) eps} > alpha 2^-m");
  long long lo = 0, hi = 1;
  while (holds(hi)) {
    lo = hi;
    hi *= 2;
    if (hi > (1ll << 40)) throw DomainError("j* too large");
  }
  while (hi - lo > 1) {
    long long mid = lo + (hi - lo) / 2;
    if (holds(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

json HSChecks::to_json() const {
  return {{"passed", passed},
          {"failed_check", failed},
          {"jstar", jstar},
          {"band", band},
          {"band_mass", to_string(band_mass)},
          {"heavy_mass", to_string(heavy_mass)},
          {"uniform_mass", uniform_mass.to_double()}};
}

HSChecks hs_verifier_checks(const Histogram& h, long long j_star, const Rational& pH, const Rational& pUH,
                            const Rational& eps_tilde, unsigned m) {
  HSChecks r;
  r.jstar = j_star;
  r.band = heavy_band(eps_tilde);
  const auto q = eps_tilde.get_den().get_ui();
  const long long p = eps_tilde.get_num().get_si();
  const Rational unit = pow2(-static_cast<long long>(m));
  for (const auto& [j, v] : h.entries()) {
    if (j >= j_star - r.band && j <= j_star + r.band) r.band_mass += v;
    if (j <= j_star) {
      r.heavy_mass += v;
      r.uniform_mass += Pow2Sum::power(v * unit, j * p, q);
    }
  }
  // eps_tilde^{1/4} windows: compare fourth powers.
  if (!abs_le(r.band_mass, eps_tilde, 4)) {
    r.passed = false;
    r.failed = "a";
  } else if (!abs_le(r.heavy_mass - pH, eps_tilde, 4)) {
    r.passed = false;
    r.failed = "b";
  } else if (!in_window(r.uniform_mass, pUH, 256 * eps_tilde, 4)) {
    r.passed = false;
    r.failed = "c";
  }
  return r;
}

VerifierFn heavy_samples_verifier(const HeavyInstance& inst, const VHMode& vh_mode) {
  return [inst, vh_mode](Session& session) {
    const Rational et = inst.eps_tilde();
    const long long t = inst.t();
    json reply = session.exchange("hs/histogram", json{{"type", "hs-histogram"}, {"eps", to_string(et)}, {"t", t}});
    Histogram h = Histogram::from_json(reply.at("histogram"));
    if (h.params().eps != et || h.t() != t) session.reject("malformed", "histogram has the wrong parameters");
    const long long js = jstar(et, inst.alpha, inst.circuit->m());
    session.report()["jstar"] = js;
    HSChecks checks = hs_verifier_checks(h, js, inst.pH, inst.pUH, et, inst.circuit->m());
    session.report()["checks"] = checks.to_json();
    session.report()["estimate"] = to_string(checks.heavy_mass);
    verify_histogram(session, *inst.circuit, h, vh_mode, "hs/vh");
    if (!checks.passed) session.reject("hs-" + checks.failed, "heavy samples check (" + checks.failed + ") failed");
  };
}

Transcript run_heavy_samples(const HeavyInstance& inst, const VHMode& vh_mode, ProverStrategy& prover,
                             std::uint64_t seed, Budget budget) {
  return run_session("heavy", inst.digest(), heavy_samples_verifier(inst, vh_mode), prover, seed, budget);
}

}  // namespace pubcoin
