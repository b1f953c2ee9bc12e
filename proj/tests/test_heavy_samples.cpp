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
#include "pubcoin/generators.hpp"
#include "pubcoin/heavy_samples.hpp"

#include <doctest.h>

using namespace pubcoin;

namespace {

// P = 1/2, 1/4, 1/4 over 4-bit outputs.
KnowledgePtr three_point() { return make_knowledge(counts_circuit(10, 4, {{0, 512}, {1, 256}, {2, 256}})); }

HeavyInstance instance(KnowledgePtr know, Rational pH, Rational pUH, Rational alpha) {
  return HeavyInstance{std::move(know), std::move(pH), std::move(pUH), Rational(1, 4), std::move(alpha)};
}

}  // namespace

TEST_CASE("jstar") {
  CHECK(jstar(Rational(1, 4), 2, 4) == 10);
  CHECK(jstar(Rational(1, 2), 4, 8) == 10);
  CHECK(jstar(Rational(1, 10000), 2, 4) == 29998);
  // 2^-(j+1)/4 > 1/24 holds up to j = 17.
  CHECK(jstar(Rational(1, 4), Rational(2, 3), 4) == 17);
  CHECK_THROWS_AS(jstar(Rational(1, 4), 16, 4), DomainError);
  CHECK_THROWS_AS(jstar(Rational(1, 4), 0, 4), DomainError);
  // Brute force over small exponents.
  for (long a = 1; a <= 20; ++a) {
    const Rational e(1, 3);
    const Rational alpha(a, 4);
    const Rational threshold = alpha * pow2(-5);
    if (compare_with_pow2(threshold, -e) >= 0) continue;
    long long j = 0;
    while (compare_with_pow2(threshold, -Rational(static_cast<long>(j + 2)) * e) < 0) ++j;
    CHECK(jstar(e, alpha, 5) == j);
  }
}

TEST_CASE("parameters") {
  const Rational eps(1, 4);
  const Rational et = heavy_eps_tilde(eps);
  CHECK(et == Rational(1, 10000));
  // 4 eps_tilde^{1/4} = (4/5) sqrt(eps), compared as fourth powers.
  for (const Rational& e : {Rational(1, 4), Rational(1, 9), Rational(3, 7)}) {
    const Rational lhs = 256 * heavy_eps_tilde(e);
    const Rational r = Rational(4, 5) * Rational(4, 5);
    CHECK(lhs == r * r * e * e);
  }
  CHECK(heavy_band(et) == 2500);
  CHECK(heavy_band(Rational(1, 3)) == 44);  // 44^2/3 >= 625 > 43^2/3
  HeavyInstance inst = instance(three_point(), 1, Rational(3, 16), 2);
  CHECK(inst.t() == 100000);
}

TEST_CASE("checks on a hand built histogram") {
  const Rational et(1, 16);  // band 100, fourth-root window 1/2
  BucketParams params(et, 400);
  Histogram h(params);
  h.set(0, Rational(1, 4));
  h.set(300, Rational(3, 4));
  HSChecks c = hs_verifier_checks(h, 100, Rational(1, 4), Rational(1, 16), et, 4);
  CHECK(c.band == 100);
  CHECK(c.band_mass == Rational(1, 4));
  CHECK(c.heavy_mass == Rational(1, 4));
  CHECK(c.uniform_mass == Pow2Sum(Rational(1, 64)));
  CHECK(c.passed);
  // (a): 3/4 in the band exceeds 1/2.
  HSChecks a = hs_verifier_checks(h, 250, Rational(1, 4), Rational(1, 16), et, 4);
  CHECK(a.failed == "a");
  // (b): the window is closed.
  CHECK(hs_verifier_checks(h, 100, Rational(3, 4), 0, et, 4).passed);
  CHECK(hs_verifier_checks(h, 100, Rational(3, 4) + Rational(1, 1000), 0, et, 4).failed == "b");
  // (c): |uniform - pUH| <= 4 eps_tilde^{1/4} = 2.
  CHECK(hs_verifier_checks(h, 100, Rational(1, 4), 2, et, 4).passed);
  CHECK(hs_verifier_checks(h, 100, Rational(1, 4), Rational(21, 10), et, 4).failed == "c");
}

TEST_CASE("honest prover") {
  auto know = three_point();
  HonestProver honest(know);
  // Threshold 2^-3: all three outputs are heavy and far from it.
  Transcript t = run_heavy_samples(instance(know, 1, Rational(3, 16), 2), VHMode::oracle(), honest, 3);
  CHECK(t.accepted);
  CHECK(t.report["jstar"] == 29998);
  CHECK(t.report["estimate"] == "1/1");
  CHECK(t.report["verifyhist"]["oracle_verdict"] == "yes");
  double uniform = t.report["checks"]["uniform_mass"].get<double>();
  CHECK(uniform == doctest::Approx(3.0 / 16).epsilon(1e-3));

  // pH and pUH inside the windows still accept.
  CHECK(run_heavy_samples(instance(know, Rational(19, 20), Rational(3, 16) + Rational(39, 100), 2), VHMode::oracle(),
                          honest, 3)
            .accepted);
}

TEST_CASE("no-instances") {
  auto know = three_point();
  HonestProver honest(know);
  // pH off by (4/5) sqrt(eps) = 2/5 > 1/10 = eps_tilde^{1/4}.
  Transcript b = run_heavy_samples(instance(know, Rational(3, 5), Rational(3, 16), 2), VHMode::oracle(), honest, 3);
  CHECK(b.failed_check == "hs-b");
  Transcript c = run_heavy_samples(instance(know, 1, Rational(3, 16) + Rational(2, 5) + Rational(1, 100), 2),
                                   VHMode::oracle(), honest, 3);
  CHECK(c.failed_check == "hs-c");
  // Threshold 2^-2 puts half the mass inside the band.
  Transcript a = run_heavy_samples(instance(know, Rational(1, 2), Rational(1, 16), 4), VHMode::oracle(), honest, 3);
  CHECK(a.failed_check == "hs-a");
}

TEST_CASE("cheating histograms") {
  auto know = three_point();
  HeavyInstance inst = instance(know, 1, Rational(3, 16), 2);
  HistShifter shifter(know, 30000, Rational(1, 2));
  CHECK(shifter.moved() == std::set<std::uint32_t>{0});
  Transcript t = run_heavy_samples(inst, VHMode::oracle(), shifter, 3);
  CHECK_FALSE(t.accepted);
  CHECK(t.failed_check == "verifyhist");

  // Shifting no mass is the honest prover under another name.
  HistShifter idle(know, 30000, 0);
  HonestProver honest(know);
  Transcript a = run_heavy_samples(inst, VHMode::oracle(), idle, 3);
  Transcript b = run_heavy_samples(inst, VHMode::oracle(), honest, 3);
  CHECK(a.accepted);
  CHECK(a.rounds.size() == b.rounds.size());
  for (std::size_t i = 0; i < a.rounds.size(); ++i) CHECK(a.rounds[i].payload == b.rounds[i].payload);
  CHECK(a.report == b.report);

  HeavyInstance bad = inst;
  bad.pH = Rational(1, 2);
  LBInflater inflater(know);
  CHECK_FALSE(run_heavy_samples(bad, VHMode::oracle(), inflater, 3).accepted);
}

TEST_CASE("near-threshold liar") {
  // P(1) = 7/16 lies just under the threshold 1/2.
  auto know = make_knowledge(counts_circuit(10, 4, {{0, 512}, {1, 448}, {2, 64}}));
  const Rational et = heavy_eps_tilde(Rational(1, 4));
  NearThresholdLiar liar(know, Rational(1, 10), 8);
  const long long js = jstar(et, 8, 4);
  CHECK(js == 9998);
  CHECK(liar.claimed_label(1, et, 100000) == js);
  CHECK(liar.claimed_label(0, et, 100000) == know->label(0, et));
  CHECK(liar.claimed_label(2, et, 100000) == know->label(2, et));
  HeavyInstance inst{know, Rational(1, 2), Rational(1, 16), Rational(1, 4), 8};
  Transcript t = run_heavy_samples(inst, VHMode::oracle(), liar, 3);
  CHECK_FALSE(t.accepted);
  CHECK(t.failed_check == "verifyhist");
}

TEST_CASE("malformed histogram replies") {
  auto know = three_point();
  HeavyInstance inst = instance(know, 1, Rational(3, 16), 2);
  struct WrongT : HonestProver {
    using HonestProver::HonestProver;
    json respond(const std::string&, const json& c) override {
      BucketParams p(parse_rational(c.at("eps").get<std::string>()), c.at("t").get<long long>() - 1);
      Histogram h(p);
      h.set(0, 1);
      return json{{"histogram", h.to_json()}};
    }
  } wrong(know);
  CHECK(run_heavy_samples(inst, VHMode::oracle(), wrong, 1).failed_check == "malformed");
  struct Garbage : HonestProver {
    using HonestProver::HonestProver;
    json respond(const std::string&, const json&) override { return json{{"histogram", 5}}; }
  } garbage(know);
  CHECK(run_heavy_samples(inst, VHMode::oracle(), garbage, 1).failed_check == "malformed");
}
