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
#include "pubcoin/verifyhist.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace pubcoin;
using testing_support::EditingProver;

namespace {

Histogram point_histogram(const BucketParams& params, long long i) {
  Histogram h(params);
  h.set(i, 1);
  return h;
}

VHMode small_protocol(long long k) {
  VHProtocolParams p;
  p.k_pre = k;
  return VHMode::interactive(p);
}

}  // namespace

TEST_CASE("oracle decisions") {
  Circuit c = uniform_circuit(10, 8);
  auto know = make_knowledge(c);
  const Rational eps(1, 4);
  BucketParams params(eps, default_t(10, eps));
  REQUIRE(params.t == 40);
  Histogram hc = compute_histogram(know->dist(), params);
  CHECK(hc.at(32) == 1);
  CHECK(decide_oracle(VHInstance{know, hc}) == VHVerdict::Yes);

  // All mass at bucket 0 against all mass at bucket 32: Wd = 32/40 > 20/40.
  VHOracleResult far = decide_oracle_detail(know->dist(), point_histogram(params, 0));
  CHECK(far.verdict == VHVerdict::No);
  CHECK(*far.distance == Rational(4, 5));

  // 10/t of the mass moved by one bucket: Wd = 10/t^2.
  Histogram near = hc;
  near.set(32, 1 - Rational(1, 4));
  near.set(33, Rational(1, 4));
  VHOracleResult nr = decide_oracle_detail(know->dist(), near);
  CHECK(*nr.distance == Rational(1, 160));
  CHECK(nr.verdict == VHVerdict::OutsidePromise);

  // A vector that is not a distribution is a no-instance.
  Histogram short_mass = hc;
  short_mass.set(32, Rational(1, 2));
  CHECK(decide_oracle(know->dist(), short_mass) == VHVerdict::No);

  CHECK_THROWS(decide_oracle(know->dist(), point_histogram(BucketParams(eps, 39), 0)));
}

TEST_CASE("oracle mode runs ignore the prover") {
  auto know = make_knowledge(uniform_circuit(10, 8));
  BucketParams params(Rational(1, 4), 40);
  Histogram hc = compute_histogram(know->dist(), params);
  HonestProver p(know);
  Transcript yes = run_verifyhist(VHInstance{know, hc}, VHMode::oracle(), p, 1);
  CHECK(yes.accepted);
  CHECK(yes.rounds.empty());
  Transcript no = run_verifyhist(VHInstance{know, point_histogram(params, 0)}, VHMode::oracle(), p, 1);
  CHECK_FALSE(no.accepted);
  CHECK(no.failed_check == "verifyhist");
  Histogram near = hc;
  near.set(32, Rational(3, 4));
  near.set(33, Rational(1, 4));
  CHECK(run_verifyhist(VHInstance{know, near}, VHMode::oracle(), p, 1).accepted);
}

TEST_CASE("honest labels") {
  auto know = make_knowledge(counts_circuit(2, 2, {{0, 3}, {1, 1}}));
  HonestProver p(know);
  json reply = p.respond("vh/labels", json{{"type", "vh-labels"}, {"eps", "1/2"}, {"t", 4}, {"samples", {0, 1, 1}}});
  CHECK(reply["labels"] == json::array({0, 4, 4}));
  auto one = make_knowledge(constant_circuit(3, 2, 2));
  HonestProver q(one);
  CHECK(q.respond("x", json{{"type", "vh-labels"}, {"eps", "1/3"}, {"t", 9}, {"samples", {2}}})["labels"] ==
        json::array({0}));
}

TEST_CASE("protocol mode accepts the honest prover") {
  CoinStream coins(12);
  for (int rep = 0; rep < 4; ++rep) {
    auto know = make_knowledge(random_table_circuit(8, 3, coins));
    BucketParams params(Rational(1, 2), 16);
    Histogram hc = compute_histogram(know->dist(), params);
    HonestProver p(know);
    Transcript t = run_verifyhist(VHInstance{know, hc}, small_protocol(20000), p, 100 + rep);
    CHECK(t.accepted);
    CHECK(t.report["verifyhist"]["preimage_lb"] == true);
    CHECK(t.report["verifyhist"]["image_lb"] == true);
  }
}

TEST_CASE("protocol mode rejects a shifted histogram through the image test") {
  auto know = make_knowledge(uniform_circuit(8, 3));
  BucketParams params(Rational(1, 2), 16);
  // P = 2^-3 sits in bucket 6. Claiming bucket 16 keeps every preimage claim
  // true, but W_16 would need 2^8 outputs.
  HistShifter shifter(know, 10, 1);
  Histogram shifted = shifter.claimed_histogram(params);
  CHECK(shifted.at(16) == 1);
  Transcript t = run_verifyhist(VHInstance{know, shifted}, small_protocol(5000), shifter, 7);
  CHECK_FALSE(t.accepted);
  CHECK(t.failed_check == "vh-image");
}

TEST_CASE("protocol mode rejects heavier labels through the lower bound") {
  auto know = make_knowledge(uniform_circuit(8, 3));
  BucketParams params(Rational(1, 2), 16);
  // Bucket 4 claims 2^8 2^-5/2 > 45 preimages; each output has 32.
  HistShifter heavier(know, -2, 1);
  Histogram claimed = heavier.claimed_histogram(params);
  CHECK(claimed.at(4) == 1);
  Transcript t = run_verifyhist(VHInstance{know, claimed}, small_protocol(5000), heavier, 7);
  CHECK_FALSE(t.accepted);
  CHECK(t.failed_check == "vh-preimage-lb");
}

TEST_CASE("labels that disagree with the histogram fail the distance test") {
  auto know = make_knowledge(uniform_circuit(8, 1));
  BucketParams params(Rational(1, 2), 16);
  // Honest labels sit at bucket 2; the claim is 11 buckets lighter, Wd = 11/16 > 10/16.
  HistShifter shifter(know, 11, 1);
  Histogram lighter = shifter.claimed_histogram(params);
  CHECK(lighter.at(13) == 1);
  HonestProver honest(know);
  Transcript t = run_verifyhist(VHInstance{know, lighter}, small_protocol(5000), honest, 7);
  CHECK_FALSE(t.accepted);
  CHECK(t.failed_check == "vh-preimage-distance");
}

TEST_CASE("malformed labels are rejected") {
  auto know = make_knowledge(uniform_circuit(6, 2));
  BucketParams params(Rational(1, 2), 12);
  Histogram hc = compute_histogram(know->dist(), params);
  auto run = [&](std::function<void(json&)> edit) {
    EditingProver p(know, [&](const std::string& phase, const json&, json& r) {
      if (phase == "vh/labels") edit(r);
    });
    return run_verifyhist(VHInstance{know, hc}, small_protocol(200), p, 5);
  };
  CHECK(run([](json&) {}).accepted);
  CHECK(run([](json& r) { r["labels"].erase(0); }).failed_check == "malformed");
  CHECK(run([](json& r) { r["labels"][0] = 13; }).failed_check == "malformed");
  CHECK(run([](json& r) { r["labels"][0] = "4"; }).failed_check == "malformed");
  CHECK(run([](json& r) { r.erase("labels"); }).failed_check == "malformed");
}

TEST_CASE("preimage budget") {
  auto know = make_knowledge(uniform_circuit(6, 2));
  BucketParams params(Rational(1, 2), 12);
  Histogram hc = compute_histogram(know->dist(), params);
  VHProtocolParams p;
  p.max_samples = 100;
  HonestProver honest(know);
  Transcript t = run_verifyhist(VHInstance{know, hc}, VHMode::interactive(p), honest, 1);
  CHECK_FALSE(t.accepted);
  CHECK(t.failed_check == "budget");
}
