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
#include "pubcoin/lowerbound.hpp"
#include "pubcoin/trials.hpp"
#include "pubcoin/verifyhist.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <set>

using namespace pubcoin;
using testing_support::FnProver;

namespace {

// Draws a fresh coin each round and accepts when the prover echoes it.
VerifierFn echo_verifier(int rounds) {
  return [rounds](Session& s) {
    for (int r = 0; r < rounds; ++r) {
      std::uint64_t c = s.coins().bits(16);
      json reply = s.exchange("echo", json{{"coin", c}});
      if (reply.at("coin").get<std::uint64_t>() != c) s.reject("echo", "wrong echo");
    }
  };
}

FnProver echo_prover() {
  return FnProver([](const std::string&, const json& c) { return json{{"coin", c.at("coin")}}; }, "echo");
}

}  // namespace

TEST_CASE("coins") {
  CoinStream a(5), b(5), c(6);
  for (int i = 0; i < 100; ++i) {
    auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
  }
  CHECK(a.words_used() == 100);
  CoinStream d(9);
  for (int i = 0; i < 1000; ++i) {
    CHECK(d.bits(3) < 8);
    CHECK(d.below(7) < 7);
  }
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) == derive_seed(1, 0));
  // Fair coin.
  CoinStream f(77);
  int heads = 0;
  for (int i = 0; i < 10000; ++i) heads += f.coin();
  CHECK(heads >= 4800);
  CHECK(heads <= 5200);
}

TEST_CASE("session and replay") {
  FnProver p = echo_prover();
  Transcript t = run_session("echo", "inst", echo_verifier(3), p, 42);
  CHECK(t.accepted);
  CHECK(t.rounds.size() == 6);
  CHECK(t.coin_words == 3);
  CHECK(t.rounds[0].sender == "verifier");
  CHECK(t.rounds[1].sender == "prover");

  Transcript again = run_session("echo", "inst", echo_verifier(3), p, 42);
  CHECK(again.canonical() == t.canonical());
  CHECK(again.digest() == t.digest());

  Transcript back = Transcript::from_json(json::parse(t.to_json().dump()));
  CHECK(back.canonical() == t.canonical());
  Transcript replayed = replay_session(back, echo_verifier(3));
  CHECK(replayed.accepted);
  CHECK(replayed.digest() == t.digest());

  // Editing a recorded coin breaks consistency.
  Transcript tampered = back;
  tampered.rounds[2].payload["coin"] = tampered.rounds[2].payload["coin"].get<int>() ^ 1;
  Transcript bad = replay_session(tampered, echo_verifier(3));
  CHECK_FALSE(bad.accepted);
  CHECK(bad.failed_check == "consistency");
  // So does a changed seed.
  Transcript reseeded = back;
  reseeded.coin_seed = 43;
  CHECK(replay_session(reseeded, echo_verifier(3)).failed_check == "consistency");
  // And a truncated record.
  Transcript truncated = back;
  truncated.rounds.resize(4);
  CHECK(replay_session(truncated, echo_verifier(3)).failed_check == "consistency");

  CHECK(run_session("echo", "inst", echo_verifier(3), p, 43).digest() != t.digest());
  CHECK(t.to_json().contains("timing") == false);
  CHECK(t.to_json(true).contains("timing"));
}

TEST_CASE("malformed and over-budget provers") {
  FnProver thrower([](const std::string&, const json&) -> json { throw std::runtime_error("no"); });
  CHECK(run_session("echo", "i", echo_verifier(1), thrower, 1).failed_check == "malformed");
  FnProver wrong_type([](const std::string&, const json&) { return json{{"coin", "x"}}; });
  CHECK(run_session("echo", "i", echo_verifier(1), wrong_type, 1).failed_check == "malformed");
  FnProver missing([](const std::string&, const json&) { return json::object(); });
  CHECK(run_session("echo", "i", echo_verifier(1), missing, 1).failed_check == "malformed");
  FnProver liar([](const std::string&, const json& c) { return json{{"coin", c.at("coin").get<int>() + 1}}; });
  CHECK(run_session("echo", "i", echo_verifier(1), liar, 1).failed_check == "echo");

  FnProver huge([](const std::string&, const json&) {
    json big = json::array();
    for (int i = 0; i < 2000; ++i) big.push_back(i);
    return json{{"coin", std::move(big)}};
  });
  Budget small;
  small.max_message_nodes = 1000;
  Transcript b = run_session("echo", "i", echo_verifier(1), huge, 1, small);
  CHECK(b.failed_check == "budget");

  FnProver p = echo_prover();
  Budget few;
  few.max_rounds = 2;
  CHECK(run_session("echo", "i", echo_verifier(2), p, 1, few).accepted);
  CHECK(run_session("echo", "i", echo_verifier(3), p, 1, few).failed_check == "budget");
}

TEST_CASE("replaying real protocols") {
  auto know = make_knowledge(uniform_circuit(6, 2));
  BucketParams params(Rational(1, 2), 12);
  Histogram hc = compute_histogram(know->dist(), params);
  VHProtocolParams vp;
  vp.k_pre = 300;
  VHInstance inst{know, hc};
  HonestProver honest(know);
  Transcript t = run_verifyhist(inst, VHMode::interactive(vp), honest, 99);
  CHECK_MESSAGE(t.accepted, t.failed_check, ": ", t.diagnostic);
  Transcript r = replay_session(Transcript::from_json(t.to_json()), verifyhist_verifier(inst, VHMode::interactive(vp)));
  CHECK(r.accepted);
  CHECK(r.canonical() == t.canonical());
}

TEST_CASE("trials") {
  auto fn = [](std::uint64_t seed) {
    CoinStream c(seed);
    TrialRow row;
    row.seed = seed;
    row.accepted = c.coin();
    row.failed_check = row.accepted ? "" : "coin";
    row.digest = c.next_u64();
    return row;
  };
  TrialReport serial = run_trials("coin", 400, 11, fn, 1);
  TrialReport parallel = run_trials("coin", 400, 11, fn, 4);
  CHECK(serial.to_json().dump() == parallel.to_json().dump());
  CHECK(serial.to_csv() == parallel.to_csv());
  CHECK(serial.trials == 400);
  for (std::size_t i = 0; i < serial.rows.size(); ++i) CHECK(serial.rows[i].seed == derive_seed(11, i));
  CHECK(serial.ci_lo <= serial.rate());
  CHECK(serial.rate() <= serial.ci_hi);

  TrialReport always = run_trials(
      "always", 50, 3, [](std::uint64_t s) { return TrialRow{s, true, "", std::nullopt, 0}; }, 2);
  CHECK(always.accepts == 50);
  CHECK(always.ci_hi == doctest::Approx(1.0));
  CHECK(always.ci_lo > 0.9);
  CHECK(always.ci_lo < 1.0);

  auto csv = serial.to_csv();
  CHECK(csv.rfind("seed,verdict,failed_check,estimate\n", 0) == 0);
}

TEST_CASE("wilson interval") {
  // Reference values for 20 of 100 and 0 of 10.
  auto [lo, hi] = wilson_interval(20, 100);
  CHECK(lo == doctest::Approx(0.1333).epsilon(1e-3));
  CHECK(hi == doctest::Approx(0.2888).epsilon(1e-3));
  auto [lo0, hi0] = wilson_interval(0, 10);
  CHECK(lo0 == doctest::Approx(0.0));
  CHECK(hi0 == doctest::Approx(0.2775).epsilon(1e-3));
}

TEST_CASE("adversary registry") {
  auto know = make_knowledge(uniform_circuit(4, 2));
  auto v = std::make_shared<NondetCircuit>(equality_v(2, 1));
  std::set<std::string> seen;
  for (const auto& name : adversary_names()) {
    auto p = adversary(name, AdversaryParams{}, know, v);
    REQUIRE(p);
    seen.insert(p->name());
  }
  CHECK(seen.size() == adversary_names().size());
  CHECK_THROWS_AS(adversary("nobody", AdversaryParams{}, know, v), DomainError);
}
