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
#include "test_support.hpp"

#include <doctest.h>

#include <set>

using namespace pubcoin;
using testing_support::EditingProver;
using testing_support::FnProver;

namespace {

// Every affine map {0,1}^n -> {0,1}^k.
std::vector<AffineHash> whole_family(unsigned n, unsigned k) {
  std::vector<AffineHash> out;
  const std::uint64_t matrices = std::uint64_t{1} << (n * k);
  for (std::uint64_t a = 0; a < matrices; ++a) {
    std::vector<std::uint32_t> rows(k);
    for (unsigned r = 0; r < k; ++r) rows[r] = static_cast<std::uint32_t>((a >> (r * n)) & ((1U << n) - 1));
    for (std::uint32_t b = 0; b < (1U << k); ++b) out.emplace_back(n, k, rows, b);
  }
  return out;
}

LBInstance instance(const Circuit& c, std::vector<std::pair<std::uint32_t, Rational>> claims,
                    Rational eps = Rational(1, 5)) {
  return LBInstance{make_knowledge(c), eps, std::move(claims)};
}

}  // namespace

TEST_CASE("affine hash examples") {
  AffineHash id(3, 3, {0b100, 0b010, 0b001}, 0);
  for (std::uint32_t x = 0; x < 8; ++x) CHECK(id.eval(x) == x);
  AffineHash constant(3, 2, {0, 0}, 0b10);
  for (std::uint32_t x = 0; x < 8; ++x) CHECK(hash_eval(constant, BitString(3, x)) == BitString::parse("10"));
  CHECK_THROWS_AS(hash_eval(constant, BitString(4, 1)), WidthError);
  CHECK(AffineHash::from_json(id.to_json()) == id);
  CoinStream coins(1);
  for (int rep = 0; rep < 50; ++rep) {
    AffineHash h = AffineHash::random(6, 3, coins);
    const std::uint32_t h0 = h.eval(0);
    for (std::uint32_t x = 0; x < 64; x += 7) {
      for (std::uint32_t xp = 0; xp < 64; xp += 5) CHECK((h.eval(x ^ xp) ^ h0) == (h.eval(x) ^ h.eval(xp)));
    }
  }
}

TEST_CASE("the affine family is pairwise independent") {
  for (unsigned n = 1; n <= 3; ++n) {
    for (unsigned k = 1; k <= 3; ++k) {
      auto family = whole_family(n, k);
      const std::size_t expected = family.size() >> (2 * k);
      for (std::uint32_t x1 = 0; x1 < (1U << n); ++x1) {
        for (std::uint32_t x2 = 0; x2 < (1U << n); ++x2) {
          if (x1 == x2) continue;
          std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> counts;
          for (const auto& h : family) ++counts[{h.eval(x1), h.eval(x2)}];
          REQUIRE(counts.size() == (std::size_t{1} << (2 * k)));
          for (const auto& [z, c] : counts) CHECK(c == expected);
        }
      }
    }
  }
}

TEST_CASE("hash mixing: cells of a large set concentrate") {
  // B has 2^11 elements of {0,1}^14; gamma = 1/2 needs |B| >= 2^{m'} 64.
  CoinStream coins(4);
  std::set<std::uint32_t> b;
  while (b.size() < 2048) b.insert(static_cast<std::uint32_t>(coins.below(1U << 14)));
  const unsigned k = 5;
  const double gamma = 0.5;
  const double mean = 2048.0 / 32;
  int bad = 0;
  const int draws = 2000;
  for (int rep = 0; rep < draws; ++rep) {
    AffineHash h = AffineHash::random(14, k, coins);
    int cell = 0;
    for (auto x : b) cell += h.eval(x) == 0;
    if (cell <= (1 - gamma) * mean || cell >= (1 + gamma) * mean) ++bad;
  }
  const double allowed = 32.0 / (gamma * gamma * 2048.0);
  CHECK(static_cast<double>(bad) / draws <= allowed + 0.02);
}

TEST_CASE("direct mode singleton claim is accepted") {
  auto inst = instance(identity_circuit(4), {{5, Rational(1)}});
  HonestProver p(inst.circuit);
  Transcript t = run_lowerbound(inst, p, 1);
  CHECK(t.accepted);
  CHECK(t.report["lb"]["claims"][0]["mode"] == "direct");
  CHECK(t.rounds.size() == 2);
  CHECK(t.rounds[1].payload["elements"][0] == json::array({5}));
}

TEST_CASE("vacuous claims are always rejected") {
  auto inst = instance(identity_circuit(4), {{5, Rational(17)}});
  FnProver liar([](const std::string&, const json&) {
    json all = json::array();
    for (int x = 0; x < 16; ++x) all.push_back(x);
    return json{{"elements", json::array({all})}};
  });
  Transcript t = run_lowerbound(inst, liar, 1);
  CHECK_FALSE(t.accepted);
  CHECK(t.failed_check == "lb-vacuous");
}

TEST_CASE("direct mode is exact") {
  Circuit c = counts_circuit(8, 3, {{0, 100}, {1, 3}, {2, 150}, {5, 3}});
  auto know = make_knowledge(c);
  for (std::uint32_t y : {0U, 1U, 2U, 5U, 6U}) {
    const auto truth = static_cast<long>(know->count(y));
    for (long s : {truth - 1, truth, truth + 1}) {
      if (s <= 0) continue;
      LBInstance inst{know, Rational(1, 5), {{y, Rational(s)}}};
      for (const char* name : {"honest", "lb-inflater"}) {
        auto p = adversary(name, {}, know);
        CHECK(run_lowerbound(inst, *p, 9).accepted == (s <= truth));
      }
    }
  }
  // Fractional sizes round up.
  LBInstance inst{know, Rational(1, 5), {{1, Rational(5, 2)}, {5, Rational(7, 2)}}};
  HonestProver p(know);
  Transcript t = run_lowerbound(inst, p, 9);
  CHECK_FALSE(t.accepted);
  CHECK(t.report["lb"]["claims"][0]["passed"] == true);
  CHECK(t.report["lb"]["claims"][1]["passed"] == false);
}

TEST_CASE("cheating replies are caught by the specific checks") {
  Circuit c = counts_circuit(6, 2, {{0, 40}, {1, 24}});
  auto know = make_knowledge(c);
  LBInstance inst{know, Rational(1, 5), {{1, Rational(10)}}};
  auto run = [&](std::function<void(json&)> edit) {
    EditingProver p(know, [&](const std::string&, const json&, json& r) { edit(r); });
    return run_lowerbound(inst, p, 3);
  };
  CHECK(run([](json&) {}).accepted);
  Transcript dup = run([](json& r) { r["elements"][0][1] = r["elements"][0][0]; });
  CHECK(dup.failed_check == "lb-duplicate");
  Transcript wrong = run([](json& r) { r["elements"][0][0] = 0; });
  CHECK(wrong.failed_check == "lb-membership");
  Transcript few = run([](json& r) { r["elements"][0].erase(0); });
  CHECK(few.failed_check == "lb-count");
  Transcript junk = run([](json& r) { r["elements"][0][0] = "x"; });
  CHECK(junk.failed_check == "malformed");
  Transcript shape = run([](json& r) { r = json::array(); });
  CHECK(shape.failed_check == "malformed");
  Transcript range = run([](json& r) { r["elements"][0][0] = 64; });
  CHECK(range.failed_check == "malformed");
}

TEST_CASE("hash mode with the all-zero hash asks for the whole target") {
  Circuit c = counts_circuit(12, 1, {{0, 3000}, {1, 1096}});
  auto know = make_knowledge(c);
  AffineHash zero(12, 2, {0, 0}, 0);
  json challenge{{"type", "lb"},
                 {"eps", "1/5"},
                 {"claims",
                  json::array({json{{"kind", "preimage"}, {"size", "3000"}, {"width", 12}, {"y", 0},
                                    {"mode", "hash"}, {"required", 750}, {"hash", zero.to_json()}}})}};
  json reply = honest_lb_answer(*know, challenge);
  REQUIRE(reply["elements"][0].size() == 750);
  for (const auto& x : reply["elements"][0]) CHECK(know->eval(x.get<std::uint32_t>()) == 0);
}

TEST_CASE("hash mode: honest claims pass, inflated claims fail") {
  Circuit c = counts_circuit(12, 1, {{0, 2100}, {1, 1996}});
  auto know = make_knowledge(c);
  LBConfig config;
  config.s_direct = 0;
  LBInstance honest{know, Rational(1, 5), {{0, Rational(2100)}, {1, Rational(1996)}}};
  LBInstance inflated{know,
                      Rational(1, 5),
                      {{0, Rational(2100) / Rational(4, 5) * Rational(11, 10)},
                       {1, Rational(1996) / Rational(4, 5) * Rational(11, 10)}}};
  auto trial = [&](const LBInstance& inst) {
    return [&](std::uint64_t seed) {
      HonestProver p(know);
      return row_from_transcript(run_lowerbound(inst, p, seed, config));
    };
  };
  TrialReport good = run_trials("honest", 60, 5, trial(honest));
  TrialReport bad = run_trials("inflated", 60, 5, trial(inflated));
  CHECK(good.rate() >= 0.8);
  CHECK(bad.rate() <= 0.2);
  HonestProver p(know);
  Transcript t = run_lowerbound(honest, p, 1, config);
  CHECK(t.report["lb"]["claims"][0]["mode"] == "hash");
  CHECK(t.report["lb"]["claims"][0]["hash_width"] == 1);
  CHECK(t.report["lb"]["claims"][0]["required"] == 945);
}

TEST_CASE("lower bound transcripts replay") {
  Circuit c = counts_circuit(12, 2, {{0, 2100}, {1, 1000}, {3, 996}});
  auto know = make_knowledge(c);
  LBConfig config;
  config.s_direct = 0;
  LBInstance inst{know, Rational(1, 5), {{0, Rational(2100)}, {1, Rational(900)}, {3, Rational(5)}}};
  HonestProver p(know);
  Transcript t = run_lowerbound(inst, p, 42, config);
  Transcript r = replay_session(t, lowerbound_verifier(inst, config));
  CHECK(r.accepted == t.accepted);
  CHECK(r.canonical() == t.canonical());
  Transcript round_trip = Transcript::from_json(json::parse(t.to_json().dump()));
  CHECK(round_trip.canonical() == t.canonical());
  // A tampered verifier message breaks consistency.
  Transcript tampered = t;
  tampered.rounds[0].payload["eps"] = "1/4";
  CHECK(replay_session(tampered, lowerbound_verifier(inst, config)).failed_check == "consistency");
}

TEST_CASE("claims file parsing") {
  auto claims = LBInstance::claims_from_json(json::parse(R"({"claims":[{"y":"01","s":"3/2"},{"y":"11","s":4}]})"), 2);
  REQUIRE(claims.size() == 2);
  CHECK(claims[0] == std::pair<std::uint32_t, Rational>{1, Rational(3, 2)});
  CHECK(claims[1].first == 3);
  CHECK_THROWS_AS(LBInstance::claims_from_json(json::parse(R"([{"y":"011","s":1}])"), 2), WidthError);
  CHECK_THROWS(LBInstance::claims_from_json(json::parse(R"([{"y":"01","s":0}])"), 2));
  CHECK_THROWS_AS(LBInstance::claims_from_json(json::parse(R"([{"s":1}])"), 2), ParseError);
}
