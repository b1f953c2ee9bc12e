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
#include "pubcoin/hiding.hpp"

#include <doctest.h>

using namespace pubcoin;

namespace {

struct Fixture {
  KnowledgePtr know = make_knowledge(bimodal_circuit(12, 10, 16));
  std::shared_ptr<const NondetCircuit> v = std::make_shared<NondetCircuit>(parity_v(10, 8));

  // 16 heavy outputs with 193 preimages each; 1008 light ones with one each.
  HideInstance instance() const {
    return HideInstance{know, v, ratio(16 * 193, 4096), Rational(1, 64), Rational(63, 512),
                        Rational(1, 5), 2, Rational(1, 2)};
  }
};

}  // namespace

TEST_CASE("sample count") {
  CHECK(sample_count(Rational(1, 10), 2) == 5393);
  CHECK(sample_count(Rational(1, 2), 2) == 100);
  CHECK(sample_count(Rational(1, 5), 2) == 1037);
  CHECK(sample_count(Rational(1, 100), 4) < 10'000'000);
  CHECK_THROWS_AS(sample_count(Rational(1, 100), 8), BudgetError);
  CHECK_THROWS_AS(sample_count(Rational(0), 1), DomainError);
  CHECK_THROWS_AS(sample_count(Rational(1, 2), 0), DomainError);
}

TEST_CASE("light labels") {
  // Threshold 2^-2 at m = 2, eps = 1/2.
  CHECK(is_light_label(4, Rational(1, 2), 1, 2));
  CHECK(is_light_label(3, Rational(1, 2), 1, 2) == false);  // 2^-2 is not below 2^-2
  CHECK_FALSE(is_light_label(2, Rational(1, 2), 1, 2));
  CHECK(is_light_label(std::nullopt, Rational(1, 2), 1, 2));
}

TEST_CASE("honest hiding answer") {
  auto know = make_knowledge(counts_circuit(2, 2, {{0, 3}, {1, 1}}));
  auto v = std::make_shared<NondetCircuit>(equality_v(2, 1));
  HonestProver p(know, v);
  json r = p.respond("hide/samples", json{{"type", "hide-samples"}, {"eps", "1/2"}, {"t", 4}, {"samples", {0, 1, 2}}});
  CHECK(r["labels"] == json::array({0, 4, nullptr}));
  CHECK(r["yes"] == json::array({0, 1, 2}));
  CHECK(r["witnesses"] == json::array({0, 1, 0}));
}

TEST_CASE("answer parsing") {
  json good{{"labels", {1, nullptr}}, {"yes", {1}}, {"witnesses", {1}}};
  HideAnswer a = HideAnswer::from_json(good, 2, 4, 1);
  CHECK(a.labels[0] == 1);
  CHECK_FALSE(a.labels[1].has_value());
  CHECK(a.yes == std::vector<std::size_t>{1});
  auto bad = [&](const char* key, json value, std::size_t k = 2) {
    json j = good;
    j[key] = std::move(value);
    CHECK_THROWS_AS(HideAnswer::from_json(j, k, 4, 1), ParseError);
  };
  bad("labels", {1, 5});
  bad("labels", {1, -1});
  bad("labels", {1, "x"});
  bad("labels", {1});
  bad("yes", {2});
  bad("yes", {1, 0});
  bad("witnesses", {2});
  bad("witnesses", json::array());
}

TEST_CASE("verifier checks by hand") {
  auto know = make_knowledge(uniform_circuit(4, 2));
  auto v = std::make_shared<NondetCircuit>(equality_v(2, 1));
  // eps = 1/2, alpha = 1: label 4 is light, label 2 heavy.
  const std::vector<std::uint32_t> ys{1, 0, 2, 3};
  HideAnswer ans;
  ans.labels = {4, 2, std::nullopt, 4};
  ans.yes = {0};
  ans.witnesses = {1};
  auto inst = [&](Rational gUY, Rational pUH, Rational pH, Rational pYL) {
    return HideInstance{know, v, pH, pUH, pYL, Rational(1, 2), 1, gUY};
  };
  HideChecks c = hide_verifier_checks(ys, ans, inst(Rational(1, 4), Rational(1, 4), Rational(1, 2), Rational(1, 4)));
  CHECK(c.passed);
  CHECK(c.light == 3);
  CHECK(c.heavy == 1);
  CHECK(c.light_sum == Pow2Sum(Rational(1, 2)));
  CHECK(c.light_yes_sum == Pow2Sum(Rational(1, 4)));
  CHECK(c.yes_fraction == Rational(1, 4));

  CHECK(hide_verifier_checks(ys, ans, inst(Rational(3, 4), Rational(1, 4), Rational(1, 2), Rational(1, 4))).passed);
  CHECK(hide_verifier_checks(ys, ans, inst(Rational(19, 25), Rational(1, 4), Rational(1, 2), Rational(1, 4))).failed ==
        "a");
  CHECK(hide_verifier_checks(ys, ans, inst(Rational(1, 4), 3, Rational(1, 2), Rational(1, 4))).failed == "c");
  CHECK(hide_verifier_checks(ys, ans, inst(Rational(1, 4), Rational(1, 4), Rational(-7, 2), Rational(1, 4))).failed ==
        "d");
  CHECK(hide_verifier_checks(ys, ans, inst(Rational(1, 4), Rational(1, 4), Rational(1, 2), 4)).failed == "e");
  HideAnswer wrong = ans;
  wrong.witnesses = {0};
  CHECK(hide_verifier_checks(ys, wrong, inst(Rational(1, 4), Rational(1, 4), Rational(1, 2), Rational(1, 4))).failed ==
        "b");
}

TEST_CASE("honest prover accepts") {
  Fixture f;
  HideInstance inst = f.instance();
  CHECK(inst.k() == 1037);
  CHECK(inst.t() == 60);
  HonestProver honest(f.know, f.v);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Transcript t = run_hiding(inst, honest, seed);
    CHECK_MESSAGE(t.accepted, t.failed_check, " ", t.diagnostic);
    CHECK(t.report["k"] == 1037);
    CHECK(t.report["estimate"].get<double>() == doctest::Approx(504.0 / 4096).epsilon(0.5));
  }
}

TEST_CASE("cheating provers") {
  Fixture f;
  HideInstance inst = f.instance();
  YesSuppressor half(f.know, f.v, Rational(1, 2));
  Transcript a = run_hiding(inst, half, 2);
  CHECK(a.failed_check == "hide-a");

  LabelLightener lighter(f.know, f.v);
  Transcript lb = run_hiding(inst, lighter, 2);
  CHECK(lb.failed_check == "hide-lb");

  HideInstance wrong = inst;
  wrong.pYL += Rational(23, 10);
  WrongPYLProver honest(f.know, f.v);
  CHECK(run_hiding(wrong, honest, 2).failed_check == "hide-e");

}
