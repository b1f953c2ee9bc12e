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

#include "pubcoin/session.hpp"

#include <chrono>
#include <cstdio>

namespace pubcoin {

namespace {
constexpr const char* kOverBudget = "<over budget>";
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t parse_hex64(const std::string& s) {
  if (s.empty() || s.size() > 16) throw ParseError("bad hex word '" + s + "'");
  std::uint64_t v = 0;
  for (char ch : s) {
    int d;
    if (ch >= '0' && ch <= '9') {
      d = ch - '0';
    } else if (ch >= 'a' && ch <= 'f') {
      d = ch - 'a' + 10;
    } else if (ch >= 'A' && ch <= 'F') {
      d = ch - 'A' + 10;
    } else {
      throw ParseError("bad hex word '" + s + "'");
    }
    v = (v << 4) | static_cast<std::uint64_t>(d);
  }
  return v;
}

std::size_t json_node_count(const json& j, std::size_t limit) {
  std::size_t count = 0;
  std::vector<const json*> stack{&j};
  while (!stack.empty() && count <= limit) {
    const json* cur = stack.back();
    stack.pop_back();
    ++count;
    if (cur->is_array() || cur->is_object()) {
      for (const auto& child : *cur) stack.push_back(&child);
    }
  }
  return count;
}

json Transcript::to_json(bool with_timing) const {
  json rounds_json = json::array();
  for (const auto& r : rounds) {
    rounds_json.push_back({{"sender", r.sender}, {"round", r.index}, {"phase", r.phase}, {"payload", r.payload}});
  }
  json j{{"protocol", protocol},
         {"instance_digest", instance_digest},
         {"prover", prover},
         {"rounds", std::move(rounds_json)},
         {"coins", {{"seed", hex64(coin_seed)}, {"words", coin_words}}},
         {"verdict", accepted ? "accept" : "reject"},
         {"failed_check", failed_check},
         {"diagnostic", diagnostic},
         {"report", report}};
  if (with_timing) j["timing"] = {{"elapsed_ms", elapsed_ms}};
  return j;
}

Transcript Transcript::from_json(const json& j) {
  try {
    Transcript t;
    t.protocol = j.at("protocol").get<std::string>();
    t.instance_digest = j.at("instance_digest").get<std::string>();
    t.prover = j.value("prover", std::string());
    for (const auto& r : j.at("rounds")) {
      t.rounds.push_back({r.at("sender").get<std::string>(), r.at("round").get<int>(),
                          r.at("phase").get<std::string>(), r.at("payload")});
    }
    t.coin_seed = parse_hex64(j.at("coins").at("seed").get<std::string>());
    t.coin_words = j.at("coins").at("words").get<std::uint64_t>();
    t.accepted = j.at("verdict").get<std::string>() == "accept";
    t.failed_check = j.value("failed_check", std::string());
    t.diagnostic = j.value("diagnostic", std::string());
    t.report = j.value("report", json::object());
    if (j.contains("timing")) t.elapsed_ms = j.at("timing").value("elapsed_ms", 0.0);
    return t;
  } catch (const json::exception& e) {
    throw ParseError(std::string("transcript json: ") + e.what());
  }
}

std::string Transcript::canonical() const { return to_json(false).dump(); }

std::uint64_t Transcript::digest() const { return fnv1a64(canonical()); }

Session::Session(std::string protocol, std::string instance_digest, ProverStrategy& prover, std::uint64_t seed,
                 Budget budget)
    : prover_(&prover), coins_(seed), budget_(budget) {
  transcript_.protocol = std::move(protocol);
  transcript_.instance_digest = std::move(instance_digest);
  transcript_.prover = prover.name();
  transcript_.coin_seed = seed;
}

Session::Session(const Transcript& recorded, Budget budget)
    : recorded_(&recorded), coins_(recorded.coin_seed), budget_(budget) {
  transcript_.protocol = recorded.protocol;
  transcript_.instance_digest = recorded.instance_digest;
  transcript_.prover = recorded.prover;
  transcript_.coin_seed = recorded.coin_seed;
}

void Session::reject(const std::string& check, const std::string& detail) { throw Rejection(check, detail); }

json Session::exchange(const std::string& phase, json verifier_message) {
  if (round_ + 1 > budget_.max_rounds) reject("budget", "too many rounds");
  const int index = round_++;
  json reply;
  if (recorded_ != nullptr) {
    const auto& rounds = recorded_->rounds;
    if (replay_pos_ + 1 >= rounds.size()) {
      reject("consistency", "recorded transcript ends before round " + std::to_string(index));
    }
    const Round& v = rounds[replay_pos_];
    const Round& p = rounds[replay_pos_ + 1];
    if (v.sender != "verifier" || v.phase != phase || v.payload != verifier_message) {
      reject("consistency", "verifier message of round " + std::to_string(index) + " differs from the record");
    }
    if (p.sender != "prover") reject("consistency", "record lacks the prover reply of round " + std::to_string(index));
    reply = p.payload;
    replay_pos_ += 2;
  } else {
    try {
      reply = prover_->respond(phase, verifier_message);
    } catch (const std::exception& e) {
      reply = json{{"prover_error", e.what()}};
    }
    if (json_node_count(reply, budget_.max_message_nodes) > budget_.max_message_nodes) {
      reply = json(kOverBudget);
    }
  }
  transcript_.rounds.push_back({"verifier", index, phase, std::move(verifier_message)});
  transcript_.rounds.push_back({"prover", index, phase, reply});
  if (reply.is_string() && reply.get<std::string>() == kOverBudget) {
    reject("budget", "prover message exceeds the node budget");
  }
  if (reply.is_object() && reply.contains("prover_error")) {
    reject("malformed", "prover failed to answer: " + reply["prover_error"].dump());
  }
  return reply;
}

namespace {

Transcript finish(Session& session, const VerifierFn& verifier, bool replaying, std::uint64_t expected_words) {
  auto start = std::chrono::steady_clock::now();
  Transcript& t = session.transcript();
  try {
    verifier(session);
    t.accepted = true;
    if (replaying && session.coins().words_used() != expected_words) {
      throw Rejection("consistency", "coin usage differs from the record");
    }
  } catch (const Rejection& r) {
    t.accepted = false;
    t.failed_check = r.check();
    t.diagnostic = r.detail();
  } catch (const BudgetError& e) {
    t.accepted = false;
    t.failed_check = "budget";
    t.diagnostic = e.what();
  } catch (const json::exception& e) {
    t.accepted = false;
    t.failed_check = "malformed";
    t.diagnostic = e.what();
  } catch (const Error& e) {
    t.accepted = false;
    t.failed_check = "malformed";
    t.diagnostic = e.what();
  }
  t.coin_words = session.coins().words_used();
  t.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return std::move(t);
}

}  // namespace

Transcript run_session(const std::string& protocol, const std::string& instance_digest, const VerifierFn& verifier,
                       ProverStrategy& prover, std::uint64_t seed, Budget budget) {
  Session session(protocol, instance_digest, prover, seed, budget);
  return finish(session, verifier, false, 0);
}

Transcript replay_session(const Transcript& recorded, const VerifierFn& verifier, Budget budget) {
  Session session(recorded, budget);
  return finish(session, verifier, true, recorded.coin_words);
}

}  // namespace pubcoin
