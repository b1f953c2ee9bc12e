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

#pragma once

#include "pubcoin/coins.hpp"
#include "pubcoin/rational.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace pubcoin {

using json = nlohmann::json;

/// Deterministic prover: the reply depends only on the instance it was built
/// for and the challenges seen so far.
class ProverStrategy {
 public:
  virtual ~ProverStrategy() = default;
  virtual std::string name() const = 0;
  virtual json respond(const std::string& phase, const json& challenge) = 0;
};

using ProverFactory = std::function<std::unique_ptr<ProverStrategy>()>;

struct Round {
  std::string sender;  // "verifier" or "prover"
  int index = 0;
  std::string phase;
  json payload;
};

struct Budget {
  std::size_t max_message_nodes = 20'000'000;
  int max_rounds = 64;
};

struct Transcript {
  std::string protocol;
  std::string instance_digest;
  std::string prover;
  std::vector<Round> rounds;
  std::uint64_t coin_seed = 0;
  std::uint64_t coin_words = 0;
  bool accepted = false;
  std::string failed_check;
  std::string diagnostic;
  json report = json::object();
  double elapsed_ms = 0.0;

  /// Timing is left out unless requested, so equal runs serialize equally.
  json to_json(bool with_timing = false) const;
  static Transcript from_json(const json& j);
  std::string canonical() const;
  std::uint64_t digest() const;
};

/// Thrown by verifier code to end the session with a reject verdict.
class Rejection : public std::exception {
 public:
  Rejection(std::string check, std::string detail) : check_(std::move(check)), detail_(std::move(detail)) {}
  const char* what() const noexcept override { return detail_.c_str(); }
  const std::string& check() const { return check_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string check_;
  std::string detail_;
};

/// One protocol execution. Every verifier message goes through exchange(),
/// so the transcript holds all coins the prover has seen.
class Session {
 public:
  Session(std::string protocol, std::string instance_digest, ProverStrategy& prover, std::uint64_t seed,
          Budget budget = {});
  /// Replays a recorded transcript: prover answers come from the record and
  /// every verifier message must match it.
  explicit Session(const Transcript& recorded, Budget budget = {});

  CoinStream& coins() { return coins_; }
  json& report() { return transcript_.report; }

  json exchange(const std::string& phase, json verifier_message);
  [[noreturn]] void reject(const std::string& check, const std::string& detail);

  Transcript& transcript() { return transcript_; }

 private:
  Transcript transcript_;
  ProverStrategy* prover_ = nullptr;
  const Transcript* recorded_ = nullptr;
  std::size_t replay_pos_ = 0;
  CoinStream coins_;
  Budget budget_;
  int round_ = 0;
};

using VerifierFn = std::function<void(Session&)>;

/// Runs verifier against prover. Malformed prover input, budget overruns and
/// Rejection all end in a reject verdict, never in an exception.
Transcript run_session(const std::string& protocol, const std::string& instance_digest, const VerifierFn& verifier,
                       ProverStrategy& prover, std::uint64_t seed, Budget budget = {});
Transcript replay_session(const Transcript& recorded, const VerifierFn& verifier, Budget budget = {});

std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t v);
std::uint64_t parse_hex64(const std::string& s);

std::size_t json_node_count(const json& j, std::size_t limit);

}  // namespace pubcoin
