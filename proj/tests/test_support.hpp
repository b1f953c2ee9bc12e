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

#include "pubcoin/prover.hpp"

#include <functional>

namespace testing_support {

using pubcoin::json;

/// Prover given by a function of (phase, challenge).
class FnProver : public pubcoin::ProverStrategy {
 public:
  explicit FnProver(std::function<json(const std::string&, const json&)> fn, std::string name = "fn")
      : fn_(std::move(fn)), name_(std::move(name)) {}
  std::string name() const override { return name_; }
  json respond(const std::string& phase, const json& challenge) override { return fn_(phase, challenge); }

 private:
  std::function<json(const std::string&, const json&)> fn_;
  std::string name_;
};

/// Wraps the honest prover and edits its replies.
class EditingProver : public pubcoin::HonestProver {
 public:
  EditingProver(pubcoin::KnowledgePtr know, std::function<void(const std::string&, const json&, json&)> edit,
                std::shared_ptr<const pubcoin::NondetCircuit> v = nullptr)
      : HonestProver(std::move(know), std::move(v)), edit_(std::move(edit)) {}
  std::string name() const override { return "editing"; }
  json respond(const std::string& phase, const json& challenge) override {
    json reply = HonestProver::respond(phase, challenge);
    edit_(phase, challenge, reply);
    return reply;
  }

 private:
  std::function<void(const std::string&, const json&, json&)> edit_;
};

}  // namespace testing_support
