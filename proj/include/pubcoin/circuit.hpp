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

#include "pubcoin/bits.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace pubcoin {

using json = nlohmann::json;

enum class GateOp { Input, Const, And, Or, Not, Xor };

struct Gate {
  GateOp op = GateOp::Const;
  std::vector<std::uint32_t> args;  // wire ids; for Input, the single input position
  bool constant = false;
};

/// Acyclic gate list or explicit truth table over `inputs` positions with
/// `outputs` result bits. Input position p is bit (inputs - 1 - p) of the
/// packed integer argument.
class BoolFunction {
 public:
  static BoolFunction from_gates(unsigned inputs, std::vector<Gate> gates,
                                 std::vector<std::uint32_t> outputs);
  static BoolFunction from_table(unsigned inputs, unsigned outputs,
                                 std::vector<std::uint32_t> rows);

  unsigned inputs() const { return inputs_; }
  unsigned outputs() const { return outputs_; }
  bool is_table() const { return table_mode_; }

  std::uint32_t eval(std::uint64_t x) const;
  /// Evaluates 64 inputs at once; lanes[p] holds input position p for all lanes.
  /// Output word k holds output bit k (textual position) for every lane.
  void eval_sliced(const std::uint64_t* lanes, std::uint64_t* out) const;
  /// Values on all 2^inputs points, in input order.
  std::vector<std::uint32_t> tabulate() const;

  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<std::uint32_t>& output_wires() const { return output_wires_; }
  const std::vector<std::uint32_t>& rows() const { return rows_; }

 private:
  unsigned inputs_ = 0;
  unsigned outputs_ = 0;
  bool table_mode_ = false;
  std::vector<Gate> gates_;  // topologically ordered
  std::vector<std::uint32_t> output_wires_;
  std::vector<std::uint32_t> rows_;
};

/// C : {0,1}^n -> {0,1}^m.
class Circuit {
 public:
  Circuit() = default;
  Circuit(unsigned n, unsigned m, BoolFunction body);

  static Circuit from_json(const json& j);
  json to_json() const;

  unsigned n() const { return n_; }
  unsigned m() const { return m_; }
  const BoolFunction& body() const { return body_; }

  std::uint32_t eval(std::uint32_t x) const { return body_.eval(x); }
  BitString eval(const BitString& x) const;
  std::vector<std::uint32_t> tabulate() const { return body_.tabulate(); }
  /// Same function in table form.
  Circuit as_table() const;

 private:
  unsigned n_ = 0;
  unsigned m_ = 0;
  BoolFunction body_;
};

inline constexpr unsigned kMaxWitnessWidth = 16;

/// V : {0,1}^m x {0,1}^l -> {0,1}; input is y followed by w.
class NondetCircuit {
 public:
  NondetCircuit() = default;
  NondetCircuit(unsigned m, unsigned l, BoolFunction body);

  static NondetCircuit from_json(const json& j);
  json to_json() const;

  unsigned m() const { return m_; }
  unsigned l() const { return l_; }

  bool check(std::uint32_t y, std::uint32_t w) const;
  /// Smallest accepting witness, if any.
  std::optional<std::uint32_t> find_witness(std::uint32_t y) const;
  std::pair<bool, std::optional<BitString>> accepts(const BitString& y) const;

 private:
  unsigned m_ = 0;
  unsigned l_ = 0;
  BoolFunction body_;
};

BitString eval_circuit(const Circuit& c, const BitString& x);
std::pair<bool, std::optional<BitString>> accepts(const NondetCircuit& v, const BitString& y);

}  // namespace pubcoin
