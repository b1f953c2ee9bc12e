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

#include "pubcoin/circuit.hpp"

#include <array>
#include <deque>
#include <string>

namespace pubcoin {

namespace {

constexpr unsigned kMaxGateInputs = kMaxWidth + kMaxWitnessWidth;
constexpr unsigned kMaxTableInputs = kMaxWidth;

// Lane patterns for the six lowest input bits inside a 64-wide block.
constexpr std::array<std::uint64_t, 6> kLowPatterns = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};

const char* op_name(GateOp op) {
  switch (op) {
    case GateOp::Input: return "INPUT";
    case GateOp::Const: return "CONST";
    case GateOp::And: return "AND";
    case GateOp::Or: return "OR";
    case GateOp::Not: return "NOT";
    case GateOp::Xor: return "XOR";
  }
  return "?";
}

GateOp parse_op(const std::string& s) {
  if (s == "INPUT") return GateOp::Input;
  if (s == "CONST") return GateOp::Const;
  if (s == "AND") return GateOp::And;
  if (s == "OR") return GateOp::Or;
  if (s == "NOT") return GateOp::Not;
  if (s == "XOR") return GateOp::Xor;
  throw ParseError("unknown gate op '" + s + "'");
}

unsigned get_width(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw ParseError(std::string("missing integer field '") + key + "'");
  }
  auto v = j.at(key).get<long long>();
  if (v < 0 || v > 64) throw WidthError(std::string("field '") + key + "' out of range");
  return static_cast<unsigned>(v);
}

BoolFunction body_from_json(const json& j, unsigned inputs, unsigned outputs) {
  std::string kind = j.value("kind", std::string("gates"));
  if (kind == "table") {
    if (inputs > kMaxTableInputs) throw WidthError("table circuits are limited to 24 inputs");
    const json& rows = j.at("table");
    if (!rows.is_array()) throw ParseError("'table' must be an array");
    std::vector<std::uint32_t> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
      auto s = row.get<std::string>();
      if (s.size() != outputs) throw WidthError("table row '" + s + "' has wrong width");
      out.push_back(static_cast<std::uint32_t>(bits_from_string(s, outputs)));
    }
    return BoolFunction::from_table(inputs, outputs, std::move(out));
  }
  if (kind != "gates") throw ParseError("unknown circuit kind '" + kind + "'");
  std::vector<Gate> gates;
  for (const auto& g : j.at("gates")) {
    Gate gate;
    gate.op = parse_op(g.at("op").get<std::string>());
    if (g.contains("args")) gate.args = g.at("args").get<std::vector<std::uint32_t>>();
    if (gate.op == GateOp::Const) gate.constant = g.value("const", 0) != 0;
    gates.push_back(std::move(gate));
  }
  auto outs = j.at("outputs").get<std::vector<std::uint32_t>>();
  if (outs.size() != outputs) throw WidthError("output wire count does not match declared width");
  return BoolFunction::from_gates(inputs, std::move(gates), std::move(outs));
}

json body_to_json(const BoolFunction& f) {
  json j;
  if (f.is_table()) {
    j["kind"] = "table";
    json rows = json::array();
    for (auto r : f.rows()) rows.push_back(bits_to_string(r, f.outputs()));
    j["table"] = std::move(rows);
    return j;
  }
  j["kind"] = "gates";
  json gates = json::array();
  for (const auto& g : f.gates()) {
    json gj{{"op", op_name(g.op)}};
    if (g.op == GateOp::Const) {
      gj["const"] = g.constant ? 1 : 0;
    } else {
      gj["args"] = g.args;
    }
    gates.push_back(std::move(gj));
  }
  j["gates"] = std::move(gates);
  j["outputs"] = f.output_wires();
  return j;
}

}  // namespace

BoolFunction BoolFunction::from_gates(unsigned inputs, std::vector<Gate> gates,
                                      std::vector<std::uint32_t> outputs) {
  if (inputs > kMaxGateInputs) throw WidthError("too many circuit inputs");
  const std::size_t count = gates.size();
  std::vector<std::vector<std::uint32_t>> users(count);
  std::vector<std::size_t> pending(count, 0);
  for (std::size_t id = 0; id < count; ++id) {
    Gate& g = gates[id];
    switch (g.op) {
      case GateOp::Input:
        if (g.args.size() != 1 || g.args[0] >= inputs) {
          throw ParseError("INPUT gate " + std::to_string(id) + " needs one valid position");
        }
        continue;
      case GateOp::Const:
        g.args.clear();
        continue;
      case GateOp::Not:
        if (g.args.size() != 1) throw ParseError("NOT gate " + std::to_string(id) + " needs one argument");
        break;
      default:
        if (g.args.size() < 2) throw ParseError("gate " + std::to_string(id) + " needs at least two arguments");
        break;
    }
    for (auto a : g.args) {
      if (a >= count) throw ParseError("gate " + std::to_string(id) + " references undefined wire");
      users[a].push_back(static_cast<std::uint32_t>(id));
      ++pending[id];
    }
  }
  for (auto o : outputs) {
    if (o >= count) throw ParseError("output references undefined wire");
  }

  std::vector<std::uint32_t> order;
  order.reserve(count);
  std::deque<std::uint32_t> ready;
  for (std::size_t id = 0; id < count; ++id) {
    if (pending[id] == 0) ready.push_back(static_cast<std::uint32_t>(id));
  }
  while (!ready.empty()) {
    auto id = ready.front();
    ready.pop_front();
    order.push_back(id);
    for (auto u : users[id]) {
      if (--pending[u] == 0) ready.push_back(u);
    }
  }
  if (order.size() != count) throw ParseError("gate graph contains a cycle");

  std::vector<std::uint32_t> rename(count);
  for (std::size_t k = 0; k < count; ++k) rename[order[k]] = static_cast<std::uint32_t>(k);
  BoolFunction f;
  f.inputs_ = inputs;
  f.outputs_ = static_cast<unsigned>(outputs.size());
  f.gates_.reserve(count);
  for (auto id : order) {
    Gate g = gates[id];
    if (g.op != GateOp::Input) {
      for (auto& a : g.args) a = rename[a];
    }
    f.gates_.push_back(std::move(g));
  }
  for (auto& o : outputs) o = rename[o];
  f.output_wires_ = std::move(outputs);
  return f;
}

BoolFunction BoolFunction::from_table(unsigned inputs, unsigned outputs,
                                      std::vector<std::uint32_t> rows) {
  if (inputs > kMaxTableInputs) throw WidthError("table circuits are limited to 24 inputs");
  if (outputs > kMaxWidth) throw WidthError("output width exceeds 24");
  if (rows.size() != (std::size_t{1} << inputs)) {
    throw WidthError("table needs exactly 2^" + std::to_string(inputs) + " rows");
  }
  for (auto r : rows) {
    if (outputs < 32 && (r >> outputs) != 0) throw WidthError("table row wider than output width");
  }
  BoolFunction f;
  f.inputs_ = inputs;
  f.outputs_ = outputs;
  f.table_mode_ = true;
  f.rows_ = std::move(rows);
  return f;
}

std::uint32_t BoolFunction::eval(std::uint64_t x) const {
  if (inputs_ < 64 && (x >> inputs_) != 0) throw WidthError("input wider than circuit");
  if (table_mode_) return rows_[x];
  std::vector<std::uint8_t> wire(gates_.size());
  for (std::size_t k = 0; k < gates_.size(); ++k) {
    const Gate& g = gates_[k];
    std::uint8_t v = 0;
    switch (g.op) {
      case GateOp::Input: v = (x >> (inputs_ - 1 - g.args[0])) & 1u; break;
      case GateOp::Const: v = g.constant; break;
      case GateOp::Not: v = wire[g.args[0]] ^ 1u; break;
      case GateOp::And:
        v = 1;
        for (auto a : g.args) v &= wire[a];
        break;
      case GateOp::Or:
        for (auto a : g.args) v |= wire[a];
        break;
      case GateOp::Xor:
        for (auto a : g.args) v ^= wire[a];
        break;
    }
    wire[k] = v;
  }
  std::uint32_t out = 0;
  for (auto o : output_wires_) out = (out << 1) | wire[o];
  return out;
}

void BoolFunction::eval_sliced(const std::uint64_t* lanes, std::uint64_t* out) const {
  if (table_mode_) throw Error("sliced evaluation needs a gate body");
  std::vector<std::uint64_t> wire(gates_.size());
  for (std::size_t k = 0; k < gates_.size(); ++k) {
    const Gate& g = gates_[k];
    std::uint64_t v = 0;
    switch (g.op) {
      case GateOp::Input: v = lanes[g.args[0]]; break;
      case GateOp::Const: v = g.constant ? ~0ull : 0ull; break;
      case GateOp::Not: v = ~wire[g.args[0]]; break;
      case GateOp::And:
        v = ~0ull;
        for (auto a : g.args) v &= wire[a];
        break;
      case GateOp::Or:
        for (auto a : g.args) v |= wire[a];
        break;
      case GateOp::Xor:
        for (auto a : g.args) v ^= wire[a];
        break;
    }
    wire[k] = v;
  }
  for (std::size_t k = 0; k < output_wires_.size(); ++k) out[k] = wire[output_wires_[k]];
}

std::vector<std::uint32_t> BoolFunction::tabulate() const {
  if (inputs_ > kMaxTableInputs) throw BudgetError("enumeration limited to 24 inputs");
  if (table_mode_) return rows_;
  const std::uint64_t total = std::uint64_t{1} << inputs_;
  std::vector<std::uint32_t> table(total);
  std::vector<std::uint64_t> lanes(inputs_), out(outputs_);
  for (std::uint64_t base = 0; base < total; base += 64) {
    for (unsigned p = 0; p < inputs_; ++p) {
      unsigned bit = inputs_ - 1 - p;
      lanes[p] = bit < 6 ? kLowPatterns[bit] : (((base >> bit) & 1u) ? ~0ull : 0ull);
    }
    eval_sliced(lanes.data(), out.data());
    const std::uint64_t span = std::min<std::uint64_t>(64, total - base);
    for (std::uint64_t lane = 0; lane < span; ++lane) {
      std::uint32_t v = 0;
      for (unsigned k = 0; k < outputs_; ++k) v = (v << 1) | ((out[k] >> lane) & 1u);
      table[base + lane] = v;
    }
  }
  return table;
}

Circuit::Circuit(unsigned n, unsigned m, BoolFunction body) : n_(n), m_(m), body_(std::move(body)) {
  if (n > kMaxWidth || m > kMaxWidth) throw WidthError("circuit widths are limited to 24");
  if (body_.inputs() != n || body_.outputs() != m) throw WidthError("circuit body does not match n, m");
}

Circuit Circuit::from_json(const json& j) {
  try {
    unsigned n = get_width(j, "n");
    unsigned m = get_width(j, "m");
    if (n > kMaxWidth || m > kMaxWidth) throw WidthError("circuit widths are limited to 24");
    return Circuit(n, m, body_from_json(j, n, m));
  } catch (const json::exception& e) {
    throw ParseError(std::string("circuit json: ") + e.what());
  }
}

json Circuit::to_json() const {
  json j = body_to_json(body_);
  j["n"] = n_;
  j["m"] = m_;
  return j;
}

BitString Circuit::eval(const BitString& x) const {
  if (x.width() != n_) throw WidthError("input width does not match circuit n");
  return BitString(m_, body_.eval(x.value()));
}

Circuit Circuit::as_table() const {
  return Circuit(n_, m_, BoolFunction::from_table(n_, m_, tabulate()));
}

NondetCircuit::NondetCircuit(unsigned m, unsigned l, BoolFunction body) : m_(m), l_(l), body_(std::move(body)) {
  if (l > kMaxWitnessWidth) throw WidthError("witness width exceeds 16");
  if (m > kMaxWidth) throw WidthError("statement width exceeds 24");
  if (body_.inputs() != m + l || body_.outputs() != 1) {
    throw WidthError("verifier body must have m+l inputs and one output");
  }
}

NondetCircuit NondetCircuit::from_json(const json& j) {
  try {
    unsigned m = get_width(j, "m");
    unsigned l = get_width(j, "l");
    if (l > kMaxWitnessWidth) throw WidthError("witness width exceeds 16");
    if (m > kMaxWidth) throw WidthError("statement width exceeds 24");
    return NondetCircuit(m, l, body_from_json(j, m + l, 1));
  } catch (const json::exception& e) {
    throw ParseError(std::string("verifier circuit json: ") + e.what());
  }
}

json NondetCircuit::to_json() const {
  json j = body_to_json(body_);
  j["m"] = m_;
  j["l"] = l_;
  return j;
}

bool NondetCircuit::check(std::uint32_t y, std::uint32_t w) const {
  return body_.eval((static_cast<std::uint64_t>(y) << l_) | w) != 0;
}

std::optional<std::uint32_t> NondetCircuit::find_witness(std::uint32_t y) const {
  const std::uint64_t count = std::uint64_t{1} << l_;
  if (body_.is_table()) {
    const std::uint64_t base = static_cast<std::uint64_t>(y) << l_;
    for (std::uint64_t w = 0; w < count; ++w) {
      if (body_.rows()[base + w]) return static_cast<std::uint32_t>(w);
    }
    return std::nullopt;
  }
  const unsigned inputs = m_ + l_;
  std::vector<std::uint64_t> lanes(inputs);
  std::uint64_t out = 0;
  for (std::uint64_t base = 0; base < count; base += 64) {
    for (unsigned p = 0; p < inputs; ++p) {
      unsigned bit = inputs - 1 - p;
      if (bit >= l_) {
        lanes[p] = ((y >> (bit - l_)) & 1u) ? ~0ull : 0ull;
      } else {
        lanes[p] = bit < 6 ? kLowPatterns[bit] : (((base >> bit) & 1u) ? ~0ull : 0ull);
      }
    }
    body_.eval_sliced(lanes.data(), &out);
    const std::uint64_t span = std::min<std::uint64_t>(64, count - base);
    if (span < 64) out &= (std::uint64_t{1} << span) - 1;
    if (out != 0) return static_cast<std::uint32_t>(base + static_cast<unsigned>(__builtin_ctzll(out)));
  }
  return std::nullopt;
}

std::pair<bool, std::optional<BitString>> NondetCircuit::accepts(const BitString& y) const {
  if (y.width() != m_) throw WidthError("statement width does not match verifier m");
  auto w = find_witness(y.value());
  if (!w) return {false, std::nullopt};
  return {true, BitString(l_, *w)};
}

BitString eval_circuit(const Circuit& c, const BitString& x) { return c.eval(x); }

std::pair<bool, std::optional<BitString>> accepts(const NondetCircuit& v, const BitString& y) {
  return v.accepts(y);
}

}  // namespace pubcoin
