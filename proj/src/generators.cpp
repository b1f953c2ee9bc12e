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

#include "pubcoin/generators.hpp"

#include <bit>

namespace pubcoin {

Circuit table_circuit(unsigned n, unsigned m, const std::function<std::uint32_t(std::uint32_t)>& f) {
  if (n > 24) throw WidthError("table circuits are limited to 24 inputs");
  std::vector<std::uint32_t> rows(std::size_t{1} << n);
  for (std::uint32_t x = 0; x < rows.size(); ++x) rows[x] = f(x);
  return Circuit(n, m, BoolFunction::from_table(n, m, std::move(rows)));
}

Circuit counts_circuit(unsigned n, unsigned m, const std::vector<std::pair<std::uint32_t, std::uint64_t>>& counts) {
  if (n > 24) throw WidthError("table circuits are limited to 24 inputs");
  std::vector<std::uint32_t> rows;
  rows.reserve(std::size_t{1} << n);
  for (const auto& [y, c] : counts) {
    if (m < 32 && y >> m) throw WidthError("output does not fit in m bits");
    if (rows.size() + c > (std::size_t{1} << n)) throw DomainError("counts exceed 2^n");
    rows.insert(rows.end(), c, y);
  }
  if (rows.size() != (std::size_t{1} << n)) throw DomainError("counts must sum to 2^n");
  return Circuit(n, m, BoolFunction::from_table(n, m, std::move(rows)));
}

Circuit identity_circuit(unsigned n) {
  std::vector<Gate> gates;
  std::vector<std::uint32_t> outputs;
  for (unsigned p = 0; p < n; ++p) {
    gates.push_back(Gate{GateOp::Input, {p}, false});
    outputs.push_back(p);
  }
  return Circuit(n, n, BoolFunction::from_gates(n, std::move(gates), std::move(outputs)));
}

Circuit constant_circuit(unsigned n, unsigned m, std::uint32_t value) {
  return table_circuit(n, m, [value](std::uint32_t) { return value; });
}

Circuit and_circuit(unsigned n) {
  std::vector<Gate> gates;
  for (unsigned p = 0; p < n; ++p) gates.push_back(Gate{GateOp::Input, {p}, false});
  std::uint32_t acc = 0;
  for (unsigned p = 1; p < n; ++p) {
    gates.push_back(Gate{GateOp::And, {acc, p}, false});
    acc = static_cast<std::uint32_t>(gates.size() - 1);
  }
  return Circuit(n, 1, BoolFunction::from_gates(n, std::move(gates), {acc}));
}

Circuit uniform_circuit(unsigned n, unsigned m) {
  if (m > n) throw DomainError("uniform circuit needs m <= n");
  return table_circuit(n, m, [n, m](std::uint32_t x) { return x >> (n - m); });
}

Circuit bimodal_circuit(unsigned n, unsigned m, unsigned heavy) {
  if (n < m + 2) throw DomainError("bimodal circuit needs n >= m + 2");
  if (heavy == 0 || (std::uint64_t{1} << m) % heavy) throw DomainError("heavy count must divide 2^m");
  const std::uint32_t spacing = static_cast<std::uint32_t>((std::uint64_t{1} << m) / heavy);
  const std::uint32_t low_mask = (std::uint32_t{1} << m) - 1;
  return table_circuit(n, m, [=](std::uint32_t x) {
    if ((x >> (n - 2)) == 0) return x & low_mask;
    return (x % heavy) * spacing;
  });
}

Circuit random_table_circuit(unsigned n, unsigned m, CoinStream& coins) {
  return table_circuit(n, m, [&coins, m](std::uint32_t) { return static_cast<std::uint32_t>(coins.bits(m)); });
}

Circuit random_gate_circuit(unsigned n, unsigned m, unsigned gates, CoinStream& coins) {
  if (n == 0) throw DomainError("random gate circuits need an input");
  std::vector<Gate> list;
  for (unsigned p = 0; p < n; ++p) list.push_back(Gate{GateOp::Input, {p}, false});
  static const GateOp ops[] = {GateOp::And, GateOp::Or, GateOp::Xor, GateOp::Not};
  for (unsigned g = 0; g < gates; ++g) {
    const auto wires = static_cast<std::uint64_t>(list.size());
    GateOp op = ops[coins.below(4)];
    auto a = static_cast<std::uint32_t>(coins.below(wires));
    if (op == GateOp::Not) {
      list.push_back(Gate{op, {a}, false});
    } else {
      auto b = static_cast<std::uint32_t>(coins.below(wires));
      list.push_back(Gate{op, {a, b}, false});
    }
  }
  std::vector<std::uint32_t> outputs;
  const auto wires = static_cast<std::uint64_t>(list.size());
  for (unsigned k = 0; k < m; ++k) outputs.push_back(static_cast<std::uint32_t>(wires - 1 - coins.below(std::min<std::uint64_t>(wires, gates + 1))));
  return Circuit(n, m, BoolFunction::from_gates(n, std::move(list), std::move(outputs)));
}

namespace {

NondetCircuit v_from_predicate(unsigned m, unsigned l, const std::function<bool(std::uint32_t, std::uint32_t)>& pred) {
  if (m + l > 24) throw WidthError("verifier tables are limited to 24 inputs");
  std::vector<std::uint32_t> rows(std::size_t{1} << (m + l));
  for (std::uint32_t z = 0; z < rows.size(); ++z) rows[z] = pred(z >> l, z & ((std::uint32_t{1} << l) - 1)) ? 1 : 0;
  return NondetCircuit(m, l, BoolFunction::from_table(m + l, 1, std::move(rows)));
}

}  // namespace

NondetCircuit parity_v(unsigned m, unsigned l) {
  const std::uint32_t mask = (std::uint32_t{1} << l) - 1;
  return v_from_predicate(m, l, [mask](std::uint32_t y, std::uint32_t w) {
    return std::popcount(y) % 2 == 0 && w == (y & mask);
  });
}

NondetCircuit equality_v(unsigned m, unsigned l) {
  const std::uint32_t mask = (std::uint32_t{1} << l) - 1;
  return v_from_predicate(m, l, [mask](std::uint32_t y, std::uint32_t w) { return w == (y & mask); });
}

}  // namespace pubcoin
