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

#include "pubcoin/circuit.hpp"
#include "pubcoin/coins.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace pubcoin {

/// Circuit given by an explicit function x -> y over {0,1}^n.
Circuit table_circuit(unsigned n, unsigned m, const std::function<std::uint32_t(std::uint32_t)>& f);
/// Circuit whose output y has exactly `count` preimages; counts must sum to 2^n.
Circuit counts_circuit(unsigned n, unsigned m, const std::vector<std::pair<std::uint32_t, std::uint64_t>>& counts);

Circuit identity_circuit(unsigned n);
Circuit constant_circuit(unsigned n, unsigned m, std::uint32_t value);
/// One output bit, the AND of all inputs.
Circuit and_circuit(unsigned n);
/// y = top m bits of x.
Circuit uniform_circuit(unsigned n, unsigned m);
/// Inputs with top two bits 00 map to their low m bits; the rest spread
/// evenly over `heavy` outputs 0, 1, ..., heavy - 1 spaced 2^m / heavy apart.
Circuit bimodal_circuit(unsigned n, unsigned m, unsigned heavy);

Circuit random_table_circuit(unsigned n, unsigned m, CoinStream& coins);
/// Random gate circuit; each gate reads earlier wires.
Circuit random_gate_circuit(unsigned n, unsigned m, unsigned gates, CoinStream& coins);

/// V(y, w) = 1 iff y has even parity and w equals the low l bits of y.
NondetCircuit parity_v(unsigned m, unsigned l);
/// V(y, w) = 1 iff w equals the low l bits of y.
NondetCircuit equality_v(unsigned m, unsigned l);

}  // namespace pubcoin
