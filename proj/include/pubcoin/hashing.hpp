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
#include "pubcoin/coins.hpp"

#include <json.hpp>

#include <cstdint>
#include <vector>

namespace pubcoin {

/// h(x) = A x + b over GF(2), A an m'-by-n matrix. Row k produces output
/// character k.
class AffineHash {
 public:
  AffineHash() = default;
  AffineHash(unsigned in_width, unsigned out_width, std::vector<std::uint32_t> rows, std::uint32_t offset);

  static AffineHash random(unsigned in_width, unsigned out_width, CoinStream& coins);

  unsigned in_width() const { return in_; }
  unsigned out_width() const { return out_; }
  const std::vector<std::uint32_t>& rows() const { return rows_; }
  std::uint32_t offset() const { return b_; }

  std::uint32_t eval(std::uint32_t x) const;
  BitString eval(const BitString& x) const;

  nlohmann::json to_json() const;
  static AffineHash from_json(const nlohmann::json& j);

  friend bool operator==(const AffineHash&, const AffineHash&) = default;

 private:
  unsigned in_ = 0;
  unsigned out_ = 0;
  std::vector<std::uint32_t> rows_;
  std::uint32_t b_ = 0;
};

BitString hash_eval(const AffineHash& h, const BitString& x);

}  // namespace pubcoin
