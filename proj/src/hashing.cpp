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

#include "pubcoin/hashing.hpp"

namespace pubcoin {

AffineHash::AffineHash(unsigned in_width, unsigned out_width, std::vector<std::uint32_t> rows, std::uint32_t offset)
    : in_(in_width), out_(out_width), rows_(std::move(rows)), b_(offset) {
  if (in_ > kMaxWidth || out_ > kMaxWidth) throw WidthError("hash widths are limited to 24");
  if (rows_.size() != out_) throw WidthError("hash needs one row per output bit");
  for (auto r : rows_) {
    if ((static_cast<std::uint64_t>(r) >> in_) != 0) throw WidthError("hash row wider than input");
  }
  if ((static_cast<std::uint64_t>(b_) >> out_) != 0) throw WidthError("hash offset wider than output");
}

AffineHash AffineHash::random(unsigned in_width, unsigned out_width, CoinStream& coins) {
  std::vector<std::uint32_t> rows(out_width);
  for (auto& r : rows) r = static_cast<std::uint32_t>(coins.bits(in_width));
  auto b = static_cast<std::uint32_t>(coins.bits(out_width));
  return AffineHash(in_width, out_width, std::move(rows), b);
}

std::uint32_t AffineHash::eval(std::uint32_t x) const {
  std::uint32_t out = 0;
  for (unsigned k = 0; k < out_; ++k) {
    out = (out << 1) | static_cast<std::uint32_t>(__builtin_parity(rows_[k] & x));
  }
  return out ^ b_;
}

BitString AffineHash::eval(const BitString& x) const {
  if (x.width() != in_) throw WidthError("hash input width mismatch");
  return BitString(out_, eval(x.value()));
}

nlohmann::json AffineHash::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (auto r : rows_) rows.push_back(bits_to_string(r, in_));
  return {{"n", in_}, {"m", out_}, {"rows", std::move(rows)}, {"b", bits_to_string(b_, out_)}};
}

AffineHash AffineHash::from_json(const nlohmann::json& j) {
  try {
    auto in = j.at("n").get<unsigned>();
    auto out = j.at("m").get<unsigned>();
    std::vector<std::uint32_t> rows;
    for (const auto& r : j.at("rows")) {
      auto s = r.get<std::string>();
      if (s.size() != in) throw WidthError("hash row has wrong width");
      rows.push_back(static_cast<std::uint32_t>(bits_from_string(s, in)));
    }
    auto b = j.at("b").get<std::string>();
    if (b.size() != out) throw WidthError("hash offset has wrong width");
    return AffineHash(in, out, std::move(rows), static_cast<std::uint32_t>(bits_from_string(b, out)));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("hash json: ") + e.what());
  }
}

BitString hash_eval(const AffineHash& h, const BitString& x) { return h.eval(x); }

}  // namespace pubcoin
