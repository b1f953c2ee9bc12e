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

#include "pubcoin/bits.hpp"

namespace pubcoin {

BitString::BitString(unsigned width, std::uint32_t value) : width_(width), value_(value) {
  if (width > kMaxWidth) throw WidthError("bit string width " + std::to_string(width) + " exceeds 24");
  if (width < 32 && (value >> width) != 0) {
    throw WidthError("value has bits beyond width " + std::to_string(width));
  }
}

BitString BitString::parse(std::string_view text) {
  auto value = bits_from_string(text, kMaxWidth);
  return BitString(static_cast<unsigned>(text.size()), static_cast<std::uint32_t>(value));
}

bool BitString::at(unsigned k) const {
  if (k >= width_) throw WidthError("bit position out of range");
  return (value_ >> (width_ - 1 - k)) & 1u;
}

std::string BitString::to_string() const { return bits_to_string(value_, width_); }

std::string bits_to_string(std::uint64_t value, unsigned width) {
  std::string out(width, '0');
  for (unsigned k = 0; k < width; ++k) {
    if ((value >> (width - 1 - k)) & 1u) out[k] = '1';
  }
  return out;
}

std::uint64_t bits_from_string(std::string_view text, unsigned max_width) {
  if (text.size() > max_width) {
    throw WidthError("bit string '" + std::string(text) + "' wider than " + std::to_string(max_width));
  }
  std::uint64_t value = 0;
  for (char ch : text) {
    if (ch != '0' && ch != '1') throw ParseError("invalid bit string '" + std::string(text) + "'");
    value = (value << 1) | static_cast<std::uint64_t>(ch == '1');
  }
  return value;
}

}  // namespace pubcoin
