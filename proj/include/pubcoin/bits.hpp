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

#include "pubcoin/rational.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace pubcoin {

inline constexpr unsigned kMaxWidth = 24;

/// Fixed-width bit pattern. Character k of the textual form is bit
/// (width - 1 - k) of value, so lexicographic and numeric order agree.
class BitString {
 public:
  BitString() = default;
  BitString(unsigned width, std::uint32_t value);

  static BitString parse(std::string_view text);

  unsigned width() const { return width_; }
  std::uint32_t value() const { return value_; }
  /// Bit at textual position k (0 is the leftmost character).
  bool at(unsigned k) const;

  std::string to_string() const;

  friend bool operator==(const BitString&, const BitString&) = default;
  friend auto operator<=>(const BitString&, const BitString&) = default;

 private:
  unsigned width_ = 0;
  std::uint32_t value_ = 0;
};

/// Renders the low `width` bits of value MSB first.
std::string bits_to_string(std::uint64_t value, unsigned width);
std::uint64_t bits_from_string(std::string_view text, unsigned max_width);

}  // namespace pubcoin
