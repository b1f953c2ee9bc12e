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

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pubcoin {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input does not fit the declared widths (bit strings, circuits, witnesses).
class WidthError : public Error {
 public:
  using Error::Error;
};

/// Malformed file or message content.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Desk-scale enumeration or message budget exceeded.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Precondition on numeric parameters violated.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Parses "p/q", an integer, or a finite decimal such as "0.25" or "1e-3"
/// into an exact rational.
Rational parse_rational(std::string_view text);

/// Canonical "num/den" form; the denominator is always printed.
std::string to_string(const Rational& r);

/// num/den in lowest terms. The two-argument gmpxx constructor does not reduce.
Rational ratio(const BigInt& num, const BigInt& den);
Rational ratio(long num, unsigned long den);

Rational pow2(long long exponent);
Rational rational_pow(const Rational& base, unsigned long exponent);

BigInt floor_of(const Rational& r);
BigInt ceil_of(const Rational& r);

/// Returns the exact square root when r is the square of a rational.
bool exact_sqrt(const Rational& r, Rational& root);

double to_double(const Rational& r);

std::uint64_t to_u64(const BigInt& v);

}  // namespace pubcoin
