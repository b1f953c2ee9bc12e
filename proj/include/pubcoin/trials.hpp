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

#include "pubcoin/session.hpp"

#include <functional>
#include <optional>
#include <utility>

namespace pubcoin {

struct TrialRow {
  std::uint64_t seed = 0;
  bool accepted = false;
  std::string failed_check;
  std::optional<double> estimate;
  std::uint64_t digest = 0;  // transcript digest
};

/// Wilson score interval for `successes` out of `n` at 95%.
std::pair<double, double> wilson_interval(std::size_t successes, std::size_t n, double z = 1.959963984540054);

struct TrialReport {
  std::string label;
  std::size_t trials = 0;
  std::size_t accepts = 0;
  double ci_lo = 0.0;
  double ci_hi = 1.0;
  std::uint64_t master_seed = 0;
  std::vector<TrialRow> rows;

  double rate() const { return trials ? static_cast<double>(accepts) / static_cast<double>(trials) : 0.0; }
  json to_json() const;
  std::string to_csv() const;
};

using TrialFn = std::function<TrialRow(std::uint64_t seed)>;

/// Runs trial i with seed derive_seed(master_seed, i). With threads > 1 the
/// trials run on a pool; rows are stored by index, so the report does not
/// depend on the thread count. `fn` must be safe to call concurrently.
TrialReport run_trials(const std::string& label, std::size_t n_trials, std::uint64_t master_seed, const TrialFn& fn,
                       unsigned threads = 1);

TrialRow row_from_transcript(const Transcript& t, std::optional<double> estimate = std::nullopt);

}  // namespace pubcoin
