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

#include "pubcoin/trials.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace pubcoin {

std::pair<double, double> wilson_interval(std::size_t successes, std::size_t n, double z) {
  if (n == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  double lo = successes == 0 ? 0.0 : std::max(0.0, center - half);
  double hi = successes == n ? 1.0 : std::min(1.0, center + half);
  return {lo, hi};
}

json TrialReport::to_json() const {
  json seeds = json::array();
  for (const auto& r : rows) seeds.push_back(hex64(r.seed));
  return json{{"label", label},
              {"trials", trials},
              {"accepts", accepts},
              {"rate", rate()},
              {"wilson95", {ci_lo, ci_hi}},
              {"master_seed", hex64(master_seed)},
              {"seeds", std::move(seeds)}};
}

std::string TrialReport::to_csv() const {
  std::ostringstream out;
  out << "seed,verdict,failed_check,estimate\n";
  out.precision(17);
  for (const auto& r : rows) {
    out << hex64(r.seed) << ',' << (r.accepted ? "accept" : "reject") << ',' << r.failed_check << ',';
    if (r.estimate) out << *r.estimate;
    out << '\n';
  }
  return out.str();
}

TrialReport run_trials(const std::string& label, std::size_t n_trials, std::uint64_t master_seed, const TrialFn& fn,
                       unsigned threads) {
  if (n_trials == 0) throw DomainError("at least one trial is required");
  TrialReport report;
  report.label = label;
  report.trials = n_trials;
  report.master_seed = master_seed;
  report.rows.resize(n_trials);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n_trials) return;
      try {
        TrialRow row = fn(derive_seed(master_seed, i));
        row.seed = derive_seed(master_seed, i);
        report.rows[i] = std::move(row);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n_trials);
      }
    }
  };
  unsigned pool = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(n_trials)));
  if (pool == 1) {
    worker();
  } else {
    std::vector<std::thread> workers;
    for (unsigned k = 0; k < pool; ++k) workers.emplace_back(worker);
    for (auto& w : workers) w.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (const auto& r : report.rows) report.accepts += r.accepted ? 1 : 0;
  std::tie(report.ci_lo, report.ci_hi) = wilson_interval(report.accepts, n_trials);
  return report;
}

TrialRow row_from_transcript(const Transcript& t, std::optional<double> estimate) {
  TrialRow row;
  row.seed = t.coin_seed;
  row.accepted = t.accepted;
  row.failed_check = t.failed_check;
  row.estimate = estimate;
  row.digest = t.digest();
  return row;
}

}  // namespace pubcoin
