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

#include "pubcoin/analysis.hpp"

namespace pubcoin {

namespace {

Pow2Sum label_term(const Label& u, const Rational& eps, unsigned m) {
  if (!u) return Pow2Sum();
  const auto q = eps.get_den().get_ui();
  const long long p = eps.get_num().get_si();
  return Pow2Sum::power(1, static_cast<long long>(m) * static_cast<long long>(q) - *u * p, q);
}

// Infinite labels compare above every integer.
int compare_labels(const Label& a, const Label& b) {
  if (!a && !b) return 0;
  if (!a) return 1;
  if (!b) return -1;
  return *a < *b ? -1 : (*a > *b ? 1 : 0);
}

void require_flow_invariants(const std::vector<Rational>& f, long long jstar) {
  Rational s;
  for (std::size_t j = 0; j < f.size(); ++j) {
    s += f[j];
    if (sgn(s) > 0) throw DomainError("a prefix sum is positive");
    if (static_cast<long long>(j) == jstar && sgn(s) != 0) throw DomainError("sum up to j* is not zero");
    if (static_cast<long long>(j) > jstar && sgn(f[j]) != 0) throw DomainError("entry above j* is not zero");
  }
}

}  // namespace

Pow2Sum weighted_label_sum(const std::vector<Label>& u, const std::vector<std::size_t>& A, const Rational& eps,
                           unsigned m, std::size_t k) {
  Pow2Sum s;
  for (auto i : A) s += label_term(u.at(i), eps, m);
  return s * Rational(1, static_cast<unsigned long>(k));
}

std::pair<Pow2Sum, Pow2Sum> gain_loss(const std::vector<Label>& u_honest, const std::vector<Label>& u,
                                      const std::vector<std::size_t>& A, const Rational& eps, unsigned m,
                                      std::size_t k) {
  Pow2Sum gain, loss;
  for (auto i : A) {
    const Label& up = u_honest.at(i);
    const Label& uc = u.at(i);
    int c = compare_labels(up, uc);
    if (c > 0) {
      gain += label_term(uc, eps, m) - label_term(up, eps, m);
    } else if (c < 0) {
      loss += label_term(up, eps, m) - label_term(uc, eps, m);
    }
  }
  const Rational inv_k(1, static_cast<unsigned long>(k));
  return {gain * inv_k, loss * inv_k};
}

std::vector<Rational> prefix_sums(const std::vector<Rational>& d) {
  std::vector<Rational> out(d.size());
  Rational s;
  for (std::size_t j = 0; j < d.size(); ++j) {
    s += d[j];
    out[j] = s;
  }
  return out;
}

Rational mean_abs_prefix(const std::vector<Rational>& d) {
  if (d.size() < 2) throw DomainError("difference vector needs t >= 1");
  Rational s, total;
  for (const auto& v : d) {
    s += v;
    total += abs(s);
  }
  return total / Rational(static_cast<long>(d.size() - 1));
}

Pow2Sum weighted_prefix(const std::vector<Rational>& d, long long upto, const Rational& eps) {
  const auto q = eps.get_den().get_ui();
  const long long p = eps.get_num().get_si();
  Pow2Sum s;
  for (long long j = 0; j <= upto && j < static_cast<long long>(d.size()); ++j) {
    if (sgn(d[j]) != 0) s += Pow2Sum::power(d[j], j * p, q);
  }
  return s;
}

DiffVector dprime(const DiffVector& d) {
  if (d.jstar < 0 || d.jstar > d.t()) throw DomainError("j* outside the vector");
  DiffVector out{d.d, d.jstar};
  auto prefix = prefix_sums(d.d);
  Rational previous;
  for (long long i = 0; i <= d.jstar; ++i) {
    Rational target = i < d.jstar ? Rational(std::min(prefix[i], Rational(0))) : prefix[i];
    out.d[i] = target - previous;
    previous = target;
  }
  return out;
}

DiffVector ddoubleprime(const DiffVector& dp) {
  if (dp.jstar < 0 || dp.jstar > dp.t()) throw DomainError("j* outside the vector");
  DiffVector out{dp.d, dp.jstar};
  Rational total;
  for (long long j = 0; j <= dp.jstar; ++j) total += dp.d[j];
  out.d[dp.jstar] -= total;
  for (long long j = dp.jstar + 1; j <= dp.t(); ++j) out.d[j] = 0;
  return out;
}

std::vector<FlowStep> flow_decompose(const DiffVector& dpp, bool check_invariants) {
  require_flow_invariants(dpp.d, dpp.jstar);
  std::vector<Rational> f = dpp.d;
  std::vector<FlowStep> steps;
  const long long size = static_cast<long long>(f.size());
  long long i = 0;
  for (;;) {
    while (i < size && sgn(f[i]) == 0) ++i;
    if (i == size) break;
    long long ip = i + 1;
    while (ip < size && sgn(f[ip]) <= 0) ++ip;
    if (ip == size || sgn(f[i]) >= 0) throw Error("flow decomposition lost its invariants");
    Rational w = std::min(Rational(-f[i]), f[ip]);
    steps.push_back({i, ip, w});
    f[i] += w;
    f[ip] -= w;
    if (check_invariants) require_flow_invariants(f, dpp.jstar);
  }
  return steps;
}

bool bernoulli_step_holds(const FlowStep& step, const Rational& eps) {
  const auto q = eps.get_den().get_ui();
  const long long p = eps.get_num().get_si();
  const long long gap = step.ip - step.i;
  Pow2Sum lhs = Pow2Sum(1) - Pow2Sum::power(1, -gap * p, q);
  Pow2Sum rhs = (Pow2Sum(1) - Pow2Sum::power(1, -p, q)) * Rational(static_cast<long>(gap));
  return lhs.compare(rhs) <= 0;
}

std::optional<bool> check_weighted_prefix_bound(const DiffVector& d, const Rational& delta, const Rational& eps_tilde,
                                                unsigned m) {
  if (d.jstar < 0 || d.jstar > d.t()) throw DomainError("j* outside the vector");
  Rational head;
  for (long long j = 0; j <= d.jstar; ++j) head += d.d[j];
  if (abs(head) > delta) return std::nullopt;
  if (mean_abs_prefix(d.d) > ratio(20, static_cast<unsigned long>(d.t()))) return std::nullopt;
  if (Rational(static_cast<long>(d.jstar)) * eps_tilde > m) return std::nullopt;
  Pow2Sum value = weighted_prefix(d.d, d.jstar, eps_tilde) * pow2(-static_cast<long long>(m));
  const Rational bound = delta + 40 * eps_tilde;
  return value.compare(bound) <= 0 && value.compare(-bound) >= 0;
}

}  // namespace pubcoin
