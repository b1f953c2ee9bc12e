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

#include "pubcoin/prover.hpp"

#include <set>

namespace pubcoin {

/// Prover that lies about bucket labels, consistently across its histogram
/// and its VerifyHist labels. Lower bound answers stay honest, so the lie is
/// caught (or not) by the checks downstream.
class RelabelingProver : public HonestProver {
 public:
  using HonestProver::HonestProver;

  /// Claimed label of y for bucket width eps, or nullopt outside [0, t].
  std::optional<long long> claimed_label(std::uint32_t y, const Rational& eps, long long t);
  Histogram claimed_histogram(const BucketParams& params);

 protected:
  /// Claimed label given the true one; `truth` is never empty here.
  virtual long long relabel(std::uint32_t y, long long truth, const Rational& eps) = 0;

  json answer_vh_labels(const json& challenge) override;
  json answer_histogram(const json& challenge) override;
};

/// Claims every bucket one step heavier than it is.
class LBInflater : public RelabelingProver {
 public:
  using RelabelingProver::RelabelingProver;
  std::string name() const override { return "lb-inflater"; }

 protected:
  long long relabel(std::uint32_t y, long long truth, const Rational& eps) override;
};

/// Moves the heaviest outputs, up to total probability `mass`, by `buckets`
/// (positive moves toward lighter buckets).
class HistShifter : public RelabelingProver {
 public:
  HistShifter(KnowledgePtr know, long long buckets, const Rational& mass);
  std::string name() const override { return "hist-shifter"; }
  const std::set<std::uint32_t>& moved() const { return moved_; }

 protected:
  long long relabel(std::uint32_t y, long long truth, const Rational& eps) override;

 private:
  long long buckets_;
  std::set<std::uint32_t> moved_;
};

/// Reports every output with probability in [(1 - 4 eps) alpha 2^-m, alpha 2^-m)
/// as sitting in bucket j*, just on the heavy side of the threshold.
class NearThresholdLiar : public RelabelingProver {
 public:
  NearThresholdLiar(KnowledgePtr know, const Rational& eps, const Rational& alpha);
  std::string name() const override { return "near-threshold-liar"; }

 protected:
  long long relabel(std::uint32_t y, long long truth, const Rational& eps) override;

 private:
  Rational alpha_;
  Rational lower_;  // (1 - 4 eps) alpha 2^-m
  Rational upper_;  // alpha 2^-m
};

/// Hiding prover that drops a fixed share of its yes witnesses.
class YesSuppressor : public HonestProver {
 public:
  YesSuppressor(KnowledgePtr know, std::shared_ptr<const NondetCircuit> v, const Rational& fraction);
  std::string name() const override { return "yes-suppressor"; }

 protected:
  json answer_hide(const json& challenge) override;

 private:
  Rational fraction_;
};

/// Hiding prover that reports every finite label two buckets lower.
class LabelLightener : public HonestProver {
 public:
  using HonestProver::HonestProver;
  std::string name() const override { return "label-lightener"; }

 protected:
  json answer_hide(const json& challenge) override;
};

/// Honest hiding prover, used against instances whose pYL is wrong.
class WrongPYLProver : public HonestProver {
 public:
  using HonestProver::HonestProver;
  std::string name() const override { return "honest-labels-wrong-pYL"; }
};

struct AdversaryParams {
  long long buckets = 1;
  Rational mass = 0;
  Rational fraction = Rational(1, 2);
  Rational eps = Rational(1, 5);
  Rational alpha = 1;
};

/// Names: honest, lb-inflater, hist-shifter, near-threshold-liar,
/// yes-suppressor, label-lightener, honest-labels-wrong-pYL.
std::unique_ptr<ProverStrategy> adversary(const std::string& name, const AdversaryParams& params, KnowledgePtr know,
                                          std::shared_ptr<const NondetCircuit> v = nullptr);

const std::vector<std::string>& adversary_names();

}  // namespace pubcoin
