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

#include "pubcoin/adversary.hpp"
#include "pubcoin/campaigns.hpp"
#include "pubcoin/heavy_samples.hpp"
#include "pubcoin/hiding.hpp"
#include "pubcoin/trials.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace pubcoin;

namespace {

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

std::optional<double> estimate_of(const Transcript& t) {
  auto it = t.report.find("estimate");
  if (it == t.report.end()) return std::nullopt;
  if (it->is_string()) return to_double(parse_rational(it->get<std::string>()));
  if (it->is_number()) return it->get<double>();
  return std::nullopt;
}

struct RunOptions {
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string transcript_path;
  std::string csv_path;
  std::string summary_path;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--trials", trials, "number of protocol runs")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "master seed");
    cmd->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--transcript", transcript_path, "write the transcript of trial 0 here");
    cmd->add_option("--csv", csv_path, "write one row per trial here");
    cmd->add_option("--summary", summary_path, "write the summary JSON here (default stdout)");
  }
};

using SessionFn = std::function<Transcript(std::uint64_t seed)>;

void run_batch(const std::string& label, const RunOptions& opt, const SessionFn& session, json extra = json::object()) {
  TrialReport report = run_trials(
      label, opt.trials, opt.seed,
      [&](std::uint64_t seed) {
        Transcript t = session(seed);
        return row_from_transcript(t, estimate_of(t));
      },
      opt.threads);
  if (!opt.transcript_path.empty()) write_text(opt.transcript_path, session(derive_seed(opt.seed, 0)).to_json().dump(2) + "\n");
  if (!opt.csv_path.empty()) write_text(opt.csv_path, report.to_csv());
  json summary = report.to_json();
  json checks = json::object();
  for (const auto& r : report.rows) {
    if (!r.accepted) checks[r.failed_check] = checks.value(r.failed_check, 0) + 1;
  }
  summary["rejections_by_check"] = std::move(checks);
  for (auto& [k, v] : extra.items()) summary[k] = v;
  write_text(opt.summary_path, summary.dump(2) + "\n");
}

Rational rational_arg(const std::string& text) { return parse_rational(text); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Public-coin protocol laboratory: histograms, lower bounds, VerifyHist, heavy samples and hiding"};
  app.require_subcommand(1);

  std::string circuit_path, second_path, eps_text = "1/5", t_text;
  RunOptions opt;

  auto* dist_cmd = app.add_subcommand("dist", "exact output distribution of a circuit");
  dist_cmd->add_option("circuit", circuit_path)->required();

  auto* hist_cmd = app.add_subcommand("hist", "(eps, t)-histogram of a circuit");
  hist_cmd->add_option("circuit", circuit_path)->required();
  hist_cmd->add_option("--eps", eps_text, "bucket width, exact")->required();
  hist_cmd->add_option("--t", t_text, "last bucket index (default ceil(n/eps))");

  auto* wd_cmd = app.add_subcommand("wasserstein", "first Wasserstein distance of two histograms");
  wd_cmd->add_option("h1", circuit_path)->required();
  wd_cmd->add_option("h2", second_path)->required();

  std::string claims_path, prover_name = "honest", s_direct_text;
  auto* lb_cmd = app.add_subcommand("lb", "parallel lower bound protocol");
  lb_cmd->add_option("circuit", circuit_path)->required();
  lb_cmd->add_option("--claims", claims_path, "claims file: [{\"y\": bits, \"s\": size}]")->required();
  lb_cmd->add_option("--eps", eps_text, "approximation parameter");
  lb_cmd->add_option("--prover", prover_name)->check(CLI::IsMember({"honest", "lb-inflater"}));
  lb_cmd->add_option("--s-direct", s_direct_text, "largest claim checked by full listing (0 forces hashing)");
  opt.add_to(lb_cmd);

  std::string mode = "oracle", mass_text = "0";
  long long buckets = 1;
  auto* vh_cmd = app.add_subcommand("verifyhist", "VerifyHist on a claimed histogram");
  vh_cmd->add_option("circuit", circuit_path)->required();
  vh_cmd->add_option("histogram", second_path)->required();
  vh_cmd->add_option("--mode", mode)->check(CLI::IsMember({"oracle", "protocol"}));
  vh_cmd->add_option("--prover", prover_name)->check(CLI::IsMember({"honest", "lb-inflater", "hist-shifter"}));
  vh_cmd->add_option("--buckets", buckets, "hist-shifter: buckets to move (positive = lighter)");
  vh_cmd->add_option("--mass", mass_text, "hist-shifter: probability mass to move");
  opt.add_to(vh_cmd);

  std::string ph_text, puh_text, pyl_text, alpha0_text = "2", alpha_text, advice_text;
  bool sweep = false;
  auto* heavy_cmd = app.add_subcommand("heavy", "heavy samples protocol");
  heavy_cmd->add_option("circuit", circuit_path)->required();
  heavy_cmd->add_option("--pH", ph_text, "claimed heavy probability, or 'exact'")->required();
  heavy_cmd->add_option("--pUH", puh_text, "claimed uniform heavy probability, or 'exact'")->required();
  heavy_cmd->add_option("--eps", eps_text);
  heavy_cmd->add_option("--alpha0", alpha0_text, "base of the threshold grid");
  heavy_cmd->add_flag("--alpha-sweep", sweep, "run every threshold of the grid instead of sampling one per trial");
  heavy_cmd->add_option("--vh", mode, "VerifyHist mode")->check(CLI::IsMember({"oracle", "protocol"}));
  heavy_cmd->add_option("--prover", prover_name)
      ->check(CLI::IsMember({"honest", "lb-inflater", "hist-shifter", "near-threshold-liar"}));
  heavy_cmd->add_option("--buckets", buckets);
  heavy_cmd->add_option("--mass", mass_text);
  opt.add_to(heavy_cmd);

  std::string fraction_text = "1/2";
  auto* hide_cmd = app.add_subcommand("hide", "hiding protocol");
  hide_cmd->add_option("circuit", circuit_path)->required();
  hide_cmd->add_option("v", second_path, "nondeterministic verifier circuit")->required();
  hide_cmd->add_option("--pH", ph_text, "claimed heavy probability, or 'exact'")->required();
  hide_cmd->add_option("--pUH", puh_text, "or 'exact'")->required();
  hide_cmd->add_option("--pYL", pyl_text, "or 'exact'")->required();
  hide_cmd->add_option("--eps", eps_text);
  hide_cmd->add_option("--alpha", alpha_text, "heaviness threshold")->required();
  hide_cmd->add_option("--advice-gUY", advice_text, "advice (default: exact value)");
  hide_cmd->add_option("--prover", prover_name)
      ->check(CLI::IsMember({"honest", "yes-suppressor", "label-lightener", "honest-labels-wrong-pYL"}));
  hide_cmd->add_option("--fraction", fraction_text, "yes-suppressor: share of witnesses to drop");
  opt.add_to(hide_cmd);

  std::string lemma, band = "sqrt";
  std::size_t count = 1000;
  std::uint64_t lemma_seed = 1;
  auto* lemma_cmd = app.add_subcommand("lemma-check", "randomized checks of the analysis lemmas");
  lemma_cmd->add_option("lemma", lemma)
      ->required()
      ->check(CLI::IsMember({"prefix-weight", "random-threshold", "threshold-band", "gain-loss", "difference-transforms",
                             "bucket-bounds", "wasserstein-axioms"}));
  lemma_cmd->add_option("--n", count, "instances")->check(CLI::PositiveNumber);
  lemma_cmd->add_option("--seed", lemma_seed);
  lemma_cmd->add_option("--eps", eps_text, "threshold-band: eps with rational square root");
  lemma_cmd->add_option("--band", band, "threshold-band: sqrt (4 sqrt eps) or linear (4 eps)")
      ->check(CLI::IsMember({"sqrt", "linear"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (dist_cmd->parsed()) {
      print_json(exact_dist(Circuit::from_json(read_json(circuit_path))).to_json());
    } else if (hist_cmd->parsed()) {
      Circuit c = Circuit::from_json(read_json(circuit_path));
      Rational eps = rational_arg(eps_text);
      long long t = t_text.empty() ? default_t(c.n(), eps) : std::stoll(t_text);
      Histogram h = compute_histogram(exact_dist(c), BucketParams(eps, t));
      print_json(h.to_json());
    } else if (wd_cmd->parsed()) {
      Histogram a = Histogram::from_json(read_json(circuit_path));
      Histogram b = Histogram::from_json(read_json(second_path));
      Wasserstein w = wasserstein(a, b);
      print_json(json{{"right", to_string(w.right)}, {"left", to_string(w.left)}, {"total", to_string(w.total)},
                      {"total_float", to_double(w.total)}});
    } else if (lb_cmd->parsed()) {
      auto know = make_knowledge(Circuit::from_json(read_json(circuit_path)));
      LBInstance inst{know, rational_arg(eps_text), LBInstance::claims_from_json(read_json(claims_path), know->m())};
      LBConfig config;
      if (!s_direct_text.empty()) config.s_direct = rational_arg(s_direct_text);
      run_batch("lb/" + prover_name, opt, [&](std::uint64_t seed) {
        auto prover = adversary(prover_name, {}, know);
        return run_lowerbound(inst, *prover, seed, config);
      });
    } else if (vh_cmd->parsed()) {
      auto know = make_knowledge(Circuit::from_json(read_json(circuit_path)));
      VHInstance inst{know, Histogram::from_json(read_json(second_path))};
      VHMode vh_mode = mode == "protocol" ? VHMode::interactive() : VHMode::oracle();
      AdversaryParams params;
      params.buckets = buckets;
      params.mass = rational_arg(mass_text);
      json extra{{"oracle_verdict", to_string(decide_oracle(inst))}};
      run_batch("verifyhist/" + prover_name, opt, [&](std::uint64_t seed) {
        auto prover = adversary(prover_name, params, know);
        return run_verifyhist(inst, vh_mode, *prover, seed);
      }, extra);
    } else if (heavy_cmd->parsed()) {
      auto know = make_knowledge(Circuit::from_json(read_json(circuit_path)));
      const Rational eps = rational_arg(eps_text);
      ThresholdDist td = ThresholdDist::unchecked(rational_arg(alpha0_text), 4 * eps);
      VHMode vh_mode = mode == "protocol" ? VHMode::interactive() : VHMode::oracle();
      AdversaryParams params;
      params.buckets = buckets;
      params.mass = rational_arg(mass_text);
      params.eps = eps;
      auto instance_for = [&](const Rational& alpha) {
        GammaProbs g = gamma_probs(know->dist(), std::vector<bool>(std::size_t{1} << know->m(), false), alpha);
        return HeavyInstance{know, ph_text == "exact" ? g.gH : rational_arg(ph_text),
                             puh_text == "exact" ? g.gUH : rational_arg(puh_text), eps, alpha};
      };
      auto one = [&](const Rational& alpha, std::uint64_t seed) {
        HeavyInstance inst = instance_for(alpha);
        AdversaryParams p = params;
        p.alpha = alpha;
        auto prover = adversary(prover_name, p, know);
        Transcript t = run_heavy_samples(inst, vh_mode, *prover, seed);
        t.report["alpha"] = to_string(alpha);
        return t;
      };
      if (sweep) {
        json rows = json::array();
        std::size_t accepted = 0;
        for (std::size_t i = 0; i < td.support().size(); ++i) {
          const Rational& alpha = td.support()[i];
          Transcript t = one(alpha, derive_seed(opt.seed, i));
          accepted += t.accepted ? 1 : 0;
          rows.push_back({{"alpha", to_string(alpha)},
                          {"band_mass", to_string(mass_near_threshold(know->dist(), alpha, 4 * eps))},
                          {"accepted", t.accepted},
                          {"failed_check", t.failed_check},
                          {"estimate", t.report.value("estimate", "")}});
        }
        write_text(opt.summary_path,
                   json{{"label", "heavy-sweep/" + prover_name}, {"alphas", td.support().size()}, {"accepts", accepted},
                        {"rows", std::move(rows)}}
                           .dump(2) +
                       "\n");
      } else {
        run_batch("heavy/" + prover_name, opt, [&](std::uint64_t seed) {
          CoinStream alpha_coins(derive_seed(seed, 0xa1fa));
          return one(sample_threshold(td, alpha_coins), seed);
        });
      }
    } else if (hide_cmd->parsed()) {
      auto know = make_knowledge(Circuit::from_json(read_json(circuit_path)));
      auto v = std::make_shared<const NondetCircuit>(NondetCircuit::from_json(read_json(second_path)));
      const Rational alpha = rational_arg(alpha_text);
      GammaProbs g = gamma_probs(know->circuit(), *v, alpha);
      HideInstance inst{know,
                        v,
                        ph_text == "exact" ? g.gH : rational_arg(ph_text),
                        puh_text == "exact" ? g.gUH : rational_arg(puh_text),
                        pyl_text == "exact" ? g.gYL : rational_arg(pyl_text),
                        rational_arg(eps_text),
                        alpha,
                        advice_text.empty() ? g.gUY : rational_arg(advice_text)};
      AdversaryParams params;
      params.fraction = rational_arg(fraction_text);
      json extra{{"k", inst.k()}, {"gamma", {{"gH", to_string(g.gH)}, {"gUH", to_string(g.gUH)},
                                             {"gUY", to_string(g.gUY)}, {"gYL", to_string(g.gYL)}}}};
      run_batch("hide/" + prover_name, opt, [&](std::uint64_t seed) {
        auto prover = adversary(prover_name, params, know, v);
        return run_hiding(inst, *prover, seed);
      }, extra);
    } else if (lemma_cmd->parsed()) {
      CampaignResult r;
      if (lemma == "prefix-weight") {
        r = weighted_prefix_campaign(count, lemma_seed);
      } else if (lemma == "random-threshold") {
        r = random_threshold_campaign(count, lemma_seed, {Rational(1, 4), Rational(1, 8), Rational(1, 16)});
      } else if (lemma == "threshold-band") {
        r = threshold_band_campaign(count, lemma_seed, rational_arg(eps_text == "1/5" ? "1/1600" : eps_text),
                                    band == "sqrt");
      } else if (lemma == "gain-loss") {
        r = gain_loss_campaign(count, lemma_seed);
      } else if (lemma == "difference-transforms") {
        r = difference_transform_campaign(count, lemma_seed);
      } else if (lemma == "bucket-bounds") {
        r = bucket_bounds_campaign(count, lemma_seed);
      } else {
        r = wasserstein_axioms_campaign(count, lemma_seed);
      }
      print_json(r.to_json());
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
