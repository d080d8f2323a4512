//
// Copyright 2026 The LDPHS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Experiment orchestration shared by the CLI and the acceptance suite:
// seeded end-to-end selection trials and Scheffe graph statistics.

#ifndef LDPHS_EXPERIMENT_H_
#define LDPHS_EXPERIMENT_H_

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ldphs/dist_core.h"
#include "ldphs/errors.h"
#include "ldphs/ldp_protocol.h"
#include "ldphs/parallel.h"
#include "ldphs/random.h"
#include "ldphs/rmde.h"
#include "ldphs/scheffe_graph.h"

namespace ldphs {

// Upper end of a one-sided 99% normal-approximation band for a failure rate
// whose true value is at most `rate`.
inline double BinomialUpperLimit(double rate, std::size_t trials) {
  return rate + 2.576 * std::sqrt(rate * (1.0 - rate) / static_cast<double>(trials));
}

struct ExperimentConfig {
  std::size_t k = 8;
  std::size_t d = 16;
  double alpha = 0.5;
  double beta = 0.1;
  double epsilon = 1.0;
  double phi = kDefaultPhi;
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  std::string model = "dirichlet-uniform";
  // Population: p = (1 - mix) q_truth + mix * noise when truth is set,
  // otherwise a fresh Dirichlet draw per trial.
  std::optional<std::size_t> truth;
  double mix = 0.0;
  std::size_t users = 0;  // 0 = planned sample size
  unsigned threads = 0;

  SelectionConfig Selection(std::uint64_t trial_seed) const {
    return SelectionConfig{alpha, beta, epsilon, phi, trial_seed};
  }

  void Validate() const {
    Selection(seed).Validate();
    if (trials < 1) throw ConfigError("trials must be at least 1");
    if (k < 2) throw ConfigError("k must be at least 2");
    if (d < 2) throw ConfigError("d must be at least 2");
    if (!(mix >= 0.0 && mix <= 1.0)) throw ConfigError("mix must lie in [0, 1]");
    ParseHypothesisModel(model);
  }
};

struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double opt = 0.0;            // min_q ||q - p||_1
  double error = 0.0;          // ||q_hat - p||_1
  double bound = 0.0;          // (1 + 2/phi) OPT + alpha
  bool pass = false;
  std::size_t selected_index = 0;
  std::size_t users_consumed = 0;
  std::size_t dominating_set_size = 0;
  std::size_t family_size = 0;
  double wall_ms = 0.0;
};

struct ExperimentReport {
  std::vector<TrialRecord> records;  // sorted by trial index
  std::size_t failures = 0;
  double failure_rate = 0.0;         // failures / trials
  double beta = 0.0;
  double failure_limit = 0.0;        // BinomialUpperLimit(beta, trials)
  std::size_t planned_users = 0;

  bool WithinLimit() const { return failure_rate <= failure_limit; }
};

// The distribution that trial `trial` samples from.
inline DiscreteDistribution TrialTruth(const HypothesisSet& q,
                                       const ExperimentConfig& config,
                                       std::uint64_t trial_seed) {
  Rng gen(DeriveSeed(trial_seed, 7));
  const DiscreteDistribution noise =
      RandomDistribution(q.domain_size(), HypothesisModel::kDirichletUniform, gen);
  if (!config.truth) return noise;
  if (*config.truth >= q.k()) {
    throw ConfigError("truth index " + std::to_string(*config.truth) +
                      " is outside the hypothesis set of size " + std::to_string(q.k()));
  }
  return DiscreteDistribution::Mixture(q[*config.truth], noise, config.mix);
}

inline TrialRecord RunSelectionTrial(const HypothesisSet& q, const ExperimentConfig& config,
                                     std::size_t trial, std::size_t users) {
  const auto start = std::chrono::steady_clock::now();
  TrialRecord rec;
  rec.trial = trial;
  rec.seed = DeriveSeed(config.seed, trial);
  const DiscreteDistribution truth = TrialTruth(q, config, rec.seed);
  const SimulatedPopulation population =
      SimulatedPopulation::Sample(truth, users, DeriveSeed(rec.seed, 3));
  const SelectionReport report = SelectHypothesis(q, population, config.Selection(rec.seed));

  rec.opt = L1Distance(q[0], truth);
  for (const auto& h : q) rec.opt = std::min(rec.opt, L1Distance(h, truth));
  rec.error = L1Distance(q[report.selected_index], truth);
  rec.bound = (1.0 + 2.0 / config.phi) * rec.opt + config.alpha;
  rec.pass = rec.error <= rec.bound;
  rec.selected_index = report.selected_index;
  rec.users_consumed = report.users_consumed;
  rec.family_size = report.family_size;
  rec.dominating_set_size = report.certificate ? report.certificate->dominating_set.size() : 0;
  rec.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return rec;
}

// Runs config.trials independent seeded selections in parallel.
inline ExperimentReport RunSelectionTrials(const HypothesisSet& q,
                                           const ExperimentConfig& config) {
  config.Validate();
  ExperimentReport report;
  report.planned_users = PlanSampleSize(q.k(), config.Selection(config.seed));
  const std::size_t users = config.users == 0 ? report.planned_users : config.users;
  report.records.resize(config.trials);
  ParallelFor(
      config.trials,
      [&](std::size_t t) { report.records[t] = RunSelectionTrial(q, config, t, users); },
      config.threads);
  for (const auto& r : report.records) report.failures += r.pass ? 0 : 1;
  report.failure_rate =
      static_cast<double>(report.failures) / static_cast<double>(config.trials);
  report.beta = config.beta;
  report.failure_limit = BinomialUpperLimit(config.beta, config.trials);
  return report;
}

inline nlohmann::json ExperimentReportToJson(const ExperimentReport& r) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& t : r.records) {
    records.push_back({{"trial", t.trial},
                       {"seed", t.seed},
                       {"opt", t.opt},
                       {"error", t.error},
                       {"bound", t.bound},
                       {"pass", t.pass},
                       {"selected_index", t.selected_index},
                       {"users_consumed", t.users_consumed},
                       {"dominating_set_size", t.dominating_set_size},
                       {"family_size", t.family_size},
                       {"wall_ms", t.wall_ms}});
  }
  return {{"trials", r.records.size()},
          {"failures", r.failures},
          {"failure_rate", r.failure_rate},
          {"beta", r.beta},
          {"failure_limit", r.failure_limit},
          {"planned_users", r.planned_users},
          {"records", records}};
}

inline std::string ExperimentReportToCsv(const ExperimentReport& r) {
  std::string out =
      "trial,seed,opt,error,bound,pass,selected_index,users_consumed,"
      "dominating_set_size,family_size,wall_ms\n";
  char line[256];
  for (const auto& t : r.records) {
    std::snprintf(line, sizeof(line), "%zu,%llu,%.17g,%.17g,%.17g,%d,%zu,%zu,%zu,%zu,%.3f\n",
                  t.trial, static_cast<unsigned long long>(t.seed), t.opt, t.error,
                  t.bound, t.pass ? 1 : 0, t.selected_index, t.users_consumed,
                  t.dominating_set_size, t.family_size, t.wall_ms);
    out += line;
  }
  return out;
}

struct LowIndegreeCheck {
  double r = 0.0;
  std::size_t count = 0;
  double bound = 0.0;  // 3 k r
  bool holds = false;
};

struct GraphStats {
  std::size_t k = 0;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::vector<std::size_t> in_degree_histogram;
  std::size_t triangle_violations = 0;
  std::vector<LowIndegreeCheck> low_indegree;
};

// In-degree thresholds checked against 3kr: 1, 2, 4, 8 and sqrt(k log2 k).
inline std::vector<double> LowIndegreeSweep(std::size_t k) {
  const double kd = static_cast<double>(k);
  return {1.0, 2.0, 4.0, 8.0, std::max(1.0, std::sqrt(kd * std::log2(kd)))};
}

inline GraphStats ComputeGraphStats(const PairDigraph& g) {
  GraphStats s;
  s.k = g.k();
  s.vertices = g.num_vertices();
  s.edges = g.num_edges();
  s.in_degree_histogram = InDegreeHistogram(g);
  s.triangle_violations = CountTriangleViolations(g);
  for (double r : LowIndegreeSweep(g.k())) {
    LowIndegreeCheck c;
    c.r = r;
    c.count = CountLowIndegree(g, r);
    c.bound = 3.0 * static_cast<double>(g.k()) * r;
    c.holds = static_cast<double>(c.count) <= c.bound;
    s.low_indegree.push_back(c);
  }
  return s;
}

inline nlohmann::json GraphStatsToJson(const GraphStats& s) {
  nlohmann::json sweep = nlohmann::json::array();
  for (const auto& c : s.low_indegree) {
    sweep.push_back({{"r", c.r}, {"count", c.count}, {"bound", c.bound}, {"holds", c.holds}});
  }
  return {{"k", s.k},
          {"vertices", s.vertices},
          {"edges", s.edges},
          {"in_degree_histogram", s.in_degree_histogram},
          {"triangle_violations", s.triangle_violations},
          {"low_indegree", sweep}};
}

}  // namespace ldphs

#endif  // LDPHS_EXPERIMENT_H_
