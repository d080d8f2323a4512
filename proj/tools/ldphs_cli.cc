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

// Command-line driver.
//
//   ldphs gen       --k --d --model --seed --out
//   ldphs graph     --in --phi --out
//   ldphs dominate  --in --phi --seed --out
//   ldphs select    --in --alpha --beta --epsilon --phi --seed --trials
//                   [--truth --mix --users | --samples] --out [--csv]
//   ldphs barrier lbgraph --k --seed --out
//   ldphs barrier flatten --n --m --alpha --trials --seed --out
//
// Exit codes: 0 success, 1 invariant or assertion failure, 2 usage or
// configuration error.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "ldphs/ldphs.h"

namespace {

using ldphs::Json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::size_t k = 8;
  std::size_t d = 16;
  std::size_t n = 16;
  std::size_t m = 0;
  double alpha = 0.5;
  double beta = 0.1;
  double epsilon = 1.0;
  double phi = ldphs::kDefaultPhi;
  std::optional<std::uint64_t> seed;
  std::size_t trials = 1;
  std::string model = "dirichlet-uniform";
  std::string in;
  std::string out;
  std::string csv;
  std::string samples;
  std::optional<std::size_t> truth;
  double mix = 0.0;
  std::size_t users = 0;
  unsigned threads = 0;
};

// Omitting --seed draws one and prints it so every run can be replayed.
std::uint64_t ResolveSeed(const Options& opt) {
  if (opt.seed) return *opt.seed;
  std::random_device rd;
  const std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  std::cout << "seed: " << seed << " (drawn; pass --seed " << seed << " to reproduce)\n";
  return seed;
}

void Emit(const Options& opt, const Json& doc) {
  if (opt.out.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    ldphs::WriteFile(opt.out, doc.dump(2) + "\n");
    std::cout << "wrote " << opt.out << "\n";
  }
}

int CmdGen(const Options& opt) {
  const std::uint64_t seed = ResolveSeed(opt);
  const ldphs::HypothesisSet q = ldphs::RandomHypothesisSet(opt.k, opt.d, seed, opt.model);
  if (opt.out.empty()) {
    std::cout << ldphs::HypothesisSetToJson(q).dump(2) << "\n";
  } else {
    ldphs::SaveHypothesisSet(q, opt.out);
  }
  std::cout << "k=" << q.k() << " d=" << q.domain_size() << " seed=" << seed
            << " model=" << opt.model << "\n";
  return kExitOk;
}

int CmdGraph(const Options& opt) {
  const ldphs::HypothesisSet q = ldphs::LoadHypothesisSet(opt.in);
  const ldphs::ScheffeGraph g = ldphs::BuildScheffeGraph(q, opt.phi);
  const ldphs::GraphStats stats = ldphs::ComputeGraphStats(g.graph());
  Json doc = ldphs::ScheffeGraphToJson(g);
  doc["stats"] = ldphs::GraphStatsToJson(stats);
  Emit(opt, doc);
  std::cout << "vertices=" << stats.vertices << " edges=" << stats.edges
            << " triangle_violations=" << stats.triangle_violations << "\n";
  bool indegree_ok = true;
  for (const auto& c : stats.low_indegree) {
    std::cout << "  in-degree < " << c.r << ": " << c.count << " vertices (bound 3kr = "
              << c.bound << ")\n";
    indegree_ok = indegree_ok && c.holds;
  }
  // Both structural guarantees are proven for phi = 1/6; a smaller phi only
  // adds edges, so they must hold there too.
  if (opt.phi <= ldphs::kDefaultPhi && (stats.triangle_violations > 0 || !indegree_ok)) {
    std::cerr << "structural check failed\n";
    return kExitFailure;
  }
  return kExitOk;
}

int CmdDominate(const Options& opt) {
  const std::uint64_t seed = ResolveSeed(opt);
  const Json input = ldphs::ParseJson(ldphs::ReadFile(opt.in), "'" + opt.in + "'");
  const auto start = std::chrono::steady_clock::now();
  std::optional<ldphs::ScheffeGraph> graph;
  if (input.contains("hypotheses")) {
    graph = ldphs::BuildScheffeGraph(ldphs::HypothesisSetFromJson(input), opt.phi);
  } else if (input.contains("edges")) {
    graph = ldphs::ScheffeGraphFromJson(input);
  } else {
    throw ldphs::ValidationError("'" + opt.in + "' is neither a hypothesis set nor a graph");
  }
  const ldphs::DominatingSetCertificate cert = ldphs::FindDominatingSet(*graph, seed);
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  Emit(opt, ldphs::CertificateToJson(cert, ms));
  std::cout << "|D|=" << cert.dominating_set.size() << " (R=" << cert.random_part.size()
            << ", B=" << cert.low_indegree_part.size() << ") bound 4k^1.5 sqrt(log2 k)="
            << cert.target_bound << " cap=" << cert.size_cap << " attempts=" << cert.attempts
            << "\n";
  if (!ldphs::VerifyDomination(*graph, cert.dominating_set)) {
    std::cerr << "certificate does not dominate the graph\n";
    return kExitFailure;
  }
  return kExitOk;
}

int CmdSelect(const Options& opt) {
  const ldphs::HypothesisSet q = ldphs::LoadHypothesisSet(opt.in);
  const std::uint64_t seed = ResolveSeed(opt);

  if (!opt.samples.empty()) {
    auto samples = ldphs::ParseSamples(ldphs::ReadFile(opt.samples));
    const auto population =
        ldphs::SimulatedPopulation::FromSamples(q.domain_size(), std::move(samples));
    const ldphs::SelectionConfig config{opt.alpha, opt.beta, opt.epsilon, opt.phi, seed};
    const ldphs::SelectionReport report = ldphs::SelectHypothesis(q, population, config);
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
    Emit(opt, ldphs::SelectionReportToJson(report));
    std::cout << "selected hypothesis " << report.selected_index << " (discrepancy "
              << report.selected_discrepancy << ")\n";
    return kExitOk;
  }

  ldphs::ExperimentConfig config;
  config.k = q.k();
  config.d = q.domain_size();
  config.alpha = opt.alpha;
  config.beta = opt.beta;
  config.epsilon = opt.epsilon;
  config.phi = opt.phi;
  config.seed = seed;
  config.trials = opt.trials;
  config.model = opt.model;
  config.truth = opt.truth;
  config.mix = opt.mix;
  config.users = opt.users;
  config.threads = opt.threads;
  const ldphs::ExperimentReport report = ldphs::RunSelectionTrials(q, config);
  Emit(opt, ldphs::ExperimentReportToJson(report));
  if (!opt.csv.empty()) ldphs::WriteFile(opt.csv, ldphs::ExperimentReportToCsv(report));
  std::cout << "trials=" << report.records.size() << " failures=" << report.failures
            << " failure_rate=" << report.failure_rate << " beta=" << report.beta
            << " limit=" << report.failure_limit << " users=" << report.planned_users << "\n";
  return report.WithinLimit() ? kExitOk : kExitFailure;
}

int CmdLowerBound(const Options& opt) {
  const std::uint64_t seed = ResolveSeed(opt);
  const ldphs::LowerBoundCertificate cert = ldphs::BuildLowerBoundGraph(opt.k, seed);
  const double verified = ldphs::VerifyDominationLowerBound(cert);
  const double asymptotic = ldphs::AsymptoticDominationLowerBound(opt.k);
  Emit(opt, ldphs::LowerBoundCertificateToJson(cert, verified));
  std::cout << "k=" << opt.k << " |R|=" << cert.sample_size << " t_max=" << cert.max_overlap
            << " implied=" << cert.implied_lower_bound << " verified=" << verified
            << " k^1.5/(8 sqrt(log2 k))=" << asymptotic << "\n";
  if (verified < cert.implied_lower_bound || cert.implied_lower_bound < asymptotic ||
      !ldphs::EveryTriangleHasOutgoingEdge(cert.graph)) {
    std::cerr << "lower-bound certificate failed verification\n";
    return kExitFailure;
  }
  return kExitOk;
}

int CmdFlatten(const Options& opt) {
  const std::uint64_t seed = ResolveSeed(opt);
  const std::size_t m = opt.m == 0 ? opt.n : opt.m;
  if (!(opt.alpha > 0.0 && opt.alpha < 1.0)) {
    throw ldphs::ConfigError("flattening alpha must lie in (0, 1)");
  }
  const ldphs::FlatteningTrialSummary s =
      ldphs::RunFlatteningTrials(opt.n, m, opt.alpha, opt.trials, seed);
  Emit(opt, ldphs::FlatteningSummaryToJson(s));
  std::cout << "n=" << s.n << " m=" << s.m << " flat maps=" << s.flat_trials << "/"
            << s.trials << " worst min distance=" << s.worst_min_distance
            << " bound 2/sqrt(n)=" << s.bound << "\n";
  if (s.bound_failures > 0 || s.max_frobenius_error > 1e-9 || !s.frobenius_bound_holds) {
    std::cerr << "flattening collapse check failed\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Locally private hypothesis selection over Scheffe graphs"};
  app.set_config("--config", "", "Read options from a TOML/INI file");
  app.require_subcommand(1);
  Options opt;

  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", opt.seed, "RNG seed (drawn and printed if omitted)");
  };
  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", opt.out, "Output path (stdout if omitted)");
  };
  auto positive = CLI::PositiveNumber;

  auto* gen = app.add_subcommand("gen", "Generate a random hypothesis set");
  gen->add_option("--k", opt.k, "Number of hypotheses")->check(CLI::Range(2, 1 << 20));
  gen->add_option("--d", opt.d, "Domain size")->check(CLI::Range(2, 1 << 24));
  gen->add_option("--model", opt.model, "dirichlet-uniform | sparse | point-mass-mixture")
      ->check(CLI::IsMember({"dirichlet-uniform", "sparse", "point-mass-mixture"}));
  add_seed(gen);
  add_out(gen);

  auto* graph = app.add_subcommand("graph", "Build the phi-Scheffe graph and report statistics");
  graph->add_option("--in", opt.in, "Hypothesis set JSON")->required();
  graph->add_option("--phi", opt.phi, "Edge threshold in (0, 1]");
  add_out(graph);

  auto* dominate = app.add_subcommand("dominate", "Find a dominating set of the Scheffe graph");
  dominate->add_option("--in", opt.in, "Hypothesis set or graph JSON")->required();
  dominate->add_option("--phi", opt.phi, "Edge threshold in (0, 1]");
  add_seed(dominate);
  add_out(dominate);

  auto* select = app.add_subcommand("select", "Run private hypothesis selection");
  select->add_option("--in", opt.in, "Hypothesis set JSON")->required();
  select->add_option("--alpha", opt.alpha, "Additive error target in (0, 2]");
  select->add_option("--beta", opt.beta, "Failure probability in (0, 1)");
  select->add_option("--epsilon", opt.epsilon, "Privacy budget")->check(positive);
  select->add_option("--phi", opt.phi, "Comparison constant in (0, 1]");
  select->add_option("--trials", opt.trials, "Number of seeded trials")->check(CLI::Range(1, 1 << 24));
  select->add_option("--model", opt.model, "Recorded in the report only");
  select->add_option("--truth", opt.truth, "Index of the hypothesis p is built around");
  select->add_option("--mix", opt.mix, "Weight of random noise mixed into p")->check(CLI::Range(0.0, 1.0));
  select->add_option("--users", opt.users, "Users per trial (default: planned n0)");
  select->add_option("--samples", opt.samples, "File with one domain point per line");
  select->add_option("--threads", opt.threads, "Worker threads (0 = all cores)");
  select->add_option("--csv", opt.csv, "Per-trial CSV table");
  add_seed(select);
  add_out(select);

  auto* barrier = app.add_subcommand("barrier", "Barrier constructions");
  barrier->require_subcommand(1);
  auto* lbgraph = barrier->add_subcommand("lbgraph", "Lower-bound digraph certificate");
  lbgraph->add_option("--k", opt.k, "Number of indices (>= 16)")->required();
  add_seed(lbgraph);
  add_out(lbgraph);
  auto* flatten = barrier->add_subcommand("flatten", "Flattening falsification trials");
  flatten->add_option("--n", opt.n, "Domain size, a power of 2 (>= 8)")->required();
  flatten->add_option("--m", opt.m, "Image domain size (default n)");
  flatten->add_option("--alpha", opt.alpha, "Flatness tolerance in (0, 1)");
  flatten->add_option("--trials", opt.trials, "Random maps to try")->check(CLI::Range(1, 1 << 24));
  add_seed(flatten);
  add_out(flatten);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen) return CmdGen(opt);
    if (*graph) return CmdGraph(opt);
    if (*dominate) return CmdDominate(opt);
    if (*select) return CmdSelect(opt);
    if (*lbgraph) return CmdLowerBound(opt);
    if (*flatten) return CmdFlatten(opt);
  } catch (const ldphs::InsufficientSamplesError& e) {
    std::cerr << "error: " << e.what() << " (required n0 = " << e.required() << ")\n";
    return kExitUsage;
  } catch (const ldphs::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ldphs::ArgumentError& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ldphs::DimensionError& e) {
    std::cerr << "dimension error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ldphs::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ldphs::UnsupportedSizeError& e) {
    std::cerr << "unsupported size: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ldphs::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
