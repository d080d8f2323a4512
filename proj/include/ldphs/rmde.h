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

// Relaxed minimum distance estimation (RMDE) and the end-to-end private
// hypothesis selection pipeline:
//
//   Scheffe graph (phi = 1/6) -> dominating set -> query family
//     -> LDP estimates -> argmin_q sup_T |<q, T> - p_T|.
//
// With a family satisfying |<q - q', T>| >= phi ||q - q'||_1 for every pair,
// the selected hypothesis is within (1 + 2/phi) OPT + 2/phi * (max estimate
// error) of p.

#ifndef LDPHS_RMDE_H_
#define LDPHS_RMDE_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ldphs/dist_core.h"
#include "ldphs/errors.h"
#include "ldphs/ldp_protocol.h"
#include "ldphs/random.h"
#include "ldphs/scheffe_graph.h"

namespace ldphs {

struct QueryFamily {
  std::vector<SignedFunctional> tests;
  std::vector<VertexPair> origin;  // pair whose Scheffe set produced tests[i]
  double phi = 1.0;                // comparison constant the family certifies

  std::size_t size() const { return tests.size(); }
};

namespace internal {

inline void AppendUnique(QueryFamily& family, SignedFunctional test,
                         VertexPair origin) {
  if (std::find(family.tests.begin(), family.tests.end(), test) !=
      family.tests.end()) {
    return;
  }
  family.tests.push_back(std::move(test));
  family.origin.push_back(origin);
}

}  // namespace internal

// Scheffe sets of the dominating pairs, duplicates merged. Throws
// InvalidCertificateError unless the certificate dominates `graph`.
inline QueryFamily QueryFamilyFromDominatingSet(
    const HypothesisSet& q, const ScheffeGraph& graph,
    const DominatingSetCertificate& cert) {
  if (graph.k() != q.k()) {
    throw DimensionError("graph was built for a different number of hypotheses");
  }
  bool dominates = false;
  try {
    dominates = VerifyDomination(graph, cert.dominating_set);
  } catch (const ArgumentError& e) {
    throw InvalidCertificateError(std::string("certificate names a foreign vertex: ") +
                                  e.what());
  }
  if (!dominates) {
    throw InvalidCertificateError("certificate does not dominate the Scheffe graph");
  }
  QueryFamily family;
  family.phi = graph.phi();
  for (const VertexPair& p : cert.dominating_set) {
    internal::AppendUnique(family, SignedScheffeSet(q[p.lo], q[p.hi]), p);
  }
  return family;
}

// All C(k,2) Scheffe sets: the classical minimum distance estimator's family.
inline QueryFamily AllPairsFamily(const HypothesisSet& q) {
  QueryFamily family;
  family.phi = 1.0;
  for (std::size_t a = 0; a < q.k(); ++a) {
    for (std::size_t b = a + 1; b < q.k(); ++b) {
      internal::AppendUnique(family, SignedScheffeSet(q[a], q[b]),
                             VertexPair::Of(a, b));
    }
  }
  return family;
}

// Largest phi for which every pair has a test with
// |<q_j - q_j', T>| >= phi ||q_j - q_j'||_1. Pairs at distance zero impose
// nothing. Returns 0 for an empty family on a set with distinct members.
inline double ComparisonConstant(const HypothesisSet& q,
                                 const std::vector<SignedFunctional>& tests) {
  double phi = 1.0;
  for (std::size_t a = 0; a < q.k(); ++a) {
    for (std::size_t b = a + 1; b < q.k(); ++b) {
      const double norm = L1Distance(q[a], q[b]);
      if (norm == 0.0) continue;
      const DifferenceFunctional delta = Difference(q[a], q[b]);
      double best = 0.0;
      for (const auto& t : tests) best = std::max(best, std::abs(Inner(delta, t)));
      phi = std::min(phi, best / norm);
    }
  }
  return phi;
}

// Exhaustive check of the pairwise comparison condition at `phi`. A relative
// slack of 1e-12 absorbs summation-order differences against the graph's
// edge test.
inline bool SatisfiesComparisonCondition(const HypothesisSet& q,
                                         const std::vector<SignedFunctional>& tests,
                                         double phi) {
  for (std::size_t a = 0; a < q.k(); ++a) {
    for (std::size_t b = a + 1; b < q.k(); ++b) {
      const double norm = L1Distance(q[a], q[b]);
      const DifferenceFunctional delta = Difference(q[a], q[b]);
      const bool found = std::any_of(tests.begin(), tests.end(), [&](const auto& t) {
        return std::abs(Inner(delta, t)) >= phi * norm - 1e-12 * std::max(1.0, norm);
      });
      if (!found) return false;
    }
  }
  return true;
}

struct SelectionReport {
  std::size_t selected_index = 0;
  double selected_discrepancy = 0.0;
  std::vector<double> discrepancies;  // sup_T |<q_j, T> - p_T| per hypothesis
  std::size_t family_size = 0;
  std::size_t users_consumed = 0;
  std::size_t block_size = 0;
  std::optional<DominatingSetCertificate> certificate;
  std::vector<std::string> warnings;
};

// argmin_j sup_T |<q_j, T> - p_T|; ties go to the smallest index.
inline SelectionReport RmdeSelect(const HypothesisSet& q, const QueryFamily& family,
                                  const QueryEstimates& estimates) {
  if (family.tests.empty()) throw ArgumentError("query family is empty");
  if (estimates.size() != family.tests.size()) {
    throw IncompleteEstimatesError(
        "have " + std::to_string(estimates.size()) + " estimates for " +
        std::to_string(family.tests.size()) + " tests");
  }
  SelectionReport report;
  report.family_size = family.tests.size();
  report.block_size = estimates.block_size;
  report.users_consumed = estimates.block_size * family.tests.size();
  report.discrepancies.resize(q.k());
  for (std::size_t j = 0; j < q.k(); ++j) {
    double worst = 0.0;
    for (std::size_t t = 0; t < family.tests.size(); ++t) {
      worst = std::max(worst, std::abs(Inner(q[j], family.tests[t]) - estimates[t]));
    }
    report.discrepancies[j] = worst;
  }
  report.selected_index = static_cast<std::size_t>(
      std::min_element(report.discrepancies.begin(), report.discrepancies.end()) -
      report.discrepancies.begin());
  report.selected_discrepancy = report.discrepancies[report.selected_index];
  return report;
}

struct SelectionConfig {
  double alpha = 0.5;
  double beta = 0.1;
  double epsilon = 1.0;
  double phi = kDefaultPhi;
  std::uint64_t seed = 0;

  void Validate() const {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw ConfigError("alpha must lie in (0, 2]");
    if (!(beta > 0.0 && beta < 1.0)) throw ConfigError("beta must lie in (0, 1)");
    ValidateEpsilon(epsilon);
    ValidatePhi(phi);
  }

  // Per-query accuracy phi * alpha / 2, so the estimator's error term
  // 2/phi * (phi alpha / 2) is exactly alpha. Half of beta goes to estimation.
  PrivacyParams QueryPrivacyParams() const {
    return PrivacyParams{epsilon, phi * alpha / 2.0, beta / 2.0};
  }
};

// min(ceil(4 k^{3/2} sqrt(log2 k)), C(k,2)): the largest family the pipeline
// can produce.
inline std::size_t MaxFamilySize(std::size_t k) {
  const auto bound = static_cast<std::size_t>(std::ceil(DominationTargetBound(k)));
  return std::min(bound, NumPairs(k));
}

inline std::size_t PlanSampleSize(std::size_t k, const SelectionConfig& config) {
  config.Validate();
  if (k < 2) throw ConfigError("k must be at least 2");
  const std::size_t family = MaxFamilySize(k);
  const PrivacyParams params = config.QueryPrivacyParams();
  return family * RequiredBlockSize(family, params.alpha_query, params.beta,
                                    params.epsilon);
}

// Stream indices for seeds derived from SelectionConfig::seed.
inline constexpr std::uint64_t kDominationStream = 1;
inline constexpr std::uint64_t kProtocolStream = 2;

// Full pipeline. Every query is fixed (graph, dominating set and family are
// computed from Q alone) before any user message is generated.
inline SelectionReport SelectHypothesis(const HypothesisSet& q,
                                        const SimulatedPopulation& population,
                                        const SelectionConfig& config) {
  config.Validate();
  if (population.domain_size() != q.domain_size()) {
    throw DimensionError("population and hypotheses live on different domains");
  }
  const std::size_t required = PlanSampleSize(q.k(), config);
  if (population.user_count() < required) {
    throw InsufficientSamplesError(
        "selection needs " + std::to_string(required) + " users, got " +
            std::to_string(population.user_count()),
        required);
  }
  const ScheffeGraph graph = BuildScheffeGraph(q, config.phi);
  DominatingSetCertificate cert =
      FindDominatingSet(graph, DeriveSeed(config.seed, kDominationStream));
  const QueryFamily family = QueryFamilyFromDominatingSet(q, graph, cert);

  Rng gen(DeriveSeed(config.seed, kProtocolStream));
  ProtocolResult protocol =
      RunProtocol(population, family.tests, config.QueryPrivacyParams(), gen);

  SelectionReport report = RmdeSelect(q, family, protocol.estimates);
  report.certificate = std::move(cert);
  report.warnings = std::move(protocol.warnings);
  return report;
}

}  // namespace ldphs

#endif  // LDPHS_RMDE_H_
