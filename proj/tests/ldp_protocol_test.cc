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

#include "ldphs/ldp_protocol.h"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "ldphs/dist_core.h"

namespace ldphs {
namespace {

using ::testing::HasSubstr;

TEST(RandomizedResponseTest, KeepProbabilityClosedForms) {
  EXPECT_NEAR(KeepProbability(std::log(3.0)), 0.75, 1e-15);
  EXPECT_GE(KeepProbability(20.0), 1.0 - 1e-8);
  EXPECT_NEAR(KeepProbability(1.0), std::exp(1.0) / (std::exp(1.0) + 1.0), 1e-15);
}

TEST(RandomizedResponseTest, RejectsNonPositiveEpsilon) {
  Rng gen(1);
  EXPECT_THROW(RandomizedResponse(1, 0.0, gen), ConfigError);
  EXPECT_THROW(RandomizedResponse(1, -1.0, gen), ConfigError);
  EXPECT_THROW(RandomizedResponse(0, 1.0, gen), ArgumentError);
}

TEST(RandomizedResponseTest, EmpiricalKeepRate) {
  Rng gen(12345);
  const int calls = 1000000;
  int kept = 0;
  for (int i = 0; i < calls; ++i) kept += RandomizedResponse(1, 1.0, gen) == 1;
  EXPECT_NEAR(static_cast<double>(kept) / calls, std::exp(1.0) / (std::exp(1.0) + 1.0), 0.002);
}

TEST(RandomizedResponseTest, LargeEpsilonIsNearlyDeterministic) {
  Rng gen(3);
  for (int i = 0; i < 10000; ++i) {
    ASSERT_EQ(RandomizedResponse(-1, 20.0, gen), -1);
  }
}

TEST(ChannelPrivacyRatioTest, MatchesExpEpsilon) {
  EXPECT_NEAR(ChannelPrivacyRatio(std::log(3.0)), 3.0, 1e-12);
  EXPECT_NEAR(ChannelPrivacyRatio(1.0), std::exp(1.0), 1e-12);
  // Independent enumeration of P[out | in] from the closed-form channel.
  const double eps = 0.5;
  const double keep = std::exp(eps) / (std::exp(eps) + 1.0);
  const double p[2][2] = {{keep, 1 - keep}, {1 - keep, keep}};
  double worst = 0.0;
  for (int out = 0; out < 2; ++out)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) worst = std::max(worst, p[a][out] / p[b][out]);
  EXPECT_NEAR(worst, std::exp(eps), 1e-12);
  EXPECT_NEAR(ChannelPrivacyRatio(eps), worst, 1e-12);
}

TEST(RequiredBlockSizeTest, FormulaAndScaling) {
  const double c = (std::exp(1.0) + 1.0) / (std::exp(1.0) - 1.0);
  EXPECT_EQ(RequiredBlockSize(100, 0.1, 0.05, 1.0),
            static_cast<std::size_t>(std::ceil(2 * c * c * std::log(4000.0) / 0.01)));
  EXPECT_GE(RequiredBlockSize(1, 2.0, 0.999, 1.0), 1u);
  EXPECT_LE(RequiredBlockSize(1, 2.0, 0.999, 1.0), 10u);
  for (double alpha : {0.05, 0.1, 0.3}) {
    const auto l1 = static_cast<double>(RequiredBlockSize(20, alpha, 0.05, 0.7));
    const auto l2 = static_cast<double>(RequiredBlockSize(20, 2 * alpha, 0.05, 0.7));
    EXPECT_NEAR(l1 / 4.0, l2, 1.0);
  }
  EXPECT_THROW(RequiredBlockSize(0, 0.1, 0.05, 1.0), ArgumentError);
  EXPECT_THROW(RequiredBlockSize(3, 3.0, 0.05, 1.0), ConfigError);
}

TEST(SimulatedPopulationTest, SamplesAreReproducibleAndFollowP) {
  const auto p = DiscreteDistribution::FromProbabilities({0.1, 0.6, 0.3});
  const auto a = SimulatedPopulation::Sample(p, 200000, 8);
  const auto b = SimulatedPopulation::Sample(p, 200000, 8);
  EXPECT_EQ(a.Histogram(), b.Histogram());
  const auto h = a.Histogram();
  for (std::size_t x = 0; x < 3; ++x) {
    const double se = std::sqrt(p[x] * (1 - p[x]) / 200000.0);
    EXPECT_NEAR(h[x] / 200000.0, p[x], 5 * se);
  }
  ASSERT_TRUE(a.true_distribution().has_value());
  EXPECT_EQ(*a.true_distribution(), p);
}

TEST(SimulatedPopulationTest, FromSamplesValidatesDomain) {
  EXPECT_THROW(SimulatedPopulation::FromSamples(3, {0, 1, 3}), ValidationError);
  const auto pop = SimulatedPopulation::FromSamples(3, {0, 1, 2, 2});
  EXPECT_EQ(pop.user_count(), 4u);
  EXPECT_FALSE(pop.true_distribution().has_value());
}

TEST(RunProtocolTest, NearNoiselessPointMass) {
  const auto p = DiscreteDistribution::PointMass(4, 2);
  const auto pop = SimulatedPopulation::Sample(p, 1000, 1);
  const std::vector<SignedFunctional> queries = {SignedFunctional::FromSigns({-1, -1, 1, -1})};
  Rng gen(2);
  const auto result = RunProtocol(pop, queries, {20.0, 0.1, 0.05}, gen);
  EXPECT_EQ(result.estimates.block_size, 1000u);
  EXPECT_GE(result.estimates[0], 0.99);
  EXPECT_LE(result.estimates[0], 1.01);
  EXPECT_FALSE(result.warnings.empty());
}

TEST(RunProtocolTest, ConstantQueryIsUnbiased) {
  const auto p = DiscreteDistribution::FromProbabilities({0.2, 0.3, 0.5});
  const std::vector<SignedFunctional> queries = {SignedFunctional::Constant(3)};
  const int runs = 200;
  std::vector<double> est;
  for (int r = 0; r < runs; ++r) {
    const auto pop = SimulatedPopulation::Sample(p, 500, 1000 + r);
    Rng gen(r);
    est.push_back(RunProtocol(pop, queries, {1.0, 0.1, 0.05}, gen).estimates[0]);
  }
  const double mean = std::accumulate(est.begin(), est.end(), 0.0) / runs;
  double var = 0.0;
  for (double e : est) var += (e - mean) * (e - mean);
  var /= runs - 1;
  EXPECT_NEAR(mean, 1.0, 3.0 * std::sqrt(var / runs));
}

TEST(RunProtocolTest, SymmetricQueryOnUniform) {
  const auto p = DiscreteDistribution::Uniform(2);
  const auto pop = SimulatedPopulation::Sample(p, 100000, 4);
  const std::vector<SignedFunctional> queries = {SignedFunctional::FromSigns({1, -1})};
  Rng gen(5);
  EXPECT_NEAR(RunProtocol(pop, queries, {1.0, 0.1, 0.05}, gen).estimates[0], 0.0, 0.05);
}

TEST(RunProtocolTest, TranscriptStructure) {
  const auto p = DiscreteDistribution::FromProbabilities({0.25, 0.25, 0.5});
  const auto pop = SimulatedPopulation::Sample(p, 10, 6);
  Rng gen(7);
  std::vector<SignedFunctional> queries;
  for (int i = 0; i < 3; ++i) queries.push_back(SignedFunctional::Random(3, gen));
  const auto result = RunProtocol(pop, queries, {0.5, 0.1, 0.05}, gen);
  const auto& t = result.transcript;
  EXPECT_EQ(t.block_size, 3u);  // the tenth user is surplus
  ASSERT_EQ(t.records.size(), 9u);
  std::set<std::uint64_t> users;
  for (const auto& r : t.records) {
    EXPECT_TRUE(r.message == 1 || r.message == -1);
    EXPECT_EQ(r.query_index, r.user_id / 3);
    EXPECT_EQ(BlockAssignment(r.user_id, 3, 3), r.query_index);
    users.insert(r.user_id);
  }
  EXPECT_EQ(users.size(), 9u);
  EXPECT_FALSE(BlockAssignment(9, 3, 3).has_value());
  const auto recomputed = EstimatesFromTranscript(t, 0.5);
  EXPECT_EQ(recomputed.estimates, result.estimates.estimates);
  const double c = CorrectionFactor(0.5);
  for (double e : result.estimates.estimates) EXPECT_LE(std::abs(e), c + 1e-12);
  EXPECT_TRUE(result.warnings.empty());
}

TEST(RunProtocolTest, DeterministicGivenGenerator) {
  const auto p = DiscreteDistribution::Uniform(5);
  const auto pop = SimulatedPopulation::Sample(p, 5000, 9);
  std::vector<SignedFunctional> queries;
  Rng qgen(1);
  for (int i = 0; i < 4; ++i) queries.push_back(SignedFunctional::Random(5, qgen));
  Rng g1(42), g2(42);
  EXPECT_EQ(RunProtocol(pop, queries, {1.0, 0.1, 0.05}, g1).estimates.estimates,
            RunProtocol(pop, queries, {1.0, 0.1, 0.05}, g2).estimates.estimates);
}

TEST(RunProtocolTest, InsufficientUsers) {
  const auto pop = SimulatedPopulation::Sample(DiscreteDistribution::Uniform(2), 2, 1);
  const std::vector<SignedFunctional> queries(3, SignedFunctional::Constant(2));
  Rng gen(1);
  try {
    RunProtocol(pop, queries, {1.0, 0.1, 0.05}, gen);
    FAIL();
  } catch (const InsufficientSamplesError& e) {
    EXPECT_EQ(e.required(), 3u);
    EXPECT_THAT(e.what(), HasSubstr("3"));
  }
}

TEST(RunProtocolTest, RejectsMismatchedQueries) {
  const auto pop = SimulatedPopulation::Sample(DiscreteDistribution::Uniform(2), 20, 1);
  const std::vector<SignedFunctional> queries = {SignedFunctional::Constant(3)};
  Rng gen(1);
  EXPECT_THROW(RunProtocol(pop, queries, {1.0, 0.1, 0.05}, gen), DimensionError);
  EXPECT_THROW(RunProtocol(pop, std::vector<SignedFunctional>{}, {1.0, 0.1, 0.05}, gen),
               ArgumentError);
}

// c * m(x) has mean <p, T> for each user.
TEST(UnbiasednessProperty, PerUserCorrectedMessage) {
  Rng gen(77);
  for (int trial = 0; trial < 5; ++trial) {
    const auto p = RandomDistribution(6, HypothesisModel::kDirichletUniform, gen);
    const auto t = SignedFunctional::Random(6, gen);
    const double eps = 0.3 + 0.4 * trial;
    const auto pop = SimulatedPopulation::Sample(p, 200000, trial);
    const RandomizedResponder channel(eps);
    const double c = CorrectionFactor(eps);
    double sum = 0.0, sq = 0.0;
    for (std::size_t u = 0; u < pop.user_count(); ++u) {
      SplitMix64 stream = UserStream(99 + trial, u);
      const double v = c * pop.Respond(u, t, channel, stream);
      sum += v;
      sq += v * v;
    }
    const double n = static_cast<double>(pop.user_count());
    const double mean = sum / n;
    const double se = std::sqrt((sq / n - mean * mean) / n);
    EXPECT_NEAR(mean, Inner(p, t), 4.0 * se) << "trial " << trial;
  }
}

// Monte-Carlo calibration of the Hoeffding block size at |T| = 100.
TEST(ConcentrationProperty, BlockSizeMeetsFailureBudget) {
  const std::size_t num_queries = 100;
  const double alpha = 0.1, beta = 0.05, eps = 1.0;
  const std::size_t ell = RequiredBlockSize(num_queries, alpha, beta, eps);
  Rng gen(5);
  const auto p = RandomDistribution(12, HypothesisModel::kDirichletUniform, gen);
  std::vector<SignedFunctional> queries;
  for (std::size_t i = 0; i < num_queries; ++i) queries.push_back(SignedFunctional::Random(12, gen));
  const int runs = 40;
  int failures = 0;
  for (int r = 0; r < runs; ++r) {
    const auto pop = SimulatedPopulation::Sample(p, ell * num_queries, 500 + r);
    const auto est = RunProtocol(pop, queries, {eps, alpha, beta}, gen).estimates;
    bool failed = false;
    for (std::size_t i = 0; i < num_queries; ++i) {
      failed = failed || std::abs(est[i] - Inner(p, queries[i])) > alpha;
    }
    failures += failed;
  }
  // 99% binomial band around beta for 40 runs.
  EXPECT_LE(failures / static_cast<double>(runs),
            beta + 2.576 * std::sqrt(beta * (1 - beta) / runs));
}

}  // namespace
}  // namespace ldphs
