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

#include "ldphs/experiment.h"

#include <cmath>

#include <gtest/gtest.h>

namespace ldphs {
namespace {

TEST(BinomialUpperLimitTest, Arithmetic) {
  EXPECT_NEAR(BinomialUpperLimit(0.1, 800), 0.1 + 2.576 * std::sqrt(0.09 / 800), 1e-15);
  EXPECT_NEAR(BinomialUpperLimit(0.1, 800), 0.1273, 1e-4);
  EXPECT_DOUBLE_EQ(BinomialUpperLimit(0.0, 10), 0.0);
}

TEST(ExperimentConfigTest, Validation) {
  ExperimentConfig config;
  EXPECT_NO_THROW(config.Validate());
  config.trials = 0;
  EXPECT_THROW(config.Validate(), ConfigError);
  config.trials = 1;
  config.model = "gaussian";
  EXPECT_THROW(config.Validate(), ConfigError);
  config.model = "sparse";
  config.mix = 1.5;
  EXPECT_THROW(config.Validate(), ConfigError);
}

TEST(RunSelectionTrialsTest, SmallRunIsReproducible) {
  ExperimentConfig config;
  config.k = 3;
  config.d = 6;
  config.epsilon = 2.0;
  config.trials = 4;
  config.seed = 21;
  config.truth = 1;
  config.mix = 0.1;
  const auto q = RandomHypothesisSet(config.k, config.d, config.seed, config.model);
  const auto a = RunSelectionTrials(q, config);
  config.threads = 1;
  const auto b = RunSelectionTrials(q, config);
  ASSERT_EQ(a.records.size(), 4u);
  for (std::size_t t = 0; t < 4; ++t) {
    EXPECT_EQ(a.records[t].trial, t);
    EXPECT_EQ(a.records[t].selected_index, b.records[t].selected_index);
    EXPECT_DOUBLE_EQ(a.records[t].error, b.records[t].error);
    EXPECT_LE(a.records[t].opt, 0.1 * 2 + 1e-12);
    EXPECT_EQ(a.records[t].pass, a.records[t].error <= a.records[t].bound);
    EXPECT_LE(a.records[t].users_consumed, a.planned_users);
  }
  EXPECT_EQ(a.failures, b.failures);
  EXPECT_DOUBLE_EQ(a.failure_rate, a.failures / 4.0);
  EXPECT_EQ(ExperimentReportToCsv(a).substr(0, 5), "trial");
  EXPECT_EQ(ExperimentReportToJson(a)["trials"], 4);
}

TEST(RunSelectionTrialsTest, TruthOutsideSetIsAConfigError) {
  ExperimentConfig config;
  config.k = 3;
  config.d = 4;
  config.truth = 3;
  const auto q = RandomHypothesisSet(3, 4, 1, config.model);
  EXPECT_THROW(RunSelectionTrials(q, config), ConfigError);
}

TEST(GraphStatsTest, PointMassGraph) {
  std::vector<DiscreteDistribution> qs;
  for (std::size_t i = 0; i < 6; ++i) qs.push_back(DiscreteDistribution::PointMass(6, i));
  const auto g = BuildScheffeGraph(HypothesisSet(qs), kDefaultPhi);
  const auto stats = ComputeGraphStats(g.graph());
  EXPECT_EQ(stats.vertices, 15u);
  EXPECT_EQ(stats.edges, g.num_edges());
  EXPECT_EQ(stats.triangle_violations, 0u);
  EXPECT_EQ(stats.low_indegree.size(), 5u);
  for (const auto& c : stats.low_indegree) EXPECT_TRUE(c.holds);
  EXPECT_EQ(GraphStatsToJson(stats)["k"], 6);
}

}  // namespace
}  // namespace ldphs
