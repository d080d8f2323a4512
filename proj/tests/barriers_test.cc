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

#include "ldphs/barriers.h"

#include <bit>
#include <cmath>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "ldphs/scheffe_graph.h"

namespace ldphs {
namespace {

TEST(LowerBoundGraphTest, RejectsSmallK) {
  EXPECT_THROW(BuildLowerBoundGraph(15, 1), UnsupportedSizeError);
  EXPECT_THROW(BuildLowerBoundGraph(4, 1), UnsupportedSizeError);
}

TEST(LowerBoundGraphTest, SampleSizes) {
  EXPECT_EQ(LowerBoundSampleSize(16), 32u);
  EXPECT_EQ(LowerBoundSampleSize(64), 314u);
  EXPECT_NEAR(AsymptoticDominationLowerBound(64), 512.0 / (8.0 * std::sqrt(6.0)), 1e-12);
}

TEST(LowerBoundGraphTest, OutDegreeAndEdgeRule) {
  for (std::size_t k : {16u, 20u}) {
    const auto cert = BuildLowerBoundGraph(k, 3);
    const auto& g = cert.graph;
    std::set<VertexId> r(cert.random_part.begin(), cert.random_part.end());
    EXPECT_EQ(r.size(), cert.sample_size);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      ASSERT_EQ(g.out_degree(v), k - 2);
      const VertexPair p = g.pair(v);
      for (std::size_t i = 0; i < k; ++i) {
        if (p.Contains(i)) continue;
        const VertexPair lo = VertexPair::Of(p.lo, i);
        const VertexPair hi = VertexPair::Of(p.hi, i);
        const bool lo_in = r.count(g.index(lo.lo, lo.hi)) > 0;
        const bool hi_in = r.count(g.index(hi.lo, hi.hi)) > 0;
        // Oracle: lexicographic comparison on the pairs themselves.
        const VertexPair target = lo_in && !hi_in   ? hi
                                  : !lo_in && hi_in ? lo
                                                    : std::min(lo, hi);
        EXPECT_TRUE(g.HasEdge(v, g.index(target.lo, target.hi)));
      }
    }
  }
}

TEST(LowerBoundGraphTest, EveryTriangleHasAnOutgoingEdge) {
  for (std::size_t k = 16; k <= 24; k += 4) {
    EXPECT_TRUE(EveryTriangleHasOutgoingEdge(BuildLowerBoundGraph(k, k).graph)) << k;
  }
}

TEST(LowerBoundGraphTest, ReproducibleAndCertified) {
  const auto a = BuildLowerBoundGraph(32, 8);
  const auto b = BuildLowerBoundGraph(32, 8);
  EXPECT_EQ(a.graph, b.graph);
  EXPECT_EQ(a.random_part, b.random_part);
  EXPECT_LE(static_cast<double>(a.max_overlap + 1), 2.0 * std::log2(32.0));
  EXPECT_GE(VerifyDominationLowerBound(a), a.implied_lower_bound - 1e-12);
}

TEST(LowerBoundGraphTest, BoundAtK64) {
  const auto cert = BuildLowerBoundGraph(64, 1);
  EXPECT_EQ(cert.sample_size, 314u);
  EXPECT_GE(cert.implied_lower_bound, AsymptoticDominationLowerBound(64));
  EXPECT_GE(VerifyDominationLowerBound(cert), 26.13);
}

TEST(LowerBoundGraphTest, ExactDominationMeetsBoundAtK16) {
  const auto cert = BuildLowerBoundGraph(16, 2);
  const auto gamma = ExactDominationNumber(cert.graph);
  ASSERT_TRUE(gamma.has_value());
  EXPECT_GE(static_cast<double>(*gamma), cert.implied_lower_bound);
}

TEST(ExactDominationTest, SmallGraphs) {
  // Empty digraph on k=4: every vertex must dominate itself.
  const PairDigraph empty(4, std::vector<std::vector<VertexId>>(6));
  EXPECT_EQ(ExactDominationNumber(empty), 6u);
  // A star from vertex 0.
  std::vector<std::vector<VertexId>> out(6);
  out[0] = {1, 2, 3, 4, 5};
  EXPECT_EQ(ExactDominationNumber(PairDigraph(4, out)), 1u);
  // Directed 6-cycle needs ceil(6/2) = 3.
  std::vector<std::vector<VertexId>> cycle(6);
  for (VertexId v = 0; v < 6; ++v) cycle[v] = {static_cast<VertexId>((v + 1) % 6)};
  EXPECT_EQ(ExactDominationNumber(PairDigraph(4, cycle)), 3u);
}

TEST(HadamardTest, MatchesPopcountOracle) {
  for (std::size_t n : {1u, 2u, 8u, 64u}) {
    const auto h = SylvesterHadamard(n);
    ASSERT_EQ(h.size(), n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const int expected = std::popcount(i & j) % 2 == 0 ? 1 : -1;
        ASSERT_EQ(h[i * n + j], expected);
      }
    }
  }
  EXPECT_THROW(SylvesterHadamard(12), UnsupportedSizeError);
}

TEST(HadamardTest, RowsAreOrthogonal) {
  const std::size_t n = 32;
  const auto h = SylvesterHadamard(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      int dot = 0;
      for (std::size_t x = 0; x < n; ++x) dot += h[a * n + x] * h[b * n + x];
      ASSERT_EQ(dot, a == b ? static_cast<int>(n) : 0);
    }
  }
}

TEST(FlatteningFamilyTest, ColumnsAtN8) {
  const auto fam = BuildFlatteningFamily(8);
  ASSERT_EQ(fam.f.size(), 8u);
  EXPECT_EQ(fam.f[0], DiscreteDistribution::Uniform(8));
  for (std::size_t j = 1; j < 8; ++j) {
    int high = 0;
    for (std::size_t x = 0; x < 8; ++x) {
      const double v = fam.f[j][x];
      EXPECT_TRUE(v == 0.0 || v == 0.25);
      high += v == 0.25;
    }
    EXPECT_EQ(high, 4);
    EXPECT_DOUBLE_EQ(L1Distance(fam.f[j], fam.f[0]), 1.0);
    for (std::size_t j2 = 1; j2 < 8; ++j2) {
      if (j2 != j) EXPECT_DOUBLE_EQ(L1Distance(fam.f[j], fam.f[j2]), 1.0);
    }
  }
  EXPECT_EQ(fam.All().size(), 16u);
  EXPECT_THROW(BuildFlatteningFamily(12), UnsupportedSizeError);
  EXPECT_THROW(BuildFlatteningFamily(4), UnsupportedSizeError);
}

TEST(StochasticMapTest, ValidatesColumns) {
  EXPECT_THROW(StochasticMap::FromMatrix(2, 2, {0.5, 0.5, 0.5}), DimensionError);
  EXPECT_THROW(StochasticMap::FromMatrix(2, 2, {0.5, 0.6, 0.5, 0.5}), ValidationError);
  EXPECT_THROW(StochasticMap::FromMatrix(2, 1, {1.5, -0.5}), ValidationError);
  const auto phi = StochasticMap::FromMatrix(2, 2, {1.0, 0.25, 0.0, 0.75});
  EXPECT_EQ(phi.Apply(std::vector<double>{0.5, 0.5}), (std::vector<double>{0.625, 0.375}));
}

TEST(FlatteningCheckTest, UniformMapCollapsesEverything) {
  const std::size_t n = 16, m = 10;
  const auto fam = BuildFlatteningFamily(n);
  const auto phi = StochasticMap::FromMatrix(m, n, std::vector<double>(m * n, 1.0 / m));
  const auto check = VerifyFlatteningViolation(phi, fam, 0.1);
  EXPECT_TRUE(check.flat);
  EXPECT_NEAR(check.min_distance, 0.0, 1e-15);
  EXPECT_TRUE(check.within_bound);
  EXPECT_DOUBLE_EQ(check.bound, 0.5);
}

TEST(FlatteningCheckTest, IdentityIsNotFlat) {
  const std::size_t n = 8;
  std::vector<double> id(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) id[i * n + i] = 1.0;
  const auto check =
      VerifyFlatteningViolation(StochasticMap::FromMatrix(n, n, id), BuildFlatteningFamily(n), 0.5);
  EXPECT_FALSE(check.flat);
  ASSERT_TRUE(check.violation.has_value());
  EXPECT_EQ(check.violation->distribution, 0u);
}

TEST(FrobeniusChainTest, IdentitiesHoldOnRandomFlatMaps) {
  Rng gen(4);
  const FlatMapStyle styles[] = {FlatMapStyle::kUniformEntries, FlatMapStyle::kBalancedSigns,
                                 FlatMapStyle::kHadamardAligned};
  for (std::size_t n : {8u, 16u, 64u}) {
    const auto fam = BuildFlatteningFamily(n);
    for (const auto style : styles) {
      const auto phi = RandomFlatMap(n, 8, 0.5, style, gen);
      const auto chain = ComputeFrobeniusChain(phi, fam);
      EXPECT_NEAR(chain.difference_matrix, chain.scaled_hadamard, 1e-12);
      EXPECT_NEAR(chain.scaled_hadamard, chain.map_over_n, 1e-12);
      EXPECT_LE(chain.map_over_n, chain.entry_bound + 1e-12);
    }
  }
}

// Every flat map sends some Hadamard column within 2/sqrt(n) of the uniform
// image.
TEST(FlatteningProperty, RandomFlatMapsCollapse) {
  for (std::size_t n : {8u, 32u, 128u}) {
    const auto summary = RunFlatteningTrials(n, 16, 0.3, 60, n);
    EXPECT_GT(summary.flat_trials, 0u);
    EXPECT_EQ(summary.bound_failures, 0u) << "n=" << n;
    EXPECT_LE(summary.worst_min_distance, summary.bound);
    EXPECT_LT(summary.max_frobenius_error, 1e-10);
    EXPECT_TRUE(summary.frobenius_bound_holds);
  }
}

}  // namespace
}  // namespace ldphs
