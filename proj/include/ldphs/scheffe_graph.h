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

// Scheffe graphs: digraphs on unordered pairs of hypothesis indices where
// an edge {i,i'} -> {j,j'} means the signed Scheffe set of (q_i, q_i')
// recovers at least a phi fraction of ||q_j - q_j'||_1. A dominating set of
// this graph yields a query family for the relaxed minimum distance
// estimator.

#ifndef LDPHS_SCHEFFE_GRAPH_H_
#define LDPHS_SCHEFFE_GRAPH_H_

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ldphs/dist_core.h"
#include "ldphs/errors.h"
#include "ldphs/parallel.h"
#include "ldphs/random.h"

namespace ldphs {

using VertexId = std::uint32_t;

// Unordered pair {lo, hi} of hypothesis indices, lo < hi.
struct VertexPair {
  std::uint32_t lo = 0;
  std::uint32_t hi = 0;

  static VertexPair Of(std::size_t a, std::size_t b) {
    if (a == b) throw ArgumentError("a vertex pair needs two distinct indices");
    return a < b ? VertexPair{static_cast<std::uint32_t>(a),
                              static_cast<std::uint32_t>(b)}
                 : VertexPair{static_cast<std::uint32_t>(b),
                              static_cast<std::uint32_t>(a)};
  }
  bool Contains(std::size_t j) const { return lo == j || hi == j; }

  friend auto operator<=>(const VertexPair&, const VertexPair&) = default;
};

inline std::size_t NumPairs(std::size_t k) { return k * (k - 1) / 2; }

// Digraph on the C(k,2) pairs of [k] with sorted out-neighbor lists and a
// parallel in-degree array. Self-loops are never stored.
class PairDigraph {
 public:
  PairDigraph() = default;

  // Builds from per-vertex out-neighbor lists; lists are sorted and
  // de-duplicated, self-loops dropped.
  PairDigraph(std::size_t k, std::vector<std::vector<VertexId>> out)
      : k_(k), out_(std::move(out)) {
    if (k < 2) throw ArgumentError("pair digraph needs k >= 2");
    if (out_.size() != NumPairs(k)) {
      throw DimensionError("adjacency has " + std::to_string(out_.size()) +
                           " rows, expected " + std::to_string(NumPairs(k)));
    }
    pairs_.reserve(NumPairs(k));
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) pairs_.push_back(VertexPair::Of(a, b));
    }
    in_degree_.assign(out_.size(), 0);
    for (std::size_t v = 0; v < out_.size(); ++v) {
      auto& list = out_[v];
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
      std::erase(list, static_cast<VertexId>(v));
      for (VertexId w : list) {
        if (w >= out_.size()) throw ArgumentError("edge target out of range");
        ++in_degree_[w];
      }
      num_edges_ += list.size();
    }
  }

  std::size_t k() const { return k_; }
  std::size_t num_vertices() const { return out_.size(); }
  std::size_t num_edges() const { return num_edges_; }

  VertexPair pair(VertexId v) const { return pairs_[v]; }
  const std::vector<VertexPair>& pairs() const { return pairs_; }

  bool Contains(const VertexPair& p) const {
    return p.lo < p.hi && p.hi < k_;
  }

  VertexId index(const VertexPair& p) const {
    if (!Contains(p)) {
      throw ArgumentError("pair {" + std::to_string(p.lo) + "," +
                          std::to_string(p.hi) + "} is not a vertex of a graph on k=" +
                          std::to_string(k_));
    }
    const std::size_t a = p.lo;
    return static_cast<VertexId>(a * (2 * k_ - a - 1) / 2 + (p.hi - a - 1));
  }
  VertexId index(std::size_t a, std::size_t b) const {
    return index(VertexPair::Of(a, b));
  }

  std::span<const VertexId> out_neighbors(VertexId v) const { return out_[v]; }
  std::size_t in_degree(VertexId v) const { return in_degree_[v]; }
  std::size_t out_degree(VertexId v) const { return out_[v].size(); }

  bool HasEdge(VertexId from, VertexId to) const {
    return std::binary_search(out_[from].begin(), out_[from].end(), to);
  }

  friend bool operator==(const PairDigraph& a, const PairDigraph& b) {
    return a.k_ == b.k_ && a.out_ == b.out_;
  }

 private:
  std::size_t k_ = 0;
  std::vector<std::vector<VertexId>> out_;
  std::vector<VertexPair> pairs_;
  std::vector<std::size_t> in_degree_;
  std::size_t num_edges_ = 0;
};

// The phi-Scheffe graph of a hypothesis set, with cached ||delta_v||_1.
class ScheffeGraph {
 public:
  ScheffeGraph(PairDigraph graph, double phi, std::vector<double> pair_norms)
      : graph_(std::move(graph)), phi_(phi), pair_norms_(std::move(pair_norms)) {}

  const PairDigraph& graph() const { return graph_; }
  double phi() const { return phi_; }
  double pair_norm(VertexId v) const { return pair_norms_[v]; }
  std::size_t k() const { return graph_.k(); }
  std::size_t num_vertices() const { return graph_.num_vertices(); }
  std::size_t num_edges() const { return graph_.num_edges(); }

 private:
  PairDigraph graph_;
  double phi_;
  std::vector<double> pair_norms_;
};

inline constexpr double kDefaultPhi = 1.0 / 6.0;

inline void ValidatePhi(double phi) {
  if (!(phi > 0.0 && phi <= 1.0)) {
    throw ConfigError("phi must lie in (0, 1], got " + std::to_string(phi));
  }
}

// Edge u -> w iff |<delta_w, S_u>| >= phi * ||delta_w||_1 (weak inequality).
// Each check costs O(1) after precomputing <q_j, S_u> for every vertex u and
// hypothesis j, since <delta_{ab}, S_u> = <q_a, S_u> - <q_b, S_u>.
inline ScheffeGraph BuildScheffeGraph(const HypothesisSet& q, double phi,
                                      unsigned threads = 0) {
  ValidatePhi(phi);
  const std::size_t k = q.k();
  const std::size_t num_vertices = NumPairs(k);

  std::vector<VertexPair> pairs;
  pairs.reserve(num_vertices);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) pairs.push_back(VertexPair::Of(a, b));
  }

  std::vector<double> norms(num_vertices);
  std::vector<double> projections(num_vertices * k);
  ParallelFor(
      num_vertices,
      [&](std::size_t u) {
        const auto [a, b] = pairs[u];
        norms[u] = L1Distance(q[a], q[b]);
        const SignedFunctional scheffe = SignedScheffeSet(q[a], q[b]);
        for (std::size_t j = 0; j < k; ++j) {
          projections[u * k + j] = Inner(q[j], scheffe);
        }
      },
      threads);

  std::vector<std::vector<VertexId>> out(num_vertices);
  ParallelFor(
      num_vertices,
      [&](std::size_t u) {
        const double* row = &projections[u * k];
        for (std::size_t w = 0; w < num_vertices; ++w) {
          if (w == u) continue;
          const auto [a, b] = pairs[w];
          if (std::abs(row[a] - row[b]) >= phi * norms[w]) {
            out[u].push_back(static_cast<VertexId>(w));
          }
        }
      },
      threads);

  return ScheffeGraph(PairDigraph(k, std::move(out)), phi, std::move(norms));
}

// ---------------------------------------------------------------------------
// Dominating sets.

// 4 k^{3/2} sqrt(log2 k); the size every returned certificate respects
// (after capping at the vertex count).
inline double DominationTargetBound(std::size_t k) {
  const double kd = static_cast<double>(k);
  return 4.0 * std::pow(kd, 1.5) * std::sqrt(std::log2(kd));
}

// Size of the random part: min(ceil(k^{3/2} sqrt(log2 k)), |V|).
inline std::size_t DominationSampleSize(std::size_t k) {
  const double kd = static_cast<double>(k);
  const auto ell =
      static_cast<std::size_t>(std::ceil(std::pow(kd, 1.5) * std::sqrt(std::log2(kd))));
  return std::min(ell, NumPairs(k));
}

// How out-neighbors of the random part are discovered.
enum class CoverageScan {
  // For v = {a,b} test only the candidates {a,i}, {b,i}, i not in v: O(k)
  // edge checks per sampled vertex.
  kAdjacentPairs,
  // Every stored out-neighbor.
  kAllOutNeighbors,
};

struct DominationOptions {
  CoverageScan scan = CoverageScan::kAdjacentPairs;
  int max_attempts = 64;
};

struct DominatingSetCertificate {
  std::vector<VertexPair> dominating_set;     // R u B, sorted
  std::vector<VertexPair> random_part;        // R
  std::vector<VertexPair> low_indegree_part;  // B: left uncovered by R
  int attempts = 0;
  double target_bound = 0.0;   // 4 k^{3/2} sqrt(log2 k), uncapped
  std::size_t size_cap = 0;    // min(floor(target_bound), |V|)
  std::size_t sample_size = 0; // |R|
  std::uint64_t seed = 0;
};

// Samples R uniformly without replacement, marks R and the out-neighbors of R
// as covered, and returns R together with every uncovered vertex. Resamples
// until the result fits within the size cap.
inline DominatingSetCertificate FindDominatingSet(
    const PairDigraph& g, std::uint64_t seed, const DominationOptions& options = {}) {
  const std::size_t k = g.k();
  const std::size_t num_vertices = g.num_vertices();
  DominatingSetCertificate cert;
  cert.seed = seed;
  cert.target_bound = DominationTargetBound(k);
  cert.size_cap = std::min(
      static_cast<std::size_t>(std::floor(cert.target_bound)), num_vertices);
  cert.sample_size = DominationSampleSize(k);

  std::vector<VertexId> all(num_vertices);
  std::iota(all.begin(), all.end(), VertexId{0});
  Rng gen(seed);
  std::vector<char> covered(num_vertices);
  std::vector<VertexId> sampled;

  for (int attempt = 1; attempt <= options.max_attempts; ++attempt) {
    sampled.clear();
    std::sample(all.begin(), all.end(), std::back_inserter(sampled),
                cert.sample_size, gen);
    std::fill(covered.begin(), covered.end(), 0);
    for (VertexId v : sampled) {
      covered[v] = 1;
      if (options.scan == CoverageScan::kAllOutNeighbors) {
        for (VertexId w : g.out_neighbors(v)) covered[w] = 1;
        continue;
      }
      const VertexPair p = g.pair(v);
      for (std::size_t i = 0; i < k; ++i) {
        if (p.Contains(i)) continue;
        for (std::size_t end : {std::size_t{p.lo}, std::size_t{p.hi}}) {
          const VertexId w = g.index(end, i);
          if (!covered[w] && g.HasEdge(v, w)) covered[w] = 1;
        }
      }
    }
    std::vector<VertexId> uncovered;
    for (VertexId w = 0; w < num_vertices; ++w) {
      if (!covered[w]) uncovered.push_back(w);
    }
    if (sampled.size() + uncovered.size() <= cert.size_cap) {
      cert.attempts = attempt;
      std::sort(sampled.begin(), sampled.end());
      for (VertexId v : sampled) cert.random_part.push_back(g.pair(v));
      for (VertexId v : uncovered) cert.low_indegree_part.push_back(g.pair(v));
      std::vector<VertexId> all_ids(sampled);
      all_ids.insert(all_ids.end(), uncovered.begin(), uncovered.end());
      std::sort(all_ids.begin(), all_ids.end());
      for (VertexId v : all_ids) cert.dominating_set.push_back(g.pair(v));
      return cert;
    }
  }
  throw ResamplingExhaustedError(
      "no dominating set within " + std::to_string(cert.size_cap) +
      " vertices after " + std::to_string(options.max_attempts) + " attempts");
}

inline DominatingSetCertificate FindDominatingSet(
    const ScheffeGraph& g, std::uint64_t seed, const DominationOptions& options = {}) {
  return FindDominatingSet(g.graph(), seed, options);
}

// True iff every vertex is in `dominating_set` or receives an edge from it.
inline bool VerifyDomination(const PairDigraph& g,
                             std::span<const VertexPair> dominating_set) {
  std::vector<char> dominated(g.num_vertices(), 0);
  for (const VertexPair& p : dominating_set) {
    const VertexId v = g.index(p);  // throws on foreign vertices
    dominated[v] = 1;
    for (VertexId w : g.out_neighbors(v)) dominated[w] = 1;
  }
  return std::all_of(dominated.begin(), dominated.end(),
                     [](char c) { return c != 0; });
}

inline bool VerifyDomination(const ScheffeGraph& g,
                             std::span<const VertexPair> dominating_set) {
  return VerifyDomination(g.graph(), dominating_set);
}

// ---------------------------------------------------------------------------
// Structural checks.

// Which triangle structures hold for the roles (j, j', j'') as given:
//   bidirectional:   {j,j''} <-> {j',j''}
//   toward_first:    {j,j'}  -> {j,j''}
//   toward_second:   {j,j'}  -> {j',j''}
// `violation` is set only if no assignment of the three indices to the roles
// satisfies any of the structures.
struct TriangleStructure {
  bool bidirectional = false;
  bool toward_first = false;
  bool toward_second = false;
  bool violation = false;

  bool Any() const { return bidirectional || toward_first || toward_second; }
};

namespace internal {

inline TriangleStructure TriangleRoles(const PairDigraph& g, std::size_t j,
                                       std::size_t j2, std::size_t j3) {
  const VertexId v12 = g.index(j, j2);
  const VertexId v13 = g.index(j, j3);
  const VertexId v23 = g.index(j2, j3);
  TriangleStructure s;
  s.bidirectional = g.HasEdge(v13, v23) && g.HasEdge(v23, v13);
  s.toward_first = g.HasEdge(v12, v13);
  s.toward_second = g.HasEdge(v12, v23);
  return s;
}

}  // namespace internal

inline TriangleStructure CheckTriangle(const PairDigraph& g, std::size_t j,
                                       std::size_t j2, std::size_t j3) {
  if (j >= g.k() || j2 >= g.k() || j3 >= g.k()) {
    throw ArgumentError("triangle index out of range");
  }
  if (j == j2 || j == j3 || j2 == j3) {
    throw ArgumentError("triangle indices must be distinct");
  }
  TriangleStructure s = internal::TriangleRoles(g, j, j2, j3);
  if (!s.Any()) {
    std::array<std::size_t, 3> roles = {j, j2, j3};
    std::sort(roles.begin(), roles.end());
    bool any = false;
    do {
      any = internal::TriangleRoles(g, roles[0], roles[1], roles[2]).Any();
    } while (!any && std::next_permutation(roles.begin(), roles.end()));
    s.violation = !any;
  }
  return s;
}

inline TriangleStructure CheckTriangle(const ScheffeGraph& g, std::size_t j,
                                       std::size_t j2, std::size_t j3) {
  return CheckTriangle(g.graph(), j, j2, j3);
}

// Number of index triples for which CheckTriangle reports a violation.
inline std::size_t CountTriangleViolations(const PairDigraph& g) {
  std::size_t violations = 0;
  for (std::size_t a = 0; a < g.k(); ++a) {
    for (std::size_t b = a + 1; b < g.k(); ++b) {
      for (std::size_t c = b + 1; c < g.k(); ++c) {
        if (CheckTriangle(g, a, b, c).violation) ++violations;
      }
    }
  }
  return violations;
}

// Number of vertices with in-degree < r.
inline std::size_t CountLowIndegree(const PairDigraph& g, double r) {
  if (!(r >= 1.0)) throw ArgumentError("r must be at least 1");
  std::size_t count = 0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (static_cast<double>(g.in_degree(v)) < r) ++count;
  }
  return count;
}

inline std::size_t CountLowIndegree(const ScheffeGraph& g, double r) {
  return CountLowIndegree(g.graph(), r);
}

// histogram[d] = number of vertices with in-degree d.
inline std::vector<std::size_t> InDegreeHistogram(const PairDigraph& g) {
  std::vector<std::size_t> histogram(g.num_vertices() == 0 ? 1 : g.num_vertices(), 0);
  for (VertexId v = 0; v < g.num_vertices(); ++v) ++histogram[g.in_degree(v)];
  while (histogram.size() > 1 && histogram.back() == 0) histogram.pop_back();
  return histogram;
}

// Labels for a triangle with leg a against legs b and c.
struct MetricTripleLabel {
  bool is_short = false;  // a <= b/2 and a <= c/2
  bool is_long = false;   // a > b/3 and a > c/3
};

inline MetricTripleLabel CheckMetricTriple(double a, double b, double c) {
  if (!(a >= 0.0 && b >= 0.0 && c >= 0.0)) {
    throw ArgumentError("triangle legs must be non-negative");
  }
  const double slack = 1e-12 * std::max(1.0, a + b + c);
  if (a > b + c + slack || b > a + c + slack || c > a + b + slack) {
    throw ArgumentError("legs violate the triangle inequality");
  }
  MetricTripleLabel label;
  label.is_short = a <= 0.5 * b && a <= 0.5 * c;
  label.is_long = a > b / 3.0 && a > c / 3.0;
  return label;
}

}  // namespace ldphs

#endif  // LDPHS_SCHEFFE_GRAPH_H_
