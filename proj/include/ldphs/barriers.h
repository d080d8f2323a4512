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

// Executable barrier constructions:
//
//  * A digraph G_k on the pairs of [k] that has the triangle structure of a
//    1/6-Scheffe graph yet needs ~k^{3/2}/(8 sqrt(log2 k)) vertices to
//    dominate, with a checkable certificate.
//  * The Hadamard family (E, F) on which every flat stochastic map collapses
//    some pair f_i, f_1 to l1 distance <= 2/sqrt(n).

#ifndef LDPHS_BARRIERS_H_
#define LDPHS_BARRIERS_H_

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ldphs/dist_core.h"
#include "ldphs/errors.h"
#include "ldphs/random.h"
#include "ldphs/scheffe_graph.h"

namespace ldphs {

// ---------------------------------------------------------------------------
// Lower-bound digraph.

inline constexpr std::size_t kMinLowerBoundK = 16;

struct LowerBoundCertificate {
  PairDigraph graph;
  std::vector<VertexId> random_part;   // R, sorted
  std::vector<std::size_t> overlaps;   // |I_v^R| per vertex
  std::size_t max_overlap = 0;         // t_max
  double implied_lower_bound = 0.0;    // |R| / (t_max + 1)
  std::size_t sample_size = 0;         // l = |R|
  int attempts = 0;
  std::uint64_t seed = 0;
};

// min(ceil(k^{3/2} sqrt(log2 k) / 4), C(k,2)).
inline std::size_t LowerBoundSampleSize(std::size_t k) {
  const double kd = static_cast<double>(k);
  const auto ell = static_cast<std::size_t>(
      std::ceil(0.25 * std::pow(kd, 1.5) * std::sqrt(std::log2(kd))));
  return std::min(ell, NumPairs(k));
}

// k^{3/2} / (8 sqrt(log2 k)).
inline double AsymptoticDominationLowerBound(std::size_t k) {
  const double kd = static_cast<double>(k);
  return std::pow(kd, 1.5) / (8.0 * std::sqrt(std::log2(kd)));
}

inline LowerBoundCertificate BuildLowerBoundGraph(std::size_t k, std::uint64_t seed,
                                                  int max_attempts = 64) {
  if (k < kMinLowerBoundK) {
    throw UnsupportedSizeError("lower-bound graph needs k >= " +
                               std::to_string(kMinLowerBoundK) + ", got " +
                               std::to_string(k));
  }
  const std::size_t num_vertices = NumPairs(k);
  const std::size_t ell = LowerBoundSampleSize(k);
  const double two_log_k = 2.0 * std::log2(static_cast<double>(k));
  // A probe graph only provides the pair <-> index mapping.
  const PairDigraph indexer(k, std::vector<std::vector<VertexId>>(num_vertices));

  std::vector<VertexId> all(num_vertices);
  std::iota(all.begin(), all.end(), VertexId{0});
  Rng gen(seed);
  std::vector<char> in_r(num_vertices);
  std::size_t best_t_max = 0;

  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    std::vector<VertexId> sampled;
    std::sample(all.begin(), all.end(), std::back_inserter(sampled), ell, gen);
    std::fill(in_r.begin(), in_r.end(), 0);
    for (VertexId v : sampled) in_r[v] = 1;

    std::vector<std::size_t> overlaps(num_vertices, 0);
    std::size_t t_max = 0;
    for (VertexId v = 0; v < num_vertices; ++v) {
      const VertexPair p = indexer.pair(v);
      for (std::size_t i = 0; i < k; ++i) {
        if (p.Contains(i)) continue;
        if (in_r[indexer.index(p.lo, i)] && in_r[indexer.index(p.hi, i)]) ++overlaps[v];
      }
      t_max = std::max(t_max, overlaps[v]);
    }
    best_t_max = attempt == 1 ? t_max : std::min(best_t_max, t_max);
    // Each vertex dominates at most t_max + 1 members of R; demanding
    // t_max + 1 <= 2 log2 k makes |R| / (t_max + 1) meet the asymptotic bound.
    if (static_cast<double>(t_max + 1) > two_log_k) continue;

    std::vector<std::vector<VertexId>> out(num_vertices);
    for (VertexId v = 0; v < num_vertices; ++v) {
      const VertexPair p = indexer.pair(v);
      for (std::size_t i = 0; i < k; ++i) {
        if (p.Contains(i)) continue;
        const VertexId via_lo = indexer.index(p.lo, i);  // {a, i}
        const VertexId via_hi = indexer.index(p.hi, i);  // {b, i}
        if (in_r[via_lo] && !in_r[via_hi]) {
          out[v].push_back(via_hi);
        } else if (!in_r[via_lo] && in_r[via_hi]) {
          out[v].push_back(via_lo);
        } else {
          // Indices follow lexicographic pair order.
          out[v].push_back(std::min(via_lo, via_hi));
        }
      }
    }

    LowerBoundCertificate cert;
    cert.graph = PairDigraph(k, std::move(out));
    std::sort(sampled.begin(), sampled.end());
    cert.random_part = std::move(sampled);
    cert.overlaps = std::move(overlaps);
    cert.max_overlap = t_max;
    cert.sample_size = ell;
    cert.implied_lower_bound =
        static_cast<double>(ell) / static_cast<double>(t_max + 1);
    cert.attempts = attempt;
    cert.seed = seed;
    return cert;
  }
  throw ResamplingExhaustedError(
      "no sample with max overlap + 1 <= 2 log2 k = " + std::to_string(two_log_k) +
      " after " + std::to_string(max_attempts) + " attempts (smallest max overlap " +
      std::to_string(best_t_max) + ")");
}

// |R| / max_v (members of R dominated by v), recomputed from the graph alone.
inline double VerifyDominationLowerBound(const PairDigraph& graph,
                                         std::span<const VertexId> random_part) {
  std::vector<char> in_r(graph.num_vertices(), 0);
  for (VertexId v : random_part) in_r.at(v) = 1;
  std::size_t most = 0;
  for (VertexId v = 0; v < graph.num_vertices(); ++v) {
    std::size_t count = in_r[v] ? 1 : 0;
    for (VertexId w : graph.out_neighbors(v)) count += in_r[w] ? 1 : 0;
    most = std::max(most, count);
  }
  if (most == 0) return 0.0;
  return static_cast<double>(random_part.size()) / static_cast<double>(most);
}

inline double VerifyDominationLowerBound(const LowerBoundCertificate& cert) {
  return VerifyDominationLowerBound(cert.graph, cert.random_part);
}

// True iff for every triple and every choice of the pair {j,j'} within it,
// {j,j'} sends an edge to {j,j''} or to {j',j''}.
inline bool EveryTriangleHasOutgoingEdge(const PairDigraph& g) {
  const std::size_t k = g.k();
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      for (std::size_t c = b + 1; c < k; ++c) {
        const std::size_t roles[3][3] = {{a, b, c}, {a, c, b}, {b, c, a}};
        for (const auto& r : roles) {
          const TriangleStructure s = CheckTriangle(g, r[0], r[1], r[2]);
          if (!s.toward_first && !s.toward_second) return false;
        }
      }
    }
  }
  return true;
}

// Exact domination number by branch and bound. Returns nullopt when the
// search exceeds `node_limit` nodes.
class ExactDominationSolver {
 public:
  explicit ExactDominationSolver(const PairDigraph& g) : n_(g.num_vertices()) {
    words_ = (n_ + 63) / 64;
    closed_out_.assign(n_, std::vector<std::uint64_t>(words_, 0));
    dominators_.assign(n_, {});
    for (VertexId v = 0; v < n_; ++v) {
      Set(closed_out_[v], v);
      dominators_[v].push_back(v);
      for (VertexId w : g.out_neighbors(v)) {
        Set(closed_out_[v], w);
        dominators_[w].push_back(v);
      }
      max_cover_ = std::max(max_cover_, g.out_degree(v) + 1);
    }
  }

  std::optional<std::size_t> Solve(std::size_t node_limit) {
    nodes_ = 0;
    node_limit_ = node_limit;
    aborted_ = false;
    best_ = Greedy();
    std::vector<std::uint64_t> covered(words_, 0);
    Search(covered, 0);
    if (aborted_) return std::nullopt;
    return best_;
  }

 private:
  static void Set(std::vector<std::uint64_t>& bits, std::size_t i) {
    bits[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  static bool Test(const std::vector<std::uint64_t>& bits, std::size_t i) {
    return (bits[i / 64] >> (i % 64)) & 1U;
  }

  std::size_t Gain(const std::vector<std::uint64_t>& covered, VertexId v) const {
    std::size_t gain = 0;
    for (std::size_t w = 0; w < words_; ++w) {
      gain += std::popcount(closed_out_[v][w] & ~covered[w]);
    }
    return gain;
  }

  std::size_t Greedy() const {
    std::vector<std::uint64_t> covered(words_, 0);
    std::size_t remaining = n_;
    std::size_t used = 0;
    while (remaining > 0) {
      VertexId best = 0;
      std::size_t best_gain = 0;
      for (VertexId v = 0; v < n_; ++v) {
        const std::size_t g = Gain(covered, v);
        if (g > best_gain) best_gain = g, best = v;
      }
      for (std::size_t w = 0; w < words_; ++w) covered[w] |= closed_out_[best][w];
      remaining -= best_gain;
      ++used;
    }
    return used;
  }

  // Uncovered vertices with pairwise disjoint dominator sets each need their
  // own dominator.
  std::size_t PackingBound(const std::vector<std::uint64_t>& covered) const {
    std::vector<char> blocked(n_, 0);
    std::size_t count = 0;
    for (VertexId w = 0; w < n_; ++w) {
      if (Test(covered, w)) continue;
      bool free = true;
      for (VertexId d : dominators_[w]) {
        if (blocked[d]) {
          free = false;
          break;
        }
      }
      if (!free) continue;
      ++count;
      for (VertexId d : dominators_[w]) blocked[d] = 1;
    }
    return count;
  }

  void Search(const std::vector<std::uint64_t>& covered, std::size_t depth) {
    if (aborted_) return;
    if (++nodes_ > node_limit_) {
      aborted_ = true;
      return;
    }
    std::size_t uncovered = 0;
    std::optional<VertexId> pick;
    std::size_t pick_options = SIZE_MAX;
    for (VertexId w = 0; w < n_; ++w) {
      if (Test(covered, w)) continue;
      ++uncovered;
      if (dominators_[w].size() < pick_options) {
        pick_options = dominators_[w].size();
        pick = w;
      }
    }
    if (uncovered == 0) {
      best_ = std::min(best_, depth);
      return;
    }
    const std::size_t by_size = (uncovered + max_cover_ - 1) / max_cover_;
    if (depth + std::max(by_size, PackingBound(covered)) >= best_) return;

    std::vector<VertexId> options = dominators_[*pick];
    std::sort(options.begin(), options.end(), [&](VertexId x, VertexId y) {
      return Gain(covered, x) > Gain(covered, y);
    });
    std::vector<std::uint64_t> next(words_);
    for (VertexId d : options) {
      for (std::size_t w = 0; w < words_; ++w) next[w] = covered[w] | closed_out_[d][w];
      Search(next, depth + 1);
      if (aborted_) return;
    }
  }

  std::size_t n_;
  std::size_t words_ = 0;
  std::vector<std::vector<std::uint64_t>> closed_out_;
  std::vector<std::vector<VertexId>> dominators_;
  std::size_t max_cover_ = 1;
  std::size_t best_ = 0;
  std::size_t nodes_ = 0;
  std::size_t node_limit_ = 0;
  bool aborted_ = false;
};

inline std::optional<std::size_t> ExactDominationNumber(
    const PairDigraph& g, std::size_t node_limit = 20'000'000) {
  return ExactDominationSolver(g).Solve(node_limit);
}

// ---------------------------------------------------------------------------
// Flattening counterexample.

inline bool IsPowerOfTwo(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Sylvester Hadamard matrix by recursive doubling, row-major n x n.
inline std::vector<int> SylvesterHadamard(std::size_t n) {
  if (!IsPowerOfTwo(n)) {
    throw UnsupportedSizeError("Hadamard size must be a power of 2, got " +
                               std::to_string(n));
  }
  std::vector<int> h = {1};
  for (std::size_t size = 1; size < n; size *= 2) {
    const std::size_t next = 2 * size;
    std::vector<int> doubled(next * next);
    for (std::size_t r = 0; r < size; ++r) {
      for (std::size_t c = 0; c < size; ++c) {
        const int v = h[r * size + c];
        doubled[r * next + c] = v;
        doubled[r * next + c + size] = v;
        doubled[(r + size) * next + c] = v;
        doubled[(r + size) * next + c + size] = -v;
      }
    }
    h = std::move(doubled);
  }
  return h;
}

struct FlatteningFamily {
  std::size_t n = 0;
  std::vector<int> hadamard;               // n x n, row-major
  std::vector<DiscreteDistribution> e;     // identity columns
  std::vector<DiscreteDistribution> f;     // f[0] uniform, f[j] from column j

  int h(std::size_t row, std::size_t col) const { return hadamard[row * n + col]; }

  // (E, F) as one list of 2n distributions.
  std::vector<DiscreteDistribution> All() const {
    std::vector<DiscreteDistribution> all(e);
    all.insert(all.end(), f.begin(), f.end());
    return all;
  }
};

inline constexpr std::size_t kMinFlatteningN = 8;

inline FlatteningFamily BuildFlatteningFamily(std::size_t n) {
  if (n < kMinFlatteningN || !IsPowerOfTwo(n)) {
    throw UnsupportedSizeError("flattening family needs n >= 8 and a power of 2, got " +
                               std::to_string(n));
  }
  FlatteningFamily fam;
  fam.n = n;
  fam.hadamard = SylvesterHadamard(n);
  for (std::size_t j = 0; j < n; ++j) fam.e.push_back(DiscreteDistribution::PointMass(n, j));
  fam.f.push_back(DiscreteDistribution::Uniform(n));
  const double high = 2.0 / static_cast<double>(n);
  for (std::size_t j = 1; j < n; ++j) {
    std::vector<double> column(n);
    for (std::size_t x = 0; x < n; ++x) column[x] = fam.h(x, j) > 0 ? high : 0.0;
    fam.f.push_back(DiscreteDistribution::FromProbabilities(std::move(column)));
  }
  return fam;
}

// Column-stochastic m x n matrix: column x is the output distribution of
// input x.
class StochasticMap {
 public:
  static StochasticMap FromMatrix(std::size_t rows, std::size_t cols,
                                  std::vector<double> entries) {
    if (entries.size() != rows * cols || rows == 0 || cols == 0) {
      throw DimensionError("stochastic map has the wrong number of entries");
    }
    for (std::size_t x = 0; x < cols; ++x) {
      double sum = 0.0;
      for (std::size_t y = 0; y < rows; ++y) {
        const double v = entries[y * cols + x];
        if (!(v >= 0.0)) {
          throw ValidationError("entry (" + std::to_string(y) + "," + std::to_string(x) +
                                ") is negative");
        }
        sum += v;
      }
      if (std::abs(sum - 1.0) > kSumTolerance) {
        throw ValidationError("column " + std::to_string(x) + " sums to " +
                              std::to_string(sum));
      }
    }
    return StochasticMap(rows, cols, std::move(entries));
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t y, std::size_t x) const { return entries_[y * cols_ + x]; }

  // phi * v for a vector on the input domain.
  std::vector<double> Apply(std::span<const double> v) const {
    internal::CheckSameSize(v.size(), cols_, "StochasticMap::Apply");
    std::vector<double> out(rows_, 0.0);
    for (std::size_t y = 0; y < rows_; ++y) {
      const double* row = &entries_[y * cols_];
      double sum = 0.0;
      for (std::size_t x = 0; x < cols_; ++x) sum += row[x] * v[x];
      out[y] = sum;
    }
    return out;
  }

  double FrobeniusSquared() const {
    double sum = 0.0;
    for (double v : entries_) sum += v * v;
    return sum;
  }

 private:
  StochasticMap(std::size_t rows, std::size_t cols, std::vector<double> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {}

  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> entries_;
};

struct FlatnessViolation {
  std::size_t distribution = 0;  // index into (E, F): e_j is j, f_j is n + j
  std::size_t row = 0;
  double value = 0.0;
};

struct FlatteningCheck {
  bool flat = false;
  std::optional<FlatnessViolation> violation;
  std::size_t min_index = 0;     // i >= 1 minimizing ||phi (f_i - f_0)||_1
  double min_distance = 0.0;
  double bound = 0.0;            // 2 / sqrt(n)
  bool within_bound = false;
};

// If phi is flat on (E, F), i.e. every image entry lies in
// [(1-alpha)/m, (1+alpha)/m], finds the Hadamard column whose image collapses
// onto the image of the uniform distribution. Otherwise reports the first
// entry that breaks flatness.
inline FlatteningCheck VerifyFlatteningViolation(const StochasticMap& phi,
                                                 const FlatteningFamily& fam,
                                                 double alpha) {
  if (phi.cols() != fam.n) {
    throw DimensionError("stochastic map has " + std::to_string(phi.cols()) +
                         " columns, family needs " + std::to_string(fam.n));
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (fam.n <= 4) throw UnsupportedSizeError("flattening check needs n > 4");

  FlatteningCheck check;
  check.bound = 2.0 / std::sqrt(static_cast<double>(fam.n));
  const double m = static_cast<double>(phi.rows());
  const double lo = (1.0 - alpha) / m;
  const double hi = (1.0 + alpha) / m;

  const auto all = fam.All();
  std::vector<std::vector<double>> images;
  images.reserve(all.size());
  for (std::size_t j = 0; j < all.size(); ++j) {
    images.push_back(phi.Apply(all[j].probs()));
    for (std::size_t y = 0; y < images.back().size(); ++y) {
      const double v = images.back()[y];
      if (v < lo || v > hi) {
        check.violation = FlatnessViolation{j, y, v};
        return check;
      }
    }
  }
  check.flat = true;

  const std::vector<double>& base = images[fam.n];  // phi f_0
  check.min_distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < fam.n; ++i) {
    const std::vector<double>& img = images[fam.n + i];
    double dist = 0.0;
    for (std::size_t y = 0; y < img.size(); ++y) dist += std::abs(img[y] - base[y]);
    if (dist < check.min_distance) {
      check.min_distance = dist;
      check.min_index = i;
    }
  }
  check.within_bound = check.min_distance <= check.bound;
  return check;
}

// The Frobenius-norm chain behind the collapse:
//   ||phi (f_0, f_1 - f_0, ..., f_{n-1} - f_0)||_F^2
//     = ||phi H / sqrt(n)||_F^2 / n = ||phi||_F^2 / n <= 4 / m
// (the last step only for maps with entries in [0, 2/m]).
struct FrobeniusChain {
  double difference_matrix = 0.0;
  double scaled_hadamard = 0.0;
  double map_over_n = 0.0;
  double map_squared = 0.0;  // ||phi||_F^2, at most 4n/m for such maps
  double entry_bound = 0.0;  // 4 / m
};

inline FrobeniusChain ComputeFrobeniusChain(const StochasticMap& phi,
                                            const FlatteningFamily& fam) {
  if (phi.cols() != fam.n) throw DimensionError("column count differs from n");
  const std::size_t n = fam.n;
  const double nd = static_cast<double>(n);
  FrobeniusChain chain;
  std::vector<double> column(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t x = 0; x < n; ++x) {
      column[x] = i == 0 ? fam.f[0][x] : fam.f[i][x] - fam.f[0][x];
    }
    for (double v : phi.Apply(column)) chain.difference_matrix += v * v;
    for (std::size_t x = 0; x < n; ++x) {
      column[x] = fam.h(x, i) / std::sqrt(nd);
    }
    for (double v : phi.Apply(column)) chain.scaled_hadamard += v * v;
  }
  chain.scaled_hadamard /= nd;
  chain.map_squared = phi.FrobeniusSquared();
  chain.map_over_n = chain.map_squared / nd;
  chain.entry_bound = 4.0 / static_cast<double>(phi.rows());
  return chain;
}

enum class FlatMapStyle {
  // i.i.d. entries in [(1-w)/m, (1+w)/m], w ~ U(0, alpha), columns
  // renormalized.
  kUniformEntries,
  // (1 + w s_yx)/m with each column of s a balanced random +-1 vector.
  kBalancedSigns,
  // (1 + w s_yx)/m with s built from Hadamard columns, the pattern that
  // best preserves the differences f_i - f_0.
  kHadamardAligned,
};

// Random map from [n] to [m]. It may still fail flatness at `alpha`
// (kUniformEntries after renormalization); callers reject those.
template <typename URBG>
StochasticMap RandomFlatMap(std::size_t n, std::size_t m, double alpha,
                            FlatMapStyle style, URBG& gen) {
  if (m < 2) throw ArgumentError("image domain needs m >= 2");
  const double md = static_cast<double>(m);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double w = alpha * unit(gen);
  std::vector<double> entries(m * n);
  switch (style) {
    case FlatMapStyle::kUniformEntries: {
      std::uniform_real_distribution<double> entry((1.0 - w) / md, (1.0 + w) / md);
      for (std::size_t x = 0; x < n; ++x) {
        double sum = 0.0;
        for (std::size_t y = 0; y < m; ++y) sum += entries[y * n + x] = entry(gen);
        for (std::size_t y = 0; y < m; ++y) entries[y * n + x] /= sum;
      }
      break;
    }
    case FlatMapStyle::kBalancedSigns: {
      if (m % 2 != 0) throw ArgumentError("balanced signs need even m");
      std::vector<int> signs(m);
      for (std::size_t y = 0; y < m; ++y) signs[y] = y < m / 2 ? 1 : -1;
      for (std::size_t x = 0; x < n; ++x) {
        std::shuffle(signs.begin(), signs.end(), gen);
        for (std::size_t y = 0; y < m; ++y) entries[y * n + x] = (1.0 + w * signs[y]) / md;
      }
      break;
    }
    case FlatMapStyle::kHadamardAligned: {
      if (!IsPowerOfTwo(m)) throw ArgumentError("Hadamard-aligned maps need m a power of 2");
      // Input x is sent along the balanced Hadamard column 1 + (x mod (m-1)).
      const std::vector<int> h = SylvesterHadamard(m);
      std::bernoulli_distribution flip(0.5);
      for (std::size_t x = 0; x < n; ++x) {
        const std::size_t c = 1 + (x % (m - 1));
        const int sign = flip(gen) ? 1 : -1;
        for (std::size_t y = 0; y < m; ++y) {
          entries[y * n + x] = (1.0 + w * sign * h[y * m + c]) / md;
        }
      }
      break;
    }
  }
  return StochasticMap::FromMatrix(m, n, std::move(entries));
}

struct FlatteningTrialSummary {
  std::size_t n = 0;
  std::size_t m = 0;
  double alpha = 0.0;
  std::size_t trials = 0;         // maps drawn
  std::size_t flat_trials = 0;    // maps that passed flatness
  std::size_t bound_failures = 0; // flat maps with min distance > 2/sqrt(n)
  double worst_min_distance = 0.0;
  double bound = 0.0;
  double max_frobenius_error = 0.0;  // worst deviation in the chain identities
  bool frobenius_bound_holds = true; // ||phi||_F^2 / n <= 4/m on flat maps
  std::uint64_t seed = 0;
};

// Draws `trials` maps cycling through the styles and records the worst
// collapse distance among the flat ones.
inline FlatteningTrialSummary RunFlatteningTrials(std::size_t n, std::size_t m,
                                                  double alpha, std::size_t trials,
                                                  std::uint64_t seed) {
  const FlatteningFamily fam = BuildFlatteningFamily(n);
  FlatteningTrialSummary summary;
  summary.n = n;
  summary.m = m;
  summary.alpha = alpha;
  summary.trials = trials;
  summary.seed = seed;
  summary.bound = 2.0 / std::sqrt(static_cast<double>(n));
  Rng gen(seed);
  const FlatMapStyle styles[] = {FlatMapStyle::kUniformEntries, FlatMapStyle::kBalancedSigns,
                                 FlatMapStyle::kHadamardAligned};
  const bool pow2 = IsPowerOfTwo(m);
  for (std::size_t t = 0; t < trials; ++t) {
    FlatMapStyle style = styles[t % 3];
    if (style == FlatMapStyle::kHadamardAligned && !pow2) style = FlatMapStyle::kUniformEntries;
    if (style == FlatMapStyle::kBalancedSigns && m % 2 != 0) style = FlatMapStyle::kUniformEntries;
    const StochasticMap phi = RandomFlatMap(n, m, alpha, style, gen);
    const FlatteningCheck check = VerifyFlatteningViolation(phi, fam, alpha);
    if (!check.flat) continue;
    ++summary.flat_trials;
    summary.worst_min_distance = std::max(summary.worst_min_distance, check.min_distance);
    if (!check.within_bound) ++summary.bound_failures;
    const FrobeniusChain chain = ComputeFrobeniusChain(phi, fam);
    summary.max_frobenius_error =
        std::max({summary.max_frobenius_error,
                  std::abs(chain.difference_matrix - chain.scaled_hadamard),
                  std::abs(chain.scaled_hadamard - chain.map_over_n)});
    if (chain.map_over_n > chain.entry_bound + 1e-12) summary.frobenius_bound_holds = false;
  }
  return summary;
}

}  // namespace ldphs

#endif  // LDPHS_BARRIERS_H_
