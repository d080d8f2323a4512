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

// Finite discrete distributions, difference functionals, signed Scheffe
// sets and the l1 geometry that the rest of the library is built on.
//
// Domain points are 0-based: a distribution on a domain of size d assigns
// mass to points 0..d-1.

#ifndef LDPHS_DIST_CORE_H_
#define LDPHS_DIST_CORE_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ldphs/errors.h"
#include "ldphs/random.h"

namespace ldphs {

inline constexpr double kSumTolerance = 1e-9;

namespace internal {

inline void CheckSameSize(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": domain sizes differ (" +
                         std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace internal

// Probability vector over a finite domain. Immutable once built.
class DiscreteDistribution {
 public:
  // Validates non-negativity and sum-to-one (within kSumTolerance). Never
  // renormalizes; use Normalized() for that.
  static DiscreteDistribution FromProbabilities(std::vector<double> probs) {
    if (probs.empty()) {
      throw ValidationError("distribution must have a non-empty domain");
    }
    double sum = 0.0;
    for (std::size_t x = 0; x < probs.size(); ++x) {
      if (!std::isfinite(probs[x]) || probs[x] < 0.0) {
        throw ValidationError("coordinate " + std::to_string(x) +
                              " is negative or not finite");
      }
      sum += probs[x];
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
      throw ValidationError("probabilities sum to " + std::to_string(sum) +
                            ", not 1");
    }
    return DiscreteDistribution(std::move(probs));
  }

  // Explicit renormalization of non-negative weights with positive sum.
  static DiscreteDistribution Normalized(std::vector<double> weights) {
    double sum = 0.0;
    for (double w : weights) {
      if (!std::isfinite(w) || w < 0.0) {
        throw ValidationError("weights must be finite and non-negative");
      }
      sum += w;
    }
    if (weights.empty() || sum <= 0.0) {
      throw ValidationError("weights must have a positive sum");
    }
    for (double& w : weights) w /= sum;
    return DiscreteDistribution(std::move(weights));
  }

  static DiscreteDistribution PointMass(std::size_t domain_size,
                                        std::size_t point) {
    if (point >= domain_size) {
      throw ArgumentError("point mass location outside the domain");
    }
    std::vector<double> probs(domain_size, 0.0);
    probs[point] = 1.0;
    return DiscreteDistribution(std::move(probs));
  }

  static DiscreteDistribution Uniform(std::size_t domain_size) {
    if (domain_size == 0) throw ArgumentError("empty domain");
    return DiscreteDistribution(
        std::vector<double>(domain_size, 1.0 / static_cast<double>(domain_size)));
  }

  // (1 - weight) * a + weight * b.
  static DiscreteDistribution Mixture(const DiscreteDistribution& a,
                                      const DiscreteDistribution& b,
                                      double weight) {
    internal::CheckSameSize(a.domain_size(), b.domain_size(), "Mixture");
    if (!(weight >= 0.0 && weight <= 1.0)) {
      throw ArgumentError("mixture weight must lie in [0, 1]");
    }
    std::vector<double> probs(a.domain_size());
    for (std::size_t x = 0; x < probs.size(); ++x) {
      probs[x] = (1.0 - weight) * a[x] + weight * b[x];
    }
    return DiscreteDistribution(std::move(probs));
  }

  std::size_t domain_size() const { return probs_.size(); }
  std::span<const double> probs() const { return probs_; }
  double operator[](std::size_t x) const { return probs_[x]; }

  friend bool operator==(const DiscreteDistribution&,
                         const DiscreteDistribution&) = default;

 private:
  explicit DiscreteDistribution(std::vector<double> probs)
      : probs_(std::move(probs)) {}

  std::vector<double> probs_;
};

// Ordered collection of k >= 2 distributions on one shared domain.
class HypothesisSet {
 public:
  explicit HypothesisSet(std::vector<DiscreteDistribution> hypotheses)
      : hypotheses_(std::move(hypotheses)) {
    if (hypotheses_.size() < 2) {
      throw ValidationError("a hypothesis set needs at least 2 distributions");
    }
    for (std::size_t j = 1; j < hypotheses_.size(); ++j) {
      if (hypotheses_[j].domain_size() != hypotheses_[0].domain_size()) {
        throw DimensionError("hypothesis " + std::to_string(j) +
                             " has domain size " +
                             std::to_string(hypotheses_[j].domain_size()) +
                             ", expected " +
                             std::to_string(hypotheses_[0].domain_size()));
      }
    }
  }

  std::size_t k() const { return hypotheses_.size(); }
  std::size_t domain_size() const { return hypotheses_[0].domain_size(); }
  const DiscreteDistribution& operator[](std::size_t j) const {
    return hypotheses_[j];
  }
  const std::vector<DiscreteDistribution>& hypotheses() const {
    return hypotheses_;
  }
  auto begin() const { return hypotheses_.begin(); }
  auto end() const { return hypotheses_.end(); }

  friend bool operator==(const HypothesisSet&, const HypothesisSet&) = default;

 private:
  std::vector<DiscreteDistribution> hypotheses_;
};

// A {-1, +1}-valued vector on the domain: a signed Scheffe set or a query.
class SignedFunctional {
 public:
  static SignedFunctional FromSigns(std::span<const int> signs) {
    std::vector<int8_t> out(signs.size());
    for (std::size_t x = 0; x < signs.size(); ++x) {
      if (signs[x] != 1 && signs[x] != -1) {
        throw ValidationError("sign at coordinate " + std::to_string(x) +
                              " is not +1 or -1");
      }
      out[x] = static_cast<int8_t>(signs[x]);
    }
    return SignedFunctional(std::move(out));
  }
  static SignedFunctional FromSigns(std::initializer_list<int> signs) {
    std::vector<int> v(signs);
    return FromSigns(std::span<const int>(v));
  }

  static SignedFunctional Constant(std::size_t domain_size, int sign = 1) {
    if (sign != 1 && sign != -1) throw ValidationError("sign must be +1 or -1");
    return SignedFunctional(
        std::vector<int8_t>(domain_size, static_cast<int8_t>(sign)));
  }

  // Bit x of `mask` set means +1 at x. Used for exhaustive enumeration.
  static SignedFunctional FromMask(std::size_t domain_size, uint64_t mask) {
    std::vector<int8_t> out(domain_size);
    for (std::size_t x = 0; x < domain_size; ++x) {
      out[x] = ((mask >> x) & 1U) ? int8_t{1} : int8_t{-1};
    }
    return SignedFunctional(std::move(out));
  }

  template <typename URBG>
  static SignedFunctional Random(std::size_t domain_size, URBG& gen) {
    std::vector<int8_t> out(domain_size);
    std::bernoulli_distribution coin(0.5);
    for (auto& s : out) s = coin(gen) ? int8_t{1} : int8_t{-1};
    return SignedFunctional(std::move(out));
  }

  std::size_t size() const { return signs_.size(); }
  int operator[](std::size_t x) const { return signs_[x]; }
  std::span<const int8_t> signs() const { return signs_; }

  SignedFunctional Negated() const {
    std::vector<int8_t> out(signs_);
    for (auto& s : out) s = static_cast<int8_t>(-s);
    return SignedFunctional(std::move(out));
  }

  friend bool operator==(const SignedFunctional&,
                         const SignedFunctional&) = default;
  friend auto operator<=>(const SignedFunctional&,
                          const SignedFunctional&) = default;

 private:
  explicit SignedFunctional(std::vector<int8_t> signs)
      : signs_(std::move(signs)) {}

  std::vector<int8_t> signs_;
};

// delta = q - q'. Entries sum to zero.
class DifferenceFunctional {
 public:
  std::size_t size() const { return deltas_.size(); }
  double operator[](std::size_t x) const { return deltas_[x]; }
  std::span<const double> deltas() const { return deltas_; }

 private:
  friend DifferenceFunctional Difference(const DiscreteDistribution&,
                                         const DiscreteDistribution&);
  explicit DifferenceFunctional(std::vector<double> deltas)
      : deltas_(std::move(deltas)) {}

  std::vector<double> deltas_;
};

inline DifferenceFunctional Difference(const DiscreteDistribution& q,
                                       const DiscreteDistribution& q2) {
  internal::CheckSameSize(q.domain_size(), q2.domain_size(), "Difference");
  std::vector<double> deltas(q.domain_size());
  for (std::size_t x = 0; x < deltas.size(); ++x) deltas[x] = q[x] - q2[x];
  return DifferenceFunctional(std::move(deltas));
}

// +1 where q(x) >= q'(x), -1 otherwise. Ties resolve to +1.
inline SignedFunctional SignedScheffeSet(const DiscreteDistribution& q,
                                         const DiscreteDistribution& q2) {
  internal::CheckSameSize(q.domain_size(), q2.domain_size(),
                          "SignedScheffeSet");
  std::vector<int> signs(q.domain_size());
  for (std::size_t x = 0; x < signs.size(); ++x) {
    signs[x] = q[x] >= q2[x] ? 1 : -1;
  }
  return SignedFunctional::FromSigns(std::span<const int>(signs));
}

inline double Inner(std::span<const double> f, const SignedFunctional& t) {
  internal::CheckSameSize(f.size(), t.size(), "Inner");
  double sum = 0.0;
  for (std::size_t x = 0; x < f.size(); ++x) {
    sum += t[x] > 0 ? f[x] : -f[x];
  }
  return sum;
}

inline double Inner(const DifferenceFunctional& f, const SignedFunctional& t) {
  return Inner(f.deltas(), t);
}

inline double Inner(const DiscreteDistribution& p, const SignedFunctional& t) {
  return Inner(p.probs(), t);
}

inline double L1Distance(const DiscreteDistribution& q,
                         const DiscreteDistribution& q2) {
  internal::CheckSameSize(q.domain_size(), q2.domain_size(), "L1Distance");
  double sum = 0.0;
  for (std::size_t x = 0; x < q.domain_size(); ++x) {
    sum += std::abs(q[x] - q2[x]);
  }
  return sum;
}

// Generators for random hypothesis sets.
enum class HypothesisModel { kDirichletUniform, kSparse, kPointMassMixture };

inline HypothesisModel ParseHypothesisModel(std::string_view name) {
  if (name == "dirichlet-uniform") return HypothesisModel::kDirichletUniform;
  if (name == "sparse") return HypothesisModel::kSparse;
  if (name == "point-mass-mixture") return HypothesisModel::kPointMassMixture;
  throw ConfigError("unknown hypothesis model '" + std::string(name) +
                    "' (expected dirichlet-uniform, sparse or "
                    "point-mass-mixture)");
}

inline std::string_view HypothesisModelName(HypothesisModel model) {
  switch (model) {
    case HypothesisModel::kDirichletUniform:
      return "dirichlet-uniform";
    case HypothesisModel::kSparse:
      return "sparse";
    case HypothesisModel::kPointMassMixture:
      return "point-mass-mixture";
  }
  return "unknown";
}

namespace internal {

// Flat Dirichlet weights placed on `support`.
template <typename URBG>
DiscreteDistribution DirichletOn(std::size_t d,
                                 std::span<const std::size_t> support,
                                 URBG& gen) {
  std::gamma_distribution<double> gamma(1.0, 1.0);
  std::vector<double> weights(d, 0.0);
  double sum = 0.0;
  for (std::size_t x : support) {
    double g = gamma(gen);
    weights[x] += g;
    sum += g;
  }
  if (sum <= 0.0) weights[support[0]] = 1.0;
  return DiscreteDistribution::Normalized(std::move(weights));
}

template <typename URBG>
std::vector<std::size_t> RandomSupport(std::size_t d, std::size_t size,
                                       URBG& gen) {
  std::vector<std::size_t> all(d);
  std::iota(all.begin(), all.end(), std::size_t{0});
  std::vector<std::size_t> out;
  std::sample(all.begin(), all.end(), std::back_inserter(out), size, gen);
  return out;
}

}  // namespace internal

// Draws one distribution from `model`.
template <typename URBG>
DiscreteDistribution RandomDistribution(std::size_t d, HypothesisModel model,
                                        URBG& gen) {
  switch (model) {
    case HypothesisModel::kDirichletUniform: {
      std::vector<std::size_t> support(d);
      std::iota(support.begin(), support.end(), std::size_t{0});
      return internal::DirichletOn(d, support, gen);
    }
    case HypothesisModel::kSparse: {
      std::size_t size = std::max<std::size_t>(1, (d + 3) / 4);
      auto support = internal::RandomSupport(d, size, gen);
      return internal::DirichletOn(d, support, gen);
    }
    case HypothesisModel::kPointMassMixture: {
      std::uniform_int_distribution<std::size_t> atoms(1, std::min<std::size_t>(3, d));
      auto support = internal::RandomSupport(d, atoms(gen), gen);
      return internal::DirichletOn(d, support, gen);
    }
  }
  throw ConfigError("unknown hypothesis model");
}

inline HypothesisSet RandomHypothesisSet(std::size_t k, std::size_t d,
                                         uint64_t seed,
                                         HypothesisModel model) {
  if (k < 2) throw ConfigError("k must be at least 2");
  if (d < 2) throw ConfigError("domain size must be at least 2");
  Rng gen(seed);
  std::vector<DiscreteDistribution> hypotheses;
  hypotheses.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    hypotheses.push_back(RandomDistribution(d, model, gen));
  }
  return HypothesisSet(std::move(hypotheses));
}

inline HypothesisSet RandomHypothesisSet(std::size_t k, std::size_t d,
                                         uint64_t seed,
                                         std::string_view model) {
  return RandomHypothesisSet(k, d, seed, ParseHypothesisModel(model));
}

}  // namespace ldphs

#endif  // LDPHS_DIST_CORE_H_
