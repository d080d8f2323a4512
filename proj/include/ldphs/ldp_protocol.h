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

// One-round, non-interactive epsilon-LDP estimation of <p, T> for a fixed
// family of sign queries T. Users are split into equal contiguous blocks,
// one block per query; each user answers its block's query through
// randomized response and the curator debiases the block mean.

#ifndef LDPHS_LDP_PROTOCOL_H_
#define LDPHS_LDP_PROTOCOL_H_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ldphs/dist_core.h"
#include "ldphs/errors.h"
#include "ldphs/random.h"

namespace ldphs {

struct PrivacyParams {
  double epsilon = 1.0;
  double alpha_query = 0.1;  // per-query additive accuracy
  double beta = 0.05;        // failure probability over all queries

  void Validate() const {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
      throw ConfigError("epsilon must be positive and finite");
    }
    if (!(alpha_query > 0.0 && alpha_query <= 2.0)) {
      throw ConfigError("alpha_query must lie in (0, 2]");
    }
    if (!(beta > 0.0 && beta < 1.0)) throw ConfigError("beta must lie in (0, 1)");
  }
};

inline void ValidateEpsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ConfigError("epsilon must be positive and finite, got " +
                      std::to_string(epsilon));
  }
}

// e^eps / (e^eps + 1), written to stay accurate for large eps.
inline double KeepProbability(double epsilon) {
  ValidateEpsilon(epsilon);
  return 1.0 / (1.0 + std::exp(-epsilon));
}

// (e^eps + 1) / (e^eps - 1) = coth(eps / 2).
inline double CorrectionFactor(double epsilon) {
  ValidateEpsilon(epsilon);
  return 1.0 / std::tanh(0.5 * epsilon);
}

// The randomized-response channel RR_eps with its keep probability computed
// once.
class RandomizedResponder {
 public:
  explicit RandomizedResponder(double epsilon)
      : epsilon_(epsilon), keep_(KeepProbability(epsilon)) {}

  double epsilon() const { return epsilon_; }
  double keep_probability() const { return keep_; }

  // Keeps `bit` with probability e^eps/(e^eps+1), flips it otherwise.
  template <typename URBG>
  int operator()(int bit, URBG& gen) const {
    if (bit != 1 && bit != -1) throw ArgumentError("bit must be +1 or -1");
    return UniformUnit(gen) < keep_ ? bit : -bit;
  }

 private:
  double epsilon_;
  double keep_;
};

template <typename URBG>
int RandomizedResponse(int bit, double epsilon, URBG& gen) {
  return RandomizedResponder(epsilon)(bit, gen);
}

// Worst-case likelihood ratio of the randomized-response channel, obtained by
// enumerating both outputs against both ordered input pairs.
inline double ChannelPrivacyRatio(double epsilon) {
  const double keep = KeepProbability(epsilon);
  const double flip = 1.0 / (1.0 + std::exp(epsilon));
  auto prob = [&](int output, int input) { return output == input ? keep : flip; };
  double worst = 0.0;
  for (int output : {-1, 1}) {
    for (int x : {-1, 1}) {
      for (int x2 : {-1, 1}) {
        worst = std::max(worst, prob(output, x) / prob(output, x2));
      }
    }
  }
  return worst;
}

// Block size l = ceil(2 c^2 ln(2 |T| / beta) / alpha^2), c = coth(eps/2):
// two-sided Hoeffding on l variables in [-c, c], union bound over |T|.
inline std::size_t RequiredBlockSize(std::size_t num_queries, double alpha_query,
                                     double beta, double epsilon) {
  if (num_queries == 0) throw ArgumentError("need at least one query");
  PrivacyParams{epsilon, alpha_query, beta}.Validate();
  const double c = CorrectionFactor(epsilon);
  const double ell = 2.0 * c * c *
                     std::log(2.0 * static_cast<double>(num_queries) / beta) /
                     (alpha_query * alpha_query);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(ell)));
}

// Users holding i.i.d. samples from p. The raw samples stay inside this
// class: the only way to observe a user is through Respond().
class SimulatedPopulation {
 public:
  static SimulatedPopulation Sample(const DiscreteDistribution& p,
                                    std::size_t user_count, std::uint64_t seed) {
    Rng gen(seed);
    std::discrete_distribution<std::uint32_t> draw(p.probs().begin(), p.probs().end());
    std::vector<std::uint32_t> samples(user_count);
    for (auto& x : samples) x = draw(gen);
    return SimulatedPopulation(p.domain_size(), std::move(samples), p);
  }

  // Population from externally collected samples; the true distribution is
  // unknown.
  static SimulatedPopulation FromSamples(std::size_t domain_size,
                                         std::vector<std::uint32_t> samples) {
    for (std::size_t u = 0; u < samples.size(); ++u) {
      if (samples[u] >= domain_size) {
        throw ValidationError("sample " + std::to_string(u) + " (value " +
                              std::to_string(samples[u]) +
                              ") lies outside the domain of size " +
                              std::to_string(domain_size));
      }
    }
    return SimulatedPopulation(domain_size, std::move(samples), std::nullopt);
  }

  std::size_t user_count() const { return samples_.size(); }
  std::size_t domain_size() const { return domain_size_; }

  // Simulator-side knowledge; absent for populations built from samples.
  const std::optional<DiscreteDistribution>& true_distribution() const {
    return truth_;
  }

  // User `user` applies randomized response to T(x) on its own sample.
  template <typename URBG>
  int Respond(std::size_t user, const SignedFunctional& query,
              const RandomizedResponder& channel, URBG& gen) const {
    return channel(query[samples_[user]], gen);
  }

  // Empirical histogram; a simulator diagnostic, not part of the protocol.
  std::vector<std::size_t> Histogram() const {
    std::vector<std::size_t> counts(domain_size_, 0);
    for (auto x : samples_) ++counts[x];
    return counts;
  }

 private:
  SimulatedPopulation(std::size_t domain_size, std::vector<std::uint32_t> samples,
                      std::optional<DiscreteDistribution> truth)
      : domain_size_(domain_size),
        samples_(std::move(samples)),
        truth_(std::move(truth)) {}

  std::size_t domain_size_;
  std::vector<std::uint32_t> samples_;
  std::optional<DiscreteDistribution> truth_;
};

// One released message. Deliberately holds nothing derived from any sample
// other than the randomized bit itself.
struct LdpRecord {
  std::uint64_t user_id;
  std::uint32_t query_index;
  std::int8_t message;  // +1 or -1

  friend bool operator==(const LdpRecord&, const LdpRecord&) = default;
};

struct LdpTranscript {
  std::vector<LdpRecord> records;
  std::size_t num_queries = 0;
  std::size_t block_size = 0;
};

struct QueryEstimates {
  std::vector<double> estimates;  // indexed by query
  std::size_t block_size = 0;
  double epsilon = 0.0;

  std::size_t size() const { return estimates.size(); }
  double operator[](std::size_t i) const { return estimates[i]; }
};

// Query block of `user` when blocks have `block_size` users; nullopt for
// surplus users. Depends only on the user index and the family size.
inline std::optional<std::size_t> BlockAssignment(std::size_t user,
                                                  std::size_t num_queries,
                                                  std::size_t block_size) {
  if (block_size == 0) return std::nullopt;
  const std::size_t block = user / block_size;
  if (block >= num_queries) return std::nullopt;
  return block;
}

// Per-user random substream derived from (base seed, user index).
inline SplitMix64 UserStream(std::uint64_t base_seed, std::uint64_t user) {
  return SplitMix64(DeriveSeed(base_seed, user));
}

struct ProtocolResult {
  LdpTranscript transcript;
  QueryEstimates estimates;
  std::vector<std::string> warnings;
};

// Curator side: debiased block means from a transcript alone.
inline QueryEstimates EstimatesFromTranscript(const LdpTranscript& transcript,
                                              double epsilon) {
  if (transcript.block_size == 0) {
    throw ArgumentError("transcript has an empty block size");
  }
  std::vector<double> sums(transcript.num_queries, 0.0);
  for (const LdpRecord& r : transcript.records) {
    if (r.query_index >= transcript.num_queries) {
      throw ValidationError("transcript record refers to unknown query " +
                            std::to_string(r.query_index));
    }
    sums[r.query_index] += r.message;
  }
  QueryEstimates out;
  out.block_size = transcript.block_size;
  out.epsilon = epsilon;
  const double scale =
      CorrectionFactor(epsilon) / static_cast<double>(transcript.block_size);
  out.estimates.reserve(sums.size());
  for (double s : sums) out.estimates.push_back(scale * s);
  return out;
}

// Runs the protocol: l = floor(n / |T|) users per query, surplus users
// unassigned. The generator is consumed once, for the base seed of the
// per-user substreams.
template <typename URBG>
ProtocolResult RunProtocol(const SimulatedPopulation& population,
                           std::span<const SignedFunctional> queries,
                           const PrivacyParams& params, URBG& gen) {
  ValidateEpsilon(params.epsilon);
  if (queries.empty()) throw ArgumentError("query family is empty");
  for (const auto& t : queries) {
    internal::CheckSameSize(t.size(), population.domain_size(), "RunProtocol");
  }
  const std::size_t num_queries = queries.size();
  if (population.user_count() < num_queries) {
    throw InsufficientSamplesError(
        "protocol needs at least " + std::to_string(num_queries) +
            " users (one per query), got " +
            std::to_string(population.user_count()),
        num_queries);
  }

  ProtocolResult result;
  if (params.epsilon >= 1.0) {
    result.warnings.push_back(
        "epsilon >= 1: the O(1/eps^2) sample-size regime does not apply, "
        "but estimates remain unbiased");
  }
  const std::size_t block_size = population.user_count() / num_queries;
  const std::uint64_t base_seed = static_cast<std::uint64_t>(gen());
  const RandomizedResponder channel(params.epsilon);

  LdpTranscript& transcript = result.transcript;
  transcript.num_queries = num_queries;
  transcript.block_size = block_size;
  transcript.records.reserve(block_size * num_queries);
  for (std::size_t user = 0; user < block_size * num_queries; ++user) {
    const std::size_t query = *BlockAssignment(user, num_queries, block_size);
    SplitMix64 stream = UserStream(base_seed, user);
    const int message =
        population.Respond(user, queries[query], channel, stream);
    transcript.records.push_back({static_cast<std::uint64_t>(user),
                                  static_cast<std::uint32_t>(query),
                                  static_cast<std::int8_t>(message)});
  }
  result.estimates = EstimatesFromTranscript(transcript, params.epsilon);
  return result;
}

template <typename URBG>
ProtocolResult RunProtocol(const SimulatedPopulation& population,
                           const std::vector<SignedFunctional>& queries,
                           const PrivacyParams& params, URBG& gen) {
  return RunProtocol(population, std::span<const SignedFunctional>(queries),
                     params, gen);
}

}  // namespace ldphs

#endif  // LDPHS_LDP_PROTOCOL_H_
