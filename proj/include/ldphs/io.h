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

// File formats. JSON documents use nlohmann::json; indices are 0-based.
//
//   hypothesis set  {"domain_size": d, "hypotheses": [[p_0..p_{d-1}], ...]}
//   graph           {"k", "phi", "edges": [[a,b,c,d], ...], "pair_norms"}
//                   where [a,b,c,d] is the edge {a,b} -> {c,d}
//   certificate     {"dominating_set": [[lo,hi], ...], "attempts",
//                    "target_bound", "build_time_ms", ...}
//   estimates       {"estimates": {"0": p_0, ...}, "block_size", "epsilon"}
//   transcript CSV  user_id,query_index,message
//   samples         one domain point per line

#ifndef LDPHS_IO_H_
#define LDPHS_IO_H_

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "ldphs/barriers.h"
#include "ldphs/dist_core.h"
#include "ldphs/errors.h"
#include "ldphs/ldp_protocol.h"
#include "ldphs/rmde.h"
#include "ldphs/scheffe_graph.h"

namespace ldphs {

using Json = nlohmann::json;

// Raised when a file cannot be opened or written.
class IoError : public Error {
 public:
  using Error::Error;
};

inline std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw IoError("failed writing '" + path + "'");
}

inline Json ParseJson(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(what + " is not valid JSON: " + e.what());
  }
}

// --- Hypothesis sets --------------------------------------------------------

inline Json HypothesisSetToJson(const HypothesisSet& q) {
  Json rows = Json::array();
  for (const auto& dist : q) {
    rows.push_back(std::vector<double>(dist.probs().begin(), dist.probs().end()));
  }
  return Json{{"domain_size", q.domain_size()}, {"hypotheses", rows}};
}

// Rejects rows that are not distributions, naming the row and coordinate.
inline HypothesisSet HypothesisSetFromJson(const Json& doc) {
  if (!doc.is_object() || !doc.contains("domain_size") || !doc.contains("hypotheses")) {
    throw ValidationError("hypothesis set needs 'domain_size' and 'hypotheses'");
  }
  if (!doc["domain_size"].is_number_unsigned() || doc["domain_size"].get<std::size_t>() == 0) {
    throw ValidationError("'domain_size' must be a positive integer");
  }
  const auto d = doc["domain_size"].get<std::size_t>();
  const Json& rows = doc["hypotheses"];
  if (!rows.is_array()) throw ValidationError("'hypotheses' must be an array");
  std::vector<DiscreteDistribution> hypotheses;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string where = "hypothesis row " + std::to_string(r);
    if (!rows[r].is_array() || rows[r].size() != d) {
      throw ValidationError(where + " must be an array of " + std::to_string(d) +
                            " probabilities");
    }
    std::vector<double> probs(d);
    for (std::size_t x = 0; x < d; ++x) {
      if (!rows[r][x].is_number()) {
        throw ValidationError(where + ", coordinate " + std::to_string(x) +
                              ": not a number");
      }
      probs[x] = rows[r][x].get<double>();
      if (!(probs[x] >= 0.0)) {
        throw ValidationError(where + ", coordinate " + std::to_string(x) +
                              ": negative probability " + std::to_string(probs[x]));
      }
    }
    try {
      hypotheses.push_back(DiscreteDistribution::FromProbabilities(std::move(probs)));
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  return HypothesisSet(std::move(hypotheses));
}

inline void SaveHypothesisSet(const HypothesisSet& q, const std::string& path) {
  WriteFile(path, HypothesisSetToJson(q).dump(2) + "\n");
}

inline HypothesisSet LoadHypothesisSet(const std::string& path) {
  return HypothesisSetFromJson(ParseJson(ReadFile(path), "'" + path + "'"));
}

// --- Graphs -----------------------------------------------------------------

inline Json EdgeListToJson(const PairDigraph& g) {
  Json edges = Json::array();
  for (VertexId u = 0; u < g.num_vertices(); ++u) {
    const VertexPair from = g.pair(u);
    for (VertexId w : g.out_neighbors(u)) {
      const VertexPair to = g.pair(w);
      edges.push_back({from.lo, from.hi, to.lo, to.hi});
    }
  }
  return edges;
}

inline PairDigraph PairDigraphFromEdgeList(std::size_t k, const Json& edges) {
  if (k < 2) throw ValidationError("graph needs k >= 2");
  if (!edges.is_array()) throw ValidationError("'edges' must be an array");
  const PairDigraph indexer(k, std::vector<std::vector<VertexId>>(NumPairs(k)));
  std::vector<std::vector<VertexId>> out(NumPairs(k));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Json& edge = edges[e];
    if (!edge.is_array() || edge.size() != 4) {
      throw ValidationError("edge " + std::to_string(e) + " is not [a,b,c,d]");
    }
    try {
      const auto a = edge[0].get<std::size_t>(), b = edge[1].get<std::size_t>();
      const auto c = edge[2].get<std::size_t>(), d = edge[3].get<std::size_t>();
      out[indexer.index(a, b)].push_back(indexer.index(c, d));
    } catch (const Json::exception& ex) {
      throw ValidationError("edge " + std::to_string(e) + ": " + ex.what());
    } catch (const ArgumentError& ex) {
      throw ValidationError("edge " + std::to_string(e) + ": " + ex.what());
    }
  }
  return PairDigraph(k, std::move(out));
}

inline Json ScheffeGraphToJson(const ScheffeGraph& g) {
  std::vector<double> norms(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) norms[v] = g.pair_norm(v);
  return Json{{"k", g.k()},
              {"phi", g.phi()},
              {"edges", EdgeListToJson(g.graph())},
              {"pair_norms", norms}};
}

inline ScheffeGraph ScheffeGraphFromJson(const Json& doc) {
  if (!doc.is_object() || !doc.contains("k") || !doc.contains("phi") ||
      !doc.contains("edges")) {
    throw ValidationError("graph needs 'k', 'phi' and 'edges'");
  }
  const auto k = doc["k"].get<std::size_t>();
  const auto phi = doc["phi"].get<double>();
  PairDigraph graph = PairDigraphFromEdgeList(k, doc["edges"]);
  std::vector<double> norms(NumPairs(k), 0.0);
  if (doc.contains("pair_norms")) {
    norms = doc["pair_norms"].get<std::vector<double>>();
    if (norms.size() != NumPairs(k)) throw ValidationError("'pair_norms' has the wrong length");
  }
  return ScheffeGraph(std::move(graph), phi, std::move(norms));
}

// --- Certificates -----------------------------------------------------------

inline Json PairsToJson(const std::vector<VertexPair>& pairs) {
  Json out = Json::array();
  for (const auto& p : pairs) out.push_back({p.lo, p.hi});
  return out;
}

inline std::vector<VertexPair> PairsFromJson(const Json& doc) {
  std::vector<VertexPair> pairs;
  for (const Json& p : doc) {
    if (!p.is_array() || p.size() != 2) throw ValidationError("pair must be [lo, hi]");
    pairs.push_back(VertexPair::Of(p[0].get<std::size_t>(), p[1].get<std::size_t>()));
  }
  return pairs;
}

inline Json CertificateToJson(const DominatingSetCertificate& cert,
                              double build_time_ms) {
  return Json{{"dominating_set", PairsToJson(cert.dominating_set)},
              {"random_part", PairsToJson(cert.random_part)},
              {"low_indegree_part", PairsToJson(cert.low_indegree_part)},
              {"size", cert.dominating_set.size()},
              {"attempts", cert.attempts},
              {"target_bound", cert.target_bound},
              {"size_cap", cert.size_cap},
              {"sample_size", cert.sample_size},
              {"seed", cert.seed},
              {"build_time_ms", build_time_ms}};
}

inline DominatingSetCertificate CertificateFromJson(const Json& doc) {
  DominatingSetCertificate cert;
  try {
    cert.dominating_set = PairsFromJson(doc.at("dominating_set"));
    if (doc.contains("random_part")) cert.random_part = PairsFromJson(doc["random_part"]);
    if (doc.contains("low_indegree_part")) {
      cert.low_indegree_part = PairsFromJson(doc["low_indegree_part"]);
    }
    cert.attempts = doc.at("attempts").get<int>();
    cert.target_bound = doc.at("target_bound").get<double>();
    cert.size_cap = doc.value("size_cap", std::size_t{0});
    cert.sample_size = doc.value("sample_size", std::size_t{0});
    cert.seed = doc.value("seed", std::uint64_t{0});
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed certificate: ") + e.what());
  }
  return cert;
}

inline Json LowerBoundCertificateToJson(const LowerBoundCertificate& cert,
                                        double verified_lower_bound) {
  std::vector<Json> random_part;
  for (VertexId v : cert.random_part) {
    const VertexPair p = cert.graph.pair(v);
    random_part.push_back({p.lo, p.hi});
  }
  return Json{{"k", cert.graph.k()},
              {"ell", cert.sample_size},
              {"t_max", cert.max_overlap},
              {"implied_lower_bound", cert.implied_lower_bound},
              {"verified_lower_bound", verified_lower_bound},
              {"asymptotic_bound", AsymptoticDominationLowerBound(cert.graph.k())},
              {"attempts", cert.attempts},
              {"seed", cert.seed},
              {"random_part", random_part},
              {"edges", EdgeListToJson(cert.graph)}};
}

// Rebuilds the graph and R from an exported certificate.
inline LowerBoundCertificate LowerBoundCertificateFromJson(const Json& doc) {
  LowerBoundCertificate cert;
  try {
    const auto k = doc.at("k").get<std::size_t>();
    cert.graph = PairDigraphFromEdgeList(k, doc.at("edges"));
    for (const VertexPair& p : PairsFromJson(doc.at("random_part"))) {
      cert.random_part.push_back(cert.graph.index(p));
    }
    cert.sample_size = doc.at("ell").get<std::size_t>();
    cert.max_overlap = doc.at("t_max").get<std::size_t>();
    cert.implied_lower_bound = doc.at("implied_lower_bound").get<double>();
    cert.attempts = doc.at("attempts").get<int>();
    cert.seed = doc.at("seed").get<std::uint64_t>();
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed lower-bound certificate: ") + e.what());
  }
  return cert;
}

inline Json FlatteningSummaryToJson(const FlatteningTrialSummary& s) {
  return Json{{"n", s.n},
              {"m", s.m},
              {"alpha", s.alpha},
              {"trials", s.trials},
              {"flat_trials", s.flat_trials},
              {"worst_min_distance", s.worst_min_distance},
              {"bound", s.bound},
              {"bound_failures", s.bound_failures},
              {"max_frobenius_error", s.max_frobenius_error},
              {"frobenius_bound_holds", s.frobenius_bound_holds},
              {"seed", s.seed}};
}

// --- Protocol outputs -------------------------------------------------------

inline Json EstimatesToJson(const QueryEstimates& est) {
  Json map = Json::object();
  for (std::size_t i = 0; i < est.size(); ++i) map[std::to_string(i)] = est[i];
  return Json{{"estimates", map}, {"block_size", est.block_size}, {"epsilon", est.epsilon}};
}

inline QueryEstimates EstimatesFromJson(const Json& doc) {
  QueryEstimates est;
  try {
    const Json& map = doc.at("estimates");
    est.estimates.assign(map.size(), 0.0);
    std::vector<char> seen(map.size(), 0);
    for (const auto& [key, value] : map.items()) {
      const std::size_t i = std::stoul(key);
      if (i >= map.size() || seen[i]) throw ValidationError("bad query index '" + key + "'");
      seen[i] = 1;
      est.estimates[i] = value.get<double>();
    }
    est.block_size = doc.at("block_size").get<std::size_t>();
    est.epsilon = doc.at("epsilon").get<double>();
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed estimates: ") + e.what());
  } catch (const std::logic_error& e) {
    throw ValidationError(std::string("malformed estimates: ") + e.what());
  }
  return est;
}

inline constexpr const char* kTranscriptHeader = "user_id,query_index,message";

inline std::string TranscriptToCsv(const LdpTranscript& t) {
  std::string out = std::string(kTranscriptHeader) + "\n";
  out.reserve(out.size() + t.records.size() * 16);
  for (const LdpRecord& r : t.records) {
    out += std::to_string(r.user_id);
    out += ',';
    out += std::to_string(r.query_index);
    out += ',';
    out += r.message > 0 ? "1" : "-1";
    out += '\n';
  }
  return out;
}

inline std::vector<LdpRecord> TranscriptRecordsFromCsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kTranscriptHeader) {
    throw ValidationError(std::string("transcript header must be '") + kTranscriptHeader + "'");
  }
  std::vector<LdpRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::uint64_t user = 0;
    std::uint32_t query = 0;
    int message = 0;
    char c1 = 0, c2 = 0;
    if (!(fields >> user >> c1 >> query >> c2 >> message) || c1 != ',' || c2 != ',' ||
        (message != 1 && message != -1) || !(fields >> std::ws).eof()) {
      throw ValidationError("malformed transcript line " + std::to_string(line_no));
    }
    records.push_back({user, query, static_cast<std::int8_t>(message)});
  }
  return records;
}

inline std::vector<std::uint32_t> ParseSamples(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::uint32_t> samples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    std::istringstream field(line);
    long long value = -1;
    if (!(field >> value) || value < 0 || !(field >> std::ws).eof()) {
      throw ValidationError("sample line " + std::to_string(line_no) +
                            " is not a domain point");
    }
    samples.push_back(static_cast<std::uint32_t>(value));
  }
  return samples;
}

// --- Reports ----------------------------------------------------------------

inline Json SelectionReportToJson(const SelectionReport& r) {
  Json doc{{"selected_index", r.selected_index},
           {"selected_discrepancy", r.selected_discrepancy},
           {"discrepancies", r.discrepancies},
           {"family_size", r.family_size},
           {"users_consumed", r.users_consumed},
           {"block_size", r.block_size}};
  if (r.certificate) {
    doc["dominating_set_size"] = r.certificate->dominating_set.size();
    doc["dominating_set_attempts"] = r.certificate->attempts;
  }
  return doc;
}

}  // namespace ldphs

#endif  // LDPHS_IO_H_
