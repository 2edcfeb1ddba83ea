// Copyright 2026 The ClaimTrust Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "claimtrust/graph.h"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

#include <fmt/format.h>

#include "claimtrust/errors.h"
#include "records.h"

namespace claimtrust {

double DocumentGraph::Csc::at(std::size_t from, std::size_t to) const {
  const auto col = column(to);
  auto it = std::lower_bound(col.begin(), col.end(), from,
                             [](const Entry& e, std::size_t s) { return e.source < s; });
  return it != col.end() && it->source == from ? it->weight : 0.0;
}

DocumentGraph::Csc DocumentGraph::compress(std::size_t n, std::vector<WeightedEdge> edges) {
  std::sort(edges.begin(), edges.end(), [](const WeightedEdge& x, const WeightedEdge& y) {
    return x.to != y.to ? x.to < y.to : x.from < y.from;
  });
  Csc m;
  m.col_start.assign(n + 1, 0);
  m.sums.assign(n, 0.0);
  for (const WeightedEdge& e : edges) {
    // col_start[to + 1] counts entries of column `to` until the prefix sum.
    const bool repeat = m.col_start[e.to + 1] > 0 && m.entries.back().source == e.from;
    if (repeat) {
      m.entries.back().weight += e.weight;
    } else {
      m.entries.push_back({e.from, e.weight});
      ++m.col_start[e.to + 1];
    }
  }
  for (std::size_t d = 0; d < n; ++d) m.col_start[d + 1] += m.col_start[d];
  for (std::size_t d = 0; d < n; ++d) {
    double s = 0.0;
    for (const Entry& e : m.column(d)) s += e.weight;
    m.sums[d] = s;
  }
  return m;
}

DocumentGraph::DocumentGraph(std::vector<std::string> doc_ids,
                             const std::vector<WeightedEdge>& edges)
    : doc_ids_(std::move(doc_ids)) {
  const std::size_t n = doc_ids_.size();
  std::vector<WeightedEdge> plus, minus;
  for (const WeightedEdge& e : edges) {
    if (e.from >= n || e.to >= n) {
      throw ValidationError(fmt::format("edge ({}, {}) outside a {}-document graph", e.from,
                                        e.to, n));
    }
    if (e.from == e.to) {
      throw ValidationError(fmt::format("self loop on document {}", doc_ids_[e.from]));
    }
    if (!(e.weight > 0.0)) {
      throw ValidationError(fmt::format("edge ({}, {}) has non-positive weight {}",
                                        doc_ids_[e.from], doc_ids_[e.to], e.weight));
    }
    (e.sign == EdgeSign::kPlus ? plus : minus).push_back(e);
  }
  plus_ = compress(n, std::move(plus));
  minus_ = compress(n, std::move(minus));
  validate();
}

void DocumentGraph::check_matrix(const Csc& m, const char* name) const {
  const std::size_t n = size();
  if (m.col_start.size() != n + 1 || m.sums.size() != n) {
    throw ValidationError(fmt::format("{}: storage does not match {} documents", name, n));
  }
  for (std::size_t d = 0; d < n; ++d) {
    double s = 0.0;
    std::size_t prev = 0;
    bool first = true;
    for (const Entry& e : m.column(d)) {
      if (e.source >= n || e.source == d || !(e.weight > 0.0)) {
        throw ValidationError(fmt::format("{}: bad entry ({}, {})", name, e.source, d));
      }
      if (!first && e.source <= prev) {
        throw ValidationError(fmt::format("{}: column {} not strictly ordered", name, d));
      }
      if (m.at(d, e.source) != e.weight) {
        throw ValidationError(fmt::format("{}: entry ({}, {}) = {} but ({}, {}) = {}", name,
                                          doc_ids_[e.source], doc_ids_[d], e.weight,
                                          doc_ids_[d], doc_ids_[e.source], m.at(d, e.source)));
      }
      s += e.weight;
      prev = e.source;
      first = false;
    }
    if (s != m.sums[d]) {
      throw ValidationError(fmt::format("{}: column sum of {} is stale", name, doc_ids_[d]));
    }
  }
}

void DocumentGraph::validate() const {
  check_matrix(plus_, "w_plus");
  check_matrix(minus_, "w_minus");
}

std::vector<WeightedEdge> DocumentGraph::entries() const {
  std::vector<WeightedEdge> out;
  out.reserve(plus_.entries.size() + minus_.entries.size());
  for (std::size_t d = 0; d < size(); ++d) {
    for (const Entry& e : plus_column(d)) out.push_back({e.source, d, e.weight, EdgeSign::kPlus});
  }
  for (std::size_t d = 0; d < size(); ++d) {
    for (const Entry& e : minus_column(d)) {
      out.push_back({e.source, d, e.weight, EdgeSign::kMinus});
    }
  }
  return out;
}

DocumentGraph build_graph(const std::vector<Relation>& relations,
                          const std::vector<Claim>& claims,
                          const std::vector<std::string>& doc_ids, GraphBuildStats* stats) {
  std::unordered_map<std::string_view, std::size_t> doc_index;
  doc_index.reserve(doc_ids.size());
  for (std::size_t i = 0; i < doc_ids.size(); ++i) {
    if (!doc_index.emplace(doc_ids[i], i).second) {
      throw ValidationError(fmt::format("duplicate document id {}", doc_ids[i]));
    }
  }
  std::unordered_map<std::string_view, std::string_view> doc_of;
  doc_of.reserve(claims.size());
  for (const Claim& c : claims) doc_of.emplace(c.claim_id, c.doc_id);

  auto resolve = [&](const Relation& r, const std::string& claim_id) {
    auto c = doc_of.find(claim_id);
    if (c == doc_of.end()) {
      throw DataError(fmt::format("relation {{{}, {}}} names unknown claim {}", r.claim_a,
                                  r.claim_b, claim_id));
    }
    auto d = doc_index.find(c->second);
    if (d == doc_index.end()) {
      throw DataError(fmt::format("relation {{{}, {}}}: claim {} belongs to unknown document {}",
                                  r.claim_a, r.claim_b, claim_id, c->second));
    }
    return d->second;
  };

  GraphBuildStats local;
  std::vector<WeightedEdge> edges;
  edges.reserve(2 * relations.size());
  for (const Relation& r : relations) {
    ++local.relations;
    if (r.polarity == Polarity::kUnrelated) {
      throw ValidationError(fmt::format("relation {{{}, {}}} has polarity 0", r.claim_a,
                                        r.claim_b));
    }
    const std::size_t a = resolve(r, r.claim_a);
    const std::size_t b = resolve(r, r.claim_b);
    if (a == b) {
      ++local.same_document;
      continue;
    }
    const EdgeSign sign = r.polarity == Polarity::kSupports ? EdgeSign::kPlus : EdgeSign::kMinus;
    ++(sign == EdgeSign::kPlus ? local.supporting : local.refuting);
    edges.push_back({a, b, 1.0, sign});
    edges.push_back({b, a, 1.0, sign});
  }
  if (stats) *stats = local;
  return DocumentGraph(doc_ids, edges);
}

GraphStats graph_stats(const DocumentGraph& graph) {
  GraphStats s;
  const std::size_t n = graph.size();
  s.documents = n;
  if (n == 0) return s;

  std::vector<std::size_t> degrees(n);
  for (std::size_t d = 0; d < n; ++d) {
    std::set<std::size_t> neighbours;
    for (const auto& e : graph.plus_column(d)) {
      neighbours.insert(e.source);
      if (e.source < d) ++s.positive_edges;
    }
    for (const auto& e : graph.minus_column(d)) {
      neighbours.insert(e.source);
      if (e.source < d) ++s.negative_edges;
    }
    s.total_plus_weight += graph.sum_plus(d);
    s.total_minus_weight += graph.sum_minus(d);
    degrees[d] = neighbours.size();
    if (neighbours.empty()) ++s.isolated;
  }
  std::sort(degrees.begin(), degrees.end());
  s.min_degree = degrees.front();
  s.max_degree = degrees.back();
  double total = 0.0;
  for (std::size_t x : degrees) total += static_cast<double>(x);
  s.mean_degree = total / static_cast<double>(n);
  s.median_degree = n % 2 == 1 ? static_cast<double>(degrees[n / 2])
                               : 0.5 * static_cast<double>(degrees[n / 2 - 1] + degrees[n / 2]);
  return s;
}

void save_graph(const DocumentGraph& graph, const std::filesystem::path& path) {
  std::vector<records::Record> lines;
  for (const WeightedEdge& e : graph.entries()) {
    records::Record r;
    r["from"] = graph.doc_ids()[e.from];
    r["to"] = graph.doc_ids()[e.to];
    r["weight"] = e.weight;
    r["sign"] = e.sign == EdgeSign::kPlus ? "+" : "-";
    lines.push_back(std::move(r));
  }
  records::write_lines(path, lines);
}

DocumentGraph load_graph(const std::filesystem::path& path, std::vector<std::string> doc_ids) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < doc_ids.size(); ++i) index.emplace(doc_ids[i], i);
  std::vector<WeightedEdge> edges;
  std::set<std::tuple<std::size_t, std::size_t, EdgeSign>> seen;
  records::read_lines(path, [&](const records::Record& r, std::size_t) {
    const std::string from = records::get_string(r, "from");
    const std::string to = records::get_string(r, "to");
    const std::string sign = records::get_string(r, "sign");
    auto f = index.find(from);
    auto t = index.find(to);
    if (f == index.end()) throw DataError(fmt::format("unknown document {}", from));
    if (t == index.end()) throw DataError(fmt::format("unknown document {}", to));
    if (sign != "+" && sign != "-") throw ValidationError(fmt::format("bad sign '{}'", sign));
    const EdgeSign s = sign == "+" ? EdgeSign::kPlus : EdgeSign::kMinus;
    if (!seen.emplace(f->second, t->second, s).second) {
      throw ValidationError(fmt::format("duplicate entry ({}, {}, {})", from, to, sign));
    }
    const double w = records::get_double(r, "weight");
    if (!(w > 0.0)) throw ValidationError(fmt::format("non-positive weight {}", w));
    if (f->second == t->second) throw ValidationError(fmt::format("self loop on {}", from));
    edges.push_back({f->second, t->second, w, s});
  });
  try {
    return DocumentGraph(std::move(doc_ids), edges);
  } catch (const ValidationError& e) {
    throw ValidationError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

void save_graph_stats(const GraphStats& stats, const GraphBuildStats& build,
                      const std::filesystem::path& path) {
  records::Record r;
  r["documents"] = stats.documents;
  r["positive_edges"] = stats.positive_edges;
  r["negative_edges"] = stats.negative_edges;
  r["isolated"] = stats.isolated;
  r["total_plus_weight"] = stats.total_plus_weight;
  r["total_minus_weight"] = stats.total_minus_weight;
  r["min_degree"] = stats.min_degree;
  r["max_degree"] = stats.max_degree;
  r["mean_degree"] = stats.mean_degree;
  r["median_degree"] = stats.median_degree;
  r["relations"] = build.relations;
  r["supporting_relations"] = build.supporting;
  r["refuting_relations"] = build.refuting;
  r["same_document_dropped"] = build.same_document;
  records::write_lines(path, {r});
}

}  // namespace claimtrust
