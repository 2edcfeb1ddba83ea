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

#include "claimtrust/solver.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "claimtrust/errors.h"
#include "records.h"

namespace claimtrust {

namespace {

// Sum of s_d' * w over a column. Terms are added in ascending value order so
// the result does not depend on how documents are numbered.
double weighted_sum(std::span<const DocumentGraph::Entry> column, std::span<const double> scores,
                    std::vector<double>& scratch) {
  scratch.clear();
  for (const auto& e : column) scratch.push_back(scores[e.source] * e.weight);
  std::sort(scratch.begin(), scratch.end());
  double sum = 0.0;
  for (double t : scratch) sum += t;
  return sum;
}

Influence influence_with(std::span<const double> scores, const DocumentGraph& graph,
                         std::size_t d, std::vector<double>& scratch) {
  Influence out;
  if (const double total = graph.sum_plus(d); total > 0.0) {
    out.positive = weighted_sum(graph.plus_column(d), scores, scratch) / total;
  }
  if (const double total = graph.sum_minus(d); total > 0.0) {
    out.negative = weighted_sum(graph.minus_column(d), scores, scratch) / total;
  }
  out.net = out.positive - out.negative;
  return out;
}

void step_into(std::span<const double> scores, std::span<const double> anchor,
               const DocumentGraph& graph, double alpha, std::vector<double>& out,
               std::vector<double>& scratch) {
  const std::size_t n = graph.size();
  out.resize(n);
  for (std::size_t d = 0; d < n; ++d) {
    const Influence inf = influence_with(scores, graph, d, scratch);
    const double mapped = (inf.net + 1.0) / 2.0;
    out[d] = std::clamp((1.0 - alpha) * anchor[d] + alpha * mapped, 0.0, 1.0);
  }
}

}  // namespace

std::vector<double> initial_scores(const std::vector<Document>& documents,
                                   const TrustConfig& config) {
  std::vector<double> s0;
  s0.reserve(documents.size());
  for (const Document& d : documents) {
    s0.push_back(d.seed == Seed::kTrusted ? config.initial_trusted : config.initial_unknown);
  }
  return s0;
}

Influence influence(std::span<const double> scores, const DocumentGraph& graph, std::size_t d) {
  if (scores.size() != graph.size()) {
    throw ContractError(fmt::format("{} scores for a {}-document graph", scores.size(),
                                    graph.size()));
  }
  std::vector<double> scratch;
  return influence_with(scores, graph, d, scratch);
}

std::vector<double> step(std::span<const double> scores, std::span<const double> anchor,
                         const DocumentGraph& graph, const TrustConfig& config) {
  if (scores.size() != graph.size() || anchor.size() != graph.size()) {
    throw ContractError(fmt::format("score vectors of size {} and {} for a {}-document graph",
                                    scores.size(), anchor.size(), graph.size()));
  }
  std::vector<double> out, scratch;
  step_into(scores, anchor, graph, config.alpha, out, scratch);
  return out;
}

RankResult claimrank(const DocumentGraph& graph, const std::vector<Document>& documents,
                     const TrustConfig& config, std::optional<std::span<const double>> start) {
  config.validate();
  if (graph.size() != documents.size()) {
    throw ContractError(fmt::format("graph has {} documents, corpus has {}", graph.size(),
                                    documents.size()));
  }
  for (std::size_t i = 0; i < documents.size(); ++i) {
    if (graph.doc_ids()[i] != documents[i].id) {
      throw ContractError(fmt::format("graph index {} is document {}, corpus has {}", i,
                                      graph.doc_ids()[i], documents[i].id));
    }
  }

  const std::vector<double> anchor = initial_scores(documents, config);
  std::vector<double> current = anchor;
  if (start) {
    if (start->size() != anchor.size()) {
      throw ContractError(fmt::format("start vector has {} entries, expected {}", start->size(),
                                      anchor.size()));
    }
    current.assign(start->begin(), start->end());
  }

  RankResult result;
  std::vector<double> next, scratch;
  double delta = 0.0;
  for (int k = 1; k <= config.max_iterations; ++k) {
    step_into(current, anchor, graph, config.alpha, next, scratch);
    delta = 0.0;
    for (std::size_t d = 0; d < next.size(); ++d) {
      delta = std::max(delta, std::abs(next[d] - current[d]));
    }
    current.swap(next);
    result.trace.rounds.push_back({k, delta});
    if (delta < config.tolerance) {
      result.trace.converged = true;
      break;
    }
  }

  result.scores.iterations = static_cast<int>(result.trace.rounds.size());
  result.scores.final_delta = delta;
  result.scores.converged = result.trace.converged;
  for (std::size_t d = 0; d < current.size(); ++d) {
    result.scores.scores.emplace(documents[d].id, current[d]);
  }
  result.vector = std::move(current);
  return result;
}

void save_trace(const IterationTrace& trace, const std::filesystem::path& path) {
  std::vector<records::Record> lines;
  lines.reserve(trace.rounds.size());
  for (const auto& r : trace.rounds) {
    records::Record rec;
    rec["iteration"] = r.iteration;
    rec["delta"] = r.delta;
    lines.push_back(std::move(rec));
  }
  records::write_lines(path, lines);
}

}  // namespace claimtrust
