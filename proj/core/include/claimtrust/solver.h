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

// Damped fixed-point propagation of trust over the signed document graph.
//
// Each round computes, for every document d,
//
//   P_d = sum_d' s_d' w+(d', d) / W+_d     (0 when W+_d = 0)
//   N_d = sum_d' s_d' w-(d', d) / W-_d     (0 when W-_d = 0)
//   s_d <- (1 - alpha) s0_d + alpha (P_d - N_d + 1) / 2
//
// from the previous round's vector (synchronous update). The map is an
// L-infinity contraction with factor alpha, so the iteration converges to a
// unique fixed point from any start in [0, 1]^n.

#ifndef CLAIMTRUST_SOLVER_H_
#define CLAIMTRUST_SOLVER_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "claimtrust/graph.h"
#include "claimtrust/model.h"

namespace claimtrust {

struct IterationRecord {
  int iteration;  // 1-based
  double delta;   // max |s^k - s^(k-1)|
};

struct IterationTrace {
  std::vector<IterationRecord> rounds;
  bool converged = false;
};

struct Influence {
  double positive = 0.0;  // P_d
  double negative = 0.0;  // N_d
  double net = 0.0;       // P_d - N_d
};

// initial_trusted for Trusted seeds, initial_unknown otherwise.
std::vector<double> initial_scores(const std::vector<Document>& documents,
                                   const TrustConfig& config);

Influence influence(std::span<const double> scores, const DocumentGraph& graph, std::size_t d);

// One synchronous update of every document.
std::vector<double> step(std::span<const double> scores, std::span<const double> anchor,
                         const DocumentGraph& graph, const TrustConfig& config);

struct RankResult {
  TrustScores scores;
  IterationTrace trace;
  std::vector<double> vector;  // final scores in graph index order
};

// Iterates `step` from `start` (default: the initial scores) until the
// L-infinity change drops below config.tolerance or config.max_iterations
// rounds have run. Not converging is reported through the result, not
// thrown. Throws ContractError when graph.doc_ids() differs from the
// document ids, ValidationError for a bad config.
RankResult claimrank(const DocumentGraph& graph, const std::vector<Document>& documents,
                     const TrustConfig& config,
                     std::optional<std::span<const double>> start = std::nullopt);

// Per-round delta log as line records {iteration, delta}.
void save_trace(const IterationTrace& trace, const std::filesystem::path& path);

}  // namespace claimtrust

#endif  // CLAIMTRUST_SOLVER_H_
