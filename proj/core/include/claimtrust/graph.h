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

// Signed document graph: sparse supporting (W+) and contradicting (W-)
// weights with per-document incoming sums.

#ifndef CLAIMTRUST_GRAPH_H_
#define CLAIMTRUST_GRAPH_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "claimtrust/model.h"

namespace claimtrust {

enum class EdgeSign { kPlus, kMinus };

// One stored matrix entry: weight flowing from document `from` into `to`.
struct WeightedEdge {
  std::size_t from;
  std::size_t to;
  double weight;
  EdgeSign sign;
};

// Compressed-column storage. Column d lists the documents d' with a nonzero
// entry (d', d), ordered by d'.
class DocumentGraph {
 public:
  struct Entry {
    std::size_t source;
    double weight;
  };

  DocumentGraph() = default;

  // Entries with the same (from, to, sign) accumulate. Throws
  // ValidationError for an out-of-range index, a self loop, a non-positive
  // weight, or an asymmetric result.
  DocumentGraph(std::vector<std::string> doc_ids, const std::vector<WeightedEdge>& edges);

  std::size_t size() const { return doc_ids_.size(); }
  const std::vector<std::string>& doc_ids() const { return doc_ids_; }

  std::span<const Entry> plus_column(std::size_t d) const { return plus_.column(d); }
  std::span<const Entry> minus_column(std::size_t d) const { return minus_.column(d); }
  double sum_plus(std::size_t d) const { return plus_.sums[d]; }
  double sum_minus(std::size_t d) const { return minus_.sums[d]; }

  // Entry (from, to), or 0 when absent.
  double w_plus(std::size_t from, std::size_t to) const { return plus_.at(from, to); }
  double w_minus(std::size_t from, std::size_t to) const { return minus_.at(from, to); }

  // Every stored entry, column by column.
  std::vector<WeightedEdge> entries() const;

  // Re-checks every structural invariant; throws ValidationError.
  void validate() const;

 private:
  struct Csc {
    std::vector<std::size_t> col_start;  // size() + 1 offsets
    std::vector<Entry> entries;
    std::vector<double> sums;

    std::span<const Entry> column(std::size_t d) const {
      return {entries.data() + col_start[d], col_start[d + 1] - col_start[d]};
    }
    double at(std::size_t from, std::size_t to) const;
  };

  static Csc compress(std::size_t n, std::vector<WeightedEdge> edges);
  void check_matrix(const Csc& m, const char* name) const;

  std::vector<std::string> doc_ids_;
  Csc plus_;
  Csc minus_;
};

struct GraphBuildStats {
  std::size_t relations = 0;
  std::size_t supporting = 0;       // accepted +1 relations
  std::size_t refuting = 0;         // accepted -1 relations
  std::size_t same_document = 0;    // dropped
};

// Each +1 relation between claims of documents a != b adds 1 to w+(a,b) and
// w+(b,a); -1 relations likewise feed w-. Throws DataError for a relation
// whose claim or document is unknown, ValidationError for polarity 0.
DocumentGraph build_graph(const std::vector<Relation>& relations,
                          const std::vector<Claim>& claims,
                          const std::vector<std::string>& doc_ids,
                          GraphBuildStats* stats = nullptr);

struct GraphStats {
  std::size_t documents = 0;
  std::size_t positive_edges = 0;  // unordered document pairs with w+ > 0
  std::size_t negative_edges = 0;
  std::size_t isolated = 0;        // no entries of either sign
  double total_plus_weight = 0.0;  // sum of W+ column sums
  double total_minus_weight = 0.0;
  std::size_t min_degree = 0;      // distinct neighbours, either sign
  std::size_t max_degree = 0;
  double mean_degree = 0.0;
  double median_degree = 0.0;

  friend bool operator==(const GraphStats&, const GraphStats&) = default;
};

GraphStats graph_stats(const DocumentGraph& graph);

// Line records {from, to, weight, sign}, sign "+" or "-", one per stored
// entry (both orientations). The loader resolves ids against `doc_ids`,
// rebuilds the sums and rejects asymmetric input.
void save_graph(const DocumentGraph& graph, const std::filesystem::path& path);
DocumentGraph load_graph(const std::filesystem::path& path, std::vector<std::string> doc_ids);

void save_graph_stats(const GraphStats& stats, const GraphBuildStats& build,
                      const std::filesystem::path& path);

}  // namespace claimtrust

#endif  // CLAIMTRUST_GRAPH_H_
