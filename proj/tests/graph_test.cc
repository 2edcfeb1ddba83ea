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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "claimtrust/errors.h"
#include "test_util.h"

namespace claimtrust {
namespace {

std::vector<Claim> one_claim_per_doc(std::size_t docs) {
  std::vector<Claim> claims;
  for (std::size_t d = 0; d < docs; ++d) {
    const std::string id = format_doc_id(d);
    claims.push_back({make_claim_id(id, 0), id, "claim of " + id, 0});
    claims.push_back({make_claim_id(id, 1), id, "second claim of " + id, 1});
  }
  return claims;
}

std::vector<std::string> doc_ids(std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(format_doc_id(i));
  return ids;
}

Relation rel(const std::string& a, const std::string& b, Polarity p) { return {a, b, p, 0.9}; }

TEST(BuildGraph, EmptyRelations) {
  const auto g = build_graph({}, one_claim_per_doc(3), doc_ids(3));
  EXPECT_EQ(g.size(), 3u);
  EXPECT_TRUE(g.entries().empty());
  for (std::size_t d = 0; d < 3; ++d) {
    EXPECT_EQ(g.sum_plus(d), 0.0);
    EXPECT_EQ(g.sum_minus(d), 0.0);
  }
}

TEST(BuildGraph, OneSupportingRelation) {
  const auto g = build_graph({rel("0000-0", "0001-0", Polarity::kSupports)}, one_claim_per_doc(2),
                             doc_ids(2));
  EXPECT_EQ(g.w_plus(0, 1), 1.0);
  EXPECT_EQ(g.w_plus(1, 0), 1.0);
  EXPECT_EQ(g.sum_plus(0), 1.0);
  EXPECT_EQ(g.sum_plus(1), 1.0);
  EXPECT_EQ(g.w_minus(0, 1), 0.0);
  EXPECT_TRUE(g.minus_column(0).empty());
  EXPECT_TRUE(g.minus_column(1).empty());
}

TEST(BuildGraph, RelationsAccumulate) {
  const std::vector<Relation> relations{rel("0000-0", "0001-0", Polarity::kSupports),
                                        rel("0000-1", "0001-1", Polarity::kSupports),
                                        rel("0001-0", "0000-1", Polarity::kRefutes)};
  GraphBuildStats stats;
  const auto g = build_graph(relations, one_claim_per_doc(2), doc_ids(2), &stats);
  EXPECT_EQ(g.w_plus(0, 1), 2.0);
  EXPECT_EQ(g.w_plus(1, 0), 2.0);
  EXPECT_EQ(g.w_minus(0, 1), 1.0);
  EXPECT_EQ(g.w_minus(1, 0), 1.0);
  EXPECT_EQ(stats.relations, 3u);
  EXPECT_EQ(stats.supporting, 2u);
  EXPECT_EQ(stats.refuting, 1u);
  EXPECT_EQ(stats.same_document, 0u);
}

TEST(BuildGraph, DropsSameDocumentRelations) {
  GraphBuildStats stats;
  const auto g = build_graph({rel("0000-0", "0000-1", Polarity::kSupports)}, one_claim_per_doc(2),
                             doc_ids(2), &stats);
  EXPECT_TRUE(g.entries().empty());
  EXPECT_EQ(stats.same_document, 1u);
}

TEST(BuildGraph, UnknownClaimIsADataError) {
  EXPECT_THROW(build_graph({rel("0000-0", "0009-0", Polarity::kSupports)}, one_claim_per_doc(2),
                           doc_ids(2)),
               DataError);
}

TEST(BuildGraph, ZeroPolarityIsRejected) {
  EXPECT_THROW(build_graph({rel("0000-0", "0001-0", Polarity::kUnrelated)},
                           one_claim_per_doc(2), doc_ids(2)),
               ValidationError);
}

TEST(DocumentGraph, RejectsStructuralViolations) {
  const std::vector<std::string> ids{"0000", "0001"};
  EXPECT_THROW(DocumentGraph(ids, {{0, 0, 1, EdgeSign::kPlus}}), ValidationError);
  EXPECT_THROW(DocumentGraph(ids, {{0, 1, 1, EdgeSign::kPlus}}), ValidationError);
  EXPECT_THROW(DocumentGraph(ids, {{0, 2, 1, EdgeSign::kPlus}, {2, 0, 1, EdgeSign::kPlus}}),
               ValidationError);
  EXPECT_THROW(DocumentGraph(ids, {{0, 1, 0, EdgeSign::kPlus}, {1, 0, 0, EdgeSign::kPlus}}),
               ValidationError);
}

TEST(GraphStats, EmptyGraph) {
  EXPECT_EQ(graph_stats(DocumentGraph({}, {})), GraphStats{});
}

TEST(GraphStats, OneEdge) {
  const auto g = build_graph({rel("0000-0", "0001-0", Polarity::kSupports)}, one_claim_per_doc(2),
                             doc_ids(2));
  const auto s = graph_stats(g);
  EXPECT_EQ(s.documents, 2u);
  EXPECT_EQ(s.positive_edges, 1u);
  EXPECT_EQ(s.negative_edges, 0u);
  EXPECT_EQ(s.isolated, 0u);
  EXPECT_EQ(s.min_degree, 1u);
  EXPECT_EQ(s.max_degree, 1u);
}

TEST(GraphStats, CountsIsolatedDocuments) {
  const auto g = build_graph({rel("0000-0", "0001-0", Polarity::kRefutes)}, one_claim_per_doc(3),
                             doc_ids(3));
  const auto s = graph_stats(g);
  EXPECT_EQ(s.isolated, 1u);
  EXPECT_EQ(s.negative_edges, 1u);
  EXPECT_EQ(s.min_degree, 0u);
  EXPECT_DOUBLE_EQ(s.mean_degree, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.median_degree, 1.0);
}

std::vector<Relation> random_relations(std::mt19937_64& rng, std::size_t docs, std::size_t n) {
  std::vector<Relation> out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string a = make_claim_id(format_doc_id(rng() % docs), rng() % 2);
    const std::string b = make_claim_id(format_doc_id(rng() % docs), rng() % 2);
    out.push_back(rel(a, b, rng() % 2 ? Polarity::kSupports : Polarity::kRefutes));
  }
  return out;
}

class GraphProperty : public ::testing::TestWithParam<int> {};

TEST_P(GraphProperty, SymmetricAndConserving) {
  std::mt19937_64 rng(GetParam());
  const std::size_t docs = 2 + rng() % 20;
  const auto relations = random_relations(rng, docs, rng() % 100);
  GraphBuildStats stats;
  const auto g = build_graph(relations, one_claim_per_doc(docs), doc_ids(docs), &stats);
  double total_plus = 0, total_minus = 0;
  for (std::size_t d = 0; d < docs; ++d) {
    total_plus += g.sum_plus(d);
    total_minus += g.sum_minus(d);
    for (std::size_t e = 0; e < docs; ++e) {
      EXPECT_EQ(g.w_plus(d, e), g.w_plus(e, d));
      EXPECT_EQ(g.w_minus(d, e), g.w_minus(e, d));
    }
    EXPECT_EQ(g.w_plus(d, d), 0.0);
  }
  std::size_t cross_plus = 0, cross_minus = 0;
  for (const auto& r : relations) {
    if (r.claim_a.substr(0, 4) == r.claim_b.substr(0, 4)) continue;
    (r.polarity == Polarity::kSupports ? cross_plus : cross_minus)++;
  }
  EXPECT_EQ(total_plus, 2.0 * cross_plus);
  EXPECT_EQ(total_minus, 2.0 * cross_minus);
  EXPECT_EQ(stats.supporting, cross_plus);
  EXPECT_EQ(stats.refuting, cross_minus);
  EXPECT_EQ(stats.same_document + cross_plus + cross_minus, relations.size());
  EXPECT_NO_THROW(g.validate());
}

TEST_P(GraphProperty, InvariantToRelationOrder) {
  std::mt19937_64 rng(100 + GetParam());
  const std::size_t docs = 2 + rng() % 20;
  auto relations = random_relations(rng, docs, rng() % 100);
  const auto claims = one_claim_per_doc(docs);
  const auto a = build_graph(relations, claims, doc_ids(docs));
  std::shuffle(relations.begin(), relations.end(), rng);
  const auto b = build_graph(relations, claims, doc_ids(docs));
  const auto ea = a.entries();
  const auto eb = b.entries();
  ASSERT_EQ(ea.size(), eb.size());
  for (std::size_t i = 0; i < ea.size(); ++i) {
    EXPECT_EQ(ea[i].from, eb[i].from);
    EXPECT_EQ(ea[i].to, eb[i].to);
    EXPECT_EQ(ea[i].weight, eb[i].weight);
    EXPECT_EQ(ea[i].sign, eb[i].sign);
  }
}

TEST_P(GraphProperty, FileRoundTrip) {
  std::mt19937_64 rng(200 + GetParam());
  const std::size_t docs = 2 + rng() % 20;
  const auto g = build_graph(random_relations(rng, docs, rng() % 60), one_claim_per_doc(docs),
                             doc_ids(docs));
  testing::TempDir dir;
  save_graph(g, dir / "graph.jsonl");
  const auto back = load_graph(dir / "graph.jsonl", doc_ids(docs));
  EXPECT_EQ(graph_stats(back), graph_stats(g));
  for (std::size_t d = 0; d < docs; ++d) {
    EXPECT_EQ(back.sum_plus(d), g.sum_plus(d));
    EXPECT_EQ(back.sum_minus(d), g.sum_minus(d));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, GraphProperty, ::testing::Range(0, 20));

TEST(LoadGraph, RejectsAsymmetricFile) {
  testing::TempDir dir;
  testing::write_file(dir / "graph.jsonl",
                      "{\"from\":\"0000\",\"to\":\"0001\",\"weight\":1.0,\"sign\":\"+\"}\n");
  EXPECT_THROW(load_graph(dir / "graph.jsonl", doc_ids(2)), ValidationError);
}

}  // namespace
}  // namespace claimtrust
