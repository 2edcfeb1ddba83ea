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

#include "claimtrust/rerank.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "claimtrust/errors.h"
#include "test_util.h"

namespace claimtrust {
namespace {

// Provider returning hand-picked vectors keyed by exact text.
class TableProvider final : public Provider {
 public:
  explicit TableProvider(std::map<std::string, Embedding> table) : table_(std::move(table)) {}
  std::string chat(std::string_view, std::string_view) const override { return ""; }

 protected:
  std::vector<Embedding> embed_raw(std::span<const std::string> texts) const override {
    std::vector<Embedding> out;
    for (const auto& t : texts) out.push_back(table_.at(t));
    return out;
  }

 private:
  std::map<std::string, Embedding> table_;
};

TrustScores trust_of(std::map<std::string, double> scores) {
  TrustScores t;
  t.scores = std::move(scores);
  return t;
}

std::vector<std::string> order(const std::vector<RankedResult>& results) {
  std::vector<std::string> ids;
  for (const auto& r : results) ids.push_back(r.doc_id);
  return ids;
}

TEST(Mode, NamesRoundTrip) {
  EXPECT_EQ(parse_mode("vanilla"), RankMode::kVanilla);
  EXPECT_EQ(parse_mode("score"), RankMode::kScore);
  EXPECT_EQ(mode_name(RankMode::kScore), "score");
  EXPECT_THROW(parse_mode("hybrid"), ValidationError);
}

TEST(Rerank, VanillaUsesNormalizedSimilarity) {
  const auto out = rerank({{"0000", 0.2}, {"0001", 0.6}}, trust_of({}), RankMode::kVanilla);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].doc_id, "0001");
  EXPECT_DOUBLE_EQ(out[0].combined, 0.8);
  EXPECT_EQ(out[0].rank, 1);
  EXPECT_EQ(out[1].rank, 2);
}

TEST(Rerank, TrustCanOvertakeSimilarity) {
  const auto out = rerank({{"0000", 0.9}, {"0001", 0.8}}, trust_of({{"0000", 0.2}, {"0001", 0.9}}),
                          RankMode::kScore, 0.5);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].doc_id, "0001");
  EXPECT_NEAR(out[0].combined, 0.90, 1e-12);
  EXPECT_NEAR(out[1].combined, 0.575, 1e-12);
  EXPECT_EQ(out[1].trust, 0.2);
}

TEST(Rerank, LambdaOneOrdersByTrust) {
  const auto out = rerank({{"0000", 0.9}, {"0001", 0.1}, {"0002", 0.5}},
                          trust_of({{"0000", 0.1}, {"0001", 0.7}, {"0002", 0.4}}),
                          RankMode::kScore, 1.0);
  EXPECT_EQ(order(out), (std::vector<std::string>{"0001", "0002", "0000"}));
}

TEST(Rerank, TiesBreakByDocId) {
  const auto out = rerank({{"0003", 0.5}, {"0001", 0.5}, {"0002", 0.5}}, trust_of({}),
                          RankMode::kVanilla);
  EXPECT_EQ(order(out), (std::vector<std::string>{"0001", "0002", "0003"}));
}

TEST(Rerank, MissingTrustIsNeutralAndCounted) {
  std::size_t missing = 0;
  const auto out =
      rerank({{"0000", 0.0}, {"0001", 0.0}}, trust_of({{"0000", 1.0}}), RankMode::kScore, 0.5,
             &missing);
  EXPECT_EQ(missing, 1u);
  EXPECT_EQ(out[1].trust, 0.5);
}

TEST(Rerank, LambdaOutsideUnitIntervalIsAContractError) {
  EXPECT_THROW(rerank({}, trust_of({}), RankMode::kScore, -0.1), ContractError);
  EXPECT_THROW(rerank({}, trust_of({}), RankMode::kScore, 1.5), ContractError);
}

std::vector<RetrievalHit> random_hits(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> sim(-1.0, 1.0);
  std::vector<RetrievalHit> hits;
  for (std::size_t i = 0; i < n; ++i) {
    // Coarse values so that ties occur.
    hits.push_back({format_doc_id(i), std::round(sim(rng) * 8) / 8});
  }
  std::shuffle(hits.begin(), hits.end(), rng);
  return hits;
}

TrustScores random_trust(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  TrustScores t;
  for (std::size_t i = 0; i < n; ++i) t.scores[format_doc_id(i)] = unit(rng);
  return t;
}

class RerankProperty : public ::testing::TestWithParam<int> {};

TEST_P(RerankProperty, LambdaZeroIsVanilla) {
  std::mt19937_64 rng(GetParam());
  const std::size_t n = 1 + rng() % 30;
  const auto hits = random_hits(rng, n);
  const auto trust = random_trust(rng, n);
  EXPECT_EQ(order(rerank(hits, trust, RankMode::kScore, 0.0)),
            order(rerank(hits, trust, RankMode::kVanilla)));
}

TEST_P(RerankProperty, RaisingTrustNeverLowersRank) {
  std::mt19937_64 rng(100 + GetParam());
  const std::size_t n = 2 + rng() % 30;
  const auto hits = random_hits(rng, n);
  auto trust = random_trust(rng, n);
  const double lambda = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  const std::string target = format_doc_id(rng() % n);
  auto rank_of = [&](const TrustScores& t) {
    for (const auto& r : rerank(hits, t, RankMode::kScore, lambda)) {
      if (r.doc_id == target) return r.rank;
    }
    return 0;
  };
  const int before = rank_of(trust);
  trust.scores[target] = std::min(1.0, trust.scores[target] + 0.3);
  EXPECT_LE(rank_of(trust), before);
}

TEST_P(RerankProperty, CombinedStaysInUnitInterval) {
  std::mt19937_64 rng(200 + GetParam());
  const std::size_t n = 1 + rng() % 30;
  for (const auto& r : rerank(random_hits(rng, n), random_trust(rng, n), RankMode::kScore, 0.3)) {
    EXPECT_GE(r.combined, 0.0);
    EXPECT_LE(r.combined, 1.0);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RerankProperty, ::testing::Range(0, 30));

TEST(Utf8Prefix, CountsCodePoints) {
  EXPECT_EQ(utf8_prefix("héllo", 2), "hé");
  EXPECT_EQ(utf8_prefix("abc", 10), "abc");
  EXPECT_EQ(utf8_prefix("", 3), "");
}

TEST(EmbedDocuments, OneRowPerDocumentInOrder) {
  MockProvider provider;
  auto docs = testing::make_documents(std::vector<Seed>(5, Seed::kUnknown));
  const auto index = embed_documents(docs, provider);
  EXPECT_EQ(index.ids(), testing::ids_of(docs));
  MockProvider again;
  EXPECT_EQ(index, embed_documents(docs, again));
}

TEST(Retrieve, IdenticalQueryRanksFirst) {
  MockProvider provider;
  auto docs = testing::make_documents(std::vector<Seed>(4, Seed::kUnknown));
  docs[2].body = "The governor signed the budget in Ohio.";
  const auto index = embed_documents(docs, provider);
  const auto hits = retrieve(docs[2].body, index, provider, 2);
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_EQ(hits[0].doc_id, "0002");
  EXPECT_NEAR(hits[0].similarity, 1.0, 1e-6);
}

TEST(Retrieve, TopNLargerThanCorpusReturnsEverything) {
  MockProvider provider;
  const auto docs = testing::make_documents(std::vector<Seed>(3, Seed::kUnknown));
  EXPECT_EQ(retrieve("query", embed_documents(docs, provider), provider, 50).size(), 3u);
}

TEST(Retrieve, OrderFollowsDotProducts) {
  // Query (1, 0). Documents at angles giving cosines 0.6, 1.0, -0.6, 0.6.
  auto docs = testing::make_documents(std::vector<Seed>(4, Seed::kUnknown));
  const std::vector<Embedding> rows{{0.6, 0.8}, {1.0, 0.0}, {-0.6, 0.8}, {0.6, -0.8}};
  std::map<std::string, Embedding> table{{"q", {1.0, 0.0}}};
  for (std::size_t i = 0; i < docs.size(); ++i) {
    docs[i].body = "body " + std::to_string(i);
    table[docs[i].body] = rows[i];
  }
  TableProvider provider(table);
  const auto hits = retrieve("q", embed_documents(docs, provider), provider, 4);
  ASSERT_EQ(hits.size(), 4u);
  EXPECT_EQ(hits[0].doc_id, "0001");
  EXPECT_EQ(hits[1].doc_id, "0000");
  EXPECT_EQ(hits[2].doc_id, "0003");
  EXPECT_EQ(hits[3].doc_id, "0002");
  EXPECT_NEAR(hits[1].similarity, 0.6, 1e-6);
  EXPECT_NEAR(hits[3].similarity, -0.6, 1e-6);
}

TEST(Retrieve, EmptyIndexIsAContractError) {
  MockProvider provider;
  EXPECT_THROW(retrieve("q", EmbeddingIndex{}, provider), ContractError);
}

TEST(SaveRankedResults, WritesOneRecordPerResult) {
  testing::TempDir dir;
  const auto results = rerank({{"0000", 0.0}}, trust_of({{"0000", 0.5}}), RankMode::kScore);
  save_ranked_results("who?", RankMode::kScore, results, dir / "rerank.jsonl");
  EXPECT_EQ(testing::read_file(dir / "rerank.jsonl"),
            "{\"query\":\"who?\",\"rank\":1,\"doc_id\":\"0000\",\"similarity\":0.0,"
            "\"trust\":0.5,\"combined\":0.5,\"mode\":\"score\"}\n");
}

}  // namespace
}  // namespace claimtrust
