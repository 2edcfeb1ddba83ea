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

// Similarity retrieval over document embeddings and trust-aware re-ranking.

#ifndef CLAIMTRUST_RERANK_H_
#define CLAIMTRUST_RERANK_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "claimtrust/embed.h"
#include "claimtrust/model.h"
#include "claimtrust/providers.h"

namespace claimtrust {

enum class RankMode { kVanilla, kScore };

std::string_view mode_name(RankMode mode);
RankMode parse_mode(std::string_view name);  // "vanilla" | "score"

struct RetrievalHit {
  std::string doc_id;
  double similarity = 0.0;
};

struct RankedResult {
  std::string doc_id;
  double similarity = 0.0;  // cosine in [-1, 1]
  double trust = 0.0;       // in [0, 1]
  double combined = 0.0;
  int rank = 0;             // 1-based
};

// First `max_chars` UTF-8 code points of `text`.
std::string utf8_prefix(std::string_view text, std::size_t max_chars);

struct DocumentIndexOptions {
  std::size_t prefix_chars = 2000;
  std::size_t batch_size = 64;
};

// Row i embeds the body prefix of documents[i] and carries its id.
EmbeddingIndex embed_documents(const std::vector<Document>& documents, const Provider& provider,
                               const DocumentIndexOptions& options = {});

// Top `top_n` rows by cosine similarity to the query, descending, ties by
// doc_id ascending. Throws ContractError for an empty index.
std::vector<RetrievalHit> retrieve(std::string_view query, const EmbeddingIndex& index,
                                   const Provider& provider, std::size_t top_n = 10);

// vanilla: combined = (similarity + 1) / 2
// score:   combined = (1 - lambda) (similarity + 1) / 2 + lambda * trust
// Documents without a trust score get 0.5 and are counted in
// `missing_trust`. Output is sorted by combined descending, then doc_id.
// Throws ContractError unless 0 <= lambda <= 1.
std::vector<RankedResult> rerank(const std::vector<RetrievalHit>& hits, const TrustScores& trust,
                                 RankMode mode, double lambda = 0.5,
                                 std::size_t* missing_trust = nullptr);

// Line records {query, rank, doc_id, similarity, trust, combined, mode}.
void save_ranked_results(std::string_view query, RankMode mode,
                         const std::vector<RankedResult>& results,
                         const std::filesystem::path& path, bool append = false);

}  // namespace claimtrust

#endif  // CLAIMTRUST_RERANK_H_
