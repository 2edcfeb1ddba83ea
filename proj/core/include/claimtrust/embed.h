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

// Claim embeddings and nomination of cross-document candidate pairs.

#ifndef CLAIMTRUST_EMBED_H_
#define CLAIMTRUST_EMBED_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "claimtrust/model.h"
#include "claimtrust/providers.h"

namespace claimtrust {

// Dense row-major matrix of unit vectors with a parallel id list. Rows are
// stored as 32-bit floats, matching the on-disk format.
class EmbeddingIndex {
 public:
  EmbeddingIndex() = default;
  // Throws ValidationError if data.size() != ids.size() * dim or any row norm
  // differs from 1 by more than 1e-6.
  EmbeddingIndex(std::size_t dim, std::vector<std::string> ids, std::vector<float> data);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  const std::vector<std::string>& ids() const { return ids_; }
  std::span<const float> row(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  const std::vector<float>& data() const { return data_; }

  friend bool operator==(const EmbeddingIndex&, const EmbeddingIndex&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<std::string> ids_;
  std::vector<float> data_;
};

using ClaimEmbeddingIndex = EmbeddingIndex;

// Embeds `texts` in batches of `batch_size`, dispatched concurrently up to
// the provider's in-flight limit and reassembled in order. Throws
// ContractError for empty input, ProtocolError when batches disagree on
// dimension.
EmbeddingIndex build_text_index(std::vector<std::string> ids, const std::vector<std::string>& texts,
                                const Provider& provider, std::size_t batch_size = 64);

// Row i embeds claims[i].text and carries claims[i].claim_id.
EmbeddingIndex build_index(const std::vector<Claim>& claims, const Provider& provider,
                           std::size_t batch_size = 64);

// Dot product of two unit vectors, clamped to [-1, 1]. Throws ContractError
// on a dimension mismatch.
double cosine(std::span<const float> a, std::span<const float> b);
double cosine(std::span<const double> a, std::span<const double> b);

// The k most similar unordered claim pairs whose claims belong to different
// documents, sorted by similarity descending, then by (claim_a, claim_b).
// Each pair is oriented so that claim_a < claim_b. Throws DataError when an
// index id has no matching claim.
std::vector<CandidatePair> select_candidate_pairs(const EmbeddingIndex& index,
                                                  const std::vector<Claim>& claims,
                                                  std::size_t k = 4036);

// Binary layout, little endian: "CTEI", u32 version (1), u32 dim, u64 rows,
// then rows * dim float32 values. Ids go to `<path>.ids.jsonl` as {id}.
void save_index(const EmbeddingIndex& index, const std::filesystem::path& path);
EmbeddingIndex load_index(const std::filesystem::path& path);
std::filesystem::path index_ids_path(const std::filesystem::path& path);

void save_pairs(const std::vector<CandidatePair>& pairs, const std::filesystem::path& path);
std::vector<CandidatePair> load_pairs(const std::filesystem::path& path);

}  // namespace claimtrust

#endif  // CLAIMTRUST_EMBED_H_
