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

#include <algorithm>
#include <fstream>

#include <fmt/format.h>

#include "claimtrust/errors.h"
#include "records.h"

namespace claimtrust {

std::string_view mode_name(RankMode mode) {
  return mode == RankMode::kVanilla ? "vanilla" : "score";
}

RankMode parse_mode(std::string_view name) {
  if (name == "vanilla") return RankMode::kVanilla;
  if (name == "score") return RankMode::kScore;
  throw ValidationError(fmt::format("unknown rank mode '{}'", name));
}

std::string utf8_prefix(std::string_view text, std::size_t max_chars) {
  std::size_t chars = 0;
  std::size_t i = 0;
  while (i < text.size() && chars < max_chars) {
    const auto lead = static_cast<unsigned char>(text[i]);
    std::size_t len = 1;
    if (lead >= 0xF0) {
      len = 4;
    } else if (lead >= 0xE0) {
      len = 3;
    } else if (lead >= 0xC0) {
      len = 2;
    }
    i = std::min(text.size(), i + len);
    ++chars;
  }
  return std::string(text.substr(0, i));
}

EmbeddingIndex embed_documents(const std::vector<Document>& documents, const Provider& provider,
                               const DocumentIndexOptions& options) {
  std::vector<std::string> ids, texts;
  ids.reserve(documents.size());
  texts.reserve(documents.size());
  for (const Document& d : documents) {
    ids.push_back(d.id);
    texts.push_back(utf8_prefix(d.body, options.prefix_chars));
  }
  return build_text_index(std::move(ids), texts, provider, options.batch_size);
}

std::vector<RetrievalHit> retrieve(std::string_view query, const EmbeddingIndex& index,
                                   const Provider& provider, std::size_t top_n) {
  if (index.empty()) throw ContractError("retrieve over an empty index");
  const std::string q(query);
  const Embedding qv = provider.embed(std::span<const std::string>(&q, 1)).front();
  if (qv.size() != index.dim()) {
    throw ProtocolError(fmt::format("query embedding has dimension {}, index has {}", qv.size(),
                                    index.dim()));
  }
  const std::vector<float> qf(qv.begin(), qv.end());

  std::vector<RetrievalHit> hits;
  hits.reserve(index.size());
  for (std::size_t i = 0; i < index.size(); ++i) {
    hits.push_back({index.ids()[i], cosine(std::span<const float>(qf), index.row(i))});
  }
  auto before = [](const RetrievalHit& a, const RetrievalHit& b) {
    return a.similarity != b.similarity ? a.similarity > b.similarity : a.doc_id < b.doc_id;
  };
  const std::size_t n = std::min(top_n, hits.size());
  std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(n), hits.end(),
                    before);
  hits.resize(n);
  return hits;
}

std::vector<RankedResult> rerank(const std::vector<RetrievalHit>& hits, const TrustScores& trust,
                                 RankMode mode, double lambda, std::size_t* missing_trust) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw ContractError(fmt::format("lambda must lie in [0, 1], got {}", lambda));
  }
  std::size_t missing = 0;
  std::vector<RankedResult> out;
  out.reserve(hits.size());
  for (const RetrievalHit& h : hits) {
    RankedResult r;
    r.doc_id = h.doc_id;
    r.similarity = h.similarity;
    if (auto it = trust.scores.find(h.doc_id); it != trust.scores.end()) {
      r.trust = it->second;
    } else {
      r.trust = 0.5;
      ++missing;
    }
    const double sim_norm = (h.similarity + 1.0) / 2.0;
    r.combined = mode == RankMode::kVanilla ? sim_norm
                                            : (1.0 - lambda) * sim_norm + lambda * r.trust;
    out.push_back(std::move(r));
  }
  std::stable_sort(out.begin(), out.end(), [](const RankedResult& a, const RankedResult& b) {
    return a.combined != b.combined ? a.combined > b.combined : a.doc_id < b.doc_id;
  });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = static_cast<int>(i + 1);
  if (missing_trust) *missing_trust += missing;
  return out;
}

void save_ranked_results(std::string_view query, RankMode mode,
                         const std::vector<RankedResult>& results,
                         const std::filesystem::path& path, bool append) {
  std::ofstream out(path, std::ios::binary | (append ? std::ios::app : std::ios::trunc));
  if (!out) throw IoError(fmt::format("cannot open {} for writing", path.string()));
  for (const RankedResult& r : results) {
    records::Record rec;
    rec["query"] = std::string(query);
    rec["rank"] = r.rank;
    rec["doc_id"] = r.doc_id;
    rec["similarity"] = r.similarity;
    rec["trust"] = r.trust;
    rec["combined"] = r.combined;
    rec["mode"] = mode_name(mode);
    out << rec.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
  }
  if (!out) throw IoError(fmt::format("write to {} failed", path.string()));
}

}  // namespace claimtrust
