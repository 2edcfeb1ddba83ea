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

// Claim extraction and pairwise relation classification over a chat
// provider.

#ifndef CLAIMTRUST_CLAIMS_H_
#define CLAIMTRUST_CLAIMS_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "claimtrust/model.h"
#include "claimtrust/prompt_template.h"
#include "claimtrust/providers.h"

namespace claimtrust {

struct ExtractOptions {
  std::size_t max_claims = 50;
};

struct ExtractStats {
  std::size_t documents = 0;
  std::size_t claims = 0;
  std::size_t unique_texts = 0;     // distinct claim texts across the corpus
  std::size_t empty_documents = 0;  // replies with no parseable claim
  std::size_t truncated_documents = 0;

  ExtractStats& operator+=(const ExtractStats& other);
};

// Item texts of a numbered-list reply. Only lines shaped "<n>. text" or
// "<n>) text" count; everything else is reasoning and is ignored.
std::vector<std::string> parse_numbered_list(std::string_view reply);

// Extracts standalone claims from one document. The template must contain
// {document}. Throws ValidationError for an empty body; provider errors
// propagate. `stats`, when given, is incremented.
std::vector<Claim> extract_claims(const Document& document, const PromptTemplate& tmpl,
                                  const Provider& provider, ExtractStats* stats = nullptr,
                                  const ExtractOptions& options = {});

struct CorpusClaims {
  std::vector<Claim> claims;
  ExtractStats stats;
};

// Runs extract_claims over every document, concurrently up to the
// provider's in-flight limit. Claims are returned in document order.
CorpusClaims extract_corpus(const std::vector<Document>& documents, const PromptTemplate& tmpl,
                            const Provider& provider, const ExtractOptions& options = {});

// Verdict from the last non-empty line: "ANSWER: <1|0|-1>" (a bare "+1",
// "1", "0" or "-1" line is also accepted). Anything else is nullopt.
std::optional<Polarity> parse_verdict(std::string_view reply);

struct ClassifyOptions {
  int max_reasks = 2;  // additional attempts after an unparseable verdict
};

struct ClassifyStats {
  std::size_t classified = 0;
  std::size_t supports = 0;
  std::size_t unrelated = 0;
  std::size_t refutes = 0;
  std::size_t parse_failures = 0;
  std::size_t provider_errors = 0;

  ClassifyStats& operator+=(const ClassifyStats& other);
  friend bool operator==(const ClassifyStats&, const ClassifyStats&) = default;
};

// Classifies one cross-document pair. The template must contain {claim_a}
// and {claim_b}. Throws ContractError when both claims share a document.
// Provider errors propagate; an unparseable verdict after every re-ask gives
// kUnrelated and bumps stats->parse_failures.
Polarity classify_relation(const Claim& claim_a, const Claim& claim_b,
                           const PromptTemplate& tmpl, const Provider& provider,
                           ClassifyStats* stats = nullptr, const ClassifyOptions& options = {});

struct BatchResult {
  std::vector<Relation> relations;  // nonzero polarity only, input order
  ClassifyStats stats;
};

// Classifies the first min(budget, pairs.size()) pairs, which must be sorted
// by similarity descending. Per-pair failures degrade to kUnrelated; the
// batch never aborts on one pair. Throws DataError for a pair naming an
// unknown claim.
BatchResult classify_batch(const std::vector<CandidatePair>& pairs,
                           const std::vector<Claim>& claims, const PromptTemplate& tmpl,
                           const Provider& provider, std::size_t budget = 4036,
                           const ClassifyOptions& options = {});

void save_extract_stats(const ExtractStats& stats, const std::filesystem::path& path);
ExtractStats load_extract_stats(const std::filesystem::path& path);
void save_classify_stats(const ClassifyStats& stats, const std::filesystem::path& path);
ClassifyStats load_classify_stats(const std::filesystem::path& path);

}  // namespace claimtrust

#endif  // CLAIMTRUST_CLAIMS_H_
