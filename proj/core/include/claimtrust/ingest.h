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

// Corpus loading and persistence of every pipeline artifact.

#ifndef CLAIMTRUST_INGEST_H_
#define CLAIMTRUST_INGEST_H_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "claimtrust/model.h"

namespace claimtrust {

struct CorpusFilter {
  std::optional<std::chrono::year_month_day> date_from;  // inclusive
  std::optional<std::chrono::year_month_day> date_to;    // inclusive
  std::optional<std::string> subject;                    // exact match

  void validate() const;
  bool accepts(const std::optional<std::chrono::year_month_day>& date,
               std::string_view row_subject) const;
};

struct SkipReport {
  std::size_t rows_read = 0;
  std::size_t bad_date = 0;      // unparseable date column
  std::size_t empty_body = 0;    // body empty after normalization
  std::size_t filtered_out = 0;  // rejected by the CorpusFilter
};

struct LoadedCorpus {
  std::vector<Document> documents;
  SkipReport skipped;
};

// Reads the true/fake CSV pair. Rows from `true_path` come first and are
// seeded Trusted; rows from `fake_path` follow with seed Unknown. Ids are
// assigned 0000, 0001, ... over the surviving rows in file order.
//
// A row whose date does not parse is skipped (and counted) even when no date
// filter is active. Throws IoError for a missing file, SchemaError naming the
// first required column that is absent, ValidationError when more than
// 10,000 documents survive.
LoadedCorpus load_corpus(const std::filesystem::path& true_path,
                         const std::filesystem::path& fake_path,
                         const CorpusFilter& filter);

// Collapses whitespace runs to one space and trims both ends.
std::string normalize_text(std::string_view text);

// Accepts "May 30, 2017" (full or three-letter month, comma optional) and ISO
// "2017-05-30". Anything else, including impossible dates, yields nullopt.
std::optional<std::chrono::year_month_day> parse_date(std::string_view text);
std::string format_date(const std::chrono::year_month_day& date);

// Line-record persistence. load_* throws ParseError citing the 1-based line of
// the first malformed record.
void save_documents(const std::vector<Document>& documents, const std::filesystem::path& path);
std::vector<Document> load_documents(const std::filesystem::path& path);

void save_claims(const std::vector<Claim>& claims, const std::filesystem::path& path);
std::vector<Claim> load_claims(const std::filesystem::path& path);

void save_relations(const std::vector<Relation>& relations, const std::filesystem::path& path);
std::vector<Relation> load_relations(const std::filesystem::path& path);

// First line carries {iterations, final_delta, converged}; one {doc_id, score}
// record per document follows.
void save_scores(const TrustScores& scores, const std::filesystem::path& path);
TrustScores load_scores(const std::filesystem::path& path);

// Human-readable trace:
//   Converged at round <n>, quantity of change: <delta>
//   Document <id> 's score: <score to 4 places>
// When the iteration budget ran out the first line reads
//   Not converged at round <n>, quantity of change: <delta>
std::string render_scores(const TrustScores& scores);

}  // namespace claimtrust

#endif  // CLAIMTRUST_INGEST_H_
