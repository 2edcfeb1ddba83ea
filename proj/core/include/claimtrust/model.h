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

// Shared domain types: documents, claims, relations, solver configuration
// and trust scores.

#ifndef CLAIMTRUST_MODEL_H_
#define CLAIMTRUST_MODEL_H_

#include <chrono>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace claimtrust {

enum class Seed { kTrusted, kUnknown };

std::string_view seed_name(Seed seed);
// Accepts "trusted" / "unknown". Throws ValidationError otherwise.
Seed parse_seed(std::string_view name);

struct Document {
  std::string id;  // exactly four decimal digits, e.g. "0001"
  std::string title;
  std::string body;
  std::optional<std::chrono::year_month_day> published;
  Seed seed = Seed::kUnknown;

  friend bool operator==(const Document&, const Document&) = default;
};

// True iff `id` is exactly four ASCII digits.
bool is_valid_doc_id(std::string_view id);
// Zero-padded four-digit id for `index`. Throws ValidationError past 9999.
std::string format_doc_id(std::size_t index);

struct Claim {
  std::string claim_id;  // "<doc_id>-<ordinal>"
  std::string doc_id;
  std::string text;
  int ordinal = 0;

  friend bool operator==(const Claim&, const Claim&) = default;
};

std::string make_claim_id(std::string_view doc_id, int ordinal);

enum class Polarity : int { kRefutes = -1, kUnrelated = 0, kSupports = 1 };

// Throws ValidationError unless value is -1, 0 or 1.
Polarity polarity_from_int(int value);
inline int to_int(Polarity p) { return static_cast<int>(p); }

struct Relation {
  std::string claim_a;
  std::string claim_b;
  Polarity polarity = Polarity::kUnrelated;
  double similarity = 0.0;  // cosine score that nominated the pair

  friend bool operator==(const Relation&, const Relation&) = default;
};

// A cross-document claim pair nominated for relation classification.
struct CandidatePair {
  std::string claim_a;
  std::string claim_b;
  double similarity = 0.0;

  friend bool operator==(const CandidatePair&, const CandidatePair&) = default;
};

struct TrustConfig {
  double alpha = 0.85;
  double tolerance = 1e-6;
  int max_iterations = 1000;
  double initial_unknown = 0.5;
  double initial_trusted = 1.0;

  // Throws ValidationError if any field is out of range.
  void validate() const;
};

struct TrustScores {
  std::map<std::string, double> scores;  // doc_id -> score in [0, 1]
  int iterations = 0;
  double final_delta = 0.0;  // L-infinity change of the last iteration
  bool converged = false;
};

struct Violation {
  enum class Kind { kMalformedId, kDuplicateId, kEmptyBody };
  Kind kind;
  std::size_t index;  // position in the input list
  std::string message;
};

// Report-only corpus check. Empty result iff the corpus is valid.
std::vector<Violation> validate_corpus(const std::vector<Document>& documents);

// Throws ValidationError naming the first violation of each invariant.
void validate_relations(const std::vector<Relation>& relations);
void validate_claims(const std::vector<Claim>& claims);
// Scores in [0, 1]; converged implies final_delta < tolerance.
void validate_scores(const TrustScores& scores, double tolerance);

}  // namespace claimtrust

#endif  // CLAIMTRUST_MODEL_H_
