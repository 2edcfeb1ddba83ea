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

#include "claimtrust/model.h"

#include <set>
#include <utility>

#include <fmt/format.h>

#include "claimtrust/errors.h"

namespace claimtrust {

std::string_view seed_name(Seed seed) {
  return seed == Seed::kTrusted ? "trusted" : "unknown";
}

Seed parse_seed(std::string_view name) {
  if (name == "trusted") return Seed::kTrusted;
  if (name == "unknown") return Seed::kUnknown;
  throw ValidationError(fmt::format("unknown seed label '{}'", name));
}

bool is_valid_doc_id(std::string_view id) {
  if (id.size() != 4) return false;
  for (char c : id) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

std::string format_doc_id(std::size_t index) {
  if (index > 9999) {
    throw ValidationError(
        fmt::format("document index {} exceeds four-digit id capacity", index));
  }
  return fmt::format("{:04d}", index);
}

std::string make_claim_id(std::string_view doc_id, int ordinal) {
  return fmt::format("{}-{}", doc_id, ordinal);
}

Polarity polarity_from_int(int value) {
  switch (value) {
    case -1:
      return Polarity::kRefutes;
    case 0:
      return Polarity::kUnrelated;
    case 1:
      return Polarity::kSupports;
  }
  throw ValidationError(fmt::format("polarity {} not in {{-1, 0, 1}}", value));
}

void TrustConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ValidationError(fmt::format("alpha must lie in (0, 1), got {}", alpha));
  }
  if (!(tolerance > 0.0)) {
    throw ValidationError(fmt::format("tolerance must be positive, got {}", tolerance));
  }
  if (max_iterations <= 0) {
    throw ValidationError(
        fmt::format("max_iterations must be positive, got {}", max_iterations));
  }
  if (!(0.0 <= initial_unknown && initial_unknown <= initial_trusted &&
        initial_trusted <= 1.0)) {
    throw ValidationError(fmt::format(
        "need 0 <= initial_unknown <= initial_trusted <= 1, got {} and {}",
        initial_unknown, initial_trusted));
  }
}

std::vector<Violation> validate_corpus(const std::vector<Document>& documents) {
  std::vector<Violation> report;
  std::set<std::string_view> seen;
  for (std::size_t i = 0; i < documents.size(); ++i) {
    const Document& doc = documents[i];
    if (!is_valid_doc_id(doc.id)) {
      report.push_back({Violation::Kind::kMalformedId, i,
                        fmt::format("document {}: malformed id '{}'", i, doc.id)});
    }
    if (!seen.insert(doc.id).second) {
      report.push_back({Violation::Kind::kDuplicateId, i,
                        fmt::format("document {}: duplicate id '{}'", i, doc.id)});
    }
    if (doc.body.find_first_not_of(" \t\r\n\f\v") == std::string::npos) {
      report.push_back({Violation::Kind::kEmptyBody, i,
                        fmt::format("document {} ('{}'): empty body", i, doc.id)});
    }
  }
  return report;
}

void validate_claims(const std::vector<Claim>& claims) {
  std::set<std::string_view> ids;
  std::set<std::pair<std::string_view, int>> positions;
  for (const Claim& c : claims) {
    if (c.text.empty()) {
      throw ValidationError(fmt::format("claim {} has empty text", c.claim_id));
    }
    if (!ids.insert(c.claim_id).second) {
      throw ValidationError(fmt::format("duplicate claim id {}", c.claim_id));
    }
    if (!positions.emplace(c.doc_id, c.ordinal).second) {
      throw ValidationError(fmt::format("duplicate ordinal {} in document {}",
                                        c.ordinal, c.doc_id));
    }
  }
}

void validate_relations(const std::vector<Relation>& relations) {
  std::set<std::pair<std::string_view, std::string_view>> pairs;
  for (const Relation& r : relations) {
    if (r.claim_a == r.claim_b) {
      throw ValidationError(fmt::format("relation pairs claim {} with itself", r.claim_a));
    }
    const auto key = r.claim_a < r.claim_b
                         ? std::pair<std::string_view, std::string_view>(r.claim_a, r.claim_b)
                         : std::pair<std::string_view, std::string_view>(r.claim_b, r.claim_a);
    if (!pairs.insert(key).second) {
      throw ValidationError(
          fmt::format("duplicate relation {{{}, {}}}", r.claim_a, r.claim_b));
    }
    const int p = to_int(r.polarity);
    if (p < -1 || p > 1) {
      throw ValidationError(fmt::format("relation {{{}, {}}} has polarity {}",
                                        r.claim_a, r.claim_b, p));
    }
    if (!(r.similarity >= -1.0 && r.similarity <= 1.0)) {
      throw ValidationError(fmt::format("relation {{{}, {}}} similarity {} outside [-1, 1]",
                                        r.claim_a, r.claim_b, r.similarity));
    }
  }
}

void validate_scores(const TrustScores& scores, double tolerance) {
  for (const auto& [id, s] : scores.scores) {
    if (!(s >= 0.0 && s <= 1.0)) {
      throw ValidationError(fmt::format("score {} of document {} outside [0, 1]", s, id));
    }
  }
  if (scores.converged && !(scores.final_delta < tolerance)) {
    throw ValidationError(fmt::format(
        "scores flagged converged but final change {} >= tolerance {}",
        scores.final_delta, tolerance));
  }
}

}  // namespace claimtrust
