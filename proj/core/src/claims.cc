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

#include "claimtrust/claims.h"

#include <algorithm>
#include <regex>
#include <set>
#include <unordered_map>

#include <fmt/format.h>

#include "claimtrust/errors.h"
#include "claimtrust/ingest.h"
#include "claimtrust/parallel.h"
#include "records.h"

namespace claimtrust {

ExtractStats& ExtractStats::operator+=(const ExtractStats& other) {
  documents += other.documents;
  claims += other.claims;
  empty_documents += other.empty_documents;
  truncated_documents += other.truncated_documents;
  return *this;
}

ClassifyStats& ClassifyStats::operator+=(const ClassifyStats& other) {
  classified += other.classified;
  supports += other.supports;
  unrelated += other.unrelated;
  refutes += other.refutes;
  parse_failures += other.parse_failures;
  provider_errors += other.provider_errors;
  return *this;
}

std::vector<std::string> parse_numbered_list(std::string_view reply) {
  static const std::regex kItem(R"(^\s*(?:\*\*)?\d{1,3}[.)](?:\*\*)?\s+(.*\S)\s*$)");
  std::vector<std::string> items;
  std::size_t pos = 0;
  while (pos <= reply.size()) {
    std::size_t end = reply.find('\n', pos);
    if (end == std::string_view::npos) end = reply.size();
    const std::string line(reply.substr(pos, end - pos));
    std::smatch m;
    if (std::regex_match(line, m, kItem)) {
      std::string text = normalize_text(m[1].str());
      if (!text.empty()) items.push_back(std::move(text));
    }
    pos = end + 1;
  }
  return items;
}

std::vector<Claim> extract_claims(const Document& document, const PromptTemplate& tmpl,
                                  const Provider& provider, ExtractStats* stats,
                                  const ExtractOptions& options) {
  if (normalize_text(document.body).empty()) {
    throw ValidationError(fmt::format("document {} has an empty body", document.id));
  }
  const std::string reply = provider.chat(
      tmpl.system_prompt(),
      tmpl.render({{"document", document.body}, {"title", document.title},
                   {"doc_id", document.id}}));
  std::vector<std::string> items = parse_numbered_list(reply);

  ExtractStats local;
  local.documents = 1;
  if (items.empty()) local.empty_documents = 1;
  if (items.size() > options.max_claims) {
    items.resize(options.max_claims);
    local.truncated_documents = 1;
  }

  std::vector<Claim> claims;
  claims.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    const int ordinal = static_cast<int>(i);
    claims.push_back({make_claim_id(document.id, ordinal), document.id, std::move(items[i]),
                      ordinal});
  }
  local.claims = claims.size();
  if (stats) *stats += local;
  return claims;
}

CorpusClaims extract_corpus(const std::vector<Document>& documents, const PromptTemplate& tmpl,
                            const Provider& provider, const ExtractOptions& options) {
  tmpl.require({"document"});
  struct PerDoc {
    std::vector<Claim> claims;
    ExtractStats stats;
  };
  auto per_doc = parallel_map(documents.size(), provider.max_in_flight(), [&](std::size_t i) {
    PerDoc out;
    out.claims = extract_claims(documents[i], tmpl, provider, &out.stats, options);
    return out;
  });

  CorpusClaims result;
  std::set<std::string_view> texts;
  for (auto& d : per_doc) {
    result.stats += d.stats;
    for (auto& c : d.claims) result.claims.push_back(std::move(c));
  }
  for (const Claim& c : result.claims) texts.insert(c.text);
  result.stats.unique_texts = texts.size();
  return result;
}

std::optional<Polarity> parse_verdict(std::string_view reply) {
  static const std::regex kAnswer(R"(^\s*(?:\**\s*ANSWER\s*\**\s*:\s*)?\**\s*([+-]?1|0)\s*\**\s*\.?\s*$)",
                                  std::regex::icase);
  std::size_t end = reply.size();
  while (end > 0) {
    std::size_t begin = reply.rfind('\n', end - 1);
    begin = begin == std::string_view::npos ? 0 : begin + 1;
    const std::string line(reply.substr(begin, end - begin));
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      std::smatch m;
      if (!std::regex_match(line, m, kAnswer)) return std::nullopt;
      const std::string v = m[1].str();
      if (v == "0") return Polarity::kUnrelated;
      return v == "-1" ? Polarity::kRefutes : Polarity::kSupports;
    }
    if (begin == 0) break;
    end = begin - 1;
  }
  return std::nullopt;
}

Polarity classify_relation(const Claim& claim_a, const Claim& claim_b,
                           const PromptTemplate& tmpl, const Provider& provider,
                           ClassifyStats* stats, const ClassifyOptions& options) {
  if (claim_a.doc_id == claim_b.doc_id) {
    throw ContractError(fmt::format("claims {} and {} come from the same document",
                                    claim_a.claim_id, claim_b.claim_id));
  }
  const std::string system = tmpl.system_prompt();
  const std::string user = tmpl.render({{"claim_a", claim_a.text}, {"claim_b", claim_b.text}});

  std::optional<Polarity> verdict;
  for (int attempt = 0; attempt <= options.max_reasks && !verdict; ++attempt) {
    const std::string prompt =
        attempt == 0 ? user
                     : user + "\n\nYour previous reply could not be parsed. End your reply "
                              "with exactly one line of the form ANSWER: 1, ANSWER: 0 or "
                              "ANSWER: -1.";
    verdict = parse_verdict(provider.chat(system, prompt));
  }

  const Polarity result = verdict.value_or(Polarity::kUnrelated);
  if (stats) {
    ++stats->classified;
    if (!verdict) ++stats->parse_failures;
    switch (result) {
      case Polarity::kSupports:
        ++stats->supports;
        break;
      case Polarity::kRefutes:
        ++stats->refutes;
        break;
      case Polarity::kUnrelated:
        ++stats->unrelated;
        break;
    }
  }
  return result;
}

BatchResult classify_batch(const std::vector<CandidatePair>& pairs,
                           const std::vector<Claim>& claims, const PromptTemplate& tmpl,
                           const Provider& provider, std::size_t budget,
                           const ClassifyOptions& options) {
  tmpl.require({"claim_a", "claim_b"});
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    if (pairs[i].similarity > pairs[i - 1].similarity) {
      throw ContractError(fmt::format("candidate pairs not sorted by similarity at index {}", i));
    }
  }

  std::unordered_map<std::string_view, const Claim*> by_id;
  by_id.reserve(claims.size());
  for (const Claim& c : claims) by_id.emplace(c.claim_id, &c);
  auto lookup = [&](const std::string& id) -> const Claim& {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw DataError(fmt::format("candidate pair names unknown claim {}", id));
    return *it->second;
  };

  const std::size_t n = std::min(budget, pairs.size());
  std::vector<std::pair<const Claim*, const Claim*>> resolved;
  resolved.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    resolved.emplace_back(&lookup(pairs[i].claim_a), &lookup(pairs[i].claim_b));
  }

  struct Outcome {
    Polarity polarity;
    ClassifyStats stats;
  };
  auto outcomes = parallel_map(n, provider.max_in_flight(), [&](std::size_t i) {
    Outcome out{Polarity::kUnrelated, {}};
    try {
      out.polarity = classify_relation(*resolved[i].first, *resolved[i].second, tmpl, provider,
                                       &out.stats, options);
    } catch (const Error&) {
      out.stats = {};
      out.stats.classified = 1;
      out.stats.unrelated = 1;
      out.stats.provider_errors = 1;
    }
    return out;
  });

  BatchResult result;
  for (std::size_t i = 0; i < n; ++i) {
    result.stats += outcomes[i].stats;
    if (outcomes[i].polarity != Polarity::kUnrelated) {
      result.relations.push_back(
          {pairs[i].claim_a, pairs[i].claim_b, outcomes[i].polarity, pairs[i].similarity});
    }
  }
  return result;
}

void save_extract_stats(const ExtractStats& stats, const std::filesystem::path& path) {
  records::Record r;
  r["documents"] = stats.documents;
  r["claims"] = stats.claims;
  r["unique_texts"] = stats.unique_texts;
  r["empty_documents"] = stats.empty_documents;
  r["truncated_documents"] = stats.truncated_documents;
  records::write_lines(path, {r});
}

ExtractStats load_extract_stats(const std::filesystem::path& path) {
  ExtractStats s;
  records::read_lines(path, [&](const records::Record& r, std::size_t) {
    s.documents = static_cast<std::size_t>(records::get_int(r, "documents"));
    s.claims = static_cast<std::size_t>(records::get_int(r, "claims"));
    s.unique_texts = static_cast<std::size_t>(records::get_int(r, "unique_texts"));
    s.empty_documents = static_cast<std::size_t>(records::get_int(r, "empty_documents"));
    s.truncated_documents = static_cast<std::size_t>(records::get_int(r, "truncated_documents"));
  });
  return s;
}

void save_classify_stats(const ClassifyStats& stats, const std::filesystem::path& path) {
  records::Record r;
  r["classified"] = stats.classified;
  r["supports"] = stats.supports;
  r["unrelated"] = stats.unrelated;
  r["refutes"] = stats.refutes;
  r["parse_failures"] = stats.parse_failures;
  r["provider_errors"] = stats.provider_errors;
  records::write_lines(path, {r});
}

ClassifyStats load_classify_stats(const std::filesystem::path& path) {
  ClassifyStats s;
  records::read_lines(path, [&](const records::Record& r, std::size_t) {
    s.classified = static_cast<std::size_t>(records::get_int(r, "classified"));
    s.supports = static_cast<std::size_t>(records::get_int(r, "supports"));
    s.unrelated = static_cast<std::size_t>(records::get_int(r, "unrelated"));
    s.refutes = static_cast<std::size_t>(records::get_int(r, "refutes"));
    s.parse_failures = static_cast<std::size_t>(records::get_int(r, "parse_failures"));
    s.provider_errors = static_cast<std::size_t>(records::get_int(r, "provider_errors"));
  });
  return s;
}

}  // namespace claimtrust
