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

// Evaluation harness comparing vanilla and trust-aware retrieval.

#ifndef CLAIMTRUST_EVAL_H_
#define CLAIMTRUST_EVAL_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "claimtrust/embed.h"
#include "claimtrust/model.h"
#include "claimtrust/prompt_template.h"
#include "claimtrust/providers.h"
#include "claimtrust/rerank.h"

namespace claimtrust {

struct EvalCase {
  std::string query;
  std::string expected;  // answer substring
};

// Case-insensitive containment after whitespace collapsing.
bool substring_match(std::string_view response, std::string_view expected);

// Fraction of cases whose expected string occurs in the paired response.
// Throws ContractError on a length mismatch or when there are no cases.
double substring_accuracy(const std::vector<std::string>& responses,
                          const std::vector<EvalCase>& cases);

// Value of a final "SCORE: <x>" line with 0 <= x <= 1, else nullopt.
std::optional<double> parse_score(std::string_view reply);

struct JudgeResult {
  std::vector<double> scores;  // one per case; failures score 0
  std::size_t parse_failures = 0;
  std::size_t provider_errors = 0;
};

// Asks the judge model to grade each response. The template must contain
// {query}, {expected} and {response}. Never throws for a single case.
JudgeResult judge_scores(const std::vector<std::string>& responses,
                         const std::vector<EvalCase>& cases, const PromptTemplate& tmpl,
                         const Provider& provider);

struct CaseOutcome {
  std::size_t case_index = 0;
  RankMode mode = RankMode::kVanilla;
  std::vector<std::string> context_ids;
  std::string response;
  bool matched = false;
  double judge = 0.0;
  std::string error;  // non-empty when answer generation failed
};

struct ModeReport {
  RankMode mode = RankMode::kVanilla;
  std::size_t cases = 0;
  std::size_t matched = 0;
  std::optional<double> substring_accuracy;  // absent when cases == 0
  std::optional<double> judge_mean;          // absent when cases == 0 or judging is off
  std::size_t generation_errors = 0;
  std::size_t judge_failures = 0;
};

struct EvalReport {
  std::size_t case_count = 0;
  std::vector<ModeReport> modes;
  std::vector<CaseOutcome> outcomes;  // mode-major, then case order
};

struct EvalOptions {
  std::size_t top_n = 10;
  double lambda = 0.5;
  std::size_t context_docs = 3;
  std::size_t context_chars = 2000;
  bool judge = true;
};

struct EvalTemplates {
  PromptTemplate answer;  // {query}, {context}
  PromptTemplate judge;   // {query}, {expected}, {response}
};

// For every mode and case: retrieve, rerank, answer from the top
// `context_docs` documents (each tagged with id and trust), then score.
EvalReport run_eval(const std::vector<EvalCase>& cases, const std::vector<Document>& documents,
                    const EmbeddingIndex& document_index, const TrustScores& trust,
                    const std::vector<RankMode>& modes, const Provider& provider,
                    const EvalTemplates& templates, const EvalOptions& options = {});

// Aligned table with columns Mode | Substring Accuracy | LLM Avg Score.
std::string format_report_table(const EvalReport& report);

// One {mode, cases, matched, substring_accuracy, llm_avg_score, ...} record
// per mode.
void save_report(const EvalReport& report, const std::filesystem::path& path);
// One record per CaseOutcome.
void save_outcomes(const EvalReport& report, const std::vector<EvalCase>& cases,
                   const std::filesystem::path& path);

void save_cases(const std::vector<EvalCase>& cases, const std::filesystem::path& path);
std::vector<EvalCase> load_cases(const std::filesystem::path& path);

// Deterministic synthetic cases: each picks a sentence from a document,
// asks about its leading words and expects its trailing words.
std::vector<EvalCase> generate_cases(const std::vector<Document>& documents, std::size_t count,
                                     std::uint64_t seed);

}  // namespace claimtrust

#endif  // CLAIMTRUST_EVAL_H_
