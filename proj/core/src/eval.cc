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

#include "claimtrust/eval.h"

#include <algorithm>
#include <cctype>
#include <random>
#include <regex>
#include <sstream>

#include <fmt/format.h>

#include "claimtrust/errors.h"
#include "claimtrust/ingest.h"
#include "claimtrust/parallel.h"
#include "records.h"

namespace claimtrust {

namespace {

std::string fold(std::string_view text) {
  std::string out = normalize_text(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string last_line(std::string_view reply) {
  std::size_t end = reply.size();
  while (end > 0) {
    std::size_t begin = reply.rfind('\n', end - 1);
    begin = begin == std::string_view::npos ? 0 : begin + 1;
    std::string line(reply.substr(begin, end - begin));
    if (line.find_first_not_of(" \t\r") != std::string::npos) return line;
    if (begin == 0) break;
    end = begin - 1;
  }
  return {};
}

std::string build_context(const std::vector<RankedResult>& ranked,
                          const std::vector<Document>& documents, const EvalOptions& options,
                          std::vector<std::string>& ids) {
  std::string context;
  const std::size_t n = std::min(options.context_docs, ranked.size());
  for (std::size_t i = 0; i < n; ++i) {
    const RankedResult& r = ranked[i];
    auto it = std::find_if(documents.begin(), documents.end(),
                           [&](const Document& d) { return d.id == r.doc_id; });
    if (it == documents.end()) {
      throw DataError(fmt::format("retrieved document {} is not in the corpus", r.doc_id));
    }
    ids.push_back(r.doc_id);
    if (!context.empty()) context += "\n\n";
    context += fmt::format("[Document {} | trust {:.4f}]\n{}", r.doc_id, r.trust,
                           utf8_prefix(it->body, options.context_chars));
  }
  return context;
}

}  // namespace

bool substring_match(std::string_view response, std::string_view expected) {
  return fold(response).find(fold(expected)) != std::string::npos;
}

double substring_accuracy(const std::vector<std::string>& responses,
                          const std::vector<EvalCase>& cases) {
  if (responses.size() != cases.size()) {
    throw ContractError(fmt::format("{} responses for {} cases", responses.size(), cases.size()));
  }
  if (cases.empty()) throw ContractError("substring accuracy over zero cases");
  std::size_t matched = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    matched += substring_match(responses[i], cases[i].expected);
  }
  return static_cast<double>(matched) / static_cast<double>(cases.size());
}

std::optional<double> parse_score(std::string_view reply) {
  static const std::regex kScore(R"(^\s*\**\s*SCORE\s*\**\s*:\s*\**\s*([0-9]*\.?[0-9]+)\s*\**\s*$)",
                                 std::regex::icase);
  const std::string line = last_line(reply);
  std::smatch m;
  if (!std::regex_match(line, m, kScore)) return std::nullopt;
  const double v = std::stod(m[1].str());
  if (!(v >= 0.0 && v <= 1.0)) return std::nullopt;
  return v;
}

JudgeResult judge_scores(const std::vector<std::string>& responses,
                         const std::vector<EvalCase>& cases, const PromptTemplate& tmpl,
                         const Provider& provider) {
  if (responses.size() != cases.size()) {
    throw ContractError(fmt::format("{} responses for {} cases", responses.size(), cases.size()));
  }
  tmpl.require({"query", "expected", "response"});
  const std::string system = tmpl.system_prompt();

  enum class Status { kOk, kUnparseable, kProviderError };
  struct Graded {
    double score;
    Status status;
  };
  auto graded = parallel_map(cases.size(), provider.max_in_flight(), [&](std::size_t i) {
    try {
      const std::string reply = provider.chat(
          system, tmpl.render({{"query", cases[i].query},
                               {"expected", cases[i].expected},
                               {"response", responses[i]}}));
      if (auto s = parse_score(reply)) return Graded{*s, Status::kOk};
      return Graded{0.0, Status::kUnparseable};
    } catch (const Error&) {
      return Graded{0.0, Status::kProviderError};
    }
  });

  JudgeResult out;
  out.scores.reserve(graded.size());
  for (const Graded& g : graded) {
    out.scores.push_back(g.score);
    out.parse_failures += g.status == Status::kUnparseable;
    out.provider_errors += g.status == Status::kProviderError;
  }
  return out;
}

EvalReport run_eval(const std::vector<EvalCase>& cases, const std::vector<Document>& documents,
                    const EmbeddingIndex& document_index, const TrustScores& trust,
                    const std::vector<RankMode>& modes, const Provider& provider,
                    const EvalTemplates& templates, const EvalOptions& options) {
  for (const EvalCase& c : cases) {
    if (c.query.empty() || c.expected.empty()) {
      throw ValidationError("eval case with an empty query or expected answer");
    }
  }
  templates.answer.require({"query", "context"});
  if (options.judge) templates.judge.require({"query", "expected", "response"});

  EvalReport report;
  report.case_count = cases.size();
  const std::string answer_system = templates.answer.system_prompt();

  for (RankMode mode : modes) {
    auto outcomes = parallel_map(cases.size(), provider.max_in_flight(), [&](std::size_t i) {
      CaseOutcome o;
      o.case_index = i;
      o.mode = mode;
      try {
        const auto hits = retrieve(cases[i].query, document_index, provider, options.top_n);
        const auto ranked = rerank(hits, trust, mode, options.lambda);
        const std::string context = build_context(ranked, documents, options, o.context_ids);
        o.response = provider.chat(
            answer_system,
            templates.answer.render({{"query", cases[i].query}, {"context", context}}));
      } catch (const Error& e) {
        o.error = e.what();
      }
      o.matched = substring_match(o.response, cases[i].expected);
      return o;
    });

    ModeReport mr;
    mr.mode = mode;
    mr.cases = cases.size();
    std::vector<std::string> responses;
    responses.reserve(outcomes.size());
    for (const CaseOutcome& o : outcomes) {
      mr.matched += o.matched;
      mr.generation_errors += !o.error.empty();
      responses.push_back(o.response);
    }
    if (mr.cases > 0) {
      mr.substring_accuracy =
          static_cast<double>(mr.matched) / static_cast<double>(mr.cases);
      if (options.judge) {
        const JudgeResult judged = judge_scores(responses, cases, templates.judge, provider);
        double sum = 0.0;
        for (std::size_t i = 0; i < outcomes.size(); ++i) {
          outcomes[i].judge = judged.scores[i];
          sum += judged.scores[i];
        }
        mr.judge_mean = sum / static_cast<double>(mr.cases);
        mr.judge_failures = judged.parse_failures + judged.provider_errors;
      }
    }
    report.modes.push_back(mr);
    for (auto& o : outcomes) report.outcomes.push_back(std::move(o));
  }
  return report;
}

std::string format_report_table(const EvalReport& report) {
  const std::vector<std::string> header = {"Mode", "Substring Accuracy", "LLM Avg Score"};
  std::vector<std::vector<std::string>> rows;
  for (const ModeReport& m : report.modes) {
    std::string label(mode_name(m.mode));
    label[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(label[0])));
    rows.push_back({label,
                    m.substring_accuracy ? fmt::format("{:.5f}", *m.substring_accuracy) : "n/a",
                    m.judge_mean ? fmt::format("{:.5f}", *m.judge_mean) : "n/a"});
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& r : rows) width[c] = std::max(width[c], r[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s = "|";
    for (std::size_t c = 0; c < cells.size(); ++c) {
      s += fmt::format(" {:<{}} |", cells[c], width[c]);
    }
    return s + "\n";
  };
  std::string out = line(header);
  out += "|";
  for (std::size_t w : width) out += std::string(w + 2, '-') + "|";
  out += "\n";
  for (const auto& r : rows) out += line(r);
  return out;
}

void save_report(const EvalReport& report, const std::filesystem::path& path) {
  std::vector<records::Record> lines;
  for (const ModeReport& m : report.modes) {
    records::Record r;
    r["mode"] = mode_name(m.mode);
    r["cases"] = m.cases;
    r["matched"] = m.matched;
    r["substring_accuracy"] =
        m.substring_accuracy ? records::Record(*m.substring_accuracy) : records::Record(nullptr);
    r["llm_avg_score"] = m.judge_mean ? records::Record(*m.judge_mean) : records::Record(nullptr);
    r["generation_errors"] = m.generation_errors;
    r["judge_failures"] = m.judge_failures;
    lines.push_back(std::move(r));
  }
  records::write_lines(path, lines);
}

void save_outcomes(const EvalReport& report, const std::vector<EvalCase>& cases,
                   const std::filesystem::path& path) {
  std::vector<records::Record> lines;
  for (const CaseOutcome& o : report.outcomes) {
    records::Record r;
    r["mode"] = mode_name(o.mode);
    r["query"] = cases.at(o.case_index).query;
    r["expected"] = cases.at(o.case_index).expected;
    r["context"] = o.context_ids;
    r["response"] = o.response;
    r["matched"] = o.matched;
    r["judge"] = o.judge;
    if (!o.error.empty()) r["error"] = o.error;
    lines.push_back(std::move(r));
  }
  records::write_lines(path, lines);
}

void save_cases(const std::vector<EvalCase>& cases, const std::filesystem::path& path) {
  std::vector<records::Record> lines;
  for (const EvalCase& c : cases) lines.push_back({{"query", c.query}, {"expected", c.expected}});
  records::write_lines(path, lines);
}

std::vector<EvalCase> load_cases(const std::filesystem::path& path) {
  std::vector<EvalCase> out;
  records::read_lines(path, [&](const records::Record& r, std::size_t) {
    EvalCase c{records::get_string(r, "query"), records::get_string(r, "expected")};
    if (c.query.empty() || c.expected.empty()) {
      throw ValidationError("query and expected must be non-empty");
    }
    out.push_back(std::move(c));
  });
  return out;
}

std::vector<EvalCase> generate_cases(const std::vector<Document>& documents, std::size_t count,
                                     std::uint64_t seed) {
  struct Candidate {
    std::vector<std::string> words;
  };
  std::vector<Candidate> pool;
  for (const Document& d : documents) {
    std::string sentence;
    auto flush = [&] {
      std::istringstream in(sentence);
      Candidate c;
      for (std::string w; in >> w;) c.words.push_back(w);
      if (c.words.size() >= 8) pool.push_back(std::move(c));
      sentence.clear();
    };
    for (std::size_t i = 0; i < d.body.size(); ++i) {
      const char ch = d.body[i];
      sentence.push_back(ch);
      if ((ch == '.' || ch == '?' || ch == '!') &&
          (i + 1 == d.body.size() || d.body[i + 1] == ' ')) {
        flush();
      }
    }
    flush();
  }
  if (pool.empty()) return {};

  auto strip = [](std::string w) {
    while (!w.empty() && std::ispunct(static_cast<unsigned char>(w.back()))) w.pop_back();
    while (!w.empty() && std::ispunct(static_cast<unsigned char>(w.front()))) w.erase(0, 1);
    return w;
  };

  std::mt19937_64 rng(seed);
  std::vector<EvalCase> cases;
  cases.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Candidate& c = pool[rng() % pool.size()];
    std::string lead, tail;
    for (std::size_t w = 0; w < 5; ++w) lead += (w ? " " : "") + strip(c.words[w]);
    for (std::size_t w = c.words.size() - 3; w < c.words.size(); ++w) {
      tail += (tail.empty() ? "" : " ") + strip(c.words[w]);
    }
    cases.push_back({fmt::format("What is reported about: {}?", lead), tail});
  }
  return cases;
}

}  // namespace claimtrust
