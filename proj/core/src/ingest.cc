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

#include "claimtrust/ingest.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "claimtrust/csv.h"
#include "claimtrust/errors.h"
#include "records.h"

namespace claimtrust {

namespace fs = std::filesystem;
using records::Record;

void CorpusFilter::validate() const {
  if (date_from && date_to && *date_to < *date_from) {
    throw ValidationError(fmt::format("filter date_from {} is after date_to {}",
                                      format_date(*date_from), format_date(*date_to)));
  }
}

bool CorpusFilter::accepts(const std::optional<std::chrono::year_month_day>& date,
                           std::string_view row_subject) const {
  if (subject && row_subject != *subject) return false;
  if (date_from || date_to) {
    if (!date) return false;
    if (date_from && *date < *date_from) return false;
    if (date_to && *date > *date_to) return false;
  }
  return true;
}

std::string normalize_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

namespace {

std::optional<unsigned> month_from_name(std::string_view name) {
  static constexpr std::array<std::string_view, 12> kMonths = {
      "january", "february", "march",     "april",   "may",      "june",
      "july",    "august",   "september", "october", "november", "december"};
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower.size() < 3) return std::nullopt;
  for (unsigned i = 0; i < kMonths.size(); ++i) {
    if (lower == kMonths[i] || lower == kMonths[i].substr(0, 3)) return i + 1;
  }
  return std::nullopt;
}

std::optional<int> parse_number(std::string_view s) {
  if (s.empty()) return std::nullopt;
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::optional<std::chrono::year_month_day> make_date(int y, int m, int d) {
  if (m < 1 || m > 12 || d < 1 || d > 31) return std::nullopt;
  std::chrono::year_month_day date{std::chrono::year(y),
                                   std::chrono::month(static_cast<unsigned>(m)),
                                   std::chrono::day(static_cast<unsigned>(d))};
  if (!date.ok()) return std::nullopt;
  return date;
}

}  // namespace

std::optional<std::chrono::year_month_day> parse_date(std::string_view text) {
  const std::string s = normalize_text(text);
  if (s.empty()) return std::nullopt;

  // ISO 8601 calendar date.
  if (s.size() == 10 && s[4] == '-' && s[7] == '-') {
    auto y = parse_number(std::string_view(s).substr(0, 4));
    auto m = parse_number(std::string_view(s).substr(5, 2));
    auto d = parse_number(std::string_view(s).substr(8, 2));
    if (!y || !m || !d) return std::nullopt;
    return make_date(*y, *m, *d);
  }

  // "<Month> <day>[,] <year>"
  std::istringstream in(s);
  std::string month_token, day_token, year_token, extra;
  if (!(in >> month_token >> day_token >> year_token) || (in >> extra)) {
    return std::nullopt;
  }
  if (!day_token.empty() && day_token.back() == ',') day_token.pop_back();
  auto month = month_from_name(month_token);
  auto day = parse_number(day_token);
  auto year = parse_number(year_token);
  if (!month || !day || !year) return std::nullopt;
  return make_date(*year, static_cast<int>(*month), *day);
}

std::string format_date(const std::chrono::year_month_day& date) {
  return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(date.year()),
                     static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
}

namespace {

struct Columns {
  std::size_t title, text, subject, date;
};

Columns locate_columns(const std::vector<std::string>& header, const fs::path& path) {
  auto find = [&](std::string_view name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i) {
      std::string h = normalize_text(header[i]);
      // Tolerate a UTF-8 byte order mark on the first column.
      if (i == 0 && h.rfind("\xEF\xBB\xBF", 0) == 0) h.erase(0, 3);
      std::transform(h.begin(), h.end(), h.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      if (h == name) return i;
    }
    throw SchemaError(
        fmt::format("{}: missing required column '{}'", path.string(), name));
  };
  return {find("title"), find("text"), find("subject"), find("date")};
}

void read_csv(const fs::path& path, Seed seed, const CorpusFilter& filter,
              LoadedCorpus& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open corpus file {}", path.string()));
  CsvReader reader(in);
  auto header = reader.next();
  if (!header) throw SchemaError(fmt::format("{}: missing header row", path.string()));
  const Columns cols = locate_columns(*header, path);
  const std::size_t needed =
      std::max({cols.title, cols.text, cols.subject, cols.date}) + 1;

  while (auto row = reader.next()) {
    if (row->size() == 1 && row->front().empty()) continue;  // blank line
    ++out.skipped.rows_read;
    if (row->size() < needed) {
      throw ParseError(reader.record_line(),
                       fmt::format("{}: expected at least {} fields, found {}",
                                   path.string(), needed, row->size()));
    }
    const auto date = parse_date((*row)[cols.date]);
    if (!date) {
      ++out.skipped.bad_date;
      continue;
    }
    if (!filter.accepts(date, normalize_text((*row)[cols.subject]))) {
      ++out.skipped.filtered_out;
      continue;
    }
    std::string body = normalize_text((*row)[cols.text]);
    if (body.empty()) {
      ++out.skipped.empty_body;
      continue;
    }
    Document doc;
    doc.id = format_doc_id(out.documents.size());
    doc.title = normalize_text((*row)[cols.title]);
    doc.body = std::move(body);
    doc.published = date;
    doc.seed = seed;
    out.documents.push_back(std::move(doc));
  }
}

}  // namespace

LoadedCorpus load_corpus(const fs::path& true_path, const fs::path& fake_path,
                         const CorpusFilter& filter) {
  filter.validate();
  LoadedCorpus corpus;
  read_csv(true_path, Seed::kTrusted, filter, corpus);
  read_csv(fake_path, Seed::kUnknown, filter, corpus);
  return corpus;
}

void save_documents(const std::vector<Document>& documents, const fs::path& path) {
  std::vector<Record> lines;
  lines.reserve(documents.size());
  for (const Document& d : documents) {
    Record r;
    r["id"] = d.id;
    r["title"] = d.title;
    r["body"] = d.body;
    r["published"] = d.published ? Record(format_date(*d.published)) : Record(nullptr);
    r["seed"] = seed_name(d.seed);
    lines.push_back(std::move(r));
  }
  records::write_lines(path, lines);
}

std::vector<Document> load_documents(const fs::path& path) {
  std::vector<Document> out;
  records::read_lines(path, [&](const Record& r, std::size_t) {
    Document d;
    d.id = records::get_string(r, "id");
    if (!is_valid_doc_id(d.id)) throw ValidationError(fmt::format("malformed id '{}'", d.id));
    d.title = records::get_string(r, "title");
    d.body = records::get_string(r, "body");
    if (auto it = r.find("published"); it != r.end() && !it->is_null()) {
      d.published = parse_date(records::get_string(r, "published"));
      if (!d.published) throw ValidationError("unparseable published date");
    }
    d.seed = parse_seed(records::get_string(r, "seed"));
    out.push_back(std::move(d));
  });
  if (auto report = validate_corpus(out); !report.empty()) {
    throw ValidationError(fmt::format("{}: {}", path.string(), report.front().message));
  }
  return out;
}

void save_claims(const std::vector<Claim>& claims, const fs::path& path) {
  std::vector<Record> lines;
  lines.reserve(claims.size());
  for (const Claim& c : claims) {
    Record r;
    r["claim_id"] = c.claim_id;
    r["doc_id"] = c.doc_id;
    r["ordinal"] = c.ordinal;
    r["text"] = c.text;
    lines.push_back(std::move(r));
  }
  records::write_lines(path, lines);
}

std::vector<Claim> load_claims(const fs::path& path) {
  std::vector<Claim> out;
  records::read_lines(path, [&](const Record& r, std::size_t) {
    Claim c;
    c.claim_id = records::get_string(r, "claim_id");
    c.doc_id = records::get_string(r, "doc_id");
    c.ordinal = static_cast<int>(records::get_int(r, "ordinal"));
    c.text = records::get_string(r, "text");
    if (c.text.empty()) throw ValidationError("empty claim text");
    if (c.ordinal < 0) throw ValidationError("negative ordinal");
    out.push_back(std::move(c));
  });
  validate_claims(out);
  return out;
}

void save_relations(const std::vector<Relation>& relations, const fs::path& path) {
  std::vector<Record> lines;
  lines.reserve(relations.size());
  for (const Relation& rel : relations) {
    Record r;
    r["claim_a"] = rel.claim_a;
    r["claim_b"] = rel.claim_b;
    r["polarity"] = to_int(rel.polarity);
    r["similarity"] = rel.similarity;
    lines.push_back(std::move(r));
  }
  records::write_lines(path, lines);
}

std::vector<Relation> load_relations(const fs::path& path) {
  std::vector<Relation> out;
  records::read_lines(path, [&](const Record& r, std::size_t) {
    Relation rel;
    rel.claim_a = records::get_string(r, "claim_a");
    rel.claim_b = records::get_string(r, "claim_b");
    rel.polarity = polarity_from_int(static_cast<int>(records::get_int(r, "polarity")));
    rel.similarity = records::get_double(r, "similarity");
    out.push_back(std::move(rel));
  });
  validate_relations(out);
  return out;
}

void save_scores(const TrustScores& scores, const fs::path& path) {
  std::vector<Record> lines;
  lines.reserve(scores.scores.size() + 1);
  Record header;
  header["iterations"] = scores.iterations;
  header["final_delta"] = scores.final_delta;
  header["converged"] = scores.converged;
  lines.push_back(std::move(header));
  for (const auto& [id, s] : scores.scores) {
    Record r;
    r["doc_id"] = id;
    r["score"] = s;
    lines.push_back(std::move(r));
  }
  records::write_lines(path, lines);
}

TrustScores load_scores(const fs::path& path) {
  TrustScores out;
  bool have_header = false;
  records::read_lines(path, [&](const Record& r, std::size_t) {
    if (!have_header) {
      out.iterations = static_cast<int>(records::get_int(r, "iterations"));
      out.final_delta = records::get_double(r, "final_delta");
      out.converged = records::get_bool(r, "converged");
      have_header = true;
      return;
    }
    std::string id = records::get_string(r, "doc_id");
    const double s = records::get_double(r, "score");
    if (!(s >= 0.0 && s <= 1.0)) throw ValidationError(fmt::format("score {} outside [0, 1]", s));
    if (!out.scores.emplace(id, s).second) {
      throw ValidationError(fmt::format("duplicate score for document {}", id));
    }
  });
  if (!have_header) throw ParseError(1, fmt::format("{}: missing header record", path.string()));
  return out;
}

std::string render_scores(const TrustScores& scores) {
  std::string out = fmt::format("{} at round {}, quantity of change: {}\n",
                                scores.converged ? "Converged" : "Not converged",
                                scores.iterations, scores.final_delta);
  for (const auto& [id, s] : scores.scores) {
    out += fmt::format("Document {} 's score: {:.4f}\n", id, s);
  }
  return out;
}

}  // namespace claimtrust
