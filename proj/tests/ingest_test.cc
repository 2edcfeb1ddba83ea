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

#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "claimtrust/errors.h"
#include "test_util.h"

namespace claimtrust {
namespace {

using std::chrono::day;
using std::chrono::month;
using std::chrono::year;
using std::chrono::year_month_day;

constexpr const char* kHeader = "title,text,subject,date\n";

std::string row(int i, const std::string& subject, const std::string& date) {
  return fmt::format("Title {},\"Body number {}, with a comma.\",{},\"{}\"\n", i, i, subject,
                     date);
}

class CorpusFiles : public ::testing::Test {
 protected:
  void write(const std::string& true_csv, const std::string& fake_csv) {
    testing::write_file(dir_ / "True.csv", true_csv);
    testing::write_file(dir_ / "Fake.csv", fake_csv);
  }
  LoadedCorpus load(const CorpusFilter& filter = {}) {
    return load_corpus(dir_ / "True.csv", dir_ / "Fake.csv", filter);
  }
  testing::TempDir dir_;
};

TEST_F(CorpusFiles, NumbersTrueRowsFirst) {
  write(std::string(kHeader) + row(1, "politicsNews", "December 31, 2017 ") +
            row(2, "politicsNews", "May 30, 2017") + row(3, "worldnews", "Dec 1, 2017"),
        std::string(kHeader) + row(4, "News", "2017-06-02") + row(5, "News", "June 3, 2017"));
  const auto corpus = load();
  ASSERT_EQ(corpus.documents.size(), 5u);
  const std::vector<Seed> seeds{Seed::kTrusted, Seed::kTrusted, Seed::kTrusted, Seed::kUnknown,
                                Seed::kUnknown};
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(corpus.documents[i].id, format_doc_id(i));
    EXPECT_EQ(corpus.documents[i].seed, seeds[i]);
  }
  EXPECT_EQ(corpus.documents[0].title, "Title 1");
  EXPECT_EQ(corpus.documents[0].body, "Body number 1, with a comma.");
  EXPECT_EQ(corpus.documents[0].published, year_month_day(year(2017), month(12), day(31)));
  EXPECT_EQ(corpus.skipped.rows_read, 5u);
  EXPECT_TRUE(validate_corpus(corpus.documents).empty());
}

TEST_F(CorpusFiles, HeaderOnlyFilesGiveEmptyCorpus) {
  write(kHeader, kHeader);
  EXPECT_TRUE(load().documents.empty());
}

TEST_F(CorpusFiles, MissingColumnIsASchemaError) {
  write("title,text,date\nA,B,\"May 1, 2017\"\n", kHeader);
  EXPECT_THROW(load(), SchemaError);
}

TEST_F(CorpusFiles, MissingFileIsAnIoError) {
  EXPECT_THROW(load_corpus(dir_ / "nope.csv", dir_ / "nope2.csv", {}), IoError);
}

TEST_F(CorpusFiles, BadDatesAndEmptyBodiesAreSkipped) {
  write(std::string(kHeader) + row(1, "politicsNews", "someday") +
            "Empty,\"   \",politicsNews,\"May 1, 2017\"\n" + row(2, "politicsNews", "May 2, 2017"),
        kHeader);
  const auto corpus = load();
  ASSERT_EQ(corpus.documents.size(), 1u);
  EXPECT_EQ(corpus.documents[0].id, "0000");
  EXPECT_EQ(corpus.documents[0].title, "Title 2");
  EXPECT_EQ(corpus.skipped.bad_date, 1u);
  EXPECT_EQ(corpus.skipped.empty_body, 1u);
}

TEST_F(CorpusFiles, FiltersByDateAndSubject) {
  write(std::string(kHeader) + row(1, "politicsNews", "May 1, 2017") +
            row(2, "politicsNews", "June 1, 2017") + row(3, "worldnews", "June 2, 2017"),
        std::string(kHeader) + row(4, "politicsNews", "July 1, 2017"));
  CorpusFilter filter;
  filter.date_from = year_month_day(year(2017), month(6), day(1));
  filter.date_to = year_month_day(year(2017), month(6), day(30));
  filter.subject = "politicsNews";
  const auto corpus = load(filter);
  ASSERT_EQ(corpus.documents.size(), 1u);
  EXPECT_EQ(corpus.documents[0].title, "Title 2");
  EXPECT_EQ(corpus.skipped.filtered_out, 3u);
}

TEST_F(CorpusFiles, Deterministic) {
  write(std::string(kHeader) + row(1, "a", "May 1, 2017"), std::string(kHeader) + row(2, "b", "May 2, 2017"));
  EXPECT_EQ(load().documents, load().documents);
}

TEST(CorpusFilter, RejectsInvertedRange) {
  CorpusFilter filter;
  filter.date_from = year_month_day(year(2018), month(1), day(1));
  filter.date_to = year_month_day(year(2017), month(1), day(1));
  EXPECT_THROW(filter.validate(), ValidationError);
}

TEST(ParseDate, AcceptedForms) {
  const year_month_day may30(year(2017), month(5), day(30));
  EXPECT_EQ(parse_date("May 30, 2017"), may30);
  EXPECT_EQ(parse_date(" May 30, 2017 "), may30);
  EXPECT_EQ(parse_date("2017-05-30"), may30);
  EXPECT_EQ(parse_date("Dec 3, 2016"), year_month_day(year(2016), month(12), day(3)));
  EXPECT_FALSE(parse_date("February 30, 2017").has_value());
  EXPECT_FALSE(parse_date("https://example.com").has_value());
  EXPECT_EQ(format_date(may30), "2017-05-30");
}

TEST(NormalizeText, CollapsesWhitespace) {
  EXPECT_EQ(normalize_text("  a \t b\r\n\nc  "), "a b c");
  EXPECT_EQ(normalize_text(""), "");
}

TEST(RenderScores, AppendixLines) {
  TrustScores s;
  s.scores = {{"0000", 0.8696}};
  s.converged = true;
  s.iterations = 12;
  s.final_delta = 5e-7;
  EXPECT_EQ(render_scores(s),
            "Converged at round 12, quantity of change: 5e-07\nDocument 0000 's score: 0.8696\n");
}

TEST(RenderScores, EmptyScoresGiveHeaderOnly) {
  TrustScores s;
  s.converged = true;
  s.iterations = 1;
  EXPECT_EQ(render_scores(s), "Converged at round 1, quantity of change: 0\n");
}

class RoundTrip : public ::testing::TestWithParam<int> {};

TEST_P(RoundTrip, ClaimsRelationsScoresAndDocuments) {
  std::mt19937_64 rng(GetParam());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  testing::TempDir dir;

  std::vector<Claim> claims;
  for (int i = 0; i < 1 + static_cast<int>(rng() % 20); ++i) {
    const std::string d = format_doc_id(rng() % 100);
    claims.push_back({make_claim_id(d, i), d, fmt::format("Claim \"{}\" é\n{}", i, rng()), i});
  }
  save_claims(claims, dir / "claims.jsonl");
  EXPECT_EQ(load_claims(dir / "claims.jsonl"), claims);

  std::vector<Relation> relations;
  for (int i = 0; i < static_cast<int>(rng() % 20); ++i) {
    relations.push_back({fmt::format("0000-{}", i), fmt::format("0001-{}", i),
                         rng() % 2 ? Polarity::kSupports : Polarity::kRefutes,
                         unit(rng) * 2 - 1});
  }
  save_relations(relations, dir / "relations.jsonl");
  EXPECT_EQ(load_relations(dir / "relations.jsonl"), relations);

  TrustScores scores;
  for (int i = 0; i < static_cast<int>(rng() % 20); ++i) scores.scores[format_doc_id(i)] = unit(rng);
  scores.iterations = static_cast<int>(rng() % 80);
  scores.final_delta = unit(rng) * 1e-6;
  scores.converged = rng() % 2;
  save_scores(scores, dir / "scores.jsonl");
  const auto back = load_scores(dir / "scores.jsonl");
  EXPECT_EQ(back.scores, scores.scores);
  EXPECT_EQ(back.iterations, scores.iterations);
  EXPECT_EQ(back.final_delta, scores.final_delta);
  EXPECT_EQ(back.converged, scores.converged);

  auto docs = testing::make_documents({Seed::kTrusted, Seed::kUnknown});
  docs[0].published = year_month_day(year(2017), month(5), day(30));
  save_documents(docs, dir / "documents.jsonl");
  EXPECT_EQ(load_documents(dir / "documents.jsonl"), docs);
}

INSTANTIATE_TEST_SUITE_P(Seeds, RoundTrip, ::testing::Range(0, 10));

TEST(Records, CorruptLineReportsItsNumber) {
  testing::TempDir dir;
  save_claims({{"0000-0", "0000", "a", 0}, {"0000-1", "0000", "b", 1}, {"0000-2", "0000", "c", 2}},
              dir / "claims.jsonl");
  std::string text = testing::read_file(dir / "claims.jsonl");
  const auto first = text.find('\n');
  text.insert(first + 1, "{broken");
  testing::write_file(dir / "claims.jsonl", text);
  try {
    load_claims(dir / "claims.jsonl");
    FAIL() << "expected a ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Records, FiveRelationsKeepSixDecimals) {
  testing::TempDir dir;
  std::vector<Relation> relations;
  for (int i = 0; i < 5; ++i) {
    relations.push_back({fmt::format("0000-{}", i), fmt::format("0002-{}", i), Polarity::kRefutes,
                         0.123456 * (i + 1)});
  }
  save_relations(relations, dir / "relations.jsonl");
  const auto back = load_relations(dir / "relations.jsonl");
  ASSERT_EQ(back.size(), 5u);
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(back[i].similarity, relations[i].similarity, 1e-6);
}

}  // namespace
}  // namespace claimtrust
