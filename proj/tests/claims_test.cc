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

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "claimtrust/errors.h"
#include "claimtrust/prompt_template.h"
#include "test_util.h"

namespace claimtrust {
namespace {

const std::filesystem::path kTemplates = CLAIMTRUST_TEMPLATE_DIR;

class ClaimsTest : public ::testing::Test {
 protected:
  PromptTemplate extract_ = load_template(kTemplates / "extract_claims.txt");
  PromptTemplate classify_ = load_template(kTemplates / "classify_relation.txt");
};

Document document(const std::string& id, const std::string& body) {
  Document d;
  d.id = id;
  d.title = "Title " + id;
  d.body = body;
  return d;
}

TEST(ParseNumberedList, AcceptsOnlyNumberedLines) {
  EXPECT_EQ(parse_numbered_list("Some reasoning first.\n1. First claim.\n2) Second claim.\n"
                                "not a claim\n  3.   Third claim.  \n4.\n"),
            (std::vector<std::string>{"First claim.", "Second claim.", "Third claim."}));
  EXPECT_TRUE(parse_numbered_list("no list here").empty());
}

TEST(ParseVerdict, ReadsTheFinalLine) {
  EXPECT_EQ(parse_verdict("Reasoning.\nANSWER: 1"), Polarity::kSupports);
  EXPECT_EQ(parse_verdict("ANSWER: -1\n\n"), Polarity::kRefutes);
  EXPECT_EQ(parse_verdict("answer: 0"), Polarity::kUnrelated);
  EXPECT_EQ(parse_verdict("-1"), Polarity::kRefutes);
  EXPECT_FALSE(parse_verdict("ANSWER: 1\nactually not sure").has_value());
  EXPECT_FALSE(parse_verdict("ANSWER: 2").has_value());
  EXPECT_FALSE(parse_verdict("").has_value());
}

TEST_F(ClaimsTest, ExtractsScriptedClaims) {
  MockProvider provider;
  provider.push_reply("1. Alice won the 2017 election.\n2. Turnout was 60 percent.");
  const auto claims = extract_claims(document("0003", "Alice won. Turnout was high."), extract_,
                                     provider);
  ASSERT_EQ(claims.size(), 2u);
  EXPECT_EQ(claims[0].claim_id, "0003-0");
  EXPECT_EQ(claims[0].ordinal, 0);
  EXPECT_EQ(claims[0].text, "Alice won the 2017 election.");
  EXPECT_EQ(claims[1].claim_id, "0003-1");
  EXPECT_EQ(claims[1].ordinal, 1);
  EXPECT_EQ(claims[1].doc_id, "0003");
}

TEST_F(ClaimsTest, EmptyBodyIsRejected) {
  MockProvider provider;
  EXPECT_THROW(extract_claims(document("0000", "  "), extract_, provider), ValidationError);
  EXPECT_EQ(provider.chat_calls(), 0u);
}

TEST_F(ClaimsTest, UnparseableReplyGivesNoClaims) {
  MockProvider provider;
  provider.push_reply("I cannot help with that.");
  ExtractStats stats;
  EXPECT_TRUE(extract_claims(document("0000", "Body."), extract_, provider, &stats).empty());
  EXPECT_EQ(stats.empty_documents, 1u);
}

TEST_F(ClaimsTest, TruncatesLongReplies) {
  MockProvider provider;
  std::string reply;
  for (int i = 1; i <= 7; ++i) reply += std::to_string(i) + ". Claim " + std::to_string(i) + ".\n";
  provider.push_reply(reply);
  ExtractStats stats;
  const auto claims =
      extract_claims(document("0000", "Body."), extract_, provider, &stats, ExtractOptions{5});
  EXPECT_EQ(claims.size(), 5u);
  EXPECT_EQ(stats.truncated_documents, 1u);
}

TEST_F(ClaimsTest, CorpusExtractionCountsUniqueTexts) {
  MockProvider provider;
  provider.add_rule("Title 0000", "1. Shared claim.\n2. Only in zero.");
  provider.add_rule("Title 0001", "1. Shared claim.");
  const auto result = extract_corpus({document("0000", "a"), document("0001", "b")}, extract_,
                                     provider);
  EXPECT_EQ(result.claims.size(), 3u);
  EXPECT_EQ(result.stats.documents, 2u);
  EXPECT_EQ(result.stats.claims, 3u);
  EXPECT_EQ(result.stats.unique_texts, 2u);
  EXPECT_EQ(result.claims[2].claim_id, "0001-0");
}

TEST_F(ClaimsTest, HeuristicMockExtractsDeterministically) {
  MockProvider a, b;
  const Document d = document("0000", "The Senate passed the bill on June 8, 2017. It rained.");
  EXPECT_EQ(extract_claims(d, extract_, a), extract_claims(d, extract_, b));
  EXPECT_FALSE(extract_claims(d, extract_, a).empty());
}

TEST_F(ClaimsTest, ClassifiesScriptedVerdicts) {
  const Claim senate{"0000-0", "0000", "The senate passed bill X in June 2017.", 0};
  const Claim approved{"0001-0", "0001", "Bill X was approved by the senate.", 0};
  const Claim same{"0002-0", "0002", "The senate passed bill X in June 2017.", 0};
  const Claim sixty{"0003-0", "0003", "Turnout was 60 percent.", 0};
  const Claim forty{"0004-0", "0004", "Turnout was 40 percent.", 0};

  MockProvider provider;
  provider.push_reply("Consistent.\nANSWER: 1");
  provider.push_reply("1");
  provider.push_reply("Incompatible figures.\nANSWER: -1");
  EXPECT_EQ(classify_relation(senate, approved, classify_, provider), Polarity::kSupports);
  EXPECT_EQ(classify_relation(senate, same, classify_, provider), Polarity::kSupports);
  EXPECT_EQ(classify_relation(sixty, forty, classify_, provider), Polarity::kRefutes);
}

TEST_F(ClaimsTest, SameDocumentPairIsAContractError) {
  MockProvider provider;
  const Claim a{"0000-0", "0000", "x", 0};
  const Claim b{"0000-1", "0000", "y", 1};
  EXPECT_THROW(classify_relation(a, b, classify_, provider), ContractError);
}

TEST_F(ClaimsTest, ReasksThenFailsNeutral) {
  const Claim a{"0000-0", "0000", "x", 0};
  const Claim b{"0001-0", "0001", "y", 0};
  {
    MockProvider provider;
    provider.push_reply("hmm");
    provider.push_reply("ANSWER: -1");
    ClassifyStats stats;
    EXPECT_EQ(classify_relation(a, b, classify_, provider, &stats), Polarity::kRefutes);
    EXPECT_EQ(provider.chat_calls(), 2u);
    EXPECT_EQ(stats.parse_failures, 0u);
  }
  {
    MockProvider provider;
    provider.set_chat_mode(MockProvider::ChatMode::kEcho);
    ClassifyStats stats;
    EXPECT_EQ(classify_relation(a, b, classify_, provider, &stats, ClassifyOptions{2}),
              Polarity::kUnrelated);
    EXPECT_EQ(provider.chat_calls(), 3u);
    EXPECT_EQ(stats.parse_failures, 1u);
    EXPECT_EQ(stats.unrelated, 1u);
  }
}

struct ScriptedBatch {
  std::vector<Claim> claims;
  std::vector<CandidatePair> pairs;
  MockProvider provider;
};

// Ten cross-document pairs whose verdicts are keyed on a distinct word in
// the first claim.
void script(ScriptedBatch& batch, const std::vector<int>& verdicts) {
  const char* words[] = {"alpha", "bravo", "charlie", "delta", "echo",
                         "foxtrot", "golf", "hotel", "india", "juliet"};
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    const std::string a = format_doc_id(2 * i), b = format_doc_id(2 * i + 1);
    batch.claims.push_back({make_claim_id(a, 0), a, std::string("Claim ") + words[i], 0});
    batch.claims.push_back({make_claim_id(b, 0), b, "Other claim", 0});
    batch.pairs.push_back({make_claim_id(a, 0), make_claim_id(b, 0), 1.0 - 0.01 * i});
    batch.provider.add_rule(std::string("Claim ") + words[i],
                            "ANSWER: " + std::to_string(verdicts[i]));
  }
}

TEST_F(ClaimsTest, BatchKeepsOnlyMeaningfulRelations) {
  ScriptedBatch batch;
  script(batch, {1, 1, 0, 0, 0, -1, 0, 0, 0, 0});
  const auto result = classify_batch(batch.pairs, batch.claims, classify_, batch.provider, 10);
  ASSERT_EQ(result.relations.size(), 3u);
  EXPECT_EQ(result.relations[0].claim_a, "0000-0");
  EXPECT_EQ(result.relations[1].claim_a, "0002-0");
  EXPECT_EQ(result.relations[2].claim_a, "0010-0");
  EXPECT_EQ(result.relations[2].polarity, Polarity::kRefutes);
  EXPECT_DOUBLE_EQ(result.relations[2].similarity, 0.95);
  EXPECT_EQ(result.stats.supports, 2u);
  EXPECT_EQ(result.stats.unrelated, 7u);
  EXPECT_EQ(result.stats.refutes, 1u);
  EXPECT_EQ(result.stats.classified, 10u);
}

TEST_F(ClaimsTest, BatchHonoursBudget) {
  ScriptedBatch batch;
  script(batch, {1, 1, 0, 0, 0, -1, 0, 0, 0, 0});
  const auto none = classify_batch(batch.pairs, batch.claims, classify_, batch.provider, 0);
  EXPECT_TRUE(none.relations.empty());
  EXPECT_EQ(none.stats, ClassifyStats{});
  EXPECT_EQ(batch.provider.chat_calls(), 0u);

  const auto some = classify_batch(batch.pairs, batch.claims, classify_, batch.provider, 3);
  EXPECT_EQ(some.relations.size(), 2u);
  EXPECT_EQ(some.stats.classified, 3u);
}

TEST_F(ClaimsTest, BatchRejectsUnsortedPairs) {
  ScriptedBatch batch;
  script(batch, {1, 0});
  std::swap(batch.pairs[0], batch.pairs[1]);
  EXPECT_THROW(classify_batch(batch.pairs, batch.claims, classify_, batch.provider),
               ContractError);
}

TEST_F(ClaimsTest, BatchSurvivesAnyTranscript) {
  ScriptedBatch batch;
  script(batch, {1, 1, 1, 1});
  batch.provider.push_reply("garbage");
  batch.provider.push_reply("ANSWER: 7");
  const auto result = classify_batch(batch.pairs, batch.claims, classify_, batch.provider);
  EXPECT_EQ(result.stats.classified, 4u);
  EXPECT_LE(result.relations.size(), 4u);
  for (const auto& r : result.relations) EXPECT_NE(r.polarity, Polarity::kUnrelated);
}

TEST(ClassifyStatsFile, RoundTrips) {
  testing::TempDir dir;
  ClassifyStats s{10, 2, 7, 1, 3, 0};
  save_classify_stats(s, dir / "stats.jsonl");
  EXPECT_EQ(load_classify_stats(dir / "stats.jsonl"), s);
  ExtractStats e{3, 9, 7, 1, 0};
  save_extract_stats(e, dir / "extract.jsonl");
  const auto back = load_extract_stats(dir / "extract.jsonl");
  EXPECT_EQ(back.claims, 9u);
  EXPECT_EQ(back.unique_texts, 7u);
}

TEST(PromptTemplate, ParsesFrontMatterAndSections) {
  const auto t = parse_template(
      "---\nname: demo\nfew_shot:\n  - input: in\n    output: out\n---\n[system]\nBe brief.\n"
      "[user]\nQ: {query}\n");
  EXPECT_EQ(t.name, "demo");
  ASSERT_EQ(t.few_shot.size(), 1u);
  EXPECT_NE(t.system_prompt().find("Be brief."), std::string::npos);
  EXPECT_NE(t.system_prompt().find("out"), std::string::npos);
  EXPECT_EQ(t.render({{"query", "why {x}?"}}), "Q: why {x}?");
  EXPECT_NO_THROW(t.require({"query"}));
  EXPECT_THROW(t.require({"document"}), ValidationError);
  EXPECT_THROW(t.render({}), ContractError);
}

TEST(PromptTemplate, MalformedFrontMatterIsAParseError) {
  EXPECT_THROW(parse_template("---\nname: [unclosed\n---\n[system]\nx\n[user]\ny\n"), ParseError);
  EXPECT_THROW(parse_template("[system]\nno user section\n"), ParseError);
}

TEST(PromptTemplate, ShippedAssetsDeclareTheirPlaceholders) {
  EXPECT_NO_THROW(load_template(kTemplates / "extract_claims.txt").require({"document"}));
  EXPECT_NO_THROW(
      load_template(kTemplates / "classify_relation.txt").require({"claim_a", "claim_b"}));
  EXPECT_NO_THROW(load_template(kTemplates / "answer.txt").require({"query", "context"}));
  EXPECT_NO_THROW(
      load_template(kTemplates / "judge.txt").require({"query", "expected", "response"}));
}

}  // namespace
}  // namespace claimtrust
