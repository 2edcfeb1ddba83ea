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

#include "cli.h"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "claimtrust/claims.h"
#include "claimtrust/embed.h"
#include "claimtrust/errors.h"
#include "claimtrust/eval.h"
#include "claimtrust/graph.h"
#include "claimtrust/ingest.h"
#include "claimtrust/providers.h"
#include "claimtrust/rerank.h"
#include "claimtrust/solver.h"
#include "settings.h"

namespace claimtrust::cli {

namespace {

namespace fs = std::filesystem;

// Artifact file names inside the work directory.
constexpr const char* kDocuments = "documents.jsonl";
constexpr const char* kIngestReport = "ingest.report.jsonl";
constexpr const char* kClaims = "claims.jsonl";
constexpr const char* kClaimStats = "claims.stats.jsonl";
constexpr const char* kClaimIndex = "claims.index";
constexpr const char* kPairs = "pairs.jsonl";
constexpr const char* kRelations = "relations.jsonl";
constexpr const char* kRelationStats = "relations.stats.jsonl";
constexpr const char* kGraph = "graph.jsonl";
constexpr const char* kGraphStats = "graph.stats.jsonl";
constexpr const char* kScores = "scores.jsonl";
constexpr const char* kTrace = "trace.txt";
constexpr const char* kIterations = "iterations.jsonl";
constexpr const char* kDocumentIndex = "documents.index";
constexpr const char* kRerank = "rerank.jsonl";
constexpr const char* kEvalCases = "eval.cases.jsonl";
constexpr const char* kEvalReport = "eval.report.jsonl";
constexpr const char* kEvalOutcomes = "eval.outcomes.jsonl";
constexpr const char* kEvalTable = "eval.table.txt";

struct Context {
  Settings settings;
  fs::path workdir;
  std::ostream& out;
  std::ostream& err;

  fs::path artifact(const char* name) const { return workdir / name; }
};

std::unique_ptr<Provider> make_provider(const Settings& s) {
  const std::string& kind = s.get("provider.kind");
  if (kind == "mock") {
    MockOptions options;
    options.seed = static_cast<std::uint64_t>(s.get_int("provider.mock_seed"));
    options.dim = static_cast<int>(s.get_int("provider.mock_dim"));
    options.max_in_flight = static_cast<int>(s.get_int("provider.max_in_flight"));
    return std::make_unique<MockProvider>(options);
  }
  if (kind != "http") {
    throw ValidationError(fmt::format("provider.kind must be http or mock, got '{}'", kind));
  }
  ProviderConfig config;
  config.base_url = s.get("provider.base_url");
  if (const auto& key = s.get("provider.api_key"); !key.empty()) config.api_key = key;
  config.chat_model = s.get("provider.chat_model");
  config.embed_model = s.get("provider.embed_model");
  config.timeout_seconds = s.get_double("provider.timeout");
  config.max_retries = static_cast<int>(s.get_int("provider.max_retries"));
  config.temperature = s.get_double("provider.temperature");
  config.max_in_flight = static_cast<int>(s.get_int("provider.max_in_flight"));
  config.backoff_initial = std::chrono::milliseconds(s.get_int("provider.backoff_ms"));
  return std::make_unique<HttpProvider>(config);
}

TrustConfig trust_config(const Settings& s) {
  TrustConfig c;
  c.alpha = s.get_double("solver.alpha");
  c.tolerance = s.get_double("solver.tolerance");
  c.max_iterations = static_cast<int>(s.get_int("solver.max_iterations"));
  c.initial_unknown = s.get_double("solver.initial_unknown");
  c.initial_trusted = s.get_double("solver.initial_trusted");
  c.validate();
  return c;
}

PromptTemplate template_named(const Settings& s, const char* file) {
  return load_template(fs::path(s.get("paths.templates")) / file);
}

std::size_t positive_size(const Settings& s, std::string_view key) {
  const long long v = s.get_int(key);
  if (v < 0) throw ValidationError(fmt::format("{} must be >= 0, got {}", key, v));
  return static_cast<std::size_t>(v);
}

std::vector<std::string> ids_of(const std::vector<Document>& documents) {
  std::vector<std::string> ids;
  ids.reserve(documents.size());
  for (const auto& d : documents) ids.push_back(d.id);
  return ids;
}

// Reuses documents.index when it covers exactly the current corpus.
EmbeddingIndex document_index(const Context& ctx, const std::vector<Document>& documents,
                              const Provider& provider) {
  const fs::path path = ctx.artifact(kDocumentIndex);
  if (fs::exists(path) && fs::exists(index_ids_path(path))) {
    EmbeddingIndex cached = load_index(path);
    if (cached.ids() == ids_of(documents)) return cached;
  }
  DocumentIndexOptions options;
  options.prefix_chars = positive_size(ctx.settings, "rerank.prefix_chars");
  options.batch_size = positive_size(ctx.settings, "embed.batch_size");
  EmbeddingIndex index = embed_documents(documents, provider, options);
  save_index(index, path);
  ctx.err << fmt::format("embedded {} documents into {}\n", index.size(), path.string());
  return index;
}

struct IngestArgs {
  std::string true_path;
  std::string fake_path;
  std::string date_from;
  std::string date_to;
  std::string subject;
};

int run_ingest(const Context& ctx, const IngestArgs& args) {
  CorpusFilter filter;
  auto date = [](const std::string& text, const char* flag) {
    auto d = parse_date(text);
    if (!d) throw ValidationError(fmt::format("{}: unparseable date '{}'", flag, text));
    return *d;
  };
  if (!args.date_from.empty()) filter.date_from = date(args.date_from, "--from");
  if (!args.date_to.empty()) filter.date_to = date(args.date_to, "--to");
  if (!args.subject.empty()) filter.subject = args.subject;

  const LoadedCorpus corpus = load_corpus(args.true_path, args.fake_path, filter);
  save_documents(corpus.documents, ctx.artifact(kDocuments));
  std::ofstream report(ctx.artifact(kIngestReport), std::ios::trunc);
  report << fmt::format(
      "{{\"rows_read\":{},\"bad_date\":{},\"empty_body\":{},\"filtered_out\":{},"
      "\"documents\":{}}}\n",
      corpus.skipped.rows_read, corpus.skipped.bad_date, corpus.skipped.empty_body,
      corpus.skipped.filtered_out, corpus.documents.size());
  ctx.err << fmt::format(
      "ingested {} documents from {} rows ({} bad dates, {} empty bodies, {} filtered)\n",
      corpus.documents.size(), corpus.skipped.rows_read, corpus.skipped.bad_date,
      corpus.skipped.empty_body, corpus.skipped.filtered_out);
  return kExitOk;
}

int run_extract(const Context& ctx) {
  const auto documents = load_documents(ctx.artifact(kDocuments));
  const auto tmpl = template_named(ctx.settings, "extract_claims.txt");
  const auto provider = make_provider(ctx.settings);
  ExtractOptions options;
  options.max_claims = positive_size(ctx.settings, "claims.max_claims");
  const CorpusClaims result = extract_corpus(documents, tmpl, *provider, options);
  save_claims(result.claims, ctx.artifact(kClaims));
  save_extract_stats(result.stats, ctx.artifact(kClaimStats));
  if (result.stats.empty_documents > 0) {
    ctx.err << fmt::format("warning: {} documents yielded no parseable claims\n",
                           result.stats.empty_documents);
  }
  if (result.stats.truncated_documents > 0) {
    ctx.err << fmt::format("warning: {} documents truncated to {} claims\n",
                           result.stats.truncated_documents, options.max_claims);
  }
  ctx.err << fmt::format("extracted {} claims ({} unique texts) from {} documents\n",
                         result.stats.claims, result.stats.unique_texts,
                         result.stats.documents);
  return kExitOk;
}

int run_embed(const Context& ctx) {
  const auto claims = load_claims(ctx.artifact(kClaims));
  const auto provider = make_provider(ctx.settings);
  const auto index =
      build_index(claims, *provider, positive_size(ctx.settings, "embed.batch_size"));
  save_index(index, ctx.artifact(kClaimIndex));
  ctx.err << fmt::format("embedded {} claims, dimension {}\n", index.size(), index.dim());
  return kExitOk;
}

int run_pairs(const Context& ctx) {
  const auto claims = load_claims(ctx.artifact(kClaims));
  const auto index = load_index(ctx.artifact(kClaimIndex));
  const auto pairs = select_candidate_pairs(index, claims, positive_size(ctx.settings, "embed.k"));
  save_pairs(pairs, ctx.artifact(kPairs));
  ctx.err << fmt::format("nominated {} cross-document pairs\n", pairs.size());
  return kExitOk;
}

int run_classify(const Context& ctx) {
  const auto claims = load_claims(ctx.artifact(kClaims));
  const auto pairs = load_pairs(ctx.artifact(kPairs));
  const auto tmpl = template_named(ctx.settings, "classify_relation.txt");
  const auto provider = make_provider(ctx.settings);
  ClassifyOptions options;
  options.max_reasks = static_cast<int>(positive_size(ctx.settings, "claims.max_reasks"));
  const BatchResult result = classify_batch(pairs, claims, tmpl, *provider,
                                            positive_size(ctx.settings, "claims.budget"), options);
  save_relations(result.relations, ctx.artifact(kRelations));
  save_classify_stats(result.stats, ctx.artifact(kRelationStats));
  ctx.err << fmt::format(
      "classified {} pairs: {} supporting, {} refuting, {} unrelated ({} parse failures, {} "
      "provider errors)\n",
      result.stats.classified, result.stats.supports, result.stats.refutes,
      result.stats.unrelated, result.stats.parse_failures, result.stats.provider_errors);
  return kExitOk;
}

int run_graph(const Context& ctx) {
  const auto documents = load_documents(ctx.artifact(kDocuments));
  const auto claims = load_claims(ctx.artifact(kClaims));
  const auto relations = load_relations(ctx.artifact(kRelations));
  GraphBuildStats build;
  const DocumentGraph graph = build_graph(relations, claims, ids_of(documents), &build);
  save_graph(graph, ctx.artifact(kGraph));
  const GraphStats stats = graph_stats(graph);
  save_graph_stats(stats, build, ctx.artifact(kGraphStats));
  ctx.err << fmt::format("graph: {} documents, {} supporting and {} refuting edges, {} isolated\n",
                         stats.documents, stats.positive_edges, stats.negative_edges,
                         stats.isolated);
  return kExitOk;
}

int run_rank(const Context& ctx) {
  const auto documents = load_documents(ctx.artifact(kDocuments));
  const DocumentGraph graph = load_graph(ctx.artifact(kGraph), ids_of(documents));
  const RankResult result = claimrank(graph, documents, trust_config(ctx.settings));
  save_scores(result.scores, ctx.artifact(kScores));
  save_trace(result.trace, ctx.artifact(kIterations));
  const std::string rendered = render_scores(result.scores);
  std::ofstream(ctx.artifact(kTrace), std::ios::binary | std::ios::trunc) << rendered;
  ctx.out << rendered;
  if (!result.scores.converged) {
    ctx.err << fmt::format("warning: no convergence within {} iterations (last change {})\n",
                           result.scores.iterations, result.scores.final_delta);
  }
  return kExitOk;
}

int run_rerank(const Context& ctx, const std::string& query) {
  const auto documents = load_documents(ctx.artifact(kDocuments));
  const TrustScores trust = load_scores(ctx.artifact(kScores));
  const auto provider = make_provider(ctx.settings);
  const EmbeddingIndex index = document_index(ctx, documents, *provider);
  const RankMode mode = parse_mode(ctx.settings.get("rerank.mode"));
  const auto hits = retrieve(query, index, *provider, positive_size(ctx.settings, "rerank.top_n"));
  std::size_t missing = 0;
  const auto ranked = rerank(hits, trust, mode, ctx.settings.get_double("rerank.lambda"), &missing);
  save_ranked_results(query, mode, ranked, ctx.artifact(kRerank));
  ctx.out << fmt::format("{:>4}  {:<6}  {:>10}  {:>6}  {:>8}\n", "rank", "doc", "similarity",
                         "trust", "combined");
  for (const auto& r : ranked) {
    ctx.out << fmt::format("{:>4}  {:<6}  {:>10.4f}  {:>6.4f}  {:>8.4f}\n", r.rank, r.doc_id,
                           r.similarity, r.trust, r.combined);
  }
  if (missing > 0) {
    ctx.err << fmt::format("warning: {} documents had no trust score; used 0.5\n", missing);
  }
  return kExitOk;
}

int run_eval_command(const Context& ctx, const std::string& cases_path) {
  const auto documents = load_documents(ctx.artifact(kDocuments));
  const TrustScores trust = load_scores(ctx.artifact(kScores));
  const auto provider = make_provider(ctx.settings);

  std::vector<EvalCase> cases;
  if (!cases_path.empty()) {
    cases = load_cases(cases_path);
  } else {
    cases = generate_cases(documents, positive_size(ctx.settings, "eval.synthetic"),
                           static_cast<std::uint64_t>(ctx.settings.get_int("eval.seed")));
    save_cases(cases, ctx.artifact(kEvalCases));
  }

  const EmbeddingIndex index = document_index(ctx, documents, *provider);
  EvalTemplates templates{template_named(ctx.settings, "answer.txt"),
                          template_named(ctx.settings, "judge.txt")};
  EvalOptions options;
  options.top_n = positive_size(ctx.settings, "rerank.top_n");
  options.lambda = ctx.settings.get_double("rerank.lambda");
  options.context_docs = positive_size(ctx.settings, "eval.context_docs");
  options.context_chars = positive_size(ctx.settings, "rerank.prefix_chars");
  options.judge = ctx.settings.get_bool("eval.judge");

  const EvalReport report = run_eval(cases, documents, index, trust,
                                     {RankMode::kVanilla, RankMode::kScore}, *provider,
                                     templates, options);
  save_report(report, ctx.artifact(kEvalReport));
  save_outcomes(report, cases, ctx.artifact(kEvalOutcomes));
  const std::string table = format_report_table(report);
  std::ofstream(ctx.artifact(kEvalTable), std::ios::binary | std::ios::trunc) << table;
  ctx.out << table;
  ctx.err << fmt::format("evaluated {} cases per mode\n", report.case_count);
  return kExitOk;
}

int run_stats(const Context& ctx) {
  const auto documents = load_documents(ctx.artifact(kDocuments));
  ctx.out << fmt::format("documents            {}\n", documents.size());
  if (fs::exists(ctx.artifact(kClaimStats))) {
    const auto s = load_extract_stats(ctx.artifact(kClaimStats));
    ctx.out << fmt::format("claims               {} ({} unique texts)\n", s.claims,
                           s.unique_texts);
    ctx.out << fmt::format("empty extractions    {}\n", s.empty_documents);
    ctx.out << fmt::format("truncated documents  {}\n", s.truncated_documents);
  }
  if (fs::exists(ctx.artifact(kRelationStats))) {
    const auto s = load_classify_stats(ctx.artifact(kRelationStats));
    ctx.out << fmt::format("classified pairs     {}\n", s.classified);
    ctx.out << fmt::format("  supporting (+1)    {}\n", s.supports);
    ctx.out << fmt::format("  unrelated (0)      {}\n", s.unrelated);
    ctx.out << fmt::format("  refuting (-1)      {}\n", s.refutes);
    ctx.out << fmt::format("  parse failures     {}\n", s.parse_failures);
    ctx.out << fmt::format("  provider errors    {}\n", s.provider_errors);
  }
  if (fs::exists(ctx.artifact(kGraph))) {
    const GraphStats g = graph_stats(load_graph(ctx.artifact(kGraph), ids_of(documents)));
    ctx.out << fmt::format("positive edges       {}\n", g.positive_edges);
    ctx.out << fmt::format("negative edges       {}\n", g.negative_edges);
    ctx.out << fmt::format("isolated documents   {}\n", g.isolated);
    ctx.out << fmt::format("degree min/median/mean/max  {}/{}/{:.3f}/{}\n", g.min_degree,
                           g.median_degree, g.mean_degree, g.max_degree);
  }
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trust propagation over claim-level document graphs", "claimrank"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string config_path;
  app.add_option("--config", config_path, "settings file of 'section.key = value' lines");

  std::map<std::string, std::string> flag_values;
  std::map<std::string, CLI::Option*> flags;
  for (const auto& spec : setting_specs()) {
    flags[spec.key] = app.add_option("--" + spec.key, flag_values[spec.key],
                                     fmt::format("{} (default: {})", spec.help,
                                                 spec.default_value));
  }
  app.add_option("--workdir", flag_values["paths.workdir"], "alias of --paths.workdir");

  IngestArgs ingest_args;
  auto* ingest = app.add_subcommand("ingest", "load and filter the true/fake CSV corpus");
  ingest->add_option("--true", ingest_args.true_path, "CSV of trusted articles")->required();
  ingest->add_option("--fake", ingest_args.fake_path, "CSV of unlabeled articles")->required();
  ingest->add_option("--from", ingest_args.date_from, "earliest publication date");
  ingest->add_option("--to", ingest_args.date_to, "latest publication date");
  ingest->add_option("--subject", ingest_args.subject, "keep rows with this subject");

  auto* extract = app.add_subcommand("extract", "extract claims from every document");
  auto* embed = app.add_subcommand("embed", "embed every claim");
  auto* pairs = app.add_subcommand("pairs", "nominate the top-k cross-document claim pairs");
  auto* classify = app.add_subcommand("classify", "classify nominated pairs into relations");
  auto* graph = app.add_subcommand("graph", "build the signed document graph");
  auto* rank = app.add_subcommand("rank", "propagate trust scores to convergence");

  std::string query;
  auto* rerank_cmd = app.add_subcommand("rerank", "retrieve and re-rank documents for a query");
  rerank_cmd->add_option("--query", query, "query text")->required();

  std::string cases_path;
  auto* eval = app.add_subcommand("eval", "compare vanilla and score modes");
  eval->add_option("--cases", cases_path, "line-record file of {query, expected}");

  auto* stats = app.add_subcommand("stats", "summarize the pipeline artifacts");

  std::vector<std::string> argv_storage = args;
  if (argv_storage.empty()) argv_storage.emplace_back("claimrank");
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Context ctx{Settings{}, {}, out, err};
    if (!config_path.empty()) ctx.settings.load_file(config_path);
    if (const char* base = std::getenv("CLAIMRANK_API_BASE"); base && *base) {
      ctx.settings.set("provider.base_url", base);
    }
    if (const char* key = std::getenv("CLAIMRANK_API_KEY"); key && *key) {
      ctx.settings.set("provider.api_key", key);
    }
    for (const auto& [key, option] : flags) {
      if (option->count() > 0) ctx.settings.set(key, flag_values[key]);
    }
    if (app.get_option("--workdir")->count() > 0) {
      ctx.settings.set("paths.workdir", flag_values["paths.workdir"]);
    }
    ctx.workdir = ctx.settings.get("paths.workdir");
    fs::create_directories(ctx.workdir);

    if (ingest->parsed()) return run_ingest(ctx, ingest_args);
    if (extract->parsed()) return run_extract(ctx);
    if (embed->parsed()) return run_embed(ctx);
    if (pairs->parsed()) return run_pairs(ctx);
    if (classify->parsed()) return run_classify(ctx);
    if (graph->parsed()) return run_graph(ctx);
    if (rank->parsed()) return run_rank(ctx);
    if (rerank_cmd->parsed()) return run_rerank(ctx, query);
    if (eval->parsed()) return run_eval_command(ctx, cases_path);
    if (stats->parsed()) return run_stats(ctx);
    err << app.help();
    return kExitUsage;
  } catch (const ProviderError& e) {
    err << "provider error: " << e.what() << "\n";
    return kExitProvider;
  } catch (const ProtocolError& e) {
    err << "protocol error: " << e.what() << "\n";
    return kExitProvider;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace claimtrust::cli
