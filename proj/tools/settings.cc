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

#include "settings.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>

#include <fmt/format.h>

#include "claimtrust/errors.h"

#ifndef CLAIMTRUST_DEFAULT_TEMPLATE_DIR
#define CLAIMTRUST_DEFAULT_TEMPLATE_DIR "assets/prompts"
#endif

namespace claimtrust::cli {

const std::vector<SettingSpec>& setting_specs() {
  static const std::vector<SettingSpec> kSpecs = {
      {"paths.workdir", ".", "directory holding every pipeline artifact"},
      {"paths.templates", CLAIMTRUST_DEFAULT_TEMPLATE_DIR, "directory of prompt templates"},
      {"provider.kind", "http", "http or mock"},
      {"provider.base_url", "http://localhost:8000", "OpenAI-compatible endpoint root"},
      {"provider.api_key", "", "bearer token (empty: none)"},
      {"provider.chat_model", "gemma2:9b", "chat-completion model"},
      {"provider.embed_model", "mxbai-embed-large-v1", "embedding model"},
      {"provider.timeout", "60", "request timeout in seconds"},
      {"provider.max_retries", "2", "retries after a failed request"},
      {"provider.temperature", "0", "sampling temperature"},
      {"provider.max_in_flight", "4", "concurrent requests"},
      {"provider.backoff_ms", "500", "first retry delay in milliseconds"},
      {"provider.mock_seed", "0", "seed of the mock provider"},
      {"provider.mock_dim", "64", "embedding dimension of the mock provider"},
      {"solver.alpha", "0.85", "damping factor"},
      {"solver.tolerance", "1e-6", "L-infinity convergence tolerance"},
      {"solver.max_iterations", "1000", "iteration cap"},
      {"solver.initial_unknown", "0.5", "initial score of unlabeled documents"},
      {"solver.initial_trusted", "1.0", "initial score of trusted documents"},
      {"claims.max_claims", "50", "claims kept per document"},
      {"claims.budget", "4036", "candidate pairs sent to classification"},
      {"claims.max_reasks", "2", "re-asks after an unparseable verdict"},
      {"embed.batch_size", "64", "texts per embedding request"},
      {"embed.k", "4036", "candidate pairs nominated"},
      {"rerank.lambda", "0.5", "trust weight in score mode"},
      {"rerank.top_n", "10", "documents retrieved per query"},
      {"rerank.prefix_chars", "2000", "body prefix embedded per document"},
      {"rerank.mode", "score", "vanilla or score"},
      {"eval.context_docs", "3", "reranked documents given to the answer model"},
      {"eval.synthetic", "20", "synthetic cases generated when no case file is given"},
      {"eval.seed", "7", "seed of the synthetic case generator"},
      {"eval.judge", "true", "score answers with the judge model"},
  };
  return kSpecs;
}

Settings::Settings() {
  for (const auto& s : setting_specs()) values_.emplace(s.key, s.default_value);
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

void Settings::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open config file {}", path.string()));
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ParseError(number, fmt::format("{}: expected 'section.key = value'", path.string()));
    }
    const std::string key = trim(std::string_view(text).substr(0, eq));
    std::string value = trim(std::string_view(text).substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    try {
      set(key, std::move(value));
    } catch (const ValidationError& e) {
      throw ParseError(number, fmt::format("{}: {}", path.string(), e.what()));
    }
  }
}

void Settings::set(std::string_view key, std::string value) {
  auto it = values_.find(key);
  if (it == values_.end()) throw ValidationError(fmt::format("unknown setting '{}'", key));
  it->second = std::move(value);
}

const std::string& Settings::get(std::string_view key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ContractError(fmt::format("unknown setting '{}'", key));
  return it->second;
}

double Settings::get_double(std::string_view key) const {
  const std::string& v = get(key);
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception&) {
  }
  throw ValidationError(fmt::format("setting {} = '{}' is not a number", key, v));
}

long long Settings::get_int(std::string_view key) const {
  const std::string& v = get(key);
  long long out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ValidationError(fmt::format("setting {} = '{}' is not an integer", key, v));
  }
  return out;
}

bool Settings::get_bool(std::string_view key) const {
  std::string v = get(key);
  std::transform(v.begin(), v.end(), v.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ValidationError(fmt::format("setting {} = '{}' is not a boolean", key, v));
}

}  // namespace claimtrust::cli
