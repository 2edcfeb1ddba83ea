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

#include <algorithm>
#include <random>
#include <regex>
#include <thread>

#include <fmt/format.h>

#include "claimtrust/errors.h"
#include "claimtrust/providers.h"
#include "httplib.h"
#include "json.hpp"

namespace claimtrust {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr std::size_t kExcerptLength = 200;

bool retryable_status(int status) {
  return status == 408 || status == 429 || status >= 500;
}

std::chrono::milliseconds backoff_delay(std::chrono::milliseconds initial, int attempt) {
  thread_local std::mt19937_64 rng{std::random_device{}()};
  std::uniform_real_distribution<double> jitter(0.5, 1.5);
  const double scaled = static_cast<double>(initial.count()) *
                        static_cast<double>(1LL << std::min(attempt, 20)) * jitter(rng);
  return std::chrono::milliseconds(static_cast<long long>(scaled));
}

}  // namespace

HttpProvider::HttpProvider(ProviderConfig config) : config_(std::move(config)) {
  config_.validate();
  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(config_.base_url, m, kUrl)) {
    throw ValidationError(fmt::format("base_url '{}' is not an http(s) URL", config_.base_url));
  }
  scheme_host_port_ = m[1].str();
  path_prefix_ = m[2].matched ? m[2].str() : "";
  while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
}

std::string HttpProvider::post_json(const std::string& path, const std::string& body) const {
  const auto timeout = std::chrono::duration<double>(config_.timeout_seconds);
  const auto timeout_us = std::chrono::duration_cast<std::chrono::microseconds>(timeout);

  httplib::Headers headers;
  if (config_.api_key) {
    headers.emplace("Authorization", "Bearer " + *config_.api_key);
  }

  int last_status = 0;
  std::string last_body;
  std::string last_transport;
  bool last_timed_out = false;

  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff_delay(config_.backoff_initial, attempt - 1));
    }
    httplib::Client client(scheme_host_port_);
    if (!client.is_valid()) {
      throw ProviderError(0, "", fmt::format("unsupported endpoint {}", scheme_host_port_));
    }
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout_us);
    const auto usecs = timeout_us - secs;
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());

    const auto start = Clock::now();
    auto res = client.Post(path_prefix_ + path, headers, body, "application/json");
    if (!res) {
      const auto err = res.error();
      last_status = 0;
      last_transport = httplib::to_string(err);
      last_timed_out = err == httplib::Error::ConnectionTimeout ||
                       (err == httplib::Error::Read && Clock::now() - start >= timeout * 0.9);
      continue;
    }
    last_timed_out = false;
    if (res->status >= 200 && res->status < 300) return res->body;

    last_status = res->status;
    last_body = res->body.substr(0, kExcerptLength);
    if (!retryable_status(res->status)) break;
  }

  const int attempts = config_.max_retries + 1;
  if (last_timed_out) {
    throw TimeoutError(fmt::format("POST {} timed out after {} attempt(s)", path, attempts));
  }
  if (last_status == 0) {
    throw ProviderError(0, "", fmt::format("POST {} failed: {}", path, last_transport));
  }
  throw ProviderError(last_status, last_body,
                      fmt::format("POST {} returned HTTP {}: {}", path, last_status, last_body));
}

std::string HttpProvider::chat(std::string_view system_prompt,
                               std::string_view user_prompt) const {
  json request = {
      {"model", config_.chat_model},
      {"temperature", config_.temperature},
      {"messages",
       json::array({{{"role", "system"}, {"content", std::string(system_prompt)}},
                    {{"role", "user"}, {"content", std::string(user_prompt)}}})},
  };
  const std::string raw = post_json("/v1/chat/completions", request.dump());
  try {
    const json response = json::parse(raw);
    const json& content = response.at("choices").at(0).at("message").at("content");
    if (!content.is_string()) throw ProtocolError("message content is not a string");
    return content.get<std::string>();
  } catch (const json::exception& e) {
    throw ProtocolError(fmt::format("malformed chat completion envelope: {}", e.what()));
  }
}

std::vector<Embedding> HttpProvider::embed_raw(std::span<const std::string> texts) const {
  json request = {
      {"model", config_.embed_model},
      {"input", json(std::vector<std::string>(texts.begin(), texts.end()))},
  };
  const std::string raw = post_json("/v1/embeddings", request.dump());
  try {
    const json response = json::parse(raw);
    const json& data = response.at("data");
    if (!data.is_array()) throw ProtocolError("embedding data is not an array");
    std::vector<std::pair<std::size_t, Embedding>> indexed;
    indexed.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
      const json& item = data[i];
      const std::size_t index = item.contains("index") ? item.at("index").get<std::size_t>() : i;
      indexed.emplace_back(index, item.at("embedding").get<Embedding>());
    }
    std::sort(indexed.begin(), indexed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Embedding> out;
    out.reserve(indexed.size());
    for (std::size_t i = 0; i < indexed.size(); ++i) {
      if (indexed[i].first != i) {
        throw ProtocolError(fmt::format("embedding indices are not 0..{}", indexed.size() - 1));
      }
      out.push_back(std::move(indexed[i].second));
    }
    return out;
  } catch (const json::exception& e) {
    throw ProtocolError(fmt::format("malformed embeddings envelope: {}", e.what()));
  }
}

}  // namespace claimtrust
