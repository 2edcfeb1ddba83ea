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

// Chat-completion and embedding providers. HttpProvider speaks the
// OpenAI-compatible wire protocol; MockProvider is a deterministic in-process
// stand-in used by the tests and by `--provider mock` in the CLI.

#ifndef CLAIMTRUST_PROVIDERS_H_
#define CLAIMTRUST_PROVIDERS_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace claimtrust {

using Embedding = std::vector<double>;

struct ProviderConfig {
  std::string base_url = "http://localhost:8000";
  std::optional<std::string> api_key;
  std::string chat_model = "gemma2:9b";
  std::string embed_model = "mxbai-embed-large-v1";
  double timeout_seconds = 60.0;
  int max_retries = 2;
  double temperature = 0.0;
  int max_in_flight = 4;
  // First backoff delay; attempt k waits initial * 2^k scaled by a jitter
  // factor drawn from [0.5, 1.5).
  std::chrono::milliseconds backoff_initial{500};

  void validate() const;
  // CLAIMRANK_API_BASE and CLAIMRANK_API_KEY override base_url / api_key.
  void apply_environment();
};

class Provider {
 public:
  virtual ~Provider() = default;

  // Text of the first completion choice, verbatim.
  virtual std::string chat(std::string_view system_prompt,
                           std::string_view user_prompt) const = 0;

  // One L2-normalized vector per input, in input order, all of one
  // dimension. Throws ContractError on an empty batch and ProtocolError on a
  // count or dimension mismatch or a zero vector.
  std::vector<Embedding> embed(std::span<const std::string> texts) const;

  // Upper bound on concurrent requests callers may issue.
  virtual int max_in_flight() const { return 1; }

 protected:
  virtual std::vector<Embedding> embed_raw(std::span<const std::string> texts) const = 0;
};

// Scales `v` to unit length. Throws ProtocolError for a zero or non-finite
// vector.
void normalize_l2(Embedding& v);

class HttpProvider final : public Provider {
 public:
  explicit HttpProvider(ProviderConfig config);

  std::string chat(std::string_view system_prompt,
                   std::string_view user_prompt) const override;
  int max_in_flight() const override { return config_.max_in_flight; }
  const ProviderConfig& config() const { return config_; }

 protected:
  std::vector<Embedding> embed_raw(std::span<const std::string> texts) const override;

 private:
  // POSTs `body` to base_url + path with retries; returns the response body.
  std::string post_json(const std::string& path, const std::string& body) const;

  ProviderConfig config_;
  std::string scheme_host_port_;
  std::string path_prefix_;
};

struct MockOptions {
  std::uint64_t seed = 0;
  int dim = 64;
  int max_in_flight = 4;
};

// Deterministic provider. Chat replies are chosen, in order of precedence,
// from queued replies, substring rules on the user prompt, then the chat
// mode. Embeddings are signed feature hashes of lower-cased word tokens, so
// equal texts embed identically.
//
// Configure before sharing across threads; chat/embed are thread-safe.
class MockProvider final : public Provider {
 public:
  enum class ChatMode {
    kHeuristic,  // emulates the extraction, relation, answer and judge tasks
    kEcho,       // returns the user prompt
  };

  explicit MockProvider(MockOptions options = {});

  void set_chat_mode(ChatMode mode) { mode_ = mode; }
  void add_rule(std::string needle, std::string reply);
  void push_reply(std::string reply);

  std::string chat(std::string_view system_prompt,
                   std::string_view user_prompt) const override;
  int max_in_flight() const override { return options_.max_in_flight; }

  std::size_t chat_calls() const;
  std::vector<std::size_t> embed_batch_sizes() const;

 protected:
  std::vector<Embedding> embed_raw(std::span<const std::string> texts) const override;

 private:
  std::string heuristic_reply(std::string_view system_prompt,
                              std::string_view user_prompt) const;
  Embedding hash_embedding(std::string_view text) const;

  MockOptions options_;
  ChatMode mode_ = ChatMode::kHeuristic;
  std::vector<std::pair<std::string, std::string>> rules_;

  mutable std::mutex mu_;
  mutable std::deque<std::string> queued_;
  mutable std::size_t chat_calls_ = 0;
  mutable std::vector<std::size_t> embed_batches_;
};

// Text between the n-th "<<<" ">>>" delimiter pair (0-based), or nullopt.
std::optional<std::string_view> delimited_segment(std::string_view text, std::size_t n);

}  // namespace claimtrust

#endif  // CLAIMTRUST_PROVIDERS_H_
