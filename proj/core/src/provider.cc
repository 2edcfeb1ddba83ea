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

#include <cmath>
#include <cstdlib>

#include <fmt/format.h>

#include "claimtrust/errors.h"
#include "claimtrust/providers.h"

namespace claimtrust {

void ProviderConfig::validate() const {
  if (!(timeout_seconds > 0.0)) {
    throw ValidationError(fmt::format("timeout must be positive, got {}", timeout_seconds));
  }
  if (max_retries < 0) {
    throw ValidationError(fmt::format("max_retries must be >= 0, got {}", max_retries));
  }
  if (!(temperature >= 0.0 && temperature <= 2.0)) {
    throw ValidationError(fmt::format("temperature must lie in [0, 2], got {}", temperature));
  }
  if (max_in_flight < 1) {
    throw ValidationError(fmt::format("max_in_flight must be >= 1, got {}", max_in_flight));
  }
  if (backoff_initial.count() < 0) throw ValidationError("negative backoff");
}

void ProviderConfig::apply_environment() {
  if (const char* base = std::getenv("CLAIMRANK_API_BASE"); base && *base) {
    base_url = base;
  }
  if (const char* key = std::getenv("CLAIMRANK_API_KEY"); key && *key) {
    api_key = key;
  }
}

void normalize_l2(Embedding& v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  const double norm = std::sqrt(sum);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw ProtocolError("embedding has zero or non-finite norm");
  }
  for (double& x : v) x /= norm;
}

std::vector<Embedding> Provider::embed(std::span<const std::string> texts) const {
  if (texts.empty()) throw ContractError("embed called with an empty batch");
  std::vector<Embedding> out = embed_raw(texts);
  if (out.size() != texts.size()) {
    throw ProtocolError(fmt::format("expected {} embeddings, received {}", texts.size(),
                                    out.size()));
  }
  const std::size_t dim = out.front().size();
  if (dim == 0) throw ProtocolError("embedding of dimension 0");
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].size() != dim) {
      throw ProtocolError(fmt::format("embedding {} has dimension {}, expected {}", i,
                                      out[i].size(), dim));
    }
    normalize_l2(out[i]);
  }
  return out;
}

std::optional<std::string_view> delimited_segment(std::string_view text, std::size_t n) {
  std::size_t pos = 0;
  for (std::size_t i = 0;; ++i) {
    const std::size_t open = text.find("<<<", pos);
    if (open == std::string_view::npos) return std::nullopt;
    const std::size_t close = text.find(">>>", open + 3);
    if (close == std::string_view::npos) return std::nullopt;
    if (i == n) return text.substr(open + 3, close - open - 3);
    pos = close + 3;
  }
}

}  // namespace claimtrust
