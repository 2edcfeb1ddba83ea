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
#include <cctype>
#include <set>

#include <fmt/format.h>

#include "claimtrust/providers.h"

namespace claimtrust {

namespace {

std::uint64_t fnv1a(std::uint64_t seed, std::string_view text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (int i = 0; i < 8; ++i) {
    h ^= (seed >> (8 * i)) & 0xFFU;
    h *= 1099511628211ULL;
  }
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<std::string> words(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (unsigned char c : text) {
    if (std::isalnum(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

const std::set<std::string_view>& stopwords() {
  static const std::set<std::string_view> kStop = {
      "a",   "an",  "and", "are",  "as",   "at",   "be",  "by",   "for", "from",
      "had", "has", "have", "in",  "is",   "it",   "its", "of",   "on",  "that",
      "the", "this", "to",  "was", "were", "with", "will", "been", "did", "does"};
  return kStop;
}

bool is_negation(std::string_view w) {
  return w == "not" || w == "no" || w == "never" || w == "false" || w == "t" ||
         w == "denied" || w == "denies" || w == "deny" || w == "nor";
}

bool is_number(std::string_view w) {
  return !w.empty() && std::all_of(w.begin(), w.end(),
                                   [](unsigned char c) { return std::isdigit(c); });
}

struct Profile {
  std::set<std::string> content;
  std::set<std::string> numbers;
  int negations = 0;
};

Profile profile(std::string_view text) {
  Profile p;
  for (auto& w : words(text)) {
    if (is_negation(w)) {
      ++p.negations;
    } else if (!stopwords().contains(w)) {
      if (is_number(w)) p.numbers.insert(w);
      p.content.insert(std::move(w));
    }
  }
  return p;
}

std::vector<std::string> sentences(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    cur.push_back(c == '\n' || c == '\t' ? ' ' : c);
    const bool end = (c == '.' || c == '!' || c == '?') &&
                     (i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1])));
    if (end) {
      const auto b = cur.find_first_not_of(' ');
      if (b != std::string::npos) out.push_back(cur.substr(b));
      cur.clear();
    }
  }
  const auto b = cur.find_first_not_of(' ');
  if (b != std::string::npos) {
    auto tail = cur.substr(b);
    while (!tail.empty() && tail.back() == ' ') tail.pop_back();
    out.push_back(std::move(tail));
  }
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string extract_reply(std::string_view user) {
  const std::string_view doc = delimited_segment(user, 0).value_or(user);
  std::string out;
  int n = 0;
  for (const auto& s : sentences(doc)) {
    if (words(s).size() < 4) continue;
    out += fmt::format("{}. {}\n", ++n, s);
  }
  if (n == 0) return "The document contains no verifiable claims.\n";
  return out;
}

std::string relation_reply(std::string_view user) {
  const auto a = delimited_segment(user, 0);
  const auto b = delimited_segment(user, 1);
  if (!a || !b) return "I cannot find two claims to compare.";
  const Profile pa = profile(*a);
  const Profile pb = profile(*b);
  std::size_t shared = 0;
  for (const auto& w : pa.content) shared += pb.content.contains(w);
  const std::size_t total = pa.content.size() + pb.content.size() - shared;
  const double overlap = total == 0 ? 0.0 : static_cast<double>(shared) / static_cast<double>(total);

  int verdict = 0;
  if (overlap >= 0.5) {
    const bool numbers_conflict =
        !pa.numbers.empty() && !pb.numbers.empty() && pa.numbers != pb.numbers;
    const bool negation_conflict = (pa.negations % 2) != (pb.negations % 2);
    verdict = numbers_conflict || negation_conflict ? -1 : 1;
  }
  return fmt::format("The claims share {:.2f} of their content words.\nANSWER: {}", overlap,
                     verdict);
}

std::string answer_reply(std::string_view user) {
  const auto question = delimited_segment(user, 0);
  const auto context = delimited_segment(user, 1);
  if (!question || !context) return "I don't know.";
  const Profile q = profile(*question);
  std::string best;
  std::size_t best_hits = 0;
  for (const auto& s : sentences(*context)) {
    const Profile p = profile(s);
    std::size_t hits = 0;
    for (const auto& w : q.content) hits += p.content.contains(w);
    if (hits > best_hits) {
      best_hits = hits;
      best = s;
    }
  }
  return best.empty() ? "I don't know." : best;
}

std::string judge_reply(std::string_view user) {
  const auto expected = delimited_segment(user, 1);
  const auto response = delimited_segment(user, 2);
  if (!expected || !response) return "Missing inputs.\nSCORE: 0";
  double score = 0.0;
  if (lower(*response).find(lower(*expected)) != std::string::npos) {
    score = 1.0;
  } else {
    const Profile e = profile(*expected);
    const Profile r = profile(*response);
    std::size_t hits = 0;
    for (const auto& w : e.content) hits += r.content.contains(w);
    if (!e.content.empty()) {
      score = static_cast<double>(hits) / static_cast<double>(e.content.size());
    }
  }
  return fmt::format("The response covers the expected answer to degree {:.2f}.\nSCORE: {:.2f}",
                     score, score);
}

}  // namespace

MockProvider::MockProvider(MockOptions options) : options_(options) {
  if (options_.dim < 1) options_.dim = 1;
}

void MockProvider::add_rule(std::string needle, std::string reply) {
  rules_.emplace_back(std::move(needle), std::move(reply));
}

void MockProvider::push_reply(std::string reply) {
  std::lock_guard lock(mu_);
  queued_.push_back(std::move(reply));
}

std::size_t MockProvider::chat_calls() const {
  std::lock_guard lock(mu_);
  return chat_calls_;
}

std::vector<std::size_t> MockProvider::embed_batch_sizes() const {
  std::lock_guard lock(mu_);
  return embed_batches_;
}

std::string MockProvider::chat(std::string_view system_prompt,
                               std::string_view user_prompt) const {
  {
    std::lock_guard lock(mu_);
    ++chat_calls_;
    if (!queued_.empty()) {
      std::string reply = std::move(queued_.front());
      queued_.pop_front();
      return reply;
    }
  }
  for (const auto& [needle, reply] : rules_) {
    if (user_prompt.find(needle) != std::string_view::npos) return reply;
  }
  if (mode_ == ChatMode::kEcho) return std::string(user_prompt);
  return heuristic_reply(system_prompt, user_prompt);
}

std::string MockProvider::heuristic_reply(std::string_view system_prompt,
                                          std::string_view user_prompt) const {
  const std::string sys = lower(system_prompt);
  if (sys.find("answer:") != std::string::npos) return relation_reply(user_prompt);
  if (sys.find("score:") != std::string::npos) return judge_reply(user_prompt);
  if (sys.find("numbered") != std::string::npos) return extract_reply(user_prompt);
  return answer_reply(user_prompt);
}

Embedding MockProvider::hash_embedding(std::string_view text) const {
  Embedding v(static_cast<std::size_t>(options_.dim), 0.0);
  const auto tokens = words(text);
  if (tokens.empty()) {
    const std::uint64_t h = fnv1a(options_.seed, text);
    v[h % v.size()] = 1.0;
    return v;
  }
  for (const auto& t : tokens) {
    const std::uint64_t h = fnv1a(options_.seed, t);
    v[h % v.size()] += (h >> 63) ? 1.0 : -1.0;
  }
  // A token multiset can cancel to zero; fall back to a single hashed axis.
  if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) {
    v[fnv1a(options_.seed, text) % v.size()] = 1.0;
  }
  return v;
}

std::vector<Embedding> MockProvider::embed_raw(std::span<const std::string> texts) const {
  {
    std::lock_guard lock(mu_);
    embed_batches_.push_back(texts.size());
  }
  std::vector<Embedding> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(hash_embedding(t));
  return out;
}

}  // namespace claimtrust
