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

#include "claimtrust/embed.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <queue>
#include <unordered_map>

#include <fmt/format.h>

#include "claimtrust/errors.h"
#include "claimtrust/parallel.h"
#include "records.h"

namespace claimtrust {

namespace {

constexpr std::array<char, 4> kMagic = {'C', 'T', 'E', 'I'};
constexpr std::uint32_t kVersion = 1;
constexpr double kNormTolerance = 1e-6;

template <class T>
double dot(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size()) {
    throw ContractError(fmt::format("cosine of vectors with dimensions {} and {}", a.size(),
                                    b.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  return std::clamp(sum, -1.0, 1.0);
}

template <class U>
void put(std::ostream& out, U value) {
  std::array<char, sizeof(U)> bytes;
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
  }
  out.write(bytes.data(), bytes.size());
}

template <class U>
U take(std::istream& in) {
  std::array<unsigned char, sizeof(U)> bytes;
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) {
    throw ParseError(1, "truncated index header");
  }
  U value = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) value |= static_cast<U>(bytes[i]) << (8 * i);
  return value;
}

}  // namespace

EmbeddingIndex::EmbeddingIndex(std::size_t dim, std::vector<std::string> ids,
                               std::vector<float> data)
    : dim_(dim), ids_(std::move(ids)), data_(std::move(data)) {
  if (data_.size() != ids_.size() * dim_) {
    throw ValidationError(fmt::format("index data holds {} values, expected {} x {}",
                                      data_.size(), ids_.size(), dim_));
  }
  if (!ids_.empty() && dim_ == 0) throw ValidationError("index dimension must be positive");
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    double sum = 0.0;
    for (float x : row(i)) sum += static_cast<double>(x) * static_cast<double>(x);
    if (!(std::abs(std::sqrt(sum) - 1.0) <= kNormTolerance)) {
      throw ValidationError(fmt::format("index row {} ({}) has norm {}", i, ids_[i],
                                        std::sqrt(sum)));
    }
  }
}

EmbeddingIndex build_text_index(std::vector<std::string> ids, const std::vector<std::string>& texts,
                                const Provider& provider, std::size_t batch_size) {
  if (texts.empty()) throw ContractError("cannot build an index over zero texts");
  if (ids.size() != texts.size()) throw ContractError("ids and texts differ in length");
  if (batch_size == 0) throw ContractError("batch_size must be positive");

  const std::size_t batches = (texts.size() + batch_size - 1) / batch_size;
  auto vectors = parallel_map(batches, provider.max_in_flight(), [&](std::size_t b) {
    const std::size_t begin = b * batch_size;
    const std::size_t end = std::min(texts.size(), begin + batch_size);
    return provider.embed(std::span<const std::string>(texts).subspan(begin, end - begin));
  });

  const std::size_t dim = vectors.front().front().size();
  std::vector<float> data;
  data.reserve(texts.size() * dim);
  for (std::size_t b = 0; b < vectors.size(); ++b) {
    for (auto& v : vectors[b]) {
      if (v.size() != dim) {
        throw ProtocolError(fmt::format("embedding batch {} has dimension {}, expected {}", b,
                                        v.size(), dim));
      }
      // Renormalize after narrowing so float rows keep unit norm.
      double sum = 0.0;
      for (double x : v) {
        const float f = static_cast<float>(x);
        sum += static_cast<double>(f) * static_cast<double>(f);
      }
      const double scale = 1.0 / std::sqrt(sum);
      for (double x : v) data.push_back(static_cast<float>(static_cast<float>(x) * scale));
    }
  }
  return EmbeddingIndex(dim, std::move(ids), std::move(data));
}

EmbeddingIndex build_index(const std::vector<Claim>& claims, const Provider& provider,
                           std::size_t batch_size) {
  std::vector<std::string> ids, texts;
  ids.reserve(claims.size());
  texts.reserve(claims.size());
  for (const Claim& c : claims) {
    ids.push_back(c.claim_id);
    texts.push_back(c.text);
  }
  return build_text_index(std::move(ids), texts, provider, batch_size);
}

double cosine(std::span<const float> a, std::span<const float> b) { return dot(a, b); }
double cosine(std::span<const double> a, std::span<const double> b) { return dot(a, b); }

std::vector<CandidatePair> select_candidate_pairs(const EmbeddingIndex& index,
                                                  const std::vector<Claim>& claims,
                                                  std::size_t k) {
  if (k == 0 || index.size() < 2) return {};

  std::unordered_map<std::string_view, std::string_view> doc_of;
  doc_of.reserve(claims.size());
  for (const Claim& c : claims) doc_of.emplace(c.claim_id, c.doc_id);
  const auto& ids = index.ids();
  std::vector<std::string_view> docs;
  docs.reserve(ids.size());
  for (const auto& id : ids) {
    auto it = doc_of.find(id);
    if (it == doc_of.end()) throw DataError(fmt::format("index row {} has no matching claim", id));
    docs.push_back(it->second);
  }

  struct Entry {
    double sim;
    std::uint32_t a;  // ids[a] < ids[b]
    std::uint32_t b;
  };
  // ranks_before(x, y): x precedes y in the output order.
  auto ranks_before = [&](const Entry& x, const Entry& y) {
    if (x.sim != y.sim) return x.sim > y.sim;
    if (ids[x.a] != ids[y.a]) return ids[x.a] < ids[y.a];
    return ids[x.b] < ids[y.b];
  };
  // Top of the heap is the weakest retained entry.
  std::priority_queue<Entry, std::vector<Entry>, decltype(ranks_before)> heap(ranks_before);

  for (std::uint32_t i = 0; i < ids.size(); ++i) {
    for (std::uint32_t j = i + 1; j < ids.size(); ++j) {
      if (docs[i] == docs[j]) continue;
      Entry e{cosine(index.row(i), index.row(j)), i, j};
      if (ids[e.b] < ids[e.a]) std::swap(e.a, e.b);
      if (heap.size() < k) {
        heap.push(e);
      } else if (ranks_before(e, heap.top())) {
        heap.pop();
        heap.push(e);
      }
    }
  }

  std::vector<CandidatePair> out(heap.size());
  for (std::size_t i = out.size(); i-- > 0;) {
    const Entry& e = heap.top();
    out[i] = {ids[e.a], ids[e.b], e.sim};
    heap.pop();
  }
  return out;
}

std::filesystem::path index_ids_path(const std::filesystem::path& path) {
  std::filesystem::path ids = path;
  ids += ".ids.jsonl";
  return ids;
}

void save_index(const EmbeddingIndex& index, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot open {} for writing", path.string()));
  out.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(out, kVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(index.dim()));
  put<std::uint64_t>(out, index.size());
  for (float f : index.data()) {
    std::uint32_t bits;
    std::memcpy(&bits, &f, sizeof bits);
    put<std::uint32_t>(out, bits);
  }
  out.flush();
  if (!out) throw IoError(fmt::format("write to {} failed", path.string()));

  std::vector<records::Record> lines;
  lines.reserve(index.size());
  for (const auto& id : index.ids()) lines.push_back({{"id", id}});
  records::write_lines(index_ids_path(path), lines);
}

EmbeddingIndex load_index(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open {} for reading", path.string()));
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw ParseError(1, fmt::format("{}: not an embedding index", path.string()));
  }
  const auto version = take<std::uint32_t>(in);
  if (version != kVersion) {
    throw ParseError(1, fmt::format("{}: unsupported index version {}", path.string(), version));
  }
  const auto dim = take<std::uint32_t>(in);
  const auto rows = take<std::uint64_t>(in);
  std::vector<float> data(static_cast<std::size_t>(rows) * dim);
  for (float& f : data) {
    const auto bits = take<std::uint32_t>(in);
    std::memcpy(&f, &bits, sizeof f);
  }

  std::vector<std::string> ids;
  records::read_lines(index_ids_path(path), [&](const records::Record& r, std::size_t) {
    ids.push_back(records::get_string(r, "id"));
  });
  if (ids.size() != rows) {
    throw ParseError(ids.size() + 1, fmt::format("{}: {} ids for {} rows",
                                                 index_ids_path(path).string(), ids.size(), rows));
  }
  return EmbeddingIndex(dim, std::move(ids), std::move(data));
}

void save_pairs(const std::vector<CandidatePair>& pairs, const std::filesystem::path& path) {
  std::vector<records::Record> lines;
  lines.reserve(pairs.size());
  for (const auto& p : pairs) {
    records::Record r;
    r["claim_a"] = p.claim_a;
    r["claim_b"] = p.claim_b;
    r["similarity"] = p.similarity;
    lines.push_back(std::move(r));
  }
  records::write_lines(path, lines);
}

std::vector<CandidatePair> load_pairs(const std::filesystem::path& path) {
  std::vector<CandidatePair> out;
  records::read_lines(path, [&](const records::Record& r, std::size_t) {
    out.push_back({records::get_string(r, "claim_a"), records::get_string(r, "claim_b"),
                   records::get_double(r, "similarity")});
  });
  return out;
}

}  // namespace claimtrust
