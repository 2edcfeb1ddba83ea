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

#include "records.h"

#include <fstream>

#include <fmt/format.h>

#include "claimtrust/errors.h"

namespace claimtrust::records {

void write_lines(const std::filesystem::path& path, const std::vector<Record>& lines) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot open {} for writing", path.string()));
  for (const Record& r : lines) {
    out << r.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
  }
  out.flush();
  if (!out) throw IoError(fmt::format("write to {} failed", path.string()));
}

void read_lines(const std::filesystem::path& path,
                const std::function<void(const Record&, std::size_t)>& visit) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open {} for reading", path.string()));
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    Record record;
    try {
      record = Record::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(number, fmt::format("{}: malformed record ({})", path.string(), e.what()));
    }
    if (!record.is_object()) {
      throw ParseError(number, fmt::format("{}: record is not an object", path.string()));
    }
    try {
      visit(record, number);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(number, fmt::format("{}: {}", path.string(), e.what()));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(number, fmt::format("{}: {}", path.string(), e.what()));
    }
  }
}

namespace {

const Record& field(const Record& r, std::string_view key) {
  auto it = r.find(key);
  if (it == r.end()) throw SchemaError(fmt::format("missing key '{}'", key));
  return *it;
}

}  // namespace

std::string get_string(const Record& r, std::string_view key) {
  const Record& v = field(r, key);
  if (!v.is_string()) throw SchemaError(fmt::format("key '{}' is not a string", key));
  return v.get<std::string>();
}

double get_double(const Record& r, std::string_view key) {
  const Record& v = field(r, key);
  if (!v.is_number()) throw SchemaError(fmt::format("key '{}' is not a number", key));
  return v.get<double>();
}

long long get_int(const Record& r, std::string_view key) {
  const Record& v = field(r, key);
  if (!v.is_number_integer()) {
    throw SchemaError(fmt::format("key '{}' is not an integer", key));
  }
  return v.get<long long>();
}

bool get_bool(const Record& r, std::string_view key) {
  const Record& v = field(r, key);
  if (!v.is_boolean()) throw SchemaError(fmt::format("key '{}' is not a boolean", key));
  return v.get<bool>();
}

}  // namespace claimtrust::records
