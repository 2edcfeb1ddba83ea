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

// Line-record helpers shared by the artifact readers and writers. One JSON
// object per line, keys in declaration order.

#ifndef CLAIMTRUST_SRC_RECORDS_H_
#define CLAIMTRUST_SRC_RECORDS_H_

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace claimtrust::records {

using Record = nlohmann::ordered_json;

// Writes every record as one line. Throws IoError when the file cannot be
// written.
void write_lines(const std::filesystem::path& path, const std::vector<Record>& lines);

// Calls `visit(record, line_number)` for every non-blank line. Malformed JSON
// becomes ParseError with the line number; exceptions thrown by `visit` are
// rethrown as ParseError on that line.
void read_lines(const std::filesystem::path& path,
                const std::function<void(const Record&, std::size_t)>& visit);

// Typed field access that reports the missing or mistyped key.
std::string get_string(const Record& r, std::string_view key);
double get_double(const Record& r, std::string_view key);
long long get_int(const Record& r, std::string_view key);
bool get_bool(const Record& r, std::string_view key);

}  // namespace claimtrust::records

#endif  // CLAIMTRUST_SRC_RECORDS_H_
