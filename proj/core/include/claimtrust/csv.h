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

// Minimal RFC 4180 reader: comma separated, double-quoted fields may contain
// commas, doubled quotes and line breaks.

#ifndef CLAIMTRUST_CSV_H_
#define CLAIMTRUST_CSV_H_

#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace claimtrust {

class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Next record, or nullopt at end of input. A trailing empty line is not
  // reported as a record.
  std::optional<std::vector<std::string>> next();

  // 1-based physical line on which the last returned record started.
  std::size_t record_line() const { return record_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 1;
  std::size_t record_line_ = 0;
};

}  // namespace claimtrust

#endif  // CLAIMTRUST_CSV_H_
