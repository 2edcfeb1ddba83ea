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

#ifndef CLAIMTRUST_PROMPT_TEMPLATE_H_
#define CLAIMTRUST_PROMPT_TEMPLATE_H_

#include <filesystem>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace claimtrust {

struct FewShotExample {
  std::string input;
  std::string output;
};

// A prompt asset. On disk:
//
//   ---
//   name: relation
//   few_shot:
//     - input: ...
//       output: ...
//   ---
//   [system]
//   ...
//   [user]
//   ... {claim_a} ... {claim_b} ...
struct PromptTemplate {
  std::string name;
  std::string system;
  std::string user_pattern;
  std::vector<FewShotExample> few_shot;

  // Throws ValidationError naming the first placeholder missing from
  // user_pattern.
  void require(std::initializer_list<std::string_view> placeholders) const;

  // System prompt with the few-shot examples appended.
  std::string system_prompt() const;

  // user_pattern with every {key} replaced. Substituted text is not
  // rescanned. Throws ContractError if a placeholder in the pattern has no
  // value.
  std::string render(const std::map<std::string, std::string, std::less<>>& values) const;
};

PromptTemplate parse_template(std::string_view text);
PromptTemplate load_template(const std::filesystem::path& path);

}  // namespace claimtrust

#endif  // CLAIMTRUST_PROMPT_TEMPLATE_H_
