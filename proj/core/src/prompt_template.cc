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

#include "claimtrust/prompt_template.h"

#include <cctype>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "claimtrust/errors.h"

namespace claimtrust {

namespace {

std::string trim_block(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool is_ident(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

void PromptTemplate::require(std::initializer_list<std::string_view> placeholders) const {
  for (std::string_view p : placeholders) {
    if (user_pattern.find(fmt::format("{{{}}}", p)) == std::string::npos) {
      throw ValidationError(
          fmt::format("template '{}' lacks required placeholder {{{}}}", name, p));
    }
  }
}

std::string PromptTemplate::system_prompt() const {
  if (few_shot.empty()) return system;
  std::string out = system;
  out += "\n\nExamples:";
  for (std::size_t i = 0; i < few_shot.size(); ++i) {
    out += fmt::format("\n\n### Example {}\nInput:\n{}\nOutput:\n{}", i + 1,
                       trim_block(few_shot[i].input), trim_block(few_shot[i].output));
  }
  return out;
}

std::string PromptTemplate::render(
    const std::map<std::string, std::string, std::less<>>& values) const {
  std::string out;
  out.reserve(user_pattern.size());
  std::size_t i = 0;
  while (i < user_pattern.size()) {
    const char c = user_pattern[i];
    if (c == '{') {
      std::size_t j = i + 1;
      while (j < user_pattern.size() && is_ident(user_pattern[j])) ++j;
      if (j > i + 1 && j < user_pattern.size() && user_pattern[j] == '}') {
        const std::string_view key(user_pattern.data() + i + 1, j - i - 1);
        auto it = values.find(key);
        if (it == values.end()) {
          throw ContractError(
              fmt::format("template '{}': no value for placeholder {{{}}}", name, key));
        }
        out += it->second;
        i = j + 1;
        continue;
      }
    }
    out.push_back(c);
    ++i;
  }
  return out;
}

PromptTemplate parse_template(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || trim_block(line) != "---") {
    throw ParseError(1, "template must start with a '---' front-matter line");
  }
  std::string front;
  std::size_t number = 1;
  bool closed = false;
  while (std::getline(in, line)) {
    ++number;
    if (trim_block(line) == "---") {
      closed = true;
      break;
    }
    front += line + "\n";
  }
  if (!closed) throw ParseError(number, "unterminated front matter");

  PromptTemplate t;
  try {
    const YAML::Node meta = YAML::Load(front);
    if (!meta["name"]) throw ParseError(1, "front matter lacks 'name'");
    t.name = meta["name"].as<std::string>();
    if (const YAML::Node shots = meta["few_shot"]) {
      for (const auto& shot : shots) {
        t.few_shot.push_back({shot["input"].as<std::string>(), shot["output"].as<std::string>()});
      }
    }
  } catch (const YAML::Exception& e) {
    throw ParseError(static_cast<std::size_t>(e.mark.line) + 2,
                     fmt::format("front matter: {}", e.msg));
  }

  std::string* section = nullptr;
  std::string system, user;
  while (std::getline(in, line)) {
    ++number;
    const std::string marker = trim_block(line);
    if (marker == "[system]") {
      section = &system;
    } else if (marker == "[user]") {
      section = &user;
    } else if (section) {
      *section += line + "\n";
    } else if (!marker.empty()) {
      throw ParseError(number, "text before the first [system] or [user] section");
    }
  }
  t.system = trim_block(system);
  t.user_pattern = trim_block(user);
  if (t.user_pattern.empty()) throw ParseError(number, "template has no [user] section");
  return t;
}

PromptTemplate load_template(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open template {}", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_template(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), fmt::format("{}: {}", path.string(), e.message()));
  }
}

}  // namespace claimtrust
