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

// Flat key-value settings shared by every subcommand. Sources, lowest to
// highest precedence: built-in defaults, the config file, environment
// overrides, command-line flags.

#ifndef CLAIMTRUST_TOOLS_SETTINGS_H_
#define CLAIMTRUST_TOOLS_SETTINGS_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace claimtrust::cli {

struct SettingSpec {
  std::string key;  // "section.key"
  std::string default_value;
  std::string help;
};

const std::vector<SettingSpec>& setting_specs();

class Settings {
 public:
  Settings();  // defaults only

  // Reads `section.key = value` lines; '#' starts a comment. Throws
  // ValidationError for an unknown key, ParseError for a malformed line.
  void load_file(const std::filesystem::path& path);

  void set(std::string_view key, std::string value);
  const std::string& get(std::string_view key) const;
  double get_double(std::string_view key) const;
  long long get_int(std::string_view key) const;
  bool get_bool(std::string_view key) const;

 private:
  std::map<std::string, std::string, std::less<>> values_;
};

}  // namespace claimtrust::cli

#endif  // CLAIMTRUST_TOOLS_SETTINGS_H_
