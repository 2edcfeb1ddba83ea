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

#ifndef CLAIMTRUST_ERRORS_H_
#define CLAIMTRUST_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace claimtrust {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke a documented precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

// Input data failed a domain invariant (corpus, config, relation set).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// A required column or field is absent.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Malformed record in a line-oriented artifact. line() is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line), message_(what) {}
  std::size_t line() const { return line_; }
  // Description without the line prefix.
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::string message_;
};

// Data references something that does not exist (e.g. unknown claim id).
class DataError : public Error {
 public:
  using Error::Error;
};

// Remote endpoint failure after retries. status() is 0 for transport errors.
class ProviderError : public Error {
 public:
  ProviderError(int status, std::string body_excerpt, const std::string& what)
      : Error(what), status_(status), body_(std::move(body_excerpt)) {}
  int status() const { return status_; }
  const std::string& body_excerpt() const { return body_; }

 private:
  int status_;
  std::string body_;
};

class TimeoutError : public ProviderError {
 public:
  explicit TimeoutError(const std::string& what) : ProviderError(0, "", what) {}
};

// Response arrived but does not have the expected shape.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

}  // namespace claimtrust

#endif  // CLAIMTRUST_ERRORS_H_
