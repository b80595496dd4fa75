// Copyright 2026 The accentdl Authors.
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

#ifndef ACCENTDL_ERRORS_HPP_
#define ACCENTDL_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace accentdl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input bytes are not valid UTF-8.
class EncodingError : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an operation was violated by the caller.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Not enough training, cross-validation or test material to proceed.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

}  // namespace accentdl

#endif  // ACCENTDL_ERRORS_HPP_
