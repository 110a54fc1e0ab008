// Copyright 2026 The osmosis Authors
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

#ifndef OSMOSIS_ERROR_H_
#define OSMOSIS_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace osmosis {

enum class ErrorCode {
  kInvalidArgument,
  kNotFound,
  kSealed,
  kPermission,
  kNoProvider,
  kExhausted,
  kParse,
};

std::string_view to_string(ErrorCode code);

// Every failing operation in the library throws this. The code is the
// machine-readable part; what() carries the offending identifiers.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Scenario-text failure with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(ErrorCode::kParse, "line " + std::to_string(line) + ", column " +
                                     std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace osmosis

#endif  // OSMOSIS_ERROR_H_
