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

#ifndef OSMOSIS_SRC_TOKENIZE_H_
#define OSMOSIS_SRC_TOKENIZE_H_

#include <string>
#include <string_view>
#include <vector>

namespace osmosis::detail {

struct Token {
  std::string text;
  std::size_t column = 0;  // 1-based
};

// Whitespace-separated tokens; double quotes group and are stripped, '#'
// at the start of a token ends the line. Throws ParseError.
std::vector<Token> tokenize(std::string_view line, std::size_t line_no);

}  // namespace osmosis::detail

#endif  // OSMOSIS_SRC_TOKENIZE_H_
