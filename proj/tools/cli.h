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

#ifndef OSMOSIS_TOOLS_CLI_H_
#define OSMOSIS_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace osmosis::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kNotIsolated = 1;  // --assert-isolated, stanza mismatch
inline constexpr int kInvalid = 2;      // parse, validation, or model error
inline constexpr int kIo = 3;
inline constexpr int kUsage = 4;

// Runs `osmosis <args...>`; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace osmosis::cli

#endif  // OSMOSIS_TOOLS_CLI_H_
