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

#ifndef OSMOSIS_SCRIPT_H_
#define OSMOSIS_SCRIPT_H_

#include <functional>
#include <string>
#include <string_view>

#include "osmosis/error.h"
#include "osmosis/framework.h"

namespace osmosis {

// A framework operation that failed, tagged with its 1-based script line.
class ScriptError : public Error {
 public:
  ScriptError(std::size_t line, ErrorCode code, const std::string& message)
      : Error(code, "script line " + std::to_string(line) + ": " +
                        std::string(to_string(code)) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Applies framework operations, one per line, in order:
//
//   newpd PDID [creator=PD] [inherit=PD] [dir=KIND:PD,...] [label=S] RESID*
//   alloc RESID OWNER PARENT KIND
//   request RESID REQUESTER KIND
//   map PROVIDER VIRTUAL PHYSICAL
//   partition OWNER PARENT N
//   clone NEWPD SOURCE [fn=share-all|thread|process] [share=K,..]
//         [copy=K,..] [exclude=K,..] [default=share|copy|exclude]
//         [keep=K,..] [drop=K,..] [retarget=K:PD,..]
//         [dir-default=keep|drop|retarget:PD]
//
// `inherit` copies another PD's directory.
// `on_edge` sees every relation edge the script adds. The first failure
// aborts with a ScriptError.
void run_script(System& sys, std::string_view script,
                const std::function<void(const Edge&)>& on_edge = {});

// Parses the clone options above into an isolation function.
IsolationFunction parse_isolation_function(
    const std::map<std::string, std::string>& options);

}  // namespace osmosis

#endif  // OSMOSIS_SCRIPT_H_
