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

#ifndef OSMOSIS_SCENARIO_H_
#define OSMOSIS_SCENARIO_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "osmosis/model.h"

namespace osmosis {

// `query NAME ARGS...`; ARGS are kept as raw tokens and interpreted by the
// query runner.
struct QueryStanza {
  std::string name;
  std::vector<std::string> args;
  std::size_t line = 0;

  friend bool operator==(const QueryStanza& a, const QueryStanza& b) {
    return a.name == b.name && a.args == b.args;
  }
};

struct ScenarioDoc {
  System system;
  std::map<std::string, ResourceSet> deltas;
  std::vector<QueryStanza> queries;
};

// Strict parse: every reference must name an earlier declaration. The
// returned System is sealed. Throws ParseError.
ScenarioDoc parse_scenario(std::string_view text);

// Syntax is still checked, but references are inserted unchecked and the
// System is left unsealed so validate() can report every problem at once.
ScenarioDoc load_scenario_lenient(std::string_view text);

// Canonical text: one declaration per line, grouped by declaration type and
// sorted by id. Byte-stable.
std::string emit_scenario(const System& sys);
std::string emit_scenario(const ScenarioDoc& doc);

// Double-quoted with backslash escapes for '"' and '\\'.
std::string quote(std::string_view text);

enum class Canonical { kThreads, kIsolatedStacks, kProcesses, kUnikernel, kVm };

std::string_view to_string(Canonical which);
std::optional<Canonical> parse_canonical(std::string_view name);
const std::vector<Canonical>& all_canonical();

// The two PDs whose isolation level places the mechanism on the spectrum.
struct DesignatedPair {
  PdId first;
  PdId second;
};
DesignatedPair designated_pair(Canonical which);

// Sealed System for one of the five memory-isolation mechanisms.
System build_canonical(Canonical which);

// build_canonical plus a `level` stanza for the designated pair, pinned to
// the level the mechanism is expected to have.
ScenarioDoc canonical_document(Canonical which);

}  // namespace osmosis

#endif  // OSMOSIS_SCENARIO_H_
