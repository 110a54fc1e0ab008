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

#ifndef OSMOSIS_REPORT_H_
#define OSMOSIS_REPORT_H_

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "osmosis/queries.h"
#include "osmosis/scenario.h"

namespace osmosis {

struct QueryRequest {
  // nhop | pd-nhop | shared | isolated | level
  std::string subcommand;
  // Resource ids for nhop, PD ids otherwise. `isolated` with a single PD
  // asks whether that PD is isolated from every other PD.
  std::vector<std::string> targets;
  std::optional<HopCount> n;
  std::optional<HopCount> n1;
  std::optional<HopCount> n2;
  // Resource ids, kind names, named deltas, or "all".
  std::vector<std::string> exclude;
};

using QueryValue = std::variant<ResourceSet, bool, IsolationVerdict>;

struct QueryReport {
  QueryRequest request;
  ResourceSet delta;
  QueryValue result;
  std::string fingerprint;
};

bool is_query_subcommand(std::string_view name);

// "inf" / "unbounded" or a non-negative integer.
std::optional<HopCount> parse_hop_count(std::string_view text);
std::string hop_count_text(const HopCount& hops);

// Expands --exclude tokens. "all" wins; then named deltas, resource ids,
// and finally kind names. Throws kNotFound for tokens matching nothing.
ExclusionSet resolve_exclusion(const Snapshot& snap,
                               const std::map<std::string, ResourceSet>& deltas,
                               const std::vector<std::string>& tokens);

QueryReport run_query(const Snapshot& snap,
                      const std::map<std::string, ResourceSet>& deltas,
                      const QueryRequest& request);

// True when the result says "isolated" (false for closure queries).
bool reports_isolated(const QueryValue& value);

std::string render_text(const Snapshot& snap, const QueryReport& report);
nlohmann::json to_json(const QueryReport& report);

// One-token form used by `expect=` in query stanzas: "2", "isolated",
// "true", or comma-joined ids.
std::string render_compact(const QueryValue& value);

// A query stanza split into the request and its optional expectation.
struct StanzaQuery {
  QueryRequest request;
  std::optional<std::string> expect;
};
StanzaQuery parse_stanza(const QueryStanza& stanza);

// "sha256:<hex>" of the canonical emit.
std::string fingerprint(const System& sys);

// DOT: PDs as clusters, resources shaped by class, relation edges labeled
// by kind, directory entries dashed. Sorted by id throughout.
std::string export_dot(const System& sys);
nlohmann::json export_json(const System& sys);

nlohmann::json violations_json(const std::vector<Violation>& violations);

}  // namespace osmosis

#endif  // OSMOSIS_REPORT_H_
