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

#include <sstream>

#include "osmosis/scenario.h"

namespace osmosis {

std::string quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string emit_scenario(const System& sys) {
  std::ostringstream out;
  for (const auto& [id, r] : sys.resources()) {
    out << "resource " << id << " kind=" << r.kind
        << " class=" << to_string(r.cls);
    if (r.label) out << " label=" << quote(*r.label);
    out << '\n';
  }
  for (const auto& [id, pd] : sys.pds()) {
    out << "pd " << id;
    if (pd.label) out << " label=" << quote(*pd.label);
    out << '\n';
  }
  for (const auto& [id, pd] : sys.pds()) {
    if (pd.res.empty()) continue;
    out << "owns " << id;
    for (const auto& r : pd.res) out << ' ' << r;
    out << '\n';
  }
  for (const Edge& e : sys.edges()) {
    out << "edge " << to_string(e.kind) << ' ' << e.from << ' ' << e.to
        << '\n';
  }
  for (const auto& [id, pd] : sys.pds()) {
    for (const auto& [kind, provider] : pd.rdir.entries) {
      out << "dir " << id << ' ' << kind << ' ' << provider << '\n';
    }
  }
  for (const auto& [id, pd] : sys.pds()) {
    if (pd.rdir.creator) out << "creator " << id << ' ' << *pd.rdir.creator << '\n';
  }
  for (const auto& [id, pd] : sys.pds()) {
    for (const auto& [kind, backers] : pd.backing) {
      out << "backing " << id << ' ' << kind;
      for (const auto& b : backers) out << ' ' << b;
      out << '\n';
    }
  }
  return out.str();
}

std::string emit_scenario(const ScenarioDoc& doc) {
  std::ostringstream out;
  out << emit_scenario(doc.system);
  for (const auto& [name, members] : doc.deltas) {
    out << "delta " << name;
    for (const auto& r : members) out << ' ' << r;
    out << '\n';
  }
  for (const auto& q : doc.queries) {
    out << "query " << q.name;
    for (const auto& a : q.args) out << ' ' << a;
    out << '\n';
  }
  return out.str();
}

}  // namespace osmosis
