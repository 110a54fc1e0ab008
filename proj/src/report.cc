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

#include "osmosis/report.h"

#include <openssl/evp.h>

#include <charconv>
#include <iomanip>
#include <sstream>

namespace osmosis {

namespace {

using nlohmann::json;

json ids_json(const ResourceSet& ids) {
  json out = json::array();
  for (const auto& r : ids) out.push_back(r.str());
  return out;
}

json hops_json(const std::optional<HopCount>& hops) {
  if (!hops) return nullptr;
  if (hops->is_unbounded()) return "unbounded";
  return hops->value_or(0);
}

HopCount either(const std::optional<HopCount>& specific,
                const std::optional<HopCount>& shared) {
  if (specific) return *specific;
  if (shared) return *shared;
  return HopCount::unbounded();
}

void require_targets(const QueryRequest& request, std::size_t min,
                     std::size_t max) {
  if (request.targets.size() < min || request.targets.size() > max) {
    throw Error(ErrorCode::kInvalidArgument,
                "'" + request.subcommand + "' takes " + std::to_string(min) +
                    (min == max ? "" : ".." + std::to_string(max)) +
                    " operand(s), got " +
                    std::to_string(request.targets.size()));
  }
}

}  // namespace

bool is_query_subcommand(std::string_view name) {
  return name == "nhop" || name == "pd-nhop" || name == "shared" ||
         name == "isolated" || name == "level";
}

std::optional<HopCount> parse_hop_count(std::string_view text) {
  if (text == "inf" || text == "unbounded") return HopCount::unbounded();
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    return std::nullopt;
  }
  return HopCount(value);
}

std::string hop_count_text(const HopCount& hops) {
  return hops.is_unbounded() ? "unbounded" : std::to_string(hops.value_or(0));
}

ExclusionSet resolve_exclusion(const Snapshot& snap,
                               const std::map<std::string, ResourceSet>& deltas,
                               const std::vector<std::string>& tokens) {
  const System& sys = snap.system();
  ResourceSet out;
  for (const auto& token : tokens) {
    if (token == "all") return ExclusionSet::all(snap);
    if (auto it = deltas.find(token); it != deltas.end()) {
      out.insert(it->second.begin(), it->second.end());
      continue;
    }
    if (sys.find_resource(ResourceId(token))) {
      out.insert(ResourceId(token));
      continue;
    }
    bool matched = false;
    for (const auto& [id, r] : sys.resources()) {
      if (r.kind == token) {
        out.insert(id);
        matched = true;
      }
    }
    if (!matched) {
      throw Error(ErrorCode::kNotFound,
                  "exclude token '" + token +
                      "' names no delta, resource, or kind");
    }
  }
  return ExclusionSet(snap, std::move(out));
}

QueryReport run_query(const Snapshot& snap,
                      const std::map<std::string, ResourceSet>& deltas,
                      const QueryRequest& request) {
  QueryReport report;
  report.request = request;
  report.fingerprint = fingerprint(snap.system());
  ExclusionSet delta = resolve_exclusion(snap, deltas, request.exclude);
  report.delta = delta.members();

  const auto& t = request.targets;
  const std::string& cmd = request.subcommand;
  HopCount n = request.n.value_or(HopCount::unbounded());
  if (cmd == "nhop") {
    require_targets(request, 1, SIZE_MAX);
    ResourceSet seed;
    for (const auto& id : t) seed.insert(ResourceId(id));
    report.result = n_hop_resources(snap, n, seed);
  } else if (cmd == "pd-nhop") {
    require_targets(request, 1, 1);
    report.result = n_hop_resources_of_pd(snap, n, PdId(t[0]));
  } else if (cmd == "shared") {
    require_targets(request, 2, 2);
    report.result =
        n_hop_shared(snap, either(request.n1, request.n),
                     either(request.n2, request.n), PdId(t[0]), PdId(t[1]));
  } else if (cmd == "isolated") {
    require_targets(request, 1, 2);
    if (t.size() == 1) {
      report.result = pd_isolated_in_system(snap, n, delta, PdId(t[0]));
    } else {
      report.result = n_hop_isolated(
          snap, either(request.n1, request.n), either(request.n2, request.n),
          delta, PdId(t[0]), PdId(t[1]));
    }
  } else if (cmd == "level") {
    require_targets(request, 2, 2);
    report.result = isolation_level(snap, PdId(t[0]), PdId(t[1]), delta);
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown query subcommand '" + cmd + "'");
  }
  return report;
}

bool reports_isolated(const QueryValue& value) {
  if (const bool* b = std::get_if<bool>(&value)) return *b;
  if (const auto* v = std::get_if<IsolationVerdict>(&value)) {
    return v->fully_isolated();
  }
  return false;
}

std::string render_compact(const QueryValue& value) {
  if (const bool* b = std::get_if<bool>(&value)) return *b ? "true" : "false";
  if (const auto* v = std::get_if<IsolationVerdict>(&value)) {
    return v->fully_isolated() ? "isolated" : std::to_string(*v->level);
  }
  std::string out;
  for (const auto& r : std::get<ResourceSet>(value)) {
    if (!out.empty()) out += ',';
    out += r.str();
  }
  return out;
}

std::string render_text(const Snapshot& snap, const QueryReport& report) {
  std::ostringstream out;
  const QueryValue& value = report.result;
  if (const bool* b = std::get_if<bool>(&value)) {
    out << (*b ? "true" : "false") << '\n';
  } else if (const auto* v = std::get_if<IsolationVerdict>(&value)) {
    if (v->fully_isolated()) {
      out << "isolated\n";
    } else {
      out << *v->level << " (witness n1=" << v->witness->n1
          << " n2=" << v->witness->n2 << ")\n";
    }
  } else {
    const auto& set = std::get<ResourceSet>(value);
    std::size_t width = 8;
    for (const auto& r : set) width = std::max(width, r.str().size());
    out << std::left << std::setw(static_cast<int>(width)) << "RESOURCE"
        << "  KIND\n";
    for (const auto& r : set) {
      out << std::setw(static_cast<int>(width)) << r.str() << "  "
          << snap.system().resource(r).kind << '\n';
    }
    out << "(" << set.size() << (set.size() == 1 ? " resource" : " resources")
        << ")\n";
  }
  return out.str();
}

json to_json(const QueryReport& report) {
  json result;
  const QueryValue& value = report.result;
  if (const bool* b = std::get_if<bool>(&value)) {
    result = {{"isolated", *b}};
  } else if (const auto* v = std::get_if<IsolationVerdict>(&value)) {
    if (v->fully_isolated()) {
      result = {{"level", "isolated"}};
    } else {
      result = {{"level", *v->level},
                {"witness",
                 {{"n1", v->witness->n1},
                  {"n2", v->witness->n2},
                  {"shared", ids_json(v->witness->shared)}}}};
    }
  } else {
    result = {{"resources", ids_json(std::get<ResourceSet>(value))}};
  }
  const QueryRequest& q = report.request;
  return {{"query", q.subcommand},
          {"inputs",
           {{"targets", q.targets},
            {"n", hops_json(q.n)},
            {"n1", hops_json(q.n1)},
            {"n2", hops_json(q.n2)},
            {"exclude", q.exclude},
            {"delta", ids_json(report.delta)}}},
          {"result", std::move(result)},
          {"fingerprint", report.fingerprint}};
}

StanzaQuery parse_stanza(const QueryStanza& stanza) {
  StanzaQuery out;
  if (stanza.args.empty() || !is_query_subcommand(stanza.args[0])) {
    throw Error(ErrorCode::kInvalidArgument,
                "query '" + stanza.name + "' needs a subcommand");
  }
  out.request.subcommand = stanza.args[0];
  for (std::size_t i = 1; i < stanza.args.size(); ++i) {
    const std::string& arg = stanza.args[i];
    auto eq = arg.find('=');
    if (eq == std::string::npos) {
      out.request.targets.push_back(arg);
      continue;
    }
    std::string key = arg.substr(0, eq);
    std::string value = arg.substr(eq + 1);
    auto hops = [&]() {
      auto h = parse_hop_count(value);
      if (!h) {
        throw Error(ErrorCode::kInvalidArgument,
                    "query '" + stanza.name + "': bad hop count '" + value +
                        "'");
      }
      return *h;
    };
    if (key == "n") {
      out.request.n = hops();
    } else if (key == "n1") {
      out.request.n1 = hops();
    } else if (key == "n2") {
      out.request.n2 = hops();
    } else if (key == "exclude" || key == "delta") {
      std::size_t start = 0;
      while (start <= value.size()) {
        std::size_t comma = value.find(',', start);
        if (comma == std::string::npos) comma = value.size();
        if (comma > start) {
          out.request.exclude.push_back(value.substr(start, comma - start));
        }
        start = comma + 1;
      }
    } else if (key == "expect") {
      out.expect = value;
    } else {
      throw Error(ErrorCode::kInvalidArgument,
                  "query '" + stanza.name + "': unknown option '" + key + "'");
    }
  }
  return out;
}

std::string fingerprint(const System& sys) {
  std::string text = emit_scenario(sys);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(text.data(), text.size(), digest, &length, EVP_sha256(), nullptr);
  std::ostringstream out;
  out << "sha256:" << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < length; ++i) {
    out << std::setw(2) << static_cast<int>(digest[i]);
  }
  return out.str();
}

namespace {

std::string dot_id(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string pd_anchor(const PdId& pd) { return dot_id("pd:" + pd.str()); }

std::string node_decl(const Resource& r) {
  std::string label = r.id.str() + "\\n" + r.kind;
  std::string shape = r.cls == ResourceClass::kPhysical ? "box" : "ellipse";
  // `label` already carries a DOT escape; quote the rest by hand.
  std::string quoted_label = "\"";
  for (char c : label) {
    if (c == '"') quoted_label += '\\';
    quoted_label += c;
  }
  quoted_label += '"';
  return dot_id(r.id.str()) + " [shape=" + shape + ", label=" + quoted_label +
         "];";
}

}  // namespace

std::string export_dot(const System& sys) {
  std::ostringstream out;
  out << "digraph osmosis {\n";
  // A resource owned by several PDs is drawn in the first owner's cluster;
  // the others get a dotted "owns" edge.
  std::map<ResourceId, PdId> home;
  for (const auto& [id, pd] : sys.pds()) {
    for (const auto& r : pd.res) home.emplace(r, id);
  }
  for (const auto& [id, pd] : sys.pds()) {
    out << "  subgraph " << dot_id("cluster_" + id.str()) << " {\n";
    out << "    label=" << dot_id(pd.label ? id.str() + ": " + *pd.label
                                           : id.str())
        << ";\n";
    out << "    " << pd_anchor(id) << " [shape=point];\n";
    for (const auto& r : pd.res) {
      if (home.at(r) == id) {
        out << "    " << node_decl(sys.resource(r)) << '\n';
      }
    }
    out << "  }\n";
  }
  for (const auto& [id, r] : sys.resources()) {
    if (!home.contains(id)) out << "  " << node_decl(r) << '\n';
  }
  for (const Edge& e : sys.edges()) {
    out << "  " << dot_id(e.from.str()) << " -> " << dot_id(e.to.str())
        << " [label=" << dot_id(to_string(e.kind)) << "];\n";
  }
  for (const auto& [id, pd] : sys.pds()) {
    for (const auto& r : pd.res) {
      if (home.at(r) != id) {
        out << "  " << pd_anchor(id) << " -> " << dot_id(r.str())
            << " [style=dotted, arrowhead=none, label=\"owns\"];\n";
      }
    }
  }
  for (const auto& [id, pd] : sys.pds()) {
    for (const auto& [kind, provider] : pd.rdir.entries) {
      out << "  " << pd_anchor(id) << " -> " << pd_anchor(provider)
          << " [style=dashed, label=" << dot_id(kind) << "];\n";
    }
    if (pd.rdir.creator) {
      out << "  " << pd_anchor(id) << " -> " << pd_anchor(*pd.rdir.creator)
          << " [style=dashed, label=\"creator\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

json export_json(const System& sys) {
  json resources = json::array();
  for (const auto& [id, r] : sys.resources()) {
    json item = {{"id", id.str()},
                 {"kind", r.kind},
                 {"class", std::string(to_string(r.cls))}};
    if (r.label) item["label"] = *r.label;
    resources.push_back(std::move(item));
  }
  json pds = json::array();
  for (const auto& [id, pd] : sys.pds()) {
    json entries = json::object();
    for (const auto& [kind, provider] : pd.rdir.entries) {
      entries[kind] = provider.str();
    }
    json backing = json::object();
    for (const auto& [kind, kinds] : pd.backing) backing[kind] = kinds;
    json item = {{"id", id.str()},
                 {"resources", ids_json(pd.res)},
                 {"directory",
                  {{"entries", std::move(entries)},
                   {"creator", pd.rdir.creator
                                   ? json(pd.rdir.creator->str())
                                   : json(nullptr)}}},
                 {"backing", std::move(backing)}};
    if (pd.label) item["label"] = *pd.label;
    pds.push_back(std::move(item));
  }
  json edges = json::array();
  for (const Edge& e : sys.edges()) {
    edges.push_back({{"from", e.from.str()},
                     {"to", e.to.str()},
                     {"kind", std::string(to_string(e.kind))}});
  }
  return {{"sealed", sys.sealed()},
          {"resources", std::move(resources)},
          {"pds", std::move(pds)},
          {"edges", std::move(edges)},
          {"fingerprint", fingerprint(sys)}};
}

json violations_json(const std::vector<Violation>& violations) {
  json list = json::array();
  for (const auto& v : violations) {
    json item = {{"kind", std::string(to_string(v.kind))},
                 {"message", v.message()}};
    item["pd"] = v.pd ? json(v.pd->str()) : json(nullptr);
    item["resource"] = v.resource ? json(v.resource->str()) : json(nullptr);
    item["detail"] = v.detail;
    list.push_back(std::move(item));
  }
  return {{"ok", violations.empty()}, {"violations", std::move(list)}};
}

}  // namespace osmosis
