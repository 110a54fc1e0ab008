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

#include "osmosis/model.h"

#include <algorithm>
#include <utility>

namespace osmosis {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid-argument";
    case ErrorCode::kNotFound:
      return "not-found";
    case ErrorCode::kSealed:
      return "sealed-system";
    case ErrorCode::kPermission:
      return "permission";
    case ErrorCode::kNoProvider:
      return "no-provider";
    case ErrorCode::kExhausted:
      return "exhausted";
    case ErrorCode::kParse:
      return "parse";
  }
  return "unknown";
}

bool is_valid_id(std::string_view token) {
  if (token.empty()) return false;
  return std::all_of(token.begin(), token.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
           (c >= '0' && c <= '9') || c == '_' || c == '.' || c == '-';
  });
}

std::string_view to_string(ResourceClass cls) {
  return cls == ResourceClass::kPhysical ? "physical" : "virtual";
}

std::string_view to_string(RelationKind kind) {
  switch (kind) {
    case RelationKind::kTopology:
      return "topology";
    case RelationKind::kMapping:
      return "mapping";
    case RelationKind::kAllocation:
      return "allocation";
  }
  return "unknown";
}

std::optional<ResourceClass> parse_resource_class(std::string_view text) {
  if (text == "physical") return ResourceClass::kPhysical;
  if (text == "virtual") return ResourceClass::kVirtual;
  return std::nullopt;
}

std::optional<RelationKind> parse_relation_kind(std::string_view text) {
  if (text == "topology") return RelationKind::kTopology;
  if (text == "mapping") return RelationKind::kMapping;
  if (text == "allocation") return RelationKind::kAllocation;
  return std::nullopt;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kDanglingResource:
      return "DanglingResource";
    case ViolationKind::kDanglingProvider:
      return "DanglingProvider";
    case ViolationKind::kDanglingCreator:
      return "DanglingCreator";
    case ViolationKind::kDanglingEdgeEndpoint:
      return "DanglingEdgeEndpoint";
    case ViolationKind::kSelfLoop:
      return "SelfLoop";
    case ViolationKind::kEmptyKind:
      return "EmptyKind";
  }
  return "Unknown";
}

std::string Violation::message() const {
  std::string out(to_string(kind));
  out += ":";
  if (pd) out += " pd=" + pd->str();
  if (resource) out += " resource=" + resource->str();
  if (!detail.empty()) out += " " + detail;
  return out;
}

std::optional<PdId> ResourceDirectory::resolve(std::string_view kind) const {
  if (auto it = entries.find(std::string(kind)); it != entries.end()) {
    return it->second;
  }
  return creator;
}

std::set<PdId> ResourceDirectory::providers() const {
  std::set<PdId> out;
  for (const auto& [kind, provider] : entries) out.insert(provider);
  if (creator) out.insert(*creator);
  return out;
}

namespace {

void check_kind(std::string_view kind) {
  if (kind.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "resource kind must be non-empty");
  }
  if (!is_valid_id(kind)) {
    throw Error(ErrorCode::kInvalidArgument,
                "resource kind '" + std::string(kind) +
                    "' must match [A-Za-z0-9_.-]+");
  }
}

}  // namespace

ResourceId System::fresh_resource_id() {
  for (;;) {
    ResourceId id("r" + std::to_string(next_resource_++));
    if (!res_.contains(id)) return id;
  }
}

PdId System::fresh_pd_id() {
  for (;;) {
    PdId id("pd" + std::to_string(next_pd_++));
    if (!pds_.contains(id)) return id;
  }
}

ResourceId System::add_resource(std::string kind, ResourceClass cls,
                                std::optional<std::string> label,
                                std::optional<ResourceId> id) {
  check_kind(kind);
  if (sealed_ && cls == ResourceClass::kPhysical) {
    throw Error(ErrorCode::kSealed,
                "physical resources cannot be added to a sealed system");
  }
  ResourceId rid = id ? *id : fresh_resource_id();
  if (!is_valid_id(rid.str())) {
    throw Error(ErrorCode::kInvalidArgument,
                "invalid resource id '" + rid.str() + "'");
  }
  if (res_.contains(rid)) {
    throw Error(ErrorCode::kInvalidArgument,
                "duplicate resource id '" + rid.str() + "'");
  }
  res_.emplace(rid, Resource{rid, std::move(kind), cls, std::move(label)});
  return rid;
}

PdId System::add_pd(Pd pd) {
  if (pd.id.empty()) pd.id = fresh_pd_id();
  if (!is_valid_id(pd.id.str())) {
    throw Error(ErrorCode::kInvalidArgument,
                "invalid pd id '" + pd.id.str() + "'");
  }
  if (pds_.contains(pd.id)) {
    throw Error(ErrorCode::kInvalidArgument,
                "duplicate pd id '" + pd.id.str() + "'");
  }
  for (const auto& r : pd.res) {
    if (!res_.contains(r)) {
      throw Error(ErrorCode::kNotFound, "unknown resource '" + r.str() +
                                            "' for pd '" + pd.id.str() + "'");
    }
  }
  // A directory may name the PD being added (self-service).
  auto known = [&](const PdId& p) { return p == pd.id || pds_.contains(p); };
  for (const auto& [kind, provider] : pd.rdir.entries) {
    check_kind(kind);
    if (!known(provider)) {
      throw Error(ErrorCode::kNotFound,
                  "unknown provider pd '" + provider.str() + "' for kind '" +
                      kind + "'");
    }
  }
  if (pd.rdir.creator && !known(*pd.rdir.creator)) {
    throw Error(ErrorCode::kNotFound,
                "unknown creator pd '" + pd.rdir.creator->str() + "'");
  }
  for (const auto& [kind, backers] : pd.backing) {
    check_kind(kind);
    for (const auto& b : backers) check_kind(b);
  }
  PdId id = pd.id;
  pds_.emplace(id, std::move(pd));
  return id;
}

void System::add_edge(const ResourceId& from, const ResourceId& to,
                      RelationKind kind) {
  if (!res_.contains(from)) {
    throw Error(ErrorCode::kNotFound, "unknown resource '" + from.str() + "'");
  }
  if (!res_.contains(to)) {
    throw Error(ErrorCode::kNotFound, "unknown resource '" + to.str() + "'");
  }
  if (from == to) {
    throw Error(ErrorCode::kInvalidArgument,
                "self-loop on resource '" + from.str() + "'");
  }
  if (sealed_ && kind == RelationKind::kTopology) {
    throw Error(ErrorCode::kSealed,
                "topology edges cannot be added to a sealed system");
  }
  edges_.insert(Edge{from, to, kind});
}

Pd& System::mutable_pd(const PdId& id) {
  auto it = pds_.find(id);
  if (it == pds_.end()) {
    throw Error(ErrorCode::kNotFound, "unknown pd '" + id.str() + "'");
  }
  return it->second;
}

void System::add_owned(const PdId& pd, const ResourceId& res) {
  Pd& p = mutable_pd(pd);
  if (!res_.contains(res)) {
    throw Error(ErrorCode::kNotFound, "unknown resource '" + res.str() + "'");
  }
  p.res.insert(res);
}

void System::set_directory_entry(const PdId& pd, const std::string& kind,
                                 const PdId& provider) {
  Pd& p = mutable_pd(pd);
  check_kind(kind);
  if (!pds_.contains(provider)) {
    throw Error(ErrorCode::kNotFound,
                "unknown provider pd '" + provider.str() + "'");
  }
  p.rdir.entries[kind] = provider;
}

void System::set_creator(const PdId& pd, const PdId& creator) {
  Pd& p = mutable_pd(pd);
  if (!pds_.contains(creator)) {
    throw Error(ErrorCode::kNotFound,
                "unknown creator pd '" + creator.str() + "'");
  }
  p.rdir.creator = creator;
}

void System::set_backing(const PdId& pd, const std::string& kind,
                         std::vector<std::string> backing_kinds) {
  Pd& p = mutable_pd(pd);
  check_kind(kind);
  if (backing_kinds.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "backing for '" + kind + "' needs at least one kind");
  }
  for (const auto& b : backing_kinds) check_kind(b);
  p.backing[kind] = std::move(backing_kinds);
}

void System::insert_unchecked(Resource resource) {
  ResourceId id = resource.id;
  res_.insert_or_assign(std::move(id), std::move(resource));
}

void System::insert_unchecked(Pd pd) {
  PdId id = pd.id;
  pds_.insert_or_assign(std::move(id), std::move(pd));
}

void System::insert_unchecked(Edge edge) { edges_.insert(std::move(edge)); }

void System::seal() {
  if (sealed_) return;
  auto violations = validate(*this);
  if (!violations.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot seal an invalid system: " + violations.front().message());
  }
  sealed_ = true;
}

const Resource* System::find_resource(const ResourceId& id) const {
  auto it = res_.find(id);
  return it == res_.end() ? nullptr : &it->second;
}

const Pd* System::find_pd(const PdId& id) const {
  auto it = pds_.find(id);
  return it == pds_.end() ? nullptr : &it->second;
}

const Resource& System::resource(const ResourceId& id) const {
  if (const Resource* r = find_resource(id)) return *r;
  throw Error(ErrorCode::kNotFound, "unknown resource '" + id.str() + "'");
}

const Pd& System::pd(const PdId& id) const {
  if (const Pd* p = find_pd(id)) return *p;
  throw Error(ErrorCode::kNotFound, "unknown pd '" + id.str() + "'");
}

std::vector<Edge> System::out_edges(const ResourceId& id) const {
  std::vector<Edge> out;
  for (auto it = edges_.lower_bound(Edge{id, ResourceId{}, RelationKind{}});
       it != edges_.end() && it->from == id; ++it) {
    out.push_back(*it);
  }
  return out;
}

std::vector<ResourceId> System::allocation_parents(const ResourceId& id) const {
  std::vector<ResourceId> out;
  for (const Edge& e : out_edges(id)) {
    if (e.kind == RelationKind::kAllocation) out.push_back(e.to);
  }
  return out;
}

bool operator==(const System& a, const System& b) {
  return a.sealed_ == b.sealed_ && a.res_ == b.res_ && a.pds_ == b.pds_ &&
         a.edges_ == b.edges_;
}

System new_system() { return System{}; }

std::vector<Violation> validate(const System& sys) {
  std::vector<Violation> out;
  for (const auto& [id, r] : sys.resources()) {
    if (r.kind.empty()) {
      out.push_back({ViolationKind::kEmptyKind, std::nullopt, id, ""});
    }
  }
  for (const auto& [id, pd] : sys.pds()) {
    for (const auto& r : pd.res) {
      if (!sys.find_resource(r)) {
        out.push_back({ViolationKind::kDanglingResource, id, r, ""});
      }
    }
    for (const auto& [kind, provider] : pd.rdir.entries) {
      if (!sys.find_pd(provider)) {
        out.push_back({ViolationKind::kDanglingProvider, id, std::nullopt,
                       "kind=" + kind + " provider=" + provider.str()});
      }
    }
    if (pd.rdir.creator && !sys.find_pd(*pd.rdir.creator)) {
      out.push_back({ViolationKind::kDanglingCreator, id, std::nullopt,
                     "creator=" + pd.rdir.creator->str()});
    }
  }
  for (const Edge& e : sys.edges()) {
    std::string where = "edge " + std::string(to_string(e.kind)) + " " +
                        e.from.str() + " " + e.to.str();
    if (e.from == e.to) {
      out.push_back({ViolationKind::kSelfLoop, std::nullopt, e.from, where});
    }
    if (!sys.find_resource(e.from)) {
      out.push_back(
          {ViolationKind::kDanglingEdgeEndpoint, std::nullopt, e.from, where});
    }
    if (!sys.find_resource(e.to)) {
      out.push_back(
          {ViolationKind::kDanglingEdgeEndpoint, std::nullopt, e.to, where});
    }
  }
  return out;
}

}  // namespace osmosis
