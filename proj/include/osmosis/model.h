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

#ifndef OSMOSIS_MODEL_H_
#define OSMOSIS_MODEL_H_

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "osmosis/error.h"
#include "osmosis/ids.h"

namespace osmosis {

enum class ResourceClass { kPhysical, kVirtual };

// Topology: fixed hardware fact. Mapping: installed by system software
// (page tables). Allocation: child depends on the resource it came from.
enum class RelationKind { kTopology, kMapping, kAllocation };

std::string_view to_string(ResourceClass cls);
std::string_view to_string(RelationKind kind);
std::optional<ResourceClass> parse_resource_class(std::string_view text);
std::optional<RelationKind> parse_relation_kind(std::string_view text);

struct Resource {
  ResourceId id;
  std::string kind;
  ResourceClass cls = ResourceClass::kVirtual;
  std::optional<std::string> label;

  friend bool operator==(const Resource&, const Resource&) = default;
};

// `from` depends on `to`. Closures follow edges in this direction only.
struct Edge {
  ResourceId from;
  ResourceId to;
  RelationKind kind = RelationKind::kTopology;

  friend auto operator<=>(const Edge&, const Edge&) = default;
  friend bool operator==(const Edge&, const Edge&) = default;
};

using ResourceSet = std::set<ResourceId>;

// Kind tag -> provider PD, with the creator as the provider of last resort.
struct ResourceDirectory {
  std::map<std::string, PdId> entries;
  std::optional<PdId> creator;

  // The PD that handles a request of `kind`: the explicit entry, else the
  // creator, else nothing.
  std::optional<PdId> resolve(std::string_view kind) const;

  // Every distinct provider, creator included.
  std::set<PdId> providers() const;

  friend bool operator==(const ResourceDirectory&,
                         const ResourceDirectory&) = default;
};

struct Pd {
  PdId id;
  ResourceSet res;
  ResourceDirectory rdir;
  std::optional<std::string> label;
  // Requested kind -> kinds of owned resources that can satisfy it, e.g.
  // "vmem" is carved out of a "vas". A kind always backs itself.
  std::map<std::string, std::vector<std::string>> backing;

  friend bool operator==(const Pd&, const Pd&) = default;
};

enum class ViolationKind {
  kDanglingResource,      // pd owns an unknown resource
  kDanglingProvider,      // directory entry names an unknown pd
  kDanglingCreator,       // creator fallback names an unknown pd
  kDanglingEdgeEndpoint,  // edge touches an unknown resource
  kSelfLoop,
  kEmptyKind,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::optional<PdId> pd;
  std::optional<ResourceId> resource;
  // Directory kind for kDanglingProvider, missing pd for kDanglingCreator.
  std::string detail;

  std::string message() const;

  friend bool operator==(const Violation&, const Violation&) = default;
};

class System {
 public:
  System() = default;

  // Mutators check every invariant and throw Error on violation.
  ResourceId add_resource(std::string kind, ResourceClass cls,
                          std::optional<std::string> label = std::nullopt,
                          std::optional<ResourceId> id = std::nullopt);

  // Adds `pd`; an empty id gets a fresh one. All references must resolve.
  PdId add_pd(Pd pd);

  void add_edge(const ResourceId& from, const ResourceId& to,
                RelationKind kind);

  void add_owned(const PdId& pd, const ResourceId& res);
  void set_directory_entry(const PdId& pd, const std::string& kind,
                           const PdId& provider);
  void set_creator(const PdId& pd, const PdId& creator);
  void set_backing(const PdId& pd, const std::string& kind,
                   std::vector<std::string> backing_kinds);

  // Inserts without checks; validate() reports what these let through.
  void insert_unchecked(Resource resource);
  void insert_unchecked(Pd pd);
  void insert_unchecked(Edge edge);

  // Freezes topology and physical resources. Throws kInvalidArgument when
  // validate() is non-empty. Idempotent.
  void seal();
  bool sealed() const { return sealed_; }

  const std::map<ResourceId, Resource>& resources() const { return res_; }
  const std::map<PdId, Pd>& pds() const { return pds_; }
  const std::set<Edge>& edges() const { return edges_; }

  const Resource* find_resource(const ResourceId& id) const;
  const Pd* find_pd(const PdId& id) const;
  // Throwing lookups (kNotFound).
  const Resource& resource(const ResourceId& id) const;
  const Pd& pd(const PdId& id) const;

  std::vector<Edge> out_edges(const ResourceId& id) const;
  std::vector<ResourceId> allocation_parents(const ResourceId& id) const;

  ResourceId fresh_resource_id();
  PdId fresh_pd_id();

  friend bool operator==(const System&, const System&);

 private:
  Pd& mutable_pd(const PdId& id);

  std::map<ResourceId, Resource> res_;
  std::map<PdId, Pd> pds_;
  std::set<Edge> edges_;
  bool sealed_ = false;
  std::size_t next_resource_ = 0;
  std::size_t next_pd_ = 0;
};

System new_system();

// Every invariant violation, in a deterministic order. Empty = well-formed.
std::vector<Violation> validate(const System& sys);

}  // namespace osmosis

#endif  // OSMOSIS_MODEL_H_
