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

#include "osmosis/framework.h"

#include <algorithm>
#include <deque>
#include <utility>

namespace osmosis {

std::string_view to_string(ResourcePolicy policy) {
  switch (policy) {
    case ResourcePolicy::kShare:
      return "share";
    case ResourcePolicy::kCopy:
      return "copy";
    case ResourcePolicy::kExclude:
      return "exclude";
  }
  return "unknown";
}

ResourcePolicy IsolationFunction::policy_for(const std::string& kind) const {
  auto it = resource_policy.find(kind);
  return it == resource_policy.end() ? default_resource_policy : it->second;
}

DirectoryPolicy IsolationFunction::directory_policy_for(
    const std::string& kind) const {
  auto it = directory_policy.find(kind);
  return it == directory_policy.end() ? default_directory_policy : it->second;
}

IsolationFunction IsolationFunction::share_all() { return {}; }

IsolationFunction IsolationFunction::thread_with_private_stack() {
  IsolationFunction fn;
  fn.resource_policy["stack"] = ResourcePolicy::kCopy;
  return fn;
}

IsolationFunction IsolationFunction::process() {
  IsolationFunction fn;
  fn.default_resource_policy = ResourcePolicy::kExclude;
  for (const auto& kind : process_copy_kinds()) {
    fn.resource_policy[kind] = ResourcePolicy::kCopy;
  }
  return fn;
}

PdId new_pd(System& sys, const ResourceSet& resources,
            ResourceDirectory directory, const std::optional<PdId>& creator,
            const std::optional<PdId>& id, std::optional<std::string> label) {
  if (creator) {
    sys.pd(*creator);
    directory.creator = creator;
  }
  Pd pd;
  if (id) pd.id = *id;
  pd.res = resources;
  pd.rdir = std::move(directory);
  pd.label = std::move(label);
  return sys.add_pd(std::move(pd));
}

std::set<PdId> reachable_pds(const System& sys, const PdId& pd) {
  std::set<PdId> seen{pd};
  std::deque<PdId> queue{pd};
  while (!queue.empty()) {
    PdId current = queue.front();
    queue.pop_front();
    for (const auto& p : sys.pd(current).rdir.providers()) {
      if (seen.insert(p).second) queue.push_back(p);
    }
  }
  return seen;
}

namespace {

void require_reach(const System& sys, const PdId& pd, const ResourceId& res) {
  for (const auto& p : reachable_pds(sys, pd)) {
    if (sys.pd(p).res.contains(res)) return;
  }
  throw Error(ErrorCode::kPermission, "resource '" + res.str() +
                                          "' is not within reach of pd '" +
                                          pd.str() + "'");
}

AllocationReceipt allocate_child(System& sys, const PdId& owner,
                                 const ResourceId& parent,
                                 const std::string& kind,
                                 const std::optional<ResourceId>& id) {
  ResourceId child = sys.add_resource(kind, ResourceClass::kVirtual,
                                      std::nullopt, id);
  sys.add_edge(child, parent, RelationKind::kAllocation);
  sys.add_owned(owner, child);
  return {child, parent, Edge{child, parent, RelationKind::kAllocation}};
}

}  // namespace

AllocationReceipt allocate_from(System& sys, const PdId& owner,
                                const ResourceId& parent,
                                const std::string& kind,
                                const std::optional<ResourceId>& id) {
  sys.pd(owner);
  sys.resource(parent);
  require_reach(sys, owner, parent);
  return allocate_child(sys, owner, parent, kind, id);
}

std::vector<AllocationReceipt> partition(System& sys, const PdId& owner,
                                         const ResourceId& parent,
                                         std::size_t parts) {
  sys.pd(owner);
  const std::string kind = sys.resource(parent).kind;
  if (parts == 0) {
    throw Error(ErrorCode::kInvalidArgument, "partition needs parts >= 1");
  }
  require_reach(sys, owner, parent);
  std::vector<AllocationReceipt> out;
  std::size_t suffix = 0;
  for (std::size_t i = 0; i < parts; ++i) {
    ResourceId id;
    do {
      id = ResourceId(parent.str() + "." + std::to_string(suffix++));
    } while (sys.find_resource(id));
    out.push_back(allocate_child(sys, owner, parent, kind, id));
  }
  return out;
}

AllocationReceipt request_resource(System& sys, const PdId& requester,
                                   const std::string& kind,
                                   const std::optional<ResourceId>& id) {
  std::optional<PdId> current = sys.pd(requester).rdir.resolve(kind);
  if (!current) {
    throw Error(ErrorCode::kNoProvider, "no provider for kind '" + kind +
                                            "' from pd '" + requester.str() +
                                            "'");
  }
  std::set<PdId> visited;
  while (current && visited.insert(*current).second) {
    const Pd& provider = sys.pd(*current);
    std::vector<std::string> kinds{kind};
    if (auto it = provider.backing.find(kind); it != provider.backing.end()) {
      kinds.insert(kinds.end(), it->second.begin(), it->second.end());
    }
    for (const auto& backing_kind : kinds) {
      for (const auto& r : provider.res) {
        if (sys.resource(r).kind == backing_kind) {
          return allocate_child(sys, requester, r, kind, id);
        }
      }
    }
    current = provider.rdir.resolve(kind);
  }
  throw Error(ErrorCode::kExhausted,
              "no provider of kind '" + kind + "' for pd '" + requester.str() +
                  "' owns a backing resource");
}

void map_resource(System& sys, const PdId& provider,
                  const ResourceId& virtual_res,
                  const ResourceId& physical_res) {
  sys.pd(provider);
  const Resource& v = sys.resource(virtual_res);
  sys.resource(physical_res);
  if (v.cls != ResourceClass::kVirtual) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot map into physical resource '" + virtual_res.str() +
                    "'");
  }
  require_reach(sys, provider, physical_res);
  sys.add_edge(virtual_res, physical_res, RelationKind::kMapping);
}

namespace {

class Copier {
 public:
  Copier(System& sys, const IsolationFunction& fn) : sys_(sys), fn_(fn) {}

  // Fresh sibling of `original`, allocated from the same parents. Parents
  // whose kind is itself copied are copied first and the child hangs off
  // the copy.
  ResourceId copy(const ResourceId& original) {
    if (auto it = copies_.find(original); it != copies_.end()) {
      return it->second;
    }
    in_progress_.insert(original);
    const Resource& r = sys_.resource(original);
    std::vector<ResourceId> parents;
    for (const auto& p : sys_.allocation_parents(original)) {
      bool copy_parent =
          fn_.policy_for(sys_.resource(p).kind) == ResourcePolicy::kCopy &&
          !in_progress_.contains(p);
      parents.push_back(copy_parent ? copy(p) : p);
    }
    ResourceId fresh = sys_.add_resource(r.kind, ResourceClass::kVirtual);
    for (const auto& p : parents) {
      sys_.add_edge(fresh, p, RelationKind::kAllocation);
    }
    in_progress_.erase(original);
    copies_.emplace(original, fresh);
    return fresh;
  }

 private:
  System& sys_;
  const IsolationFunction& fn_;
  std::map<ResourceId, ResourceId> copies_;
  std::set<ResourceId> in_progress_;
};

std::optional<PdId> apply(const DirectoryPolicy& policy,
                          const std::optional<PdId>& current) {
  switch (policy.action) {
    case DirectoryPolicy::Action::kKeep:
      return current;
    case DirectoryPolicy::Action::kRetarget:
      return policy.target;
    case DirectoryPolicy::Action::kDrop:
      return std::nullopt;
  }
  return current;
}

}  // namespace

PdId clone_pd(System& sys, const PdId& source, const IsolationFunction& fn,
              const std::optional<PdId>& id) {
  const Pd src = sys.pd(source);
  auto check_target = [&](const DirectoryPolicy& p) {
    if (p.action == DirectoryPolicy::Action::kRetarget) {
      if (!p.target) {
        throw Error(ErrorCode::kInvalidArgument, "retarget without a target");
      }
      sys.pd(*p.target);
    }
  };
  check_target(fn.default_directory_policy);
  for (const auto& [kind, p] : fn.directory_policy) check_target(p);
  if (id && sys.find_pd(*id)) {
    throw Error(ErrorCode::kInvalidArgument,
                "duplicate pd id '" + id->str() + "'");
  }

  ResourceDirectory dir;
  for (const auto& [kind, provider] : src.rdir.entries) {
    if (auto p = apply(fn.directory_policy_for(kind), provider)) {
      dir.entries[kind] = *p;
    }
  }
  auto creator = apply(fn.default_directory_policy, src.rdir.creator);

  Copier copier(sys, fn);
  ResourceSet res;
  for (const auto& r : src.res) {
    switch (fn.policy_for(sys.resource(r).kind)) {
      case ResourcePolicy::kShare:
        res.insert(r);
        break;
      case ResourcePolicy::kCopy:
        res.insert(copier.copy(r));
        break;
      case ResourcePolicy::kExclude:
        break;
    }
  }

  PdId clone = new_pd(sys, res, std::move(dir), creator, id);
  for (const auto& [kind, backers] : src.backing) {
    sys.set_backing(clone, kind, backers);
  }
  return clone;
}

}  // namespace osmosis
