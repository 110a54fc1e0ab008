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

#ifndef OSMOSIS_FRAMEWORK_H_
#define OSMOSIS_FRAMEWORK_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "osmosis/model.h"

namespace osmosis {

enum class ResourcePolicy { kShare, kCopy, kExclude };

std::string_view to_string(ResourcePolicy policy);

struct DirectoryPolicy {
  enum class Action { kKeep, kRetarget, kDrop };

  Action action = Action::kKeep;
  std::optional<PdId> target;  // set iff action == kRetarget

  static DirectoryPolicy keep() { return {}; }
  static DirectoryPolicy drop() { return {Action::kDrop, std::nullopt}; }
  static DirectoryPolicy retarget(PdId pd) {
    return {Action::kRetarget, std::move(pd)};
  }

  friend bool operator==(const DirectoryPolicy&,
                         const DirectoryPolicy&) = default;
};

// How clone_pd treats each resource kind and each directory entry of the
// source PD. The creator fallback follows default_directory_policy.
struct IsolationFunction {
  std::map<std::string, ResourcePolicy> resource_policy;
  std::map<std::string, DirectoryPolicy> directory_policy;
  ResourcePolicy default_resource_policy = ResourcePolicy::kShare;
  DirectoryPolicy default_directory_policy;

  ResourcePolicy policy_for(const std::string& kind) const;
  DirectoryPolicy directory_policy_for(const std::string& kind) const;

  // Everything shared, directory kept: a thread.
  static IsolationFunction share_all();
  // A thread whose stack is a fresh sibling in the same address space.
  static IsolationFunction thread_with_private_stack();
  // A process: fresh VAS, code/heap/stack/vcpu re-created inside it,
  // nothing else carried over, directory kept.
  static IsolationFunction process();
};

struct AllocationReceipt {
  ResourceId new_resource;
  ResourceId parent;
  Edge edge;

  friend bool operator==(const AllocationReceipt&,
                         const AllocationReceipt&) = default;
};

// Kinds clone_pd copies under IsolationFunction::process().
inline const std::vector<std::string>& process_copy_kinds() {
  static const std::vector<std::string> kinds = {"vas", "code", "heap",
                                                 "stack", "vcpu"};
  return kinds;
}

PdId new_pd(System& sys, const ResourceSet& resources,
            ResourceDirectory directory,
            const std::optional<PdId>& creator = std::nullopt,
            const std::optional<PdId>& id = std::nullopt,
            std::optional<std::string> label = std::nullopt);

// PDs whose resources `pd` may draw on: itself plus every provider reachable
// through directories.
std::set<PdId> reachable_pds(const System& sys, const PdId& pd);

AllocationReceipt allocate_from(System& sys, const PdId& owner,
                                const ResourceId& parent,
                                const std::string& kind,
                                const std::optional<ResourceId>& id =
                                    std::nullopt);

std::vector<AllocationReceipt> partition(System& sys, const PdId& owner,
                                         const ResourceId& parent,
                                         std::size_t parts);

// Page-fault style request: resolve `kind` through the requester's
// directory and have the provider allocate from a backing resource it owns.
AllocationReceipt request_resource(System& sys, const PdId& requester,
                                   const std::string& kind,
                                   const std::optional<ResourceId>& id =
                                       std::nullopt);

void map_resource(System& sys, const PdId& provider,
                  const ResourceId& virtual_res,
                  const ResourceId& physical_res);

PdId clone_pd(System& sys, const PdId& source, const IsolationFunction& fn,
              const std::optional<PdId>& id = std::nullopt);

}  // namespace osmosis

#endif  // OSMOSIS_FRAMEWORK_H_
