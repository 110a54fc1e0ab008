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

#ifndef OSMOSIS_QUERIES_H_
#define OSMOSIS_QUERIES_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "osmosis/model.h"

namespace osmosis {

// A hop budget: a concrete count or "as many as it takes".
class HopCount {
 public:
  HopCount(std::size_t n) : n_(n) {}  // NOLINT(google-explicit-constructor)
  static HopCount unbounded() { return HopCount(); }

  bool is_unbounded() const { return !n_.has_value(); }
  std::size_t value_or(std::size_t bound) const { return n_.value_or(bound); }

  friend bool operator==(const HopCount&, const HopCount&) = default;

 private:
  HopCount() = default;
  std::optional<std::size_t> n_;
};

// Immutable, indexed copy of a sealed System. Cheap to copy and safe to
// share between concurrent readers.
class Snapshot {
 public:
  // Throws kSealed when `sys` has not been sealed.
  explicit Snapshot(const System& sys);

  const System& system() const;

  std::size_t resource_count() const;
  std::size_t pd_count() const;

  // Hops after which resource closures stop growing.
  std::size_t resource_saturation() const { return resource_count(); }
  // Hops after which PD closures stop growing. Directory hops cost one
  // hop each, so this is larger than resource_saturation().
  std::size_t pd_saturation() const { return resource_count() + pd_count(); }

  struct Index;
  const Index& index() const { return *index_; }

 private:
  std::shared_ptr<const Index> index_;
};

// Resources deliberately ignored when judging isolation.
class ExclusionSet {
 public:
  ExclusionSet() = default;
  // Throws kNotFound if any member is not a resource of `snap`.
  ExclusionSet(const Snapshot& snap, ResourceSet delta);

  static ExclusionSet all(const Snapshot& snap);

  const ResourceSet& members() const { return delta_; }
  bool contains(const ResourceId& id) const { return delta_.contains(id); }

 private:
  ResourceSet delta_;
};

struct IsolationWitness {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  ResourceSet shared;

  friend bool operator==(const IsolationWitness&,
                         const IsolationWitness&) = default;
};

struct IsolationVerdict {
  // nullopt means fully isolated: no sharing outside delta at any depth.
  std::optional<std::size_t> level;
  std::optional<IsolationWitness> witness;

  bool fully_isolated() const { return !level.has_value(); }

  friend bool operator==(const IsolationVerdict&,
                         const IsolationVerdict&) = default;
};

// Everything reachable from `seed` in 0..n relation hops.
ResourceSet n_hop_resources(const Snapshot& snap, HopCount n,
                            const ResourceSet& seed);

// n_hop_resources(n, pd.res) united with the (n-1)-hop closure of every
// provider in pd's directory, creator included.
ResourceSet n_hop_resources_of_pd(const Snapshot& snap, HopCount n,
                                  const PdId& pd);

ResourceSet n_hop_shared(const Snapshot& snap, HopCount n1, HopCount n2,
                         const PdId& pd1, const PdId& pd2);

bool n_hop_isolated(const Snapshot& snap, HopCount n1, HopCount n2,
                    const ExclusionSet& delta, const PdId& pd1,
                    const PdId& pd2);

// n_hop_isolated(n, n, delta, pd, q) for every other PD q.
bool pd_isolated_in_system(const Snapshot& snap, HopCount n,
                           const ExclusionSet& delta, const PdId& pd);

// Smallest min(n1, n2) at which the two PDs share something outside delta.
IsolationVerdict isolation_level(const Snapshot& snap, const PdId& pd1,
                                 const PdId& pd2, const ExclusionSet& delta);

// Reference closure by repeated relational join, for testing
// n_hop_resources. Deliberately naive.
ResourceSet oracle_closure(const Snapshot& snap, HopCount n,
                           const ResourceSet& seed);

}  // namespace osmosis

#endif  // OSMOSIS_QUERIES_H_
