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

#include "osmosis/queries.h"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <utility>

namespace osmosis {

namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

}  // namespace

struct Snapshot::Index {
  System sys;
  std::vector<ResourceId> res_ids;
  std::map<ResourceId, std::size_t> res_pos;
  std::vector<std::vector<std::size_t>> out;  // relation successors

  std::vector<PdId> pd_ids;
  std::map<PdId, std::size_t> pd_pos;
  std::vector<std::vector<std::size_t>> owned;      // pd -> resource indices
  std::vector<std::vector<std::size_t>> providers;  // pd -> pd indices

  std::size_t resource_index(const ResourceId& id) const {
    auto it = res_pos.find(id);
    if (it == res_pos.end()) {
      throw Error(ErrorCode::kNotFound, "unknown resource '" + id.str() + "'");
    }
    return it->second;
  }

  std::size_t pd_index(const PdId& id) const {
    auto it = pd_pos.find(id);
    if (it == pd_pos.end()) {
      throw Error(ErrorCode::kNotFound, "unknown pd '" + id.str() + "'");
    }
    return it->second;
  }

  // Hop distance from a set of resources, kUnreached beyond `limit`.
  std::vector<std::size_t> resource_distances(
      const std::vector<std::size_t>& seed, std::size_t limit) const {
    std::vector<std::size_t> dist(res_ids.size(), kUnreached);
    std::deque<std::size_t> queue;
    for (std::size_t s : seed) {
      if (dist[s] != 0) {
        dist[s] = 0;
        queue.push_back(s);
      }
    }
    while (!queue.empty()) {
      std::size_t r = queue.front();
      queue.pop_front();
      if (dist[r] == limit) continue;
      for (std::size_t next : out[r]) {
        if (dist[next] == kUnreached) {
          dist[next] = dist[r] + 1;
          queue.push_back(next);
        }
      }
    }
    return dist;
  }

  // Distance from a PD to every resource in the graph where a PD reaches
  // its owned resources for free, its providers for one hop, and each
  // relation edge costs one hop. A resource is in the n-hop closure of the
  // PD exactly when its distance is <= n.
  std::vector<std::size_t> pd_distances(std::size_t pd) const {
    const std::size_t num_pds = pd_ids.size();
    std::vector<std::size_t> dist(num_pds + res_ids.size(), kUnreached);
    std::deque<std::size_t> queue;  // 0-1 BFS; nodes < num_pds are PDs
    dist[pd] = 0;
    queue.push_back(pd);
    while (!queue.empty()) {
      std::size_t node = queue.front();
      queue.pop_front();
      std::size_t d = dist[node];
      auto relax = [&](std::size_t next, std::size_t weight) {
        if (d + weight < dist[next]) {
          dist[next] = d + weight;
          if (weight == 0) {
            queue.push_front(next);
          } else {
            queue.push_back(next);
          }
        }
      };
      if (node < num_pds) {
        for (std::size_t r : owned[node]) relax(num_pds + r, 0);
        for (std::size_t p : providers[node]) relax(p, 1);
      } else {
        for (std::size_t r : out[node - num_pds]) relax(num_pds + r, 1);
      }
    }
    return {dist.begin() + static_cast<std::ptrdiff_t>(num_pds), dist.end()};
  }
};

Snapshot::Snapshot(const System& sys) {
  if (!sys.sealed()) {
    throw Error(ErrorCode::kSealed, "queries require a sealed system");
  }
  auto index = std::make_shared<Index>();
  index->sys = sys;
  for (const auto& [id, r] : sys.resources()) {
    index->res_pos.emplace(id, index->res_ids.size());
    index->res_ids.push_back(id);
  }
  index->out.resize(index->res_ids.size());
  for (const Edge& e : sys.edges()) {
    auto& succ = index->out[index->res_pos.at(e.from)];
    std::size_t to = index->res_pos.at(e.to);
    if (std::find(succ.begin(), succ.end(), to) == succ.end()) {
      succ.push_back(to);
    }
  }
  for (const auto& [id, pd] : sys.pds()) {
    index->pd_pos.emplace(id, index->pd_ids.size());
    index->pd_ids.push_back(id);
  }
  index->owned.resize(index->pd_ids.size());
  index->providers.resize(index->pd_ids.size());
  for (const auto& [id, pd] : sys.pds()) {
    std::size_t i = index->pd_pos.at(id);
    for (const auto& r : pd.res) index->owned[i].push_back(index->res_pos.at(r));
    for (const auto& p : pd.rdir.providers()) {
      index->providers[i].push_back(index->pd_pos.at(p));
    }
  }
  index_ = std::move(index);
}

const System& Snapshot::system() const { return index_->sys; }
std::size_t Snapshot::resource_count() const { return index_->res_ids.size(); }
std::size_t Snapshot::pd_count() const { return index_->pd_ids.size(); }

ExclusionSet::ExclusionSet(const Snapshot& snap, ResourceSet delta)
    : delta_(std::move(delta)) {
  for (const auto& r : delta_) snap.index().resource_index(r);
}

ExclusionSet ExclusionSet::all(const Snapshot& snap) {
  const auto& ids = snap.index().res_ids;
  return ExclusionSet(snap, ResourceSet(ids.begin(), ids.end()));
}

namespace {

std::vector<std::size_t> seed_indices(const Snapshot::Index& index,
                                      const ResourceSet& seed) {
  std::vector<std::size_t> out;
  out.reserve(seed.size());
  for (const auto& r : seed) out.push_back(index.resource_index(r));
  return out;
}

ResourceSet within(const Snapshot::Index& index,
                   const std::vector<std::size_t>& dist, std::size_t n) {
  ResourceSet out;
  for (std::size_t r = 0; r < dist.size(); ++r) {
    if (dist[r] <= n) out.insert(out.end(), index.res_ids[r]);
  }
  return out;
}

struct PairDistances {
  std::vector<std::size_t> d1;
  std::vector<std::size_t> d2;
};

PairDistances pair_distances(const Snapshot::Index& index, const PdId& pd1,
                             const PdId& pd2) {
  std::size_t i1 = index.pd_index(pd1);
  std::size_t i2 = index.pd_index(pd2);
  return {index.pd_distances(i1), index.pd_distances(i2)};
}

}  // namespace

ResourceSet n_hop_resources(const Snapshot& snap, HopCount n,
                            const ResourceSet& seed) {
  const auto& index = snap.index();
  std::size_t hops = n.value_or(snap.resource_saturation());
  auto dist = index.resource_distances(seed_indices(index, seed), hops);
  return within(index, dist, hops);
}

ResourceSet n_hop_resources_of_pd(const Snapshot& snap, HopCount n,
                                  const PdId& pd) {
  const auto& index = snap.index();
  auto dist = index.pd_distances(index.pd_index(pd));
  return within(index, dist, n.value_or(snap.pd_saturation()));
}

ResourceSet n_hop_shared(const Snapshot& snap, HopCount n1, HopCount n2,
                         const PdId& pd1, const PdId& pd2) {
  const auto& index = snap.index();
  auto [d1, d2] = pair_distances(index, pd1, pd2);
  std::size_t h1 = n1.value_or(snap.pd_saturation());
  std::size_t h2 = n2.value_or(snap.pd_saturation());
  ResourceSet out;
  for (std::size_t r = 0; r < d1.size(); ++r) {
    if (d1[r] <= h1 && d2[r] <= h2) out.insert(out.end(), index.res_ids[r]);
  }
  return out;
}

bool n_hop_isolated(const Snapshot& snap, HopCount n1, HopCount n2,
                    const ExclusionSet& delta, const PdId& pd1,
                    const PdId& pd2) {
  auto shared = n_hop_shared(snap, n1, n2, pd1, pd2);
  return std::all_of(shared.begin(), shared.end(),
                     [&](const ResourceId& r) { return delta.contains(r); });
}

bool pd_isolated_in_system(const Snapshot& snap, HopCount n,
                           const ExclusionSet& delta, const PdId& pd) {
  snap.index().pd_index(pd);
  for (const auto& other : snap.index().pd_ids) {
    if (other == pd) continue;
    if (!n_hop_isolated(snap, n, n, delta, pd, other)) return false;
  }
  return true;
}

IsolationVerdict isolation_level(const Snapshot& snap, const PdId& pd1,
                                 const PdId& pd2, const ExclusionSet& delta) {
  const auto& index = snap.index();
  auto [d1, d2] = pair_distances(index, pd1, pd2);

  // Resources that count against isolation: reachable from both, not
  // excluded. Finite distances never exceed the saturation bound.
  std::vector<std::size_t> candidates;
  for (std::size_t r = 0; r < d1.size(); ++r) {
    if (d1[r] != kUnreached && d2[r] != kUnreached &&
        !delta.contains(index.res_ids[r])) {
      candidates.push_back(r);
    }
  }
  if (candidates.empty()) return {};

  std::size_t k1 = kUnreached;
  std::size_t k2 = kUnreached;
  for (std::size_t r : candidates) {
    k1 = std::min(k1, d1[r]);
    k2 = std::min(k2, d2[r]);
  }

  IsolationWitness witness;
  if (k1 <= k2) {
    witness.n1 = k1;
    witness.n2 = kUnreached;
    for (std::size_t r : candidates) {
      if (d1[r] <= k1) witness.n2 = std::min(witness.n2, d2[r]);
    }
  } else {
    witness.n2 = k2;
    witness.n1 = kUnreached;
    for (std::size_t r : candidates) {
      if (d2[r] <= k2) witness.n1 = std::min(witness.n1, d1[r]);
    }
  }
  for (std::size_t r = 0; r < d1.size(); ++r) {
    if (d1[r] <= witness.n1 && d2[r] <= witness.n2) {
      witness.shared.insert(witness.shared.end(), index.res_ids[r]);
    }
  }
  std::size_t level = std::min(witness.n1, witness.n2);
  return {level, std::move(witness)};
}

ResourceSet oracle_closure(const Snapshot& snap, HopCount n,
                           const ResourceSet& seed) {
  const System& sys = snap.system();
  for (const auto& r : seed) sys.resource(r);
  std::size_t rounds = n.value_or(sys.resources().size());
  ResourceSet current = seed;
  for (std::size_t i = 0; i < rounds; ++i) {
    ResourceSet next = current;
    for (const Edge& e : sys.edges()) {
      if (current.contains(e.from)) next.insert(e.to);
    }
    current = std::move(next);
  }
  return current;
}

}  // namespace osmosis
