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

#ifndef OSMOSIS_TESTS_TESTING_RANDOM_SYSTEM_H_
#define OSMOSIS_TESTS_TESTING_RANDOM_SYSTEM_H_

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "osmosis/model.h"

namespace osmosis::testing {

struct RandomSystemParams {
  std::size_t max_resources = 25;
  std::size_t max_edges = 60;
  std::size_t max_pds = 5;
  double ownership = 0.15;    // chance a PD owns a given resource
  double dir_entry = 0.3;     // chance of each directory entry
  double has_creator = 0.6;
};

inline const std::vector<std::string>& random_kinds() {
  static const std::vector<std::string> kinds = {"vas", "stack", "heap",
                                                 "pmem", "vmem"};
  return kinds;
}

// Sealed random System. Directories may be cyclic and self-referencing.
inline System random_system(std::mt19937_64& rng,
                            const RandomSystemParams& params = {}) {
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  auto chance = [&](double p) {
    return std::bernoulli_distribution(p)(rng);
  };
  const auto& kinds = random_kinds();

  System sys;
  std::size_t num_res = pick(0, params.max_resources);
  std::vector<ResourceId> res;
  for (std::size_t i = 0; i < num_res; ++i) {
    res.push_back(sys.add_resource(
        kinds[pick(0, kinds.size() - 1)],
        chance(0.4) ? ResourceClass::kPhysical : ResourceClass::kVirtual));
  }
  if (num_res >= 2) {
    std::size_t num_edges = pick(0, params.max_edges);
    for (std::size_t i = 0; i < num_edges; ++i) {
      std::size_t a = pick(0, num_res - 1);
      std::size_t b = pick(0, num_res - 1);
      if (a == b) continue;
      sys.add_edge(res[a], res[b], static_cast<RelationKind>(pick(0, 2)));
    }
  }

  std::size_t num_pds = pick(1, params.max_pds);
  std::vector<PdId> pds;
  for (std::size_t i = 0; i < num_pds; ++i) {
    Pd pd;
    for (const auto& r : res) {
      if (chance(params.ownership)) pd.res.insert(r);
    }
    pds.push_back(sys.add_pd(std::move(pd)));
  }
  for (const auto& pd : pds) {
    for (const auto& kind : kinds) {
      if (chance(params.dir_entry)) {
        sys.set_directory_entry(pd, kind, pds[pick(0, num_pds - 1)]);
      }
    }
    if (chance(params.has_creator)) {
      sys.set_creator(pd, pds[pick(0, num_pds - 1)]);
    }
    if (chance(0.3)) sys.set_backing(pd, "vmem", {"vas"});
  }
  sys.seal();
  return sys;
}

inline ResourceSet random_subset(std::mt19937_64& rng, const System& sys,
                                 double p) {
  ResourceSet out;
  for (const auto& [id, r] : sys.resources()) {
    if (std::bernoulli_distribution(p)(rng)) out.insert(id);
  }
  return out;
}

inline PdId random_pd(std::mt19937_64& rng, const System& sys) {
  auto it = sys.pds().begin();
  std::advance(it, std::uniform_int_distribution<std::size_t>(
                       0, sys.pds().size() - 1)(rng));
  return it->first;
}

}  // namespace osmosis::testing

#endif  // OSMOSIS_TESTS_TESTING_RANDOM_SYSTEM_H_
