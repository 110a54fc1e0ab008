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

#ifndef OSMOSIS_TESTS_TESTING_FRAMEWORK_FUZZ_H_
#define OSMOSIS_TESTS_TESTING_FRAMEWORK_FUZZ_H_

#include <random>
#include <string>

#include "osmosis/framework.h"
#include "testing/random_system.h"

namespace osmosis::testing {

struct FuzzResult {
  std::size_t sequences = 0;
  std::size_t operations = 0;
  std::size_t failed_operations = 0;  // threw, as some must
  std::size_t invalid_states = 0;     // validate() non-empty afterwards
  std::size_t dirty_failures = 0;     // threw but changed the System
  std::string first_problem;

  bool ok() const { return invalid_states == 0 && dirty_failures == 0; }
};

// Random framework operation sequences over random systems.
inline FuzzResult fuzz_framework(std::size_t sequences, std::size_t steps,
                                 std::uint64_t seed) {
  FuzzResult out;
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  };
  const auto& kinds = random_kinds();
  for (std::size_t round = 0; round < sequences; ++round) {
    System sys = random_system(rng);
    ++out.sequences;
    for (std::size_t step = 0; step < steps; ++step) {
      System before = sys;
      std::vector<ResourceId> res;
      for (const auto& [id, _] : sys.resources()) res.push_back(id);
      PdId pd = random_pd(rng, sys);
      std::string op;
      ++out.operations;
      try {
        switch (pick(6)) {
          case 0:
            op = "allocate_from";
            if (!res.empty()) {
              allocate_from(sys, pd, res[pick(res.size())],
                            kinds[pick(kinds.size())]);
            }
            break;
          case 1:
            op = "partition";
            if (!res.empty()) partition(sys, pd, res[pick(res.size())], pick(3));
            break;
          case 2:
            op = "request_resource";
            request_resource(sys, pd, kinds[pick(kinds.size())]);
            break;
          case 3:
            op = "map_resource";
            if (res.size() >= 2) {
              map_resource(sys, pd, res[pick(res.size())],
                           res[pick(res.size())]);
            }
            break;
          case 4: {
            op = "clone_pd";
            IsolationFunction fn;
            fn.default_resource_policy = static_cast<ResourcePolicy>(pick(3));
            fn.resource_policy[kinds[pick(kinds.size())]] =
                static_cast<ResourcePolicy>(pick(3));
            if (pick(4) == 0) {
              fn.default_directory_policy = DirectoryPolicy::drop();
            } else if (pick(4) == 0) {
              fn.default_directory_policy =
                  DirectoryPolicy::retarget(random_pd(rng, sys));
            }
            clone_pd(sys, pd, fn);
            break;
          }
          case 5:
            op = "new_pd";
            new_pd(sys, random_subset(rng, sys, 0.1), {}, random_pd(rng, sys));
            break;
        }
      } catch (const Error&) {
        ++out.failed_operations;
        if (!(sys == before)) {
          if (out.dirty_failures++ == 0 && out.first_problem.empty()) {
            out.first_problem = "failed " + op + " mutated the system";
          }
        }
      }
      if (!validate(sys).empty()) {
        if (out.invalid_states++ == 0 && out.first_problem.empty()) {
          out.first_problem = op + " left violations";
        }
      }
    }
  }
  return out;
}

}  // namespace osmosis::testing

#endif  // OSMOSIS_TESTS_TESTING_FRAMEWORK_FUZZ_H_
