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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include <chrono>
#include <cstdio>
#include <set>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "osmosis/framework.h"
#include "osmosis/queries.h"
#include "osmosis/scenario.h"
#include "osmosis/script.h"
#include "testing/framework_fuzz.h"
#include "testing/properties.h"

namespace osmosis {
namespace {

// Tolerances.
constexpr double kVmLevelSeconds = 1.0;
constexpr double kOracleSuiteSeconds = 30.0;
constexpr std::size_t kOracleSystems = 1000;
constexpr std::size_t kOracleMaxHops = 30;
constexpr std::size_t kPropertyCases = 250;  // at least 200 each
constexpr std::size_t kFuzzSequences = 600;  // at least 500
constexpr std::size_t kFuzzSteps = 20;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(const char* id, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS " : "FAIL ") << id << ": " << detail << '\n';
  if (!pass) ++failures;
}

std::string show_level(const IsolationVerdict& v) {
  if (!v.level) return "isolated";
  std::ostringstream os;
  os << *v.level;
  if (v.witness) os << " (" << v.witness->n1 << "," << v.witness->n2 << ")";
  return os.str();
}

void ac1_vm_level() {
  auto start = Clock::now();
  Snapshot snap(build_canonical(Canonical::kVm));
  auto v = isolation_level(snap, PdId("vm_process"), PdId("native_process"),
                           {});
  double t = seconds_since(start);
  bool pass = v.level == std::optional<std::size_t>(2) && v.witness &&
              v.witness->n1 == 4 && v.witness->n2 == 2 && t < kVmLevelSeconds;
  std::ostringstream os;
  os << "vm level " << show_level(v) << " want 2 (4,2), " << t << "s < "
     << kVmLevelSeconds << "s";
  report("AC1", pass, os.str());
}

void ac2_one_hop_stack() {
  Snapshot snap(build_canonical(Canonical::kProcesses));
  bool pass = true;
  std::string detail;
  for (const auto& [stack, vas] : {std::pair{"stack_a", "vas_1"},
                                   std::pair{"stack_b", "vas_2"}}) {
    auto got = n_hop_resources(snap, 1, {ResourceId(stack)});
    ResourceSet want{ResourceId(stack), ResourceId(vas)};
    pass = pass && got == want;
    detail += std::string(stack) + " -> " + testing::show(got) + " ";
  }
  report("AC2", pass, detail + "want {stack, vas}");
}

void ac3_oracle() {
  auto start = Clock::now();
  auto r = testing::oracle_equivalence(kOracleSystems, kOracleMaxHops);
  double t = seconds_since(start);
  bool pass = r.ok() && r.cases >= kOracleSystems && t < kOracleSuiteSeconds;
  std::ostringstream os;
  os << r.cases << " systems, n=0.." << kOracleMaxHops << ", " << r.failures
     << " mismatches, " << t << "s < " << kOracleSuiteSeconds << "s";
  if (!r.ok()) os << "; " << r.first_failure;
  report("AC3", pass, os.str());
}

void ac4_properties() {
  bool pass = true;
  std::ostringstream os;
  const char* sep = "";
  for (const auto& r : testing::all_query_properties(kPropertyCases)) {
    bool ok = r.ok() && r.cases >= 200;
    pass = pass && ok;
    os << sep << r.name << " " << (r.cases - r.failures) << "/" << r.cases;
    if (!ok) os << " [" << r.first_failure << "]";
    sep = "; ";
  }
  report("AC4", pass, os.str());
}

void ac5_spectrum() {
  std::vector<std::optional<std::size_t>> levels;
  std::ostringstream os;
  for (Canonical c : {Canonical::kThreads, Canonical::kIsolatedStacks,
                      Canonical::kProcesses, Canonical::kVm}) {
    Snapshot snap(build_canonical(c));
    auto pair = designated_pair(c);
    auto v = isolation_level(snap, pair.first, pair.second, {});
    levels.push_back(v.level);
    os << to_string(c) << "=" << show_level(v) << " ";
  }
  bool pass = levels.front() == std::optional<std::size_t>(0) &&
              levels.back() == std::optional<std::size_t>(2);
  for (std::size_t i = 1; i < levels.size(); ++i) {
    pass = pass && levels[i - 1] && levels[i] && *levels[i - 1] <= *levels[i];
  }
  report("AC5", pass, os.str() + "want non-decreasing, threads=0, vm=2");
}

void ac6_framework() {
  std::ostringstream os;

  System sys = build_canonical(Canonical::kProcesses);
  PdId clone = clone_pd(sys, PdId("p1"), IsolationFunction::share_all());
  auto v = isolation_level(Snapshot(sys), PdId("p1"), clone, {});
  bool clone_ok = v.level == std::optional<std::size_t>(0);
  os << "share-all clone level " << show_level(v) << "; ";

  System host;
  auto dram = host.add_resource("pmem", ResourceClass::kPhysical);
  auto cpu = host.add_resource("cpu", ResourceClass::kPhysical,
                               std::nullopt, ResourceId("cpu0"));
  auto kheap = host.add_resource("kernel-heap", ResourceClass::kVirtual,
                                 std::nullopt, ResourceId("kheap"));
  host.add_edge(kheap, dram, RelationKind::kMapping);
  new_pd(host, {cpu, kheap}, {}, std::nullopt, PdId("pd0"));
  host.set_backing(PdId("pd0"), "vas", {"kernel-heap"});
  host.set_backing(PdId("pd0"), "vcpu", {"cpu"});
  new_pd(host, {}, {}, PdId("pd0"), PdId("shell"));
  host.seal();
  run_script(host,
             "request vas1 shell vas\n"
             "alloc code shell vas1 code\n"
             "alloc heap shell vas1 heap\n"
             "alloc stack shell vas1 stack\n"
             "request vcpu1 shell vcpu\n"
             "newpd proc creator=shell code heap stack vcpu1\n");
  std::multiset<std::string> kinds;
  for (const auto& r : host.pd(PdId("proc")).res) {
    kinds.insert(host.resource(r).kind);
  }
  bool spawn_ok =
      kinds == std::multiset<std::string>{"code", "heap", "stack", "vcpu"} &&
      validate(host).empty();
  os << "spawned pd kinds {";
  const char* sep = "";
  for (const auto& k : kinds) {
    os << sep << k;
    sep = ",";
  }
  os << "}; ";

  auto fuzz = testing::fuzz_framework(kFuzzSequences, kFuzzSteps, 2026);
  bool fuzz_ok = fuzz.ok() && fuzz.sequences >= 500;
  os << fuzz.sequences << " fuzz sequences, " << fuzz.operations << " ops, "
     << fuzz.invalid_states << " invalid states, " << fuzz.dirty_failures
     << " dirty failures";
  if (!fuzz.ok()) os << " [" << fuzz.first_problem << "]";
  report("AC6", clone_ok && spawn_ok && fuzz_ok, os.str());
}

std::string capture(const std::string& command, int* status) {
  std::string out;
  FILE* pipe = ::popen(command.c_str(), "r");
  if (!pipe) {
    *status = -1;
    return out;
  }
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  *status = ::pclose(pipe);
  return out;
}

void ac7_round_trip_and_determinism() {
  bool pass = true;
  std::ostringstream os;
  std::size_t fixed = 0;
  for (Canonical c : all_canonical()) {
    std::string text = emit_scenario(canonical_document(c));
    ScenarioDoc doc = parse_scenario(text);
    bool ok = emit_scenario(doc) == text &&
              doc.system == build_canonical(c) &&
              emit_scenario(parse_scenario(emit_scenario(doc))) == text;
    fixed += ok;
    pass = pass && ok;
  }
  os << fixed << "/" << all_canonical().size() << " canonical fixed points; ";

  const std::string tool = OSMOSIS_TOOL;
  const std::string src = OSMOSIS_SOURCE_DIR;
  std::vector<std::string> commands;
  for (Canonical c : all_canonical()) {
    std::string name(to_string(c));
    std::string file = src + "/scenarios/" + name + ".scn";
    commands.push_back("scenario " + name);
    commands.push_back("validate --json " + file);
    commands.push_back("query " + file);
    commands.push_back("query --json " + file);
    commands.push_back("export --format dot " + file);
    commands.push_back("export --format json " + file);
  }
  std::string vm = src + "/scenarios/vm.scn";
  commands.push_back("query " + vm + " level vm_process native_process");
  commands.push_back("query --json " + vm +
                     " pd-nhop vm_process --n inf --exclude kernel-heap");
  commands.push_back("query " + vm + " shared vm_process native_process --n1 4 --n2 2");
  commands.push_back("simulate --trace " + src + "/scenarios/spawn_process.scn " +
                     src + "/scenarios/spawn_process.script");
  commands.push_back("query " + vm + " nhop ghost");
  std::size_t identical = 0;
  for (const auto& args : commands) {
    std::string command = "'" + tool + "' " + args + " 2>&1";
    int s1 = 0, s2 = 0;
    std::string a = capture(command, &s1);
    std::string b = capture(command, &s2);
    bool same = s1 == s2 && a == b && !a.empty();
    identical += same;
    if (!same) os << "[differs: " << args << "] ";
    pass = pass && same;
  }
  os << identical << "/" << commands.size()
     << " CLI invocations byte-identical across two runs";
  report("AC7", pass, os.str());
}

}  // namespace
}  // namespace osmosis

int main() {
  using namespace osmosis;
  ac1_vm_level();
  ac2_one_hop_stack();
  ac3_oracle();
  ac4_properties();
  ac5_spectrum();
  ac6_framework();
  ac7_round_trip_and_determinism();
  std::cout << (failures == 0 ? "ALL PASS" : "FAILURES: " +
                                                 std::to_string(failures))
            << '\n';
  return failures;
}
