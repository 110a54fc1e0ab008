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

// The five memory-isolation mechanisms, each running next to a host OS
// (pd0). Only memory resources are modeled.
//
// pd0 owns no resources. A PD's n-hop closure includes every resource its
// providers own at n-1 hops, so anything pd0 owned would be shared by all
// of its clients at one hop. Kernel-side objects (address spaces, kernel
// heap, physical pages) therefore sit in the relation unowned, and the
// distance to them is carried by relation edges alone.
//
// Unikernel hop depths are an interpretation: the application owns its
// address space and sits on a hypervisor, one level shallower than a
// process inside a full guest OS.

#include "osmosis/scenario.h"

#include <stdexcept>

namespace osmosis {

namespace {

class Builder {
 public:
  ResourceId physical(const std::string& id, const std::string& kind,
                      const std::string& label) {
    return sys_.add_resource(kind, ResourceClass::kPhysical, label,
                             ResourceId(id));
  }

  ResourceId virt(const std::string& id, const std::string& kind,
                  const std::string& label) {
    return sys_.add_resource(kind, ResourceClass::kVirtual, label,
                             ResourceId(id));
  }

  void alloc(const std::string& child, const std::string& parent) {
    sys_.add_edge(ResourceId(child), ResourceId(parent),
                  RelationKind::kAllocation);
  }
  void map(const std::string& v, const std::string& p) {
    sys_.add_edge(ResourceId(v), ResourceId(p), RelationKind::kMapping);
  }
  void topo(const std::string& a, const std::string& b) {
    sys_.add_edge(ResourceId(a), ResourceId(b), RelationKind::kTopology);
  }

  void pd(const std::string& id, const std::string& label,
          std::initializer_list<const char*> owned,
          std::optional<std::string> creator = std::nullopt) {
    Pd pd;
    pd.id = PdId(id);
    pd.label = label;
    for (const char* r : owned) pd.res.insert(ResourceId(r));
    if (creator) pd.rdir.creator = PdId(*creator);
    sys_.add_pd(std::move(pd));
  }

  void dir(const std::string& pd, const std::string& kind,
           const std::string& provider) {
    sys_.set_directory_entry(PdId(pd), kind, PdId(provider));
  }

  void backing(const std::string& pd, const std::string& kind,
               std::vector<std::string> kinds) {
    sys_.set_backing(PdId(pd), kind, std::move(kinds));
  }

  // Kernel heap of the host OS, backed by DRAM.
  void host_kernel() {
    physical("dram", "pmem", "DRAM");
    virt("kheap", "kernel-heap", "host kernel heap (pd0)");
    map("kheap", "dram");
    pd("pd0", "host OS", {});
  }

  System finish() {
    sys_.seal();
    return std::move(sys_);
  }

 private:
  System sys_;
};

System threads() {
  Builder b;
  b.host_kernel();
  b.virt("vas", "vas", "process VAS (pd0)");
  b.alloc("vas", "kheap");
  b.virt("stack_a", "stack", "stack A");
  b.virt("stack_b", "stack", "stack B");
  b.alloc("stack_a", "vas");
  b.alloc("stack_b", "vas");
  // Each thread can touch both stacks.
  b.pd("t1", "thread 1", {"stack_a", "stack_b"}, "pd0");
  b.pd("t2", "thread 2", {"stack_a", "stack_b"}, "pd0");
  return b.finish();
}

System isolated_stacks() {
  Builder b;
  b.host_kernel();
  b.virt("vas", "vas", "process VAS (pd0)");
  b.alloc("vas", "kheap");
  b.virt("stack_a", "stack", "stack A");
  b.virt("stack_b", "stack", "stack B");
  b.alloc("stack_a", "vas");
  b.alloc("stack_b", "vas");
  b.pd("t1", "thread 1", {"stack_a"}, "pd0");
  b.pd("t2", "thread 2", {"stack_b"}, "pd0");
  return b.finish();
}

System processes() {
  Builder b;
  b.host_kernel();
  b.physical("llc_sets", "cache", "last-level cache sets");
  b.topo("dram", "llc_sets");
  for (const char* n : {"1", "2"}) {
    std::string vas = std::string("vas_") + n;
    std::string page = std::string("ppage_") + n;
    b.virt(vas, "vas", std::string("VAS of p") + n + " (pd0)");
    b.alloc(vas, "kheap");
    b.physical(page, "pmem", std::string("physical pages of p") + n);
    b.alloc(page, "dram");
    b.map(vas, page);
    // Virtually indexed caches.
    b.topo(vas, "llc_sets");
  }
  b.virt("stack_a", "stack", "stack A");
  b.virt("stack_b", "stack", "stack B");
  b.alloc("stack_a", "vas_1");
  b.alloc("stack_b", "vas_2");
  b.pd("p1", "process 1", {"stack_a"}, "pd0");
  b.pd("p2", "process 2", {"stack_b"}, "pd0");
  return b.finish();
}

System unikernel() {
  Builder b;
  b.host_kernel();
  b.virt("hv_mem", "vmem", "hypervisor-granted memory");
  b.alloc("hv_mem", "kheap");
  b.virt("uk_vas", "vas", "unikernel address space");
  b.alloc("uk_vas", "hv_mem");
  b.virt("uk_stack", "stack", "unikernel stack");
  b.alloc("uk_stack", "uk_vas");
  b.virt("host_vas", "vas", "VAS of p1 (pd0)");
  b.alloc("host_vas", "kheap");
  b.virt("p1_stack", "stack", "stack of p1");
  b.alloc("p1_stack", "host_vas");
  b.pd("hypervisor", "hypervisor", {}, "pd0");
  b.pd("uk", "unikernel", {"uk_stack", "uk_vas"}, "hypervisor");
  // Address-space management lives inside the unikernel itself.
  b.dir("uk", "vas", "uk");
  b.dir("uk", "vmem", "uk");
  b.backing("uk", "vmem", {"vas"});
  b.pd("p1", "native process", {"p1_stack"}, "pd0");
  return b.finish();
}

System vm() {
  Builder b;
  b.host_kernel();
  b.virt("hv_mem", "vmem", "hypervisor-granted memory");
  b.alloc("hv_mem", "kheap");
  b.virt("guest_phys", "guest-pmem", "guest-physical memory");
  b.alloc("guest_phys", "hv_mem");
  b.virt("guest_vas", "vas", "guest VAS of the VM process");
  b.alloc("guest_vas", "guest_phys");
  b.virt("vm_stack", "stack", "stack of the VM process");
  b.alloc("vm_stack", "guest_vas");
  b.virt("host_vas", "vas", "VAS of the native process (pd0)");
  b.alloc("host_vas", "kheap");
  b.virt("native_stack", "stack", "stack of the native process");
  b.alloc("native_stack", "host_vas");
  b.pd("hypervisor", "hypervisor", {"guest_phys"}, "pd0");
  b.pd("guest_os", "guest OS", {"guest_vas"}, "hypervisor");
  b.pd("vm_process", "process in the VM", {"vm_stack"}, "guest_os");
  b.pd("native_process", "native process", {"native_stack"}, "pd0");
  return b.finish();
}

}  // namespace

std::string_view to_string(Canonical which) {
  switch (which) {
    case Canonical::kThreads:
      return "threads";
    case Canonical::kIsolatedStacks:
      return "isolated-stacks";
    case Canonical::kProcesses:
      return "processes";
    case Canonical::kUnikernel:
      return "unikernel";
    case Canonical::kVm:
      return "vm";
  }
  return "unknown";
}

const std::vector<Canonical>& all_canonical() {
  static const std::vector<Canonical> all = {
      Canonical::kThreads, Canonical::kIsolatedStacks, Canonical::kProcesses,
      Canonical::kUnikernel, Canonical::kVm};
  return all;
}

std::optional<Canonical> parse_canonical(std::string_view name) {
  for (Canonical c : all_canonical()) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

DesignatedPair designated_pair(Canonical which) {
  switch (which) {
    case Canonical::kThreads:
    case Canonical::kIsolatedStacks:
      return {PdId("t1"), PdId("t2")};
    case Canonical::kProcesses:
      return {PdId("p1"), PdId("p2")};
    case Canonical::kUnikernel:
      return {PdId("uk"), PdId("p1")};
    case Canonical::kVm:
      return {PdId("vm_process"), PdId("native_process")};
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown canonical scenario");
}

System build_canonical(Canonical which) {
  switch (which) {
    case Canonical::kThreads:
      return threads();
    case Canonical::kIsolatedStacks:
      return isolated_stacks();
    case Canonical::kProcesses:
      return processes();
    case Canonical::kUnikernel:
      return unikernel();
    case Canonical::kVm:
      return vm();
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown canonical scenario");
}

ScenarioDoc canonical_document(Canonical which) {
  ScenarioDoc doc;
  doc.system = build_canonical(which);
  auto pair = designated_pair(which);
  std::string expected;
  switch (which) {
    case Canonical::kThreads:
      expected = "0";
      break;
    case Canonical::kIsolatedStacks:
      expected = "1";
      break;
    case Canonical::kProcesses:
    case Canonical::kUnikernel:
    case Canonical::kVm:
      expected = "2";
      break;
  }
  doc.queries.push_back(QueryStanza{
      "designated_level",
      {"level", pair.first.str(), pair.second.str(), "expect=" + expected},
      0});
  return doc;
}

}  // namespace osmosis
