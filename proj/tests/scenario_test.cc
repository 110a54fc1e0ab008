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

#include "osmosis/scenario.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "osmosis/queries.h"
#include "testing/random_system.h"

namespace osmosis {
namespace {

std::string read_source_file(const std::string& relative) {
  std::ifstream in(std::filesystem::path(OSMOSIS_SOURCE_DIR) / relative,
                   std::ios::binary);
  EXPECT_TRUE(in) << relative;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ParseError parse_error(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "parsed without error: " << text;
  return ParseError(0, 0, "");
}

TEST(ParseTest, MinimalResource) {
  auto doc = parse_scenario("resource r0 kind=pmem class=physical\n");
  ASSERT_EQ(doc.system.resources().size(), 1u);
  const Resource& r = doc.system.resource(ResourceId("r0"));
  EXPECT_EQ(r.kind, "pmem");
  EXPECT_EQ(r.cls, ResourceClass::kPhysical);
  EXPECT_TRUE(doc.system.sealed());
}

TEST(ParseTest, EmptyDocument) {
  auto doc = parse_scenario("");
  EXPECT_TRUE(doc.system.resources().empty());
  EXPECT_EQ(emit_scenario(doc.system), "");
  EXPECT_EQ(emit_scenario(System{}), "");
}

TEST(ParseTest, CommentsBlankLinesAndQuotes) {
  auto doc = parse_scenario(
      "# header\n"
      "\n"
      "resource r0 kind=pmem class=physical label=\"a \\\"b\\\" # c\"  # tail\n"
      "   pd p label=\"x\\\\y\"\n"
      "owns p r0\n");
  EXPECT_EQ(doc.system.resource(ResourceId("r0")).label, "a \"b\" # c");
  EXPECT_EQ(doc.system.pd(PdId("p")).label, "x\\y");
  EXPECT_TRUE(doc.system.pd(PdId("p")).res.contains(ResourceId("r0")));
}

TEST(ParseTest, ForwardReferenceInDir) {
  auto e = parse_error("pd p2\ndir p1 vmem p2\n");
  EXPECT_EQ(e.code(), ErrorCode::kParse);
  EXPECT_EQ(e.line(), 2u);
  EXPECT_EQ(e.column(), 5u);
  EXPECT_NE(std::string(e.what()).find("forward reference"), std::string::npos);
}

TEST(ParseTest, ForwardReferenceInEdge) {
  auto e = parse_error(
      "resource a kind=x class=virtual\n"
      "edge mapping a b\n"
      "resource b kind=x class=virtual\n");
  EXPECT_EQ(e.line(), 2u);
  EXPECT_EQ(e.column(), 16u);
}

TEST(ParseTest, Diagnostics) {
  struct Case {
    const char* text;
    std::size_t line, column;
    const char* fragment;
  };
  const Case cases[] = {
      {"frob x\n", 1, 1, "unknown declaration keyword"},
      {"resource r0 kind=pmem class=weird\n", 1, 23, "class must be"},
      {"resource r0 class=physical\n", 1, 1, "kind="},
      {"resource r0 kind=pmem class=physical colour=red\n", 1, 38,
       "unknown attribute"},
      {"resource r0 kind=a class=virtual\nresource r0 kind=b class=virtual\n",
       2, 10, "duplicate resource id"},
      {"resource bad! kind=a class=virtual\n", 1, 10, "invalid identifier"},
      {"resource r0 kind=a class=virtual label=\"open\n", 1, 40,
       "unterminated string"},
      {"resource a kind=x class=virtual\nresource b kind=x class=virtual\n"
       "edge sideways a b\n",
       3, 6, "edge kind"},
      {"resource a kind=x class=virtual\nedge mapping a a\n", 2, 14, "self-loop"},
      {"pd p\npd p\n", 2, 4, "duplicate pd id"},
  };
  for (const auto& c : cases) {
    auto e = parse_error(c.text);
    EXPECT_EQ(e.line(), c.line) << c.text;
    EXPECT_EQ(e.column(), c.column) << c.text << " -> " << e.what();
    EXPECT_NE(std::string(e.what()).find(c.fragment), std::string::npos)
        << e.what();
  }
}

TEST(ParseTest, LenientLoadKeepsDanglingReferences) {
  auto doc = load_scenario_lenient(
      "pd p1\n"
      "owns p1 ghost\n"
      "dir p1 vmem nobody\n");
  EXPECT_FALSE(doc.system.sealed());
  auto v = validate(doc.system);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0].kind, ViolationKind::kDanglingResource);
  EXPECT_EQ(v[1].kind, ViolationKind::kDanglingProvider);
  // Syntax errors are still fatal.
  EXPECT_THROW(load_scenario_lenient("frob\n"), ParseError);
}

TEST(ParseTest, DeltasAndQueries) {
  auto doc = parse_scenario(
      "resource a kind=x class=virtual\n"
      "pd p\n"
      "owns p a\n"
      "delta kernel a\n"
      "query q1 nhop a n=1 expect={a}\n");
  EXPECT_EQ(doc.deltas.at("kernel"), ResourceSet{ResourceId("a")});
  ASSERT_EQ(doc.queries.size(), 1u);
  EXPECT_EQ(doc.queries[0].name, "q1");
  EXPECT_EQ(doc.queries[0].line, 5u);
  EXPECT_EQ(doc.queries[0].args,
            (std::vector<std::string>{"nhop", "a", "n=1", "expect={a}"}));
}

TEST(ParseTest, Backing) {
  auto doc = parse_scenario(
      "pd p\n"
      "backing p vmem vas heap\n");
  EXPECT_EQ(doc.system.pd(PdId("p")).backing.at("vmem"),
            (std::vector<std::string>{"vas", "heap"}));
}

TEST(EmitTest, CanonicalRoundTripIsFixedPoint) {
  for (Canonical c : all_canonical()) {
    ScenarioDoc doc = canonical_document(c);
    std::string text = emit_scenario(doc);
    ScenarioDoc reparsed = parse_scenario(text);
    EXPECT_EQ(reparsed.system, doc.system) << to_string(c);
    EXPECT_EQ(reparsed.queries, doc.queries) << to_string(c);
    EXPECT_EQ(emit_scenario(reparsed), text) << to_string(c);
  }
}

TEST(EmitTest, Deterministic) {
  for (Canonical c : all_canonical()) {
    EXPECT_EQ(emit_scenario(build_canonical(c)),
              emit_scenario(build_canonical(c)));
  }
}

TEST(EmitTest, GoldenFiles) {
  for (Canonical c : all_canonical()) {
    std::string name(to_string(c));
    EXPECT_EQ(emit_scenario(canonical_document(c)),
              read_source_file("scenarios/" + name + ".scn"))
        << name;
  }
}

TEST(EmitTest, RandomSystemsRoundTrip) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    System sys = testing::random_system(rng);
    std::string text = emit_scenario(sys);
    ScenarioDoc doc = parse_scenario(text);
    ASSERT_EQ(doc.system, sys) << text;
    ASSERT_EQ(emit_scenario(doc.system), text);
  }
}

TEST(EmitTest, QuoteEscapes) {
  EXPECT_EQ(quote("plain"), "\"plain\"");
  EXPECT_EQ(quote("a\"b\\c"), "\"a\\\"b\\\\c\"");
}

TEST(CanonicalTest, AllValidAndSealed) {
  for (Canonical c : all_canonical()) {
    System sys = build_canonical(c);
    EXPECT_TRUE(sys.sealed()) << to_string(c);
    EXPECT_TRUE(validate(sys).empty()) << to_string(c);
    EXPECT_TRUE(sys.find_pd(PdId("pd0"))) << to_string(c);
    EXPECT_EQ(parse_canonical(to_string(c)), c);
  }
  EXPECT_FALSE(parse_canonical("microkernel"));
}

TEST(CanonicalTest, ThreadsOwnBothStacks) {
  System sys = build_canonical(Canonical::kThreads);
  ResourceSet both{ResourceId("stack_a"), ResourceId("stack_b")};
  EXPECT_EQ(sys.pd(PdId("t1")).res, both);
  EXPECT_EQ(sys.pd(PdId("t2")).res, both);
}

TEST(CanonicalTest, IsolatedStacksShareTheirVas) {
  System sys = build_canonical(Canonical::kIsolatedStacks);
  EXPECT_EQ(sys.pd(PdId("t1")).res, ResourceSet{ResourceId("stack_a")});
  EXPECT_EQ(sys.pd(PdId("t2")).res, ResourceSet{ResourceId("stack_b")});
  EXPECT_EQ(sys.allocation_parents(ResourceId("stack_a")),
            sys.allocation_parents(ResourceId("stack_b")));
}

TEST(CanonicalTest, ProcessesHaveSeparateVasesOnKernelHeap) {
  System sys = build_canonical(Canonical::kProcesses);
  Snapshot s(sys);
  EXPECT_TRUE(n_hop_shared(s, 0, 0, PdId("p1"), PdId("p2")).empty());
  for (const char* vas : {"vas_1", "vas_2"}) {
    EXPECT_EQ(sys.allocation_parents(ResourceId(vas)),
              std::vector<ResourceId>{ResourceId("kheap")});
  }
  auto v = isolation_level(s, PdId("p1"), PdId("p2"), {});
  ASSERT_TRUE(v.level.has_value());
  EXPECT_GE(*v.level, 2u);
}

TEST(CanonicalTest, UnikernelSelfProvidesAddressSpace) {
  System sys = build_canonical(Canonical::kUnikernel);
  const Pd& uk = sys.pd(PdId("uk"));
  EXPECT_EQ(uk.rdir.resolve("vas"), PdId("uk"));
  EXPECT_EQ(uk.rdir.resolve("vmem"), PdId("uk"));
  EXPECT_EQ(uk.rdir.creator, PdId("hypervisor"));
}

TEST(CanonicalTest, SpectrumOrdering) {
  const std::size_t expected[] = {0, 1, 2, 2, 2};
  std::size_t previous = 0;
  std::size_t i = 0;
  for (Canonical c : all_canonical()) {
    Snapshot s(build_canonical(c));
    auto pair = designated_pair(c);
    auto v = isolation_level(s, pair.first, pair.second, {});
    ASSERT_TRUE(v.level.has_value()) << to_string(c);
    EXPECT_EQ(*v.level, expected[i++]) << to_string(c);
    EXPECT_GE(*v.level, previous) << to_string(c);
    previous = *v.level;
  }
}

TEST(ExampleFiles, SpawnProcessScenarioParses) {
  auto doc = parse_scenario(read_source_file("scenarios/spawn_process.scn"));
  EXPECT_TRUE(validate(doc.system).empty());
}

}  // namespace
}  // namespace osmosis
