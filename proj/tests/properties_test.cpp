// Copyright 2026 The gencache Authors
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

#include <gtest/gtest.h>

#include <functional>

#include "test_util.hpp"

namespace gencache {
namespace {

using testing::hub_graph;

ReductionOutput mutate(const ReductionOutput& r,
                       const std::function<void(InstanceData&)>& edit) {
  InstanceData d = r.instance.data();
  for (Block& b : d.blocks) b.span = {};
  edit(d);
  ReductionOutput out = r;
  out.instance = Instance(std::move(d));
  return out;
}

PageIndex page_of(const ReductionOutput& r, const std::string& id) {
  return *r.instance.find_page(id);
}

Position position_of(const InstanceData& d, PageIndex p, BlockIndex b) {
  for (Position t = 0; t < d.requests.size(); ++t) {
    if (d.requests[t].page == p && d.requests[t].block == b) return t;
  }
  ADD_FAILURE() << "request not found";
  return 0;
}

std::optional<BlockIndex> tagged(const ReductionOutput& r, std::uint32_t e,
                                 std::uint32_t g, int q) {
  for (BlockIndex b = 0; b < r.block_tags.size(); ++b) {
    const auto& t = r.block_tags[b];
    if (t && t->edge == e && t->group == g && t->quarter == q) return b;
  }
  return std::nullopt;
}

TEST(CheckPropertiesTest, GeneratedInstancesPass) {
  for (const auto& cg : builtin_corpus()) {
    for (Amount H : {1, 2, 3}) {
      for (Model m : {Model::kFault, Model::kBit}) {
        const ReductionOutput r = reduce(cg.graph, m, H);
        const PropertyReport rep = check_properties(r);
        EXPECT_TRUE(rep.all_passed()) << cg.id << " " << to_string(m) << " H=" << H;
      }
    }
    EXPECT_TRUE(check_properties(reduce_simple(cg.graph)).all_passed());
  }
  EXPECT_TRUE(check_properties(reduce_fault_optional(hub_graph(), 46)).all_passed());
}

TEST(CheckPropertiesTest, NeedsRoles) {
  ReductionOutput r = reduce_fault_optional(hub_graph(), 1);
  r.page_roles.clear();
  EXPECT_THROW(check_properties(r), StructuralError);
}

class MutationTest : public ::testing::Test {
 protected:
  ReductionOutput base_ = reduce_fault_optional(hub_graph(), 2);

  void ExpectOnlyFails(const ReductionOutput& mutated, char label) {
    const PropertyReport rep = check_properties(mutated);
    EXPECT_EQ(rep.failed(), std::vector<char>{label});
    EXPECT_FALSE(rep[label].witness.empty());
  }
};

TEST_F(MutationTest, BaseIsClean) { EXPECT_TRUE(check_properties(base_).all_passed()); }

TEST_F(MutationTest, ThirdVertexPageRequestBreaksA) {
  const PageIndex p0 = page_of(base_, "p0");
  const auto m = mutate(base_, [&](InstanceData& d) {
    const Position t = base_.instance.occurrences(p0)[0];
    d.requests.insert(d.requests.begin() + static_cast<std::ptrdiff_t>(t) + 1,
                      Request{p0, std::nullopt});
  });
  ExpectOnlyFails(m, 'a');
  EXPECT_NE(check_properties(m)['a'].witness.find("p0"), std::string::npos);
}

TEST_F(MutationTest, EdgePageCostBreaksB) {
  const auto m = mutate(base_, [&](InstanceData& d) {
    d.pages[page_of(base_, "a_0_0")].cost = 2;
  });
  ExpectOnlyFails(m, 'b');
}

TEST_F(MutationTest, MissingInitialRequestBreaksC) {
  const auto m = mutate(base_, [&](InstanceData& d) {
    const Position t = position_of(d, page_of(base_, "abar_0_0"), 0);
    d.requests.erase(d.requests.begin() + static_cast<std::ptrdiff_t>(t));
  });
  ExpectOnlyFails(m, 'c');
}

TEST_F(MutationTest, EdgeOrderBreaksD) {
  const auto m = mutate(base_, [&](InstanceData& d) {
    // Move edge 1's first request in block 1 to the front of the block.
    const Position from = position_of(d, page_of(base_, "abar_1_0"), 1);
    const Position to = base_.instance.blocks()[1].span.begin;
    const Request r = d.requests[from];
    d.requests.erase(d.requests.begin() + static_cast<std::ptrdiff_t>(from));
    d.requests.insert(d.requests.begin() + static_cast<std::ptrdiff_t>(to), r);
  });
  ExpectOnlyFails(m, 'd');
}

TEST_F(MutationTest, SwapInThirdQuarterBreaksE) {
  const auto b = tagged(base_, 0, 0, 3);
  ASSERT_TRUE(b.has_value());
  const auto m = mutate(base_, [&](InstanceData& d) {
    std::swap(d.requests[position_of(d, page_of(base_, "a_0_0"), *b)],
              d.requests[position_of(d, page_of(base_, "b_0_0"), *b)]);
  });
  ExpectOnlyFails(m, 'e');
}

TEST_F(MutationTest, BigPageOverlapBreaksF) {
  const auto m = mutate(base_, [&](InstanceData& d) {
    d.pages[page_of(base_, "b_0_0")].size = 3;
  });
  ExpectOnlyFails(m, 'f');
}

TEST(PropertyReportTest, TextHasOneLinePerProperty) {
  std::ostringstream os;
  write_property_report(os, check_properties(reduce_fault_optional(hub_graph(), 1)));
  const std::string s = os.str();
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 6);
  EXPECT_EQ(s.rfind("(a) ", 0), 0u);
}

std::vector<std::vector<Vertex>> independent_sets(const Graph& g) {
  std::vector<std::vector<Vertex>> out;
  for (std::uint32_t mask = 0; mask < (1U << g.n()); ++mask) {
    std::vector<Vertex> w;
    for (Vertex v = 0; v < g.n(); ++v) {
      if ((mask >> v) & 1U) w.push_back(v);
    }
    if (g.is_independent(w)) out.push_back(w);
  }
  return out;
}

TEST(ConstructServiceTest, HubValues) {
  const ReductionOutput fault = reduce_fault_optional(hub_graph(), 2);
  const Service s = construct_service_from_is(fault, {0, 1});
  EXPECT_TRUE(validate_service(fault.instance, s).valid());
  EXPECT_EQ(savings(fault.instance, s), 70);
  EXPECT_EQ(savings(fault.instance, construct_service_from_is(fault, {})),
            fault.threshold(0));

  const ReductionOutput bit = reduce_bit_optional(hub_graph(), 2);
  EXPECT_EQ(savings(bit.instance, construct_service_from_is(bit, {0, 1})), 410);
}

TEST(ConstructServiceTest, RejectsDependentOrUnknownVertices) {
  const ReductionOutput r = reduce_fault_optional(hub_graph(), 1);
  EXPECT_THROW(construct_service_from_is(r, {0, 2}), InvalidArgument);
  EXPECT_THROW(construct_service_from_is(r, {7}), InvalidArgument);
}

TEST(ConstructServiceTest, EveryIndependentSetReachesItsThreshold) {
  for (const auto& cg : builtin_corpus()) {
    for (Model m : {Model::kFault, Model::kBit, Model::kSimple}) {
      const ReductionOutput r = reduce(cg.graph, m, 2);
      for (const auto& w : independent_sets(cg.graph)) {
        const Service s = construct_service_from_is(r, w);
        ASSERT_TRUE(validate_service(r.instance, s).valid()) << cg.id;
        ASSERT_EQ(savings(r.instance, s), r.threshold(static_cast<Amount>(w.size())));
        ASSERT_EQ(extract_is(r, s), w);
      }
    }
  }
}

TEST(ExtractTest, EmptyService) {
  const ReductionOutput r = reduce_fault_optional(hub_graph(), 1);
  EXPECT_TRUE(extract_is(r, Service{}).empty());
}

TEST(ExtractTest, OptimalWitnessOnK2Simple) {
  const ReductionOutput r = reduce_simple(Graph(2, {{0, 1}}));
  const auto w = extract_is(r, solve_exact(r.instance).witness);
  EXPECT_EQ(w.size(), 1u);
  EXPECT_TRUE(r.graph.is_independent(w));
}

TEST(DiagnosticsTest, EmptyService) {
  const ReductionOutput r = reduce_fault_optional(hub_graph(), 2);
  const BlockDiagnostics d = diagnostics(r, Service{});
  for (std::size_t b = 0; b < d.num_blocks; ++b) {
    EXPECT_EQ(d.s[b], 0);
    EXPECT_EQ(d.delta[b], 4);
  }
}

TEST(DiagnosticsTest, ConstructedServiceHasNoFreeSlots) {
  for (const auto& cg : builtin_corpus()) {
    for (Model m : {Model::kFault, Model::kBit}) {
      const ReductionOutput r = reduce(cg.graph, m, 2);
      const auto w = max_independent_set(cg.graph).vertices;
      const BlockDiagnostics d = diagnostics(r, construct_service_from_is(r, w));
      for (std::size_t b = 1; b < d.num_blocks; ++b) {
        ASSERT_EQ(d.delta[b], 0) << cg.id << " block " << b;
      }
      EXPECT_LE(d.max_epsilon(), 1);
    }
  }
}

// Some block starts with no free slot while a gadget page of the chosen side
// is cached, and only that side's gadget pages are ever cached.
TEST(DiagnosticsTest, GadgetPagesFollowTheChosenSide) {
  for (const auto& cg : builtin_corpus()) {
    const ReductionOutput r = reduce_fault_optional(cg.graph, 2);
    const auto w = max_independent_set(cg.graph).vertices;
    const Service s = construct_service_from_is(r, w);
    const BlockDiagnostics d = diagnostics(r, s);
    for (std::uint32_t e = 0; e < cg.graph.m(); ++e) {
      bool seen = false;
      for (std::size_t b = 1; b < d.num_blocks; ++b) {
        seen |= d.epsilon[b][e] == 1 && d.delta[b] == 0;
      }
      EXPECT_TRUE(seen) << cg.id << " edge " << e;
      const bool u_in = std::find(w.begin(), w.end(), r.first_endpoint(e)) != w.end();
      for (const GapRef& g : s.gaps()) {
        const PageRole& role = r.page_roles[g.page];
        if (role.edge != e) continue;
        if (role.role == Role::kAlpha) {
          EXPECT_FALSE(u_in);
        }
        if (role.role == Role::kBeta) {
          EXPECT_TRUE(u_in);
        }
      }
    }
  }
}

TEST(DiagnosticsTest, EdgeSavingsEqualSumOfS) {
  for (const auto& cg : builtin_corpus()) {
    const ReductionOutput r = reduce_fault_optional(cg.graph, 1);
    const SolveResult opt = solve_exact(r.instance);
    for (const Service& s :
         {opt.witness, construct_service_from_is(r, max_independent_set(cg.graph).vertices)}) {
      Amount edge = 0;
      for (const GapRef& g : s.gaps()) {
        if (r.page_roles[g.page].is_edge_page()) edge += r.instance.page(g.page).cost;
      }
      EXPECT_EQ(edge, diagnostics(r, s).s_total()) << cg.id;
    }
  }
}

TEST(DiagnosticsTest, CsvFormat) {
  const ReductionOutput r = reduce_fault_optional(Graph(2, {{0, 1}}), 1);
  std::ostringstream os;
  write_diagnostics_csv(os, diagnostics(r, Service{}));
  const std::string s = os.str();
  EXPECT_EQ(s.rfind("block,edge,s,delta,gamma,epsilon,phi\n0,0,0,1,0,0,0\n", 0), 0u);
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 1 + 6);
}

TEST(AuditTest, BitCrossingsSaveSixPerBoundary) {
  for (const auto& cg : builtin_corpus()) {
    for (Amount H : {1, 2, 3}) {
      const ReductionOutput r = reduce_bit_optional(cg.graph, H);
      const Service s =
          construct_service_from_is(r, max_independent_set(cg.graph).vertices);
      std::size_t kept = 0;
      for (const Crossing& c : audit_crossings(r, s)) {
        EXPECT_EQ(c.to, c.from + 1);
        if (c.gaps_chosen == 0) continue;
        ++kept;
        const Amount size = r.instance.page(c.page).size;
        EXPECT_EQ(c.gaps_chosen, c.gaps_total);
        EXPECT_EQ(c.gaps_total, size == 2 ? 3u : 2u);
        EXPECT_EQ(c.savings, 6);
      }
      EXPECT_GT(kept, 0u);
    }
  }
}

}  // namespace
}  // namespace gencache
