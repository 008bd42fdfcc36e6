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

#include "test_util.hpp"

namespace gencache {
namespace {

using testing::make_instance;

TEST(InstanceTest, RejectsBadParameters) {
  EXPECT_THROW(make_instance(0, {{1, 1}}, {0}), InvalidInstance);
  EXPECT_THROW(make_instance(1, {{0, 1}}, {0}), InvalidInstance);
  EXPECT_THROW(make_instance(1, {{1, 0}}, {0}), InvalidInstance);
  EXPECT_THROW(make_instance(1, {{1, 1}}, {1}), InvalidInstance);

  InstanceData dup;
  dup.pages = {Page{"p", 1, 1}, Page{"p", 1, 1}};
  EXPECT_THROW(Instance{dup}, InvalidInstance);

  InstanceData space;
  space.pages = {Page{"a b", 1, 1}};
  EXPECT_THROW(Instance{space}, InvalidInstance);
}

TEST(InstanceTest, RejectsMalformedBlocks) {
  InstanceData d;
  d.capacity = 2;
  d.pages = {Page{"p", 1, 1}};
  d.blocks = {Block{BlockKind::kInitial, std::nullopt, 0, {}},
              Block{BlockKind::kFinal, std::nullopt, 0, {}}};
  d.requests = {Request{0, 1}, Request{0, 0}};  // block ids decrease
  EXPECT_THROW(Instance{d}, InvalidInstance);

  d.requests = {Request{0, 0}, Request{0, std::nullopt}, Request{0, 0}};
  EXPECT_THROW(Instance{d}, InvalidInstance);  // outside request inside I

  d.requests = {Request{0, 0}, Request{0, 1}};
  EXPECT_NO_THROW(Instance{d});

  d.blocks[1].kind = BlockKind::kPhase;  // no final block, no vertex
  EXPECT_THROW(Instance{d}, InvalidInstance);
}

TEST(InstanceTest, GapsFollowConsecutiveRequests) {
  // requests (p, q, p, p)
  const Instance inst = make_instance(2, {{1, 1}, {1, 1}}, {0, 1, 0, 0});
  EXPECT_EQ(inst.gap_count(0), 2u);
  EXPECT_EQ(inst.gap_count(1), 0u);
  const Gap g0 = inst.gap(GapRef{0, 0});
  const Gap g1 = inst.gap(GapRef{0, 1});
  EXPECT_EQ(g0.start, 0u);
  EXPECT_EQ(g0.end, 2u);
  EXPECT_EQ(g1.start, 2u);
  EXPECT_EQ(g1.end, 3u);
  EXPECT_FALSE(inst.has_gap(GapRef{0, 2}));
  EXPECT_FALSE(inst.has_gap(GapRef{1, 0}));
  EXPECT_EQ(enumerate_gaps(inst).size(), 2u);
}

TEST(ServiceTest, SetSemantics) {
  const Service s({GapRef{1, 0}, GapRef{0, 1}, GapRef{1, 0}});
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.gaps()[0], (GapRef{0, 1}));
  EXPECT_TRUE(s.contains(GapRef{1, 0}));
  EXPECT_FALSE(s.contains(GapRef{0, 0}));
}

TEST(ServiceTest, UnknownGapIsStructuralError) {
  const Instance inst = make_instance(2, {{1, 1}}, {0, 0});
  EXPECT_THROW(check_references(inst, Service({GapRef{0, 1}})), StructuralError);
  EXPECT_THROW(validate_service(inst, Service({GapRef{3, 0}})), StructuralError);
}

TEST(OccupancyTest, EmptyServiceIsZero) {
  const Instance inst = make_instance(2, {{1, 1}}, {0, 0, 0});
  EXPECT_EQ(occupancy_profile(inst, Service{}), (std::vector<Amount>{0, 0, 0}));
}

TEST(OccupancyTest, ClosedGapSpan) {
  // size-2 page cached on [1, 4]
  const Instance inst =
      make_instance(4, {{1, 1}, {2, 1}}, {0, 1, 0, 0, 1, 0});
  const auto profile = occupancy_profile(inst, Service({GapRef{1, 0}}));
  EXPECT_EQ(profile, (std::vector<Amount>{0, 2, 2, 2, 2, 0}));
}

TEST(OccupancyTest, AdjacentGapsCountOnce) {
  const Instance inst = make_instance(3, {{3, 1}}, {0, 0, 0});
  const Service both({GapRef{0, 0}, GapRef{0, 1}});
  EXPECT_EQ(occupancy_profile(inst, both), (std::vector<Amount>{3, 3, 3}));
  EXPECT_TRUE(validate_service(inst, both).valid());
  EXPECT_EQ(savings(inst, both), 2);
}

TEST(ValidateTest, CapacityViolationAtOverlap) {
  // requests p q p q, sizes 2/2, C = 2: gaps [0,2] and [1,3] overlap on 1..2
  const Instance inst = make_instance(2, {{2, 1}, {2, 1}}, {0, 1, 0, 1});
  const Service both({GapRef{0, 0}, GapRef{1, 0}});
  const ValidationReport r = validate_service(inst, both);
  ASSERT_FALSE(r.valid());
  ASSERT_EQ(r.violations.size(), 2u);
  EXPECT_EQ(r.violations[0].position, 1u);
  EXPECT_EQ(r.violations[1].position, 2u);
  EXPECT_EQ(r.violations[0].load, 4);
  EXPECT_EQ(r.violations[0].kind, ViolationKind::kCapacity);
  EXPECT_THROW(savings(inst, both), InvalidService);
}

TEST(ValidateTest, ForcedPolicyNeedsRoomForTheRequestedPage) {
  const Instance too_big = make_instance(1, {{2, 1}}, {0, 0}, Policy::kForced);
  const ValidationReport r = validate_service(too_big, Service{});
  ASSERT_FALSE(r.valid());
  EXPECT_EQ(r.violations[0].kind, ViolationKind::kForcedFit);
  EXPECT_FALSE(too_big.servable());

  // q must be loaded at position 1 while p sits in the cache.
  const Instance forced =
      make_instance(3, {{2, 1}, {2, 1}}, {0, 1, 0}, Policy::kForced);
  EXPECT_FALSE(validate_service(forced, Service({GapRef{0, 0}})).valid());
  EXPECT_TRUE(validate_service(forced, Service{}).valid());
  const Instance optional = make_instance(3, {{2, 1}, {2, 1}}, {0, 1, 0});
  EXPECT_TRUE(validate_service(optional, Service({GapRef{0, 0}})).valid());
}

TEST(SavingsTest, SumsCostsOfChosenGaps) {
  const Instance inst = make_instance(5, {{1, 3}, {2, 4}}, {0, 1, 0, 1, 0});
  EXPECT_EQ(savings(inst, Service{}), 0);
  EXPECT_EQ(savings(inst, Service({GapRef{0, 0}, GapRef{0, 1}, GapRef{1, 0}})), 10);
}

TEST(SavingsTest, FaultModelEdgePageGapSavesOne) {
  const ReductionOutput r = reduce_fault_optional(testing::hub_graph(), 2);
  const PageIndex p = *r.instance.find_page("a_0_0");
  EXPECT_EQ(savings(r.instance, Service({GapRef{p, 0}})), 1);
}

TEST(SavingsTest, SimpleModelVertexGapIsOneScaledUnit) {
  const ReductionOutput r = reduce_simple(Graph(2, {{0, 1}}));
  EXPECT_EQ(r.instance.cost_scale(), 3);
  EXPECT_EQ(savings(r.instance, Service({GapRef{0, 0}})), 1);
}

TEST(InstanceTest, Accessors) {
  const Instance inst = make_instance(4, {{2, 1}, {3, 5}, {1, 1}}, {0, 2, 0});
  EXPECT_EQ(inst.max_page_size(), 3);
  EXPECT_EQ(inst.max_requested_size(), 2);
  EXPECT_EQ(inst.total_gap_value(), 1);
  EXPECT_EQ(inst.find_page("x1"), std::optional<PageIndex>(1));
  EXPECT_FALSE(inst.find_page("nope").has_value());
  EXPECT_EQ(inst.occurrence_index(2), 1u);
}

}  // namespace
}  // namespace gencache
