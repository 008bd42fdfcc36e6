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

TEST(InstanceIoTest, RoundTripWithRoles) {
  for (Model m : {Model::kFault, Model::kBit, Model::kSimple}) {
    const ReductionOutput r = reduce(testing::hub_graph(), m, 2);
    const std::string text = to_text(r.instance, &r.page_roles);
    const ParsedInstance back = instance_from_text(text);
    EXPECT_EQ(to_text(back.instance, &*back.roles), text);
    EXPECT_EQ(*back.roles, r.page_roles);
    EXPECT_EQ(back.instance.blocks(), r.instance.blocks());
  }
}

TEST(InstanceIoTest, ForcedRoundTrip) {
  const Instance forced = optional_to_forced(reduce_simple(Graph(2, {{0, 1}})));
  const ParsedInstance back = instance_from_text(to_text(forced));
  EXPECT_FALSE(back.roles.has_value());
  EXPECT_EQ(back.instance.policy(), Policy::kForced);
  EXPECT_EQ(to_text(back.instance), to_text(forced));
}

TEST(InstanceIoTest, SmallFormat) {
  const std::string text =
      "caching-instance 1\n"
      "cache 2\n"
      "policy optional\n"
      "scale 1\n"
      "pages 2\n"
      "p 1 1\n"
      "q 2 3\n"
      "blocks 0\n"
      "requests 3\n"
      "p -\n"
      "q -\n"
      "p -\n";
  const ParsedInstance p = instance_from_text(text);
  EXPECT_EQ(p.instance.num_requests(), 3u);
  EXPECT_EQ(p.instance.page(1).cost, 3);
  EXPECT_EQ(to_text(p.instance), text);
}

TEST(InstanceIoTest, Errors) {
  EXPECT_THROW(instance_from_text("bogus 1\n"), ParseError);
  EXPECT_THROW(instance_from_text("caching-instance 1\ncache x\n"), ParseError);
  const std::string head =
      "caching-instance 1\ncache 2\npolicy optional\nscale 1\npages 1\np 1 1\n"
      "blocks 0\n";
  EXPECT_THROW(instance_from_text(head + "requests 1\nq -\n"), ParseError);
  EXPECT_THROW(instance_from_text(head + "requests 2\np -\n"), ParseError);
  EXPECT_THROW(instance_from_text(head + "requests 1\np 0\n"), InvalidInstance);
  EXPECT_THROW(instance_from_text(head + "requests 1\np -\nextra\n"), ParseError);
  EXPECT_THROW(
      instance_from_text("caching-instance 1\ncache 2\npolicy lazy\n"), ParseError);
}

TEST(ServiceIoTest, RoundTrip) {
  const ReductionOutput r = reduce_fault_optional(testing::hub_graph(), 2);
  const Service s = construct_service_from_is(r, {0, 1});
  std::ostringstream os;
  write_service(os, r.instance, s);
  std::istringstream is(os.str());
  EXPECT_EQ(read_service(is, r.instance), s);
}

TEST(ServiceIoTest, UnknownReferences) {
  const Instance inst = testing::make_instance(2, {{1, 1}}, {0, 0});
  std::istringstream unknown_page("service 1\nzz 0\n");
  EXPECT_THROW(read_service(unknown_page, inst), StructuralError);
  std::istringstream unknown_gap("service 1\nx0 1\n");
  EXPECT_THROW(read_service(unknown_gap, inst), StructuralError);
  std::istringstream bad_header("svc\n");
  EXPECT_THROW(read_service(bad_header, inst), ParseError);
}

TEST(GraphIoTest, RoundTrip) {
  const Graph g = testing::hub_graph();
  std::ostringstream os;
  write_graph(os, g);
  EXPECT_EQ(os.str(), "3 2\n0 2\n1 2\n");
  const Graph back = graph_from_text(os.str());
  EXPECT_EQ(back.edges(), g.edges());
  EXPECT_THROW(graph_from_text("2 1\n0 0\n"), InvalidInstance);
  EXPECT_THROW(graph_from_text("2 2\n0 1\n"), ParseError);
}

}  // namespace
}  // namespace gencache
