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

// Generators turning an Independent Set instance into general caching
// instances with page sizes {1, 2, 3}.
//
// Every vertex v owns a size-1 page requested right before and right after
// the v-phase. Every edge e owns H groups of six pages
//
//   abar(2) alpha(3) a(2) | b(2) beta(3) bbar(2)
//
// requested in two rounds inside every block. An edge e = {u, v} whose
// u-phase comes first owns 2H blocks in the u-phase, B(e,i,1) B(e,i,2) for
// i = 1..H, and 2H blocks in the v-phase, B(e,i,3) B(e,i,4). The requests of
// e inside a block depend only on where the block sits relative to e's own
// blocks:
//
//   before B(e,1,1)   abar_1 .. abar_H                      |
//   B(e,i,1)          a_1..a_{i-1} abar_i alpha_i abar_{i+1}..abar_H | b_1..b_i
//   B(e,i,2)          a_1..a_{i-1} alpha_i a_i abar_{i+1}..abar_H    | b_1..b_i
//   in between        a_1 .. a_H                            | b_1 .. b_H
//   B(e,i,3)          a_i..a_H | bbar_1..bbar_{i-1} b_i beta_i b_{i+1}..b_H
//   B(e,i,4)          a_i..a_H | bbar_1..bbar_{i-1} beta_i bbar_i b_{i+1}..b_H
//   after B(e,H,4)                                          | bbar_1..bbar_H
//
// Phases follow the vertex order; inside a phase the blocks of incident
// edges follow the edge order.

#ifndef GENCACHE_REDUCTIONS_HPP_
#define GENCACHE_REDUCTIONS_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gencache/core.hpp"
#include "gencache/errors.hpp"
#include "gencache/graph.hpp"

namespace gencache {

enum class Model { kFault, kBit, kSimple };

enum class Role { kVertex, kABar, kAlpha, kA, kB, kBeta, kBBar };

inline constexpr std::string_view to_string(Model m) {
  switch (m) {
    case Model::kFault: return "fault";
    case Model::kBit: return "bit";
    case Model::kSimple: return "simple";
  }
  return "?";
}

inline constexpr std::string_view to_string(Role r) {
  switch (r) {
    case Role::kVertex: return "vertex";
    case Role::kABar: return "abar";
    case Role::kAlpha: return "alpha";
    case Role::kA: return "a";
    case Role::kB: return "b";
    case Role::kBeta: return "beta";
    case Role::kBBar: return "bbar";
  }
  return "?";
}

inline Model parse_model(std::string_view s) {
  if (s == "fault") return Model::kFault;
  if (s == "bit") return Model::kBit;
  if (s == "simple") return Model::kSimple;
  throw InvalidArgument("unknown model '" + std::string(s) + "'");
}

inline std::optional<Role> parse_role(std::string_view s) {
  for (Role r : {Role::kVertex, Role::kABar, Role::kAlpha, Role::kA, Role::kB,
                 Role::kBeta, Role::kBBar}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

struct PageRole {
  Role role = Role::kVertex;
  std::optional<std::uint32_t> edge;   // edge-pages
  std::optional<std::uint32_t> group;  // edge-pages, 0-based
  std::optional<Vertex> vertex;        // vertex-pages

  bool is_edge_page() const { return role != Role::kVertex; }
  friend bool operator==(const PageRole&, const PageRole&) = default;
};

// Where a block of the (possibly expanded) instance comes from: the index
// of the block in the unexpanded sequence, and 0 for that block itself or
// 1..5 for the blocks inserted right after it.
struct BlockOrigin {
  BlockIndex original = 0;
  int slot = 0;

  friend bool operator==(const BlockOrigin&, const BlockOrigin&) = default;
};

// Gadget name of an original phase block: B(edge, group + 1, quarter).
struct BlockTag {
  std::uint32_t edge = 0;
  std::uint32_t group = 0;  // 0-based
  int quarter = 1;          // 1..4

  friend bool operator==(const BlockTag&, const BlockTag&) = default;
};

struct ReductionOutput {
  Instance instance;
  Graph graph;
  Model model = Model::kFault;
  Amount H = 1;
  std::size_t d = 0;  // number of blocks of `instance`
  std::vector<PageRole> page_roles;
  std::vector<Vertex> phase_order;
  std::vector<BlockOrigin> block_origin;
  std::vector<std::optional<BlockTag>> block_tags;
  Amount threshold_base = 0;  // savings that encode K = 0

  // Savings encoding an independent set of size k.
  Amount threshold(Amount k) const { return threshold_base + k; }

  // Edge-page slots: at most mH edge-pages fit at once.
  Amount slots() const { return static_cast<Amount>(graph.m()) * H; }

  // Endpoint of edge e whose phase comes first.
  Vertex first_endpoint(std::uint32_t e) const {
    const Edge& ed = graph.edge(e);
    return phase_position(ed.u) < phase_position(ed.v) ? ed.u : ed.v;
  }
  Vertex second_endpoint(std::uint32_t e) const {
    const Edge& ed = graph.edge(e);
    return first_endpoint(e) == ed.u ? ed.v : ed.u;
  }

  std::size_t phase_position(Vertex v) const {
    return static_cast<std::size_t>(
        std::find(phase_order.begin(), phase_order.end(), v) -
        phase_order.begin());
  }

  PageIndex vertex_page(Vertex v) const { return v; }
};

inline Amount default_H(const Graph& g) {
  const Amount n = g.n();
  const Amount m = g.m();
  return 6 * m * n + 3 * n + 1;
}

namespace internal {

inline constexpr Role kGroupRoles[6] = {Role::kABar, Role::kAlpha, Role::kA,
                                        Role::kB,    Role::kBeta,  Role::kBBar};

inline Amount role_size(Role r) {
  switch (r) {
    case Role::kVertex: return 1;
    case Role::kAlpha:
    case Role::kBeta: return 3;
    default: return 2;
  }
}

// Vertex pages occupy indices 0..n-1, then edge pages follow group by group.
struct PageLayout {
  std::uint32_t n = 0;
  Amount H = 1;

  PageIndex edge_page(std::uint32_t e, std::uint32_t g, Role r) const {
    const auto offset = static_cast<std::uint32_t>(
        std::find(std::begin(kGroupRoles), std::end(kGroupRoles), r) -
        std::begin(kGroupRoles));
    return n + 6 * (e * static_cast<std::uint32_t>(H) + g) + offset;
  }
};

struct LayoutItem {
  bool is_block = false;
  std::uint32_t value = 0;  // block index or vertex
};

// The unexpanded reduction: blocks with their request lists and the
// interleaving with vertex-page requests.
struct BaseSequence {
  std::vector<Block> blocks;
  std::vector<std::optional<BlockTag>> tags;
  std::vector<std::vector<PageIndex>> contents;
  std::vector<LayoutItem> layout;
  std::vector<Page> pages;
  std::vector<PageRole> roles;
  std::vector<Vertex> phase_order;
};

inline BaseSequence build_base(const Graph& g, Amount H) {
  if (H < 1) throw InvalidArgument("H must be >= 1");
  const std::uint32_t n = g.n();
  const std::uint32_t m = g.m();
  const auto h = static_cast<std::uint32_t>(H);
  BaseSequence seq;
  PageLayout pl{n, H};

  for (Vertex v = 0; v < n; ++v) {
    seq.phase_order.push_back(v);
    seq.pages.push_back(Page{"p" + std::to_string(v), 1, 1});
    seq.roles.push_back(PageRole{Role::kVertex, std::nullopt, std::nullopt, v});
  }
  for (std::uint32_t e = 0; e < m; ++e) {
    for (std::uint32_t grp = 0; grp < h; ++grp) {
      for (Role r : kGroupRoles) {
        seq.pages.push_back(Page{std::string(to_string(r)) + "_" +
                                     std::to_string(e) + "_" +
                                     std::to_string(grp),
                                 role_size(r), 1});
        seq.roles.push_back(PageRole{r, e, grp, std::nullopt});
      }
    }
  }

  // Phase order is the vertex order, so the smaller endpoint comes first.
  auto first = [&](std::uint32_t e) {
    return std::min(g.edge(e).u, g.edge(e).v);
  };
  std::vector<std::uint32_t> ustart(m), vstart(m);
  seq.blocks.push_back(Block{BlockKind::kInitial, std::nullopt, 0, {}});
  seq.tags.emplace_back();
  seq.layout.push_back({true, 0});
  for (Vertex v : seq.phase_order) {
    seq.layout.push_back({false, v});
    for (std::uint32_t e = 0; e < m; ++e) {
      if (!g.edge(e).touches(v)) continue;
      const bool u_side = first(e) == v;
      (u_side ? ustart : vstart)[e] =
          static_cast<std::uint32_t>(seq.blocks.size());
      for (std::uint32_t grp = 0; grp < h; ++grp) {
        const int q0 = u_side ? 1 : 3;
        for (int q = q0; q < q0 + 2; ++q) {
          seq.layout.push_back(
              {true, static_cast<std::uint32_t>(seq.blocks.size())});
          seq.blocks.push_back(Block{BlockKind::kPhase, v, 0, {}});
          seq.tags.push_back(BlockTag{e, grp, q});
        }
      }
    }
    seq.layout.push_back({false, v});
  }
  seq.layout.push_back({true, static_cast<std::uint32_t>(seq.blocks.size())});
  seq.blocks.push_back(Block{BlockKind::kFinal, std::nullopt, 0, {}});
  seq.tags.emplace_back();

  seq.contents.resize(seq.blocks.size());
  for (std::uint32_t x = 0; x < seq.blocks.size(); ++x) {
    auto& out = seq.contents[x];
    for (std::uint32_t e = 0; e < m; ++e) {
      auto page = [&](std::uint32_t grp, Role r) {
        out.push_back(pl.edge_page(e, grp, r));
      };
      const std::uint32_t u0 = ustart[e];
      const std::uint32_t v0 = vstart[e];
      if (x < u0) {
        for (std::uint32_t j = 0; j < h; ++j) page(j, Role::kABar);
      } else if (x < u0 + 2 * h) {
        const std::uint32_t i = (x - u0) / 2;  // 0-based group
        const bool q1 = (x - u0) % 2 == 0;
        for (std::uint32_t j = 0; j < i; ++j) page(j, Role::kA);
        if (q1) {
          page(i, Role::kABar);
          page(i, Role::kAlpha);
        } else {
          page(i, Role::kAlpha);
          page(i, Role::kA);
        }
        for (std::uint32_t j = i + 1; j < h; ++j) page(j, Role::kABar);
        for (std::uint32_t j = 0; j <= i; ++j) page(j, Role::kB);
      } else if (x < v0) {
        for (std::uint32_t j = 0; j < h; ++j) page(j, Role::kA);
        for (std::uint32_t j = 0; j < h; ++j) page(j, Role::kB);
      } else if (x < v0 + 2 * h) {
        const std::uint32_t i = (x - v0) / 2;
        const bool q3 = (x - v0) % 2 == 0;
        for (std::uint32_t j = i; j < h; ++j) page(j, Role::kA);
        for (std::uint32_t j = 0; j < i; ++j) page(j, Role::kBBar);
        if (q3) {
          page(i, Role::kB);
          page(i, Role::kBeta);
        } else {
          page(i, Role::kBeta);
          page(i, Role::kBBar);
        }
        for (std::uint32_t j = i + 1; j < h; ++j) page(j, Role::kB);
      } else {
        for (std::uint32_t j = 0; j < h; ++j) page(j, Role::kBBar);
      }
    }
  }
  return seq;
}

inline InstanceData assemble(const BaseSequence& seq,
                             const std::vector<LayoutItem>& layout,
                             const std::vector<Block>& blocks,
                             const std::vector<std::vector<PageIndex>>& contents,
                             Amount capacity, Amount cost_scale) {
  InstanceData data;
  data.capacity = capacity;
  data.pages = seq.pages;
  data.blocks = blocks;
  data.policy = Policy::kOptional;
  data.cost_scale = cost_scale;
  for (const LayoutItem& item : layout) {
    if (item.is_block) {
      for (PageIndex p : contents[item.value]) {
        data.requests.push_back(Request{p, item.value});
      }
    } else {
      data.requests.push_back(Request{item.value, std::nullopt});
    }
  }
  return data;
}

inline ReductionOutput reduce_base_model(const Graph& g, Amount H, Model model) {
  BaseSequence seq = build_base(g, H);
  const Amount m = g.m();
  const Amount n = g.n();
  Amount scale = 1;
  if (model == Model::kSimple) {
    scale = n + 1;
    for (std::size_t p = 0; p < seq.pages.size(); ++p) {
      seq.pages[p].cost = seq.roles[p].is_edge_page() ? n + 1 : 1;
    }
  }
  const Amount capacity = 2 * m * H + 1;
  InstanceData data = assemble(seq, seq.layout, seq.blocks, seq.contents,
                               capacity, scale);
  const std::size_t d = seq.blocks.size();
  std::vector<BlockOrigin> origin;
  for (std::size_t b = 0; b < d; ++b) {
    origin.push_back(BlockOrigin{static_cast<BlockIndex>(b), 0});
  }
  const Amount base = static_cast<Amount>(d - 1) * m * H * scale;
  return ReductionOutput{Instance(std::move(data)),
                         g,
                         model,
                         H,
                         d,
                         std::move(seq.roles),
                         std::move(seq.phase_order),
                         std::move(origin),
                         std::move(seq.tags),
                         base};
}

}  // namespace internal

// Fault model, optional policy: unit costs, C = 2mH + 1, d = 4mH + 2 blocks,
// threshold(K) = (d - 1)mH + K.
inline ReductionOutput reduce_fault_optional(const Graph& g, Amount H) {
  return internal::reduce_base_model(g, H, Model::kFault);
}

// Two-cost variant with H = 1. Vertex pages cost 1/(n+1) relative to edge
// pages; all costs are scaled by n + 1 so they stay integral.
inline ReductionOutput reduce_simple(const Graph& g) {
  return internal::reduce_base_model(g, 1, Model::kSimple);
}

// Bit model: cost = size, and five blocks inserted between every pair of
// consecutive blocks B, B':
//   (1) empty, (2) size-2 pages requested in both B and B', (3) the size-3
//   page requested in both, (4) as (2), (5) empty.
// Inserted blocks between two phases sit after the closing vertex request of
// the earlier phase, outside every phase.
inline ReductionOutput reduce_bit_optional(const Graph& g, Amount H) {
  using internal::LayoutItem;
  internal::BaseSequence seq = internal::build_base(g, H);
  for (Page& p : seq.pages) p.cost = p.size;
  const std::size_t d = seq.blocks.size();

  std::vector<Block> blocks;
  std::vector<std::vector<PageIndex>> contents;
  std::vector<BlockOrigin> origin;
  std::vector<std::optional<BlockTag>> tags;
  std::vector<LayoutItem> layout;

  auto emit_original = [&](std::uint32_t k) {
    layout.push_back({true, static_cast<std::uint32_t>(blocks.size())});
    blocks.push_back(seq.blocks[k]);
    contents.push_back(seq.contents[k]);
    origin.push_back(BlockOrigin{k, 0});
    tags.push_back(seq.tags[k]);
  };
  auto emit_inserted = [&](std::uint32_t k) {
    const auto& here = seq.contents[k];
    const auto& there = seq.contents[k + 1];
    auto shared = [&](Amount size) {
      std::vector<PageIndex> out;
      for (PageIndex p : here) {
        if (seq.pages[p].size == size &&
            std::find(there.begin(), there.end(), p) != there.end()) {
          out.push_back(p);
        }
      }
      return out;
    };
    std::optional<Vertex> phase;
    if (seq.blocks[k].kind == BlockKind::kPhase &&
        seq.blocks[k + 1].kind == BlockKind::kPhase &&
        seq.blocks[k].vertex == seq.blocks[k + 1].vertex) {
      phase = seq.blocks[k].vertex;
    }
    const auto two = shared(2);
    const auto three = shared(3);
    const std::vector<PageIndex> none;
    const std::vector<PageIndex>* inserted[5] = {&none, &two, &three, &two,
                                                 &none};
    for (int s = 1; s <= 5; ++s) {
      layout.push_back({true, static_cast<std::uint32_t>(blocks.size())});
      blocks.push_back(Block{BlockKind::kInserted, phase, s, {}});
      contents.push_back(*inserted[s - 1]);
      origin.push_back(BlockOrigin{k, s});
      tags.emplace_back();
    }
  };

  std::optional<std::uint32_t> pending;  // waits for the closing vertex request
  for (const LayoutItem& item : seq.layout) {
    if (!item.is_block) {
      layout.push_back(item);
      if (pending && seq.blocks[*pending].vertex == item.value) {
        emit_inserted(*pending);
        pending.reset();
      }
      continue;
    }
    const std::uint32_t k = item.value;
    emit_original(k);
    if (k + 1 == d) continue;
    const bool same_phase = seq.blocks[k].kind == BlockKind::kPhase &&
                            seq.blocks[k + 1].kind == BlockKind::kPhase &&
                            seq.blocks[k].vertex == seq.blocks[k + 1].vertex;
    if (same_phase || seq.blocks[k].kind != BlockKind::kPhase) {
      emit_inserted(k);
    } else {
      pending = k;
    }
  }

  const Amount m = g.m();
  const Amount capacity = 2 * m * H + 1;
  InstanceData data =
      internal::assemble(seq, layout, blocks, contents, capacity, 1);
  const std::size_t d_bit = blocks.size();
  const Amount base = static_cast<Amount>(d_bit - 1) * m * H;
  return ReductionOutput{Instance(std::move(data)),
                         g,
                         Model::kBit,
                         H,
                         d_bit,
                         std::move(seq.roles),
                         std::move(seq.phase_order),
                         std::move(origin),
                         std::move(tags),
                         base};
}

inline ReductionOutput reduce(const Graph& g, Model model,
                              std::optional<Amount> H = std::nullopt) {
  switch (model) {
    case Model::kFault: return reduce_fault_optional(g, H.value_or(default_H(g)));
    case Model::kBit: return reduce_bit_optional(g, H.value_or(default_H(g)));
    case Model::kSimple: return reduce_simple(g);
  }
  throw InvalidArgument("unknown model");
}

// Prefix of page ids created by optional_to_forced.
inline constexpr std::string_view kFreshPrefix = "~q";

// Optional -> forced: C' = C + M with M the largest requested page size, and
// a fresh size-M page requested once after every original request. The
// forced optimum of the result equals the optional optimum of the input;
// original pages keep their indices and gap ordinals.
inline Instance optional_to_forced(const Instance& in, Amount fresh_cost = 1) {
  if (in.policy() != Policy::kOptional) {
    throw InvalidArgument("optional_to_forced expects an optional instance");
  }
  if (fresh_cost < 1) throw InvalidArgument("fresh page cost must be >= 1");
  for (const Page& p : in.pages()) {
    if (std::string_view(p.id).starts_with("~")) {
      throw InvalidArgument("page id '" + p.id +
                            "' uses the reserved '~' namespace");
    }
  }
  const Amount M = in.max_requested_size();
  InstanceData data;
  data.capacity = in.capacity() + M;
  data.policy = Policy::kForced;
  data.cost_scale = in.cost_scale();
  data.pages = in.pages();
  data.blocks = in.blocks();
  const auto R = in.num_requests();
  for (std::size_t i = 0; i < R; ++i) {
    data.pages.push_back(
        Page{std::string(kFreshPrefix) + std::to_string(i), M, fresh_cost});
  }
  for (std::size_t i = 0; i < R; ++i) {
    const Request& r = in.requests()[i];
    data.requests.push_back(r);
    data.requests.push_back(
        Request{static_cast<PageIndex>(in.num_pages() + i), r.block});
  }
  return Instance(std::move(data));
}

// Fresh pages cost 1 in the fault model and M in the bit model. The simple
// model has no prescribed cost; `fresh_cost` applies there.
inline Instance optional_to_forced(const ReductionOutput& out,
                                   Amount fresh_cost = 1) {
  if (out.model == Model::kFault) return optional_to_forced(out.instance, 1);
  if (out.model == Model::kBit) {
    return optional_to_forced(out.instance,
                              std::max<Amount>(1, out.instance.max_requested_size()));
  }
  return optional_to_forced(out.instance, fresh_cost);
}

}  // namespace gencache

#endif  // GENCACHE_REDUCTIONS_HPP_
