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

// Structural checks and per-block diagnostics for reduction instances.
//
// The six structural properties (a)-(f) are what the hardness argument needs
// from an instance; both generated families must satisfy all of them. The
// diagnostics measure, for a given service, the quantities the argument
// tracks block by block:
//
//   S_B      edge-pages cached when block B begins (carried in from before)
//   s_B      |S_B|, and s_B^e for the pages of edge e
//   delta_B  free edge-page slots, mH - s_B
//   gamma_B^e  |s_{B'}^e - s_B^e| for the successor B'
//   eps_B^e  alpha/beta pages of e in S_B
//   phi_B^e  a and bbar pages of e in S_B

#ifndef GENCACHE_PROPERTIES_HPP_
#define GENCACHE_PROPERTIES_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "gencache/core.hpp"
#include "gencache/errors.hpp"
#include "gencache/graph.hpp"
#include "gencache/reductions.hpp"

namespace gencache {

struct PropertyResult {
  char label = 'a';
  std::string name;
  bool passed = true;
  std::string witness;  // first counterexample when !passed
};

struct PropertyReport {
  std::array<PropertyResult, 6> results;

  bool all_passed() const {
    return std::all_of(results.begin(), results.end(),
                       [](const PropertyResult& r) { return r.passed; });
  }
  const PropertyResult& operator[](char label) const {
    return results.at(static_cast<std::size_t>(label - 'a'));
  }
  std::vector<char> failed() const {
    std::vector<char> out;
    for (const auto& r : results) {
      if (!r.passed) out.push_back(r.label);
    }
    return out;
  }
};

inline void write_property_report(std::ostream& os, const PropertyReport& r) {
  for (const PropertyResult& p : r.results) {
    os << '(' << p.label << ") " << p.name << ": "
       << (p.passed ? "pass" : "FAIL " + p.witness) << "\n";
  }
}

namespace internal {

inline void require_roles(const ReductionOutput& out) {
  if (out.page_roles.size() != out.instance.num_pages()) {
    throw StructuralError("reduction output lacks page-role metadata");
  }
}

inline std::string where(const Instance& inst, Position t) {
  const auto& r = inst.requests()[t];
  std::string s = "position " + std::to_string(t) + " page " +
                  inst.page(r.page).id;
  if (r.block) s += " block " + std::to_string(*r.block);
  return s;
}

class PropertyChecker {
 public:
  explicit PropertyChecker(const ReductionOutput& out)
      : out_(out), inst_(out.instance) {}

  PropertyReport run() {
    PropertyReport report;
    report.results[0] = {'a', "vertex-pages requested right around their phase",
                         true, ""};
    report.results[1] = {'b', "edge-page savings equal sum of s_B", true, ""};
    report.results[2] = {'c', "initial block holds abar-pages, final bbar-pages",
                         true, ""};
    report.results[3] = {'d', "edges requested in order inside each block", true,
                         ""};
    report.results[4] = {'e', "a/bbar requests precede abar/b requests", true,
                         ""};
    report.results[5] = {'f', "alpha/beta confined to one phase, no overlap",
                         true, ""};
    check_a(report.results[0]);
    check_b(report.results[1]);
    check_c(report.results[2]);
    check_d(report.results[3]);
    check_e(report.results[4]);
    check_f(report.results[5]);
    return report;
  }

 private:
  static void fail(PropertyResult& r, std::string witness) {
    if (r.passed) {
      r.passed = false;
      r.witness = std::move(witness);
    }
  }

  const PageRole& role(PageIndex p) const { return out_.page_roles[p]; }

  void check_a(PropertyResult& res) const {
    const auto& blocks = inst_.blocks();
    for (PageIndex p = 0; p < inst_.num_pages(); ++p) {
      if (role(p).role != Role::kVertex) continue;
      const std::string id = "page " + inst_.page(p).id;
      const auto occ = inst_.occurrences(p);
      if (occ.size() != 2) {
        fail(res, id + " requested " + std::to_string(occ.size()) + " times");
        return;
      }
      if (!role(p).vertex) {
        fail(res, id + " has no vertex");
        return;
      }
      const Vertex v = *role(p).vertex;
      if (inst_.requests()[occ[0]].block || inst_.requests()[occ[1]].block) {
        fail(res, id + " requested inside a block");
        return;
      }
      for (Position t = occ[0] + 1; t < occ[1]; ++t) {
        const auto& b = inst_.requests()[t].block;
        if (b && blocks[*b].vertex != v) {
          fail(res, id + ": foreign block request at " + where(inst_, t));
          return;
        }
      }
      for (const Block& blk : blocks) {
        if (blk.vertex != v || blk.span.empty()) continue;
        if (blk.span.begin <= occ[0] || blk.span.end > occ[1]) {
          fail(res, id + ": phase block outside its two requests");
          return;
        }
      }
    }
  }

  void check_b(PropertyResult& res) const {
    const Amount scale = inst_.cost_scale();
    for (PageIndex p = 0; p < inst_.num_pages(); ++p) {
      if (!role(p).is_edge_page()) continue;
      const auto occ = inst_.occurrences(p);
      const Amount cost = inst_.page(p).cost;
      if (cost % scale != 0) {
        fail(res, "page " + inst_.page(p).id + " cost not a multiple of scale");
        return;
      }
      std::optional<BlockIndex> prev;
      for (Position t : occ) {
        const auto& b = inst_.requests()[t].block;
        if (!b) {
          fail(res, "edge-page request outside blocks at " + where(inst_, t));
          return;
        }
        // A gap between blocks b and b' is counted in s at the b' - b block
        // starts it covers; that must equal its savings in scale units.
        if (prev && static_cast<Amount>(*b - *prev) * scale != cost) {
          fail(res, "gap of page " + inst_.page(p).id + " spans " +
                        std::to_string(static_cast<long long>(*b) -
                                       static_cast<long long>(*prev)) +
                        " block starts but saves " + std::to_string(cost) +
                        " at " + where(inst_, t));
          return;
        }
        prev = b;
      }
    }
  }

  // Distinct pages of edge e requested in block b.
  std::vector<PageIndex> edge_pages_in(BlockIndex b, std::uint32_t e) const {
    std::vector<PageIndex> out;
    const BlockSpan span = inst_.blocks()[b].span;
    for (Position t = span.begin; t < span.end; ++t) {
      const PageIndex p = inst_.requests()[t].page;
      if (role(p).is_edge_page() && role(p).edge == e) out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::vector<PageIndex> pages_with(std::uint32_t e, Role r) const {
    std::vector<PageIndex> out;
    for (PageIndex p = 0; p < inst_.num_pages(); ++p) {
      if (role(p).role == r && role(p).edge == e) out.push_back(p);
    }
    return out;
  }

  void check_c(PropertyResult& res) const {
    const auto& blocks = inst_.blocks();
    if (blocks.empty()) {
      fail(res, "instance has no blocks");
      return;
    }
    const BlockIndex first = 0;
    const auto last = static_cast<BlockIndex>(blocks.size() - 1);
    for (std::uint32_t e = 0; e < out_.graph.m(); ++e) {
      const auto abar = pages_with(e, Role::kABar);
      const auto bbar = pages_with(e, Role::kBBar);
      if (static_cast<Amount>(abar.size()) != out_.H ||
          edge_pages_in(first, e) != abar) {
        fail(res, "edge " + std::to_string(e) +
                      ": initial block pages differ from its abar-pages");
        return;
      }
      if (static_cast<Amount>(bbar.size()) != out_.H ||
          edge_pages_in(last, e) != bbar) {
        fail(res, "edge " + std::to_string(e) +
                      ": final block pages differ from its bbar-pages");
        return;
      }
    }
  }

  void check_d(PropertyResult& res) const {
    const auto& blocks = inst_.blocks();
    for (BlockIndex b = 0; b < blocks.size(); ++b) {
      std::optional<std::uint32_t> prev;
      for (Position t = blocks[b].span.begin; t < blocks[b].span.end; ++t) {
        const PageRole& r = role(inst_.requests()[t].page);
        if (!r.is_edge_page()) continue;
        if (prev && *r.edge < *prev) {
          fail(res, "edge order broken at " + where(inst_, t));
          return;
        }
        prev = r.edge;
      }
    }
  }

  void check_e(PropertyResult& res) const {
    const auto& blocks = inst_.blocks();
    const std::uint32_t m = out_.graph.m();
    std::vector<std::optional<Position>> last_early(m), first_late(m);
    for (BlockIndex b = 0; b < blocks.size(); ++b) {
      std::fill(last_early.begin(), last_early.end(), std::nullopt);
      std::fill(first_late.begin(), first_late.end(), std::nullopt);
      for (Position t = blocks[b].span.begin; t < blocks[b].span.end; ++t) {
        const PageRole& r = role(inst_.requests()[t].page);
        if (!r.is_edge_page()) continue;
        const auto e = *r.edge;
        if (r.role == Role::kA || r.role == Role::kBBar) {
          last_early[e] = t;
        } else if ((r.role == Role::kABar || r.role == Role::kB) &&
                   !first_late[e]) {
          first_late[e] = t;
        }
      }
      for (std::uint32_t e = 0; e < m; ++e) {
        if (last_early[e] && first_late[e] && *last_early[e] > *first_late[e]) {
          fail(res, "a/bbar request after abar/b request at " +
                        where(inst_, *last_early[e]));
          return;
        }
      }
    }
  }

  void check_f(PropertyResult& res) const {
    const auto& blocks = inst_.blocks();
    for (std::uint32_t e = 0; e < out_.graph.m(); ++e) {
      const Edge& edge = out_.graph.edge(e);
      // (block, page) of every request to a size-3 page of e.
      std::vector<std::pair<BlockIndex, PageIndex>> big;
      std::vector<PageIndex> gadgets;
      for (PageIndex p = 0; p < inst_.num_pages(); ++p) {
        const PageRole& r = role(p);
        if (!r.is_edge_page() || r.edge != e) continue;
        if (r.role == Role::kAlpha || r.role == Role::kBeta) gadgets.push_back(p);
        if (inst_.page(p).size != 3) continue;
        for (Position t : inst_.occurrences(p)) {
          const auto& b = inst_.requests()[t].block;
          if (b) big.emplace_back(*b, p);
        }
      }
      std::sort(big.begin(), big.end());
      for (PageIndex p : gadgets) {
        const auto occ = inst_.occurrences(p);
        const std::string id = "page " + inst_.page(p).id;
        if (occ.empty()) continue;
        const auto& b0 = inst_.requests()[occ.front()].block;
        const auto& b1 = inst_.requests()[occ.back()].block;
        if (!b0 || !b1) {
          fail(res, id + " requested outside blocks");
          return;
        }
        const auto v0 = blocks[*b0].vertex;
        const auto v1 = blocks[*b1].vertex;
        if (!v0 || v0 != v1 || (*v0 != edge.u && *v0 != edge.v)) {
          fail(res, id + ": first and last block not in one endpoint phase");
          return;
        }
        auto it = std::lower_bound(big.begin(), big.end(),
                                   std::make_pair(*b0, PageIndex{0}));
        for (; it != big.end() && it->first <= *b1; ++it) {
          if (it->second != p) {
            fail(res, id + ": size-3 page " + inst_.page(it->second).id +
                          " requested in block " + std::to_string(it->first));
            return;
          }
        }
      }
    }
  }

  const ReductionOutput& out_;
  const Instance& inst_;
};

}  // namespace internal

inline PropertyReport check_properties(const ReductionOutput& out) {
  internal::require_roles(out);
  return internal::PropertyChecker(out).run();
}

// Easy-direction service for an independent set W. For every edge e = {u, v}
// with the u-phase first: keep abar, b, beta, bbar when u is in W, otherwise
// abar, alpha, a, bbar, each on all of its gaps; keep p_v for v in W.
inline Service construct_service_from_is(const ReductionOutput& out,
                                         const std::vector<Vertex>& W) {
  internal::require_roles(out);
  const Graph& g = out.graph;
  std::vector<bool> in_w(g.n(), false);
  for (Vertex v : W) {
    if (v >= g.n()) {
      throw InvalidArgument("vertex " + std::to_string(v) + " out of range");
    }
    in_w[v] = true;
  }
  if (!g.is_independent(W)) {
    throw InvalidArgument("vertex set is not independent");
  }
  std::vector<GapRef> gaps;
  const Instance& inst = out.instance;
  for (PageIndex p = 0; p < inst.num_pages(); ++p) {
    const PageRole& r = out.page_roles[p];
    bool keep = false;
    if (r.role == Role::kVertex) {
      keep = r.vertex && in_w[*r.vertex];
    } else {
      const bool u_in = in_w[out.first_endpoint(*r.edge)];
      switch (r.role) {
        case Role::kABar:
        case Role::kBBar: keep = true; break;
        case Role::kB:
        case Role::kBeta: keep = u_in; break;
        case Role::kAlpha:
        case Role::kA: keep = !u_in; break;
        default: break;
      }
    }
    if (!keep) continue;
    for (std::uint32_t k = 0; k < inst.gap_count(p); ++k) {
      gaps.push_back(GapRef{p, k});
    }
  }
  return Service(std::move(gaps));
}

// Vertices whose page is cached between its two requests.
inline std::vector<Vertex> extract_is(const ReductionOutput& out,
                                      const Service& service) {
  internal::require_roles(out);
  check_references(out.instance, service);
  std::vector<Vertex> w;
  for (const GapRef& g : service.gaps()) {
    const PageRole& r = out.page_roles[g.page];
    if (r.role == Role::kVertex && r.vertex) w.push_back(*r.vertex);
  }
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  return w;
}

struct BlockDiagnostics {
  std::size_t num_blocks = 0;
  std::uint32_t num_edges = 0;
  Amount slots = 0;                          // mH
  std::vector<Amount> s;                     // [block]
  std::vector<Amount> delta;                 // [block]
  std::vector<std::vector<Amount>> s_edge;   // [block][edge]
  std::vector<std::vector<Amount>> gamma;    // [block][edge], 0 for the last
  std::vector<std::vector<Amount>> epsilon;  // [block][edge]
  std::vector<std::vector<Amount>> phi;      // [block][edge]

  // Sum of delta_B over every block but the initial one.
  Amount delta_sum() const {
    Amount total = 0;
    for (std::size_t b = 1; b < num_blocks; ++b) total += delta[b];
    return total;
  }

  // Sum of gamma_B^e over the blocks other than the initial and final one.
  Amount gamma_sum(std::uint32_t e) const {
    Amount total = 0;
    for (std::size_t b = 1; b + 1 < num_blocks; ++b) total += gamma[b][e];
    return total;
  }

  Amount max_epsilon() const {
    Amount best = 0;
    for (const auto& row : epsilon) {
      for (Amount x : row) best = std::max(best, x);
    }
    return best;
  }

  Amount s_total() const {
    Amount total = 0;
    for (Amount x : s) total += x;
    return total;
  }
};

// S_B is taken at the start position t_B of block B (for an empty block, the
// position where it would start): a page is in S_B when one of its chosen
// gaps [start, end] has start < t_B <= end.
inline BlockDiagnostics diagnostics(const ReductionOutput& out,
                                    const Service& service) {
  internal::require_roles(out);
  const Instance& inst = out.instance;
  check_references(inst, service);
  const auto& blocks = inst.blocks();
  const std::size_t nb = blocks.size();
  const std::uint32_t m = out.graph.m();

  BlockDiagnostics d;
  d.num_blocks = nb;
  d.num_edges = m;
  d.slots = out.slots();
  std::vector<Position> starts(nb);
  for (std::size_t b = 0; b < nb; ++b) starts[b] = blocks[b].span.begin;

  // Difference arrays over blocks, one row per (edge, counter).
  enum Counter { kAll, kEps, kPhi, kCounters };
  std::vector<std::vector<Amount>> diff(
      static_cast<std::size_t>(m) * kCounters, std::vector<Amount>(nb + 1, 0));
  for (const GapRef& g : service.gaps()) {
    const PageRole& r = out.page_roles[g.page];
    if (!r.is_edge_page()) continue;
    const Gap gap = inst.gap(g);
    const auto lo = static_cast<std::size_t>(
        std::upper_bound(starts.begin(), starts.end(), gap.start) -
        starts.begin());
    const auto hi = static_cast<std::size_t>(
        std::upper_bound(starts.begin(), starts.end(), gap.end) -
        starts.begin());
    if (lo >= hi) continue;
    auto bump = [&](Counter c) {
      auto& row = diff[static_cast<std::size_t>(*r.edge) * kCounters + c];
      row[lo] += 1;
      row[hi] -= 1;
    };
    bump(kAll);
    if (r.role == Role::kAlpha || r.role == Role::kBeta) bump(kEps);
    if (r.role == Role::kA || r.role == Role::kBBar) bump(kPhi);
  }

  d.s.assign(nb, 0);
  d.delta.assign(nb, 0);
  d.s_edge.assign(nb, std::vector<Amount>(m, 0));
  d.gamma.assign(nb, std::vector<Amount>(m, 0));
  d.epsilon.assign(nb, std::vector<Amount>(m, 0));
  d.phi.assign(nb, std::vector<Amount>(m, 0));
  for (std::uint32_t e = 0; e < m; ++e) {
    Amount run[kCounters] = {0, 0, 0};
    for (std::size_t b = 0; b < nb; ++b) {
      for (int c = 0; c < kCounters; ++c) {
        run[c] += diff[static_cast<std::size_t>(e) * kCounters + c][b];
      }
      d.s_edge[b][e] = run[kAll];
      d.epsilon[b][e] = run[kEps];
      d.phi[b][e] = run[kPhi];
      d.s[b] += run[kAll];
    }
  }
  for (std::size_t b = 0; b < nb; ++b) {
    d.delta[b] = d.slots - d.s[b];
    if (b + 1 < nb) {
      for (std::uint32_t e = 0; e < m; ++e) {
        d.gamma[b][e] = std::abs(d.s_edge[b + 1][e] - d.s_edge[b][e]);
      }
    }
  }
  return d;
}

inline void write_diagnostics_csv(std::ostream& os, const BlockDiagnostics& d) {
  os << "block,edge,s,delta,gamma,epsilon,phi\n";
  for (std::size_t b = 0; b < d.num_blocks; ++b) {
    for (std::uint32_t e = 0; e < d.num_edges; ++e) {
      os << b << ',' << e << ',' << d.s_edge[b][e] << ',' << d.delta[b] << ','
         << d.gamma[b][e] << ',' << d.epsilon[b][e] << ',' << d.phi[b][e]
         << "\n";
    }
  }
}

// One stretch of an edge-page between two consecutive original blocks that
// request it, seen in an expanded (bit-model) instance.
struct Crossing {
  PageIndex page = 0;
  BlockIndex from = 0;  // original block indices
  BlockIndex to = 0;
  std::size_t gaps_total = 0;
  std::size_t gaps_chosen = 0;
  Amount savings = 0;  // over the chosen gaps
};

// Per-crossing savings of the service's edge-pages. Keeping a page across one
// original boundary of the bit instance pays its size once per gap.
inline std::vector<Crossing> audit_crossings(const ReductionOutput& out,
                                             const Service& service) {
  internal::require_roles(out);
  const Instance& inst = out.instance;
  check_references(inst, service);
  std::vector<Crossing> crossings;
  for (PageIndex p = 0; p < inst.num_pages(); ++p) {
    if (!out.page_roles[p].is_edge_page()) continue;
    const auto occ = inst.occurrences(p);
    std::optional<std::size_t> prev;
    for (std::size_t k = 0; k < occ.size(); ++k) {
      const auto& b = inst.requests()[occ[k]].block;
      if (!b || out.block_origin.at(*b).slot != 0) continue;
      if (prev) {
        Crossing c;
        c.page = p;
        c.from = out.block_origin[*inst.requests()[occ[*prev]].block].original;
        c.to = out.block_origin[*b].original;
        c.gaps_total = k - *prev;
        for (std::size_t j = *prev; j < k; ++j) {
          if (service.contains(GapRef{p, static_cast<std::uint32_t>(j)})) {
            ++c.gaps_chosen;
            c.savings += inst.page(p).cost;
          }
        }
        crossings.push_back(c);
      }
      prev = k;
    }
  }
  return crossings;
}

}  // namespace gencache

#endif  // GENCACHE_PROPERTIES_HPP_
