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

// Data model for offline general caching: pages with sizes and integer
// costs, an annotated request sequence, and normalized services.
//
// A normalized service keeps a page in the cache only on whole "gaps", the
// closed stretch of positions between two consecutive requests to the page.
// Positions are request indices. A cached gap occupies both of its endpoint
// positions, so at the position of a request to page p the cache has to hold
// p whenever p is cached on either side of that request.

#ifndef GENCACHE_CORE_HPP_
#define GENCACHE_CORE_HPP_

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gencache/errors.hpp"

namespace gencache {

using PageIndex = std::uint32_t;
using BlockIndex = std::uint32_t;
using Position = std::size_t;
using Amount = std::int64_t;

enum class Policy { kOptional, kForced };

enum class BlockKind { kInitial, kFinal, kPhase, kInserted };

struct Page {
  std::string id;
  Amount size = 1;
  Amount cost = 1;

  friend bool operator==(const Page&, const Page&) = default;
};

// The position of a request is its index in Instance::requests().
struct Request {
  PageIndex page = 0;
  std::optional<BlockIndex> block;  // nullopt: outside every block

  friend bool operator==(const Request&, const Request&) = default;
};

// Half-open range of request positions. Empty blocks get begin == end at
// the position where the block would start.
struct BlockSpan {
  Position begin = 0;
  Position end = 0;

  bool empty() const { return begin == end; }
  bool contains(Position t) const { return begin <= t && t < end; }

  friend bool operator==(const BlockSpan&, const BlockSpan&) = default;
};

struct Block {
  BlockKind kind = BlockKind::kPhase;
  // Phase the block belongs to. Required for kPhase, optional for kInserted.
  std::optional<std::uint32_t> vertex;
  // 1..5 for inserted blocks, 0 otherwise.
  int slot = 0;
  // Derived from the request annotations when the Instance is built.
  BlockSpan span;

  friend bool operator==(const Block&, const Block&) = default;
};

// Plain description used to build an Instance.
struct InstanceData {
  Amount capacity = 1;
  std::vector<Page> pages;
  std::vector<Request> requests;
  std::vector<Block> blocks;
  Policy policy = Policy::kOptional;
  // All costs are integers; fractional costs are expressed by multiplying
  // every cost (and every threshold) by this factor.
  Amount cost_scale = 1;
};

struct GapRef {
  PageIndex page = 0;
  std::uint32_t ordinal = 0;  // between the ordinal-th and next request

  friend auto operator<=>(const GapRef&, const GapRef&) = default;
};

struct Gap {
  GapRef ref;
  Position start = 0;  // closed span [start, end]
  Position end = 0;

  friend bool operator==(const Gap&, const Gap&) = default;
};

// Immutable, validated caching instance.
class Instance {
 public:
  explicit Instance(InstanceData data) : data_(std::move(data)) {
    Validate();
    Index();
  }

  Amount capacity() const { return data_.capacity; }
  Policy policy() const { return data_.policy; }
  Amount cost_scale() const { return data_.cost_scale; }
  const std::vector<Page>& pages() const { return data_.pages; }
  const std::vector<Request>& requests() const { return data_.requests; }
  const std::vector<Block>& blocks() const { return data_.blocks; }
  const Page& page(PageIndex p) const { return data_.pages.at(p); }
  const InstanceData& data() const { return data_; }

  std::size_t num_pages() const { return data_.pages.size(); }
  std::size_t num_requests() const { return data_.requests.size(); }

  // Positions of the requests to page p, ascending.
  std::span<const Position> occurrences(PageIndex p) const {
    return occurrences_.at(p);
  }

  // k such that the request at position t is the k-th request to its page.
  std::uint32_t occurrence_index(Position t) const {
    return occurrence_index_.at(t);
  }

  std::size_t gap_count(PageIndex p) const {
    const auto n = occurrences_.at(p).size();
    return n == 0 ? 0 : n - 1;
  }

  bool has_gap(GapRef g) const {
    return g.page < num_pages() && g.ordinal < gap_count(g.page);
  }

  Gap gap(GapRef g) const {
    if (!has_gap(g)) throw StructuralError("unknown gap reference");
    const auto occ = occurrences(g.page);
    return Gap{g, occ[g.ordinal], occ[g.ordinal + 1]};
  }

  std::optional<PageIndex> find_page(std::string_view id) const {
    auto it = page_by_id_.find(std::string(id));
    if (it == page_by_id_.end()) return std::nullopt;
    return it->second;
  }

  Amount max_page_size() const {
    Amount m = 0;
    for (const Page& p : data_.pages) m = std::max(m, p.size);
    return m;
  }

  // Largest size among pages that are actually requested.
  Amount max_requested_size() const {
    Amount m = 0;
    for (const Request& r : data_.requests) {
      m = std::max(m, data_.pages[r.page].size);
    }
    return m;
  }

  // Upper bound on savings: every gap of every page kept.
  Amount total_gap_value() const {
    Amount total = 0;
    for (PageIndex p = 0; p < num_pages(); ++p) {
      total += data_.pages[p].cost * static_cast<Amount>(gap_count(p));
    }
    return total;
  }

  // Under the forced policy every requested page must fit on its own.
  bool servable() const {
    return data_.policy == Policy::kOptional ||
           max_requested_size() <= data_.capacity;
  }

 private:
  void Validate() const {
    if (data_.capacity < 1) throw InvalidInstance("capacity must be >= 1");
    if (data_.cost_scale < 1) throw InvalidInstance("cost scale must be >= 1");
    std::unordered_map<std::string, PageIndex> seen;
    for (const Page& p : data_.pages) {
      if (p.id.empty()) throw InvalidInstance("empty page id");
      for (char c : p.id) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
          throw InvalidInstance("page id contains whitespace: '" + p.id + "'");
        }
      }
      if (p.size < 1) throw InvalidInstance("page " + p.id + ": size < 1");
      if (p.cost < 1) throw InvalidInstance("page " + p.id + ": cost < 1");
      if (!seen.emplace(p.id, 0).second) {
        throw InvalidInstance("duplicate page id " + p.id);
      }
    }
    const auto num_blocks = data_.blocks.size();
    std::optional<BlockIndex> last_block;
    for (std::size_t t = 0; t < data_.requests.size(); ++t) {
      const Request& r = data_.requests[t];
      if (r.page >= data_.pages.size()) {
        throw InvalidInstance("request " + std::to_string(t) +
                              " references unknown page");
      }
      if (!r.block) continue;
      if (*r.block >= num_blocks) {
        throw InvalidInstance("request " + std::to_string(t) +
                              " references unknown block");
      }
      if (last_block && *r.block < *last_block) {
        throw InvalidInstance("block annotations out of order at request " +
                              std::to_string(t));
      }
      last_block = r.block;
    }
    if (num_blocks == 0) return;
    if (num_blocks < 2 || data_.blocks.front().kind != BlockKind::kInitial ||
        data_.blocks.back().kind != BlockKind::kFinal) {
      throw InvalidInstance("blocks must start with initial and end with final");
    }
    for (std::size_t b = 0; b < num_blocks; ++b) {
      const Block& blk = data_.blocks[b];
      const bool boundary = b == 0 || b + 1 == num_blocks;
      if (!boundary && (blk.kind == BlockKind::kInitial ||
                        blk.kind == BlockKind::kFinal)) {
        throw InvalidInstance("extra initial/final block " + std::to_string(b));
      }
      if (blk.kind == BlockKind::kPhase && !blk.vertex) {
        throw InvalidInstance("phase block " + std::to_string(b) +
                              " without vertex");
      }
      if (blk.kind == BlockKind::kInserted && (blk.slot < 1 || blk.slot > 5)) {
        throw InvalidInstance("inserted block " + std::to_string(b) +
                              " has slot outside 1..5");
      }
      if (blk.kind != BlockKind::kInserted && blk.slot != 0) {
        throw InvalidInstance("slot set on non-inserted block " +
                              std::to_string(b));
      }
    }
  }

  void Index() {
    const auto num_pages = data_.pages.size();
    occurrences_.assign(num_pages, {});
    occurrence_index_.resize(data_.requests.size());
    for (Position t = 0; t < data_.requests.size(); ++t) {
      auto& occ = occurrences_[data_.requests[t].page];
      occurrence_index_[t] = static_cast<std::uint32_t>(occ.size());
      occ.push_back(t);
    }
    for (PageIndex p = 0; p < num_pages; ++p) {
      page_by_id_.emplace(data_.pages[p].id, p);
    }
    if (data_.blocks.empty()) return;
    std::vector<std::optional<BlockSpan>> spans(data_.blocks.size());
    for (Position t = 0; t < data_.requests.size(); ++t) {
      const auto& b = data_.requests[t].block;
      if (!b) continue;
      auto& s = spans[*b];
      if (!s) {
        s = BlockSpan{t, t + 1};
      } else {
        s->end = t + 1;
      }
    }
    Position cursor = 0;
    for (std::size_t b = 0; b < data_.blocks.size(); ++b) {
      if (spans[b]) {
        data_.blocks[b].span = *spans[b];
        cursor = spans[b]->end;
      } else {
        data_.blocks[b].span = BlockSpan{cursor, cursor};
      }
    }
    // Spans are ordered and disjoint; an unannotated request must not sit
    // inside one of them.
    std::size_t b = 0;
    for (Position t = 0; t < data_.requests.size(); ++t) {
      while (b < data_.blocks.size() && data_.blocks[b].span.end <= t) ++b;
      if (data_.requests[t].block || b == data_.blocks.size()) continue;
      if (data_.blocks[b].span.contains(t)) {
        throw InvalidInstance("request " + std::to_string(t) +
                              " outside blocks lies inside a block span");
      }
    }
  }

  InstanceData data_;
  std::vector<std::vector<Position>> occurrences_;
  std::vector<std::uint32_t> occurrence_index_;
  std::unordered_map<std::string, PageIndex> page_by_id_;
};

// A set of chosen gaps. Duplicates collapse; iteration order is
// (page, ordinal).
class Service {
 public:
  Service() = default;
  explicit Service(std::vector<GapRef> gaps) : gaps_(std::move(gaps)) {
    std::sort(gaps_.begin(), gaps_.end());
    gaps_.erase(std::unique(gaps_.begin(), gaps_.end()), gaps_.end());
  }

  const std::vector<GapRef>& gaps() const { return gaps_; }
  std::size_t size() const { return gaps_.size(); }
  bool empty() const { return gaps_.empty(); }
  bool contains(GapRef g) const {
    return std::binary_search(gaps_.begin(), gaps_.end(), g);
  }

  friend bool operator==(const Service&, const Service&) = default;

 private:
  std::vector<GapRef> gaps_;
};

inline std::vector<Gap> enumerate_gaps(const Instance& instance) {
  std::vector<Gap> gaps;
  for (PageIndex p = 0; p < instance.num_pages(); ++p) {
    const auto occ = instance.occurrences(p);
    for (std::size_t k = 0; k + 1 < occ.size(); ++k) {
      gaps.push_back(
          Gap{GapRef{p, static_cast<std::uint32_t>(k)}, occ[k], occ[k + 1]});
    }
  }
  return gaps;
}

inline void check_references(const Instance& instance, const Service& service) {
  for (const GapRef& g : service.gaps()) {
    if (g.page >= instance.num_pages()) {
      throw StructuralError("service references unknown page index " +
                            std::to_string(g.page));
    }
    if (!instance.has_gap(g)) {
      throw StructuralError("service references unknown gap " +
                            instance.page(g.page).id + "#" +
                            std::to_string(g.ordinal));
    }
  }
}

// Total cached size at each position. Adjacent gaps of one page share an
// endpoint; the page is counted once there.
inline std::vector<Amount> occupancy_profile(const Instance& instance,
                                             const Service& service) {
  check_references(instance, service);
  const auto n = instance.num_requests();
  std::vector<Amount> delta(n + 1, 0);
  const auto& gaps = service.gaps();
  for (std::size_t i = 0; i < gaps.size();) {
    // Merge a run of consecutive ordinals of one page into one interval.
    std::size_t j = i;
    while (j + 1 < gaps.size() && gaps[j + 1].page == gaps[i].page &&
           gaps[j + 1].ordinal == gaps[j].ordinal + 1) {
      ++j;
    }
    const auto occ = instance.occurrences(gaps[i].page);
    const Position start = occ[gaps[i].ordinal];
    const Position end = occ[gaps[j].ordinal + 1];
    const Amount size = instance.page(gaps[i].page).size;
    delta[start] += size;
    delta[end + 1] -= size;
    i = j + 1;
  }
  std::vector<Amount> profile(n, 0);
  Amount running = 0;
  for (Position t = 0; t < n; ++t) {
    running += delta[t];
    profile[t] = running;
  }
  return profile;
}

enum class ViolationKind {
  kCapacity,  // cached pages exceed the capacity
  kForcedFit  // forced policy: requested page does not fit momentarily
};

struct Violation {
  Position position = 0;
  Amount load = 0;  // total size that had to fit at this position
  ViolationKind kind = ViolationKind::kCapacity;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool valid() const { return violations.empty(); }
};

// True if the page requested at t is held in the cache at t.
inline bool occupies_own_request(const Instance& instance,
                                 const Service& service, Position t) {
  const PageIndex p = instance.requests()[t].page;
  const std::uint32_t k = instance.occurrence_index(t);
  if (k > 0 && service.contains(GapRef{p, k - 1})) return true;
  return k < instance.gap_count(p) && service.contains(GapRef{p, k});
}

inline ValidationReport validate_service(const Instance& instance,
                                         const Service& service) {
  const auto profile = occupancy_profile(instance, service);
  ValidationReport report;
  const Amount cap = instance.capacity();
  for (Position t = 0; t < profile.size(); ++t) {
    if (profile[t] > cap) {
      report.violations.push_back({t, profile[t], ViolationKind::kCapacity});
      continue;
    }
    if (instance.policy() != Policy::kForced) continue;
    if (occupies_own_request(instance, service, t)) continue;
    const Amount load =
        profile[t] + instance.page(instance.requests()[t].page).size;
    if (load > cap) {
      report.violations.push_back({t, load, ViolationKind::kForcedFit});
    }
  }
  return report;
}

inline Amount savings(const Instance& instance, const Service& service) {
  const auto report = validate_service(instance, service);
  if (!report.valid()) {
    throw InvalidService("savings requested for an invalid service (first "
                         "violation at position " +
                         std::to_string(report.violations.front().position) +
                         ")");
  }
  Amount total = 0;
  for (const GapRef& g : service.gaps()) total += instance.page(g.page).cost;
  return total;
}

}  // namespace gencache

#endif  // GENCACHE_CORE_HPP_
