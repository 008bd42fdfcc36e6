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

// Exact offline solvers for normalized general caching.
//
// solve_exact sweeps the request sequence once. Between positions t and t+1
// the state is the set of pages cached across that boundary; only pages with
// a request on both sides can be in it. Each live page keeps one bit slot for
// its whole lifetime, so a state is a fixed-width bit mask over slots. At the
// request to page X the transition decides whether X stays cached until its
// next request, collecting COST(X) when a cached gap of X closes.
//
// solve_brute_force enumerates every gap subset and is the independent
// oracle for the sweep.

#ifndef GENCACHE_SOLVER_HPP_
#define GENCACHE_SOLVER_HPP_

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "gencache/core.hpp"
#include "gencache/errors.hpp"

namespace gencache {

struct SolveStats {
  std::size_t states = 0;       // DP states kept over all layers
  std::size_t transitions = 0;  // candidate successors examined
  std::size_t max_layer = 0;    // widest layer
  std::size_t slots = 0;        // maximum number of simultaneously live pages
};

struct SolveResult {
  Amount optimal_savings = 0;
  Service witness;
  SolveStats explored;
};

struct SolveOptions {
  // Maximum number of states in one layer, checked both up front (feasible
  // subsets of the live pages) and while sweeping.
  std::size_t budget = 5'000'000;
};

namespace internal {

// Bit mask over live-page slots.
template <std::size_t Words>
struct SlotMask {
  std::array<std::uint64_t, Words> w{};

  bool test(std::size_t i) const { return (w[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i) { w[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { w[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }

  friend bool operator==(const SlotMask&, const SlotMask&) = default;
};

template <std::size_t Words>
struct SlotMaskHash {
  std::size_t operator()(const SlotMask<Words>& m) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t x : m.w) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
  }
};

// Number of subsets of `sizes` with total at most `capacity`, saturating at
// limit + 1.
inline std::size_t count_feasible_subsets(const std::vector<Amount>& sizes,
                                          Amount capacity, std::size_t limit) {
  const auto cap = static_cast<std::size_t>(capacity);
  std::vector<std::size_t> ways(cap + 1, 0);
  ways[0] = 1;
  for (Amount s : sizes) {
    if (s > capacity) continue;
    const auto sz = static_cast<std::size_t>(s);
    for (std::size_t c = cap; c >= sz; --c) {
      ways[c] = std::min(limit + 1, ways[c] + ways[c - sz]);
      if (c == sz) break;
    }
  }
  std::size_t total = 0;
  for (std::size_t w : ways) total = std::min(limit + 1, total + w);
  return total;
}

// Slot assignment for the sweep: each page requested at least twice holds
// one slot from its first to its last request.
struct SlotPlan {
  std::vector<std::uint32_t> slot_of_page;
  std::size_t width = 0;
};

// Also enforces the state budget: at every boundary the subsets of live
// pages that fit in the cache must number at most `budget`.
inline SlotPlan plan_slots(const Instance& instance, std::size_t budget) {
  SlotPlan plan;
  plan.slot_of_page.assign(instance.num_pages(),
                           std::numeric_limits<std::uint32_t>::max());
  std::vector<std::uint32_t> free_slots;  // min-heap
  std::vector<PageIndex> live;
  std::vector<Amount> sizes;
  const auto n = instance.num_requests();
  for (Position t = 0; t < n; ++t) {
    const PageIndex x = instance.requests()[t].page;
    const auto k = instance.occurrence_index(t);
    const auto count = instance.occurrences(x).size();
    if (count < 2) continue;
    if (k == 0) {
      std::uint32_t s;
      if (free_slots.empty()) {
        s = static_cast<std::uint32_t>(plan.width++);
      } else {
        std::pop_heap(free_slots.begin(), free_slots.end(), std::greater<>());
        s = free_slots.back();
        free_slots.pop_back();
      }
      plan.slot_of_page[x] = s;
      live.push_back(x);
    } else if (k + 1 == count) {
      free_slots.push_back(plan.slot_of_page[x]);
      std::push_heap(free_slots.begin(), free_slots.end(), std::greater<>());
      std::erase(live, x);
      continue;
    } else {
      continue;
    }
    // The live set only grows here; cheap exit before counting.
    if (live.size() < 63 && (std::size_t{1} << live.size()) <= budget) {
      continue;
    }
    sizes.clear();
    for (PageIndex p : live) sizes.push_back(instance.page(p).size);
    if (count_feasible_subsets(sizes, instance.capacity(), budget) > budget) {
      throw BudgetExceeded(
          "instance too large for exact solve: " +
          std::to_string(sizes.size()) + " live pages after position " +
          std::to_string(t) + " exceed the state budget of " +
          std::to_string(budget));
    }
  }
  return plan;
}

template <std::size_t Words>
SolveResult sweep(const Instance& instance, const SlotPlan& plan,
                  const SolveOptions& options) {
  using Mask = SlotMask<Words>;
  struct State {
    Mask mask;
    Amount value;
    Amount load;
  };
  // Per layer and state: parent index in the previous layer, with the top
  // bit recording whether the requested page stays cached.
  constexpr std::uint32_t kKeepBit = 0x80000000U;
  std::vector<std::vector<std::uint32_t>> back;
  const auto n = instance.num_requests();
  back.reserve(n);

  SolveResult result;
  std::vector<State> current{State{Mask{}, 0, 0}};
  std::vector<State> next;
  std::unordered_map<Mask, std::uint32_t, SlotMaskHash<Words>> index;
  const Amount cap = instance.capacity();
  const bool forced = instance.policy() == Policy::kForced;

  for (Position t = 0; t < n; ++t) {
    const PageIndex x = instance.requests()[t].page;
    const Page& page = instance.page(x);
    const auto k = instance.occurrence_index(t);
    const auto count = instance.occurrences(x).size();
    const bool was_live = k > 0;
    const bool stays_live = k + 1 < count;
    const std::uint32_t slot = plan.slot_of_page[x];

    next.clear();
    index.clear();
    std::vector<std::uint32_t> parents;
    auto offer = [&](const Mask& mask, Amount value, Amount load,
                     std::uint32_t parent) {
      ++result.explored.transitions;
      auto [it, inserted] =
          index.try_emplace(mask, static_cast<std::uint32_t>(next.size()));
      if (inserted) {
        next.push_back(State{mask, value, load});
        parents.push_back(parent);
        if (next.size() > options.budget) {
          throw BudgetExceeded(
              "instance too large for exact solve: layer at position " +
              std::to_string(t) + " exceeds the state budget of " +
              std::to_string(options.budget));
        }
      } else if (value > next[it->second].value) {
        next[it->second] = State{mask, value, load};
        parents[it->second] = parent;
      }
    };

    for (std::uint32_t i = 0; i < current.size(); ++i) {
      const State& s = current[i];
      const bool cached_before = was_live && s.mask.test(slot);
      Mask base = s.mask;
      Amount base_load = s.load;
      Amount value = s.value;
      if (cached_before) {
        base.reset(slot);
        base_load -= page.size;
        value += page.cost;
      }
      const bool fits_with_x = base_load + page.size <= cap;
      // Under the forced policy X is loaded at its request in any case.
      if (!forced || fits_with_x) offer(base, value, base_load, i);
      if (stays_live && fits_with_x) {
        Mask keep = base;
        keep.set(slot);
        offer(keep, value, base_load + page.size, i | kKeepBit);
      }
    }
    if (next.empty()) {
      throw InfeasibleInstance("no valid service: request at position " +
                               std::to_string(t) + " cannot be served");
    }
    result.explored.states += next.size();
    result.explored.max_layer = std::max(result.explored.max_layer, next.size());
    back.push_back(std::move(parents));
    current.swap(next);
  }

  // Every page is dead after the last request, so one state remains.
  result.optimal_savings = current.empty() ? 0 : current.front().value;
  std::vector<GapRef> chosen;
  std::uint32_t idx = 0;
  for (Position t = n; t-- > 0;) {
    const std::uint32_t entry = back[t][idx];
    if (entry & kKeepBit) {
      chosen.push_back(
          GapRef{instance.requests()[t].page, instance.occurrence_index(t)});
    }
    idx = entry & ~kKeepBit;
  }
  result.witness = Service(std::move(chosen));
  result.explored.slots = plan.width;
  return result;
}

}  // namespace internal

// Maximum-savings valid service by a sweep over positions. Exact; throws
// BudgetExceeded rather than returning an approximate answer.
inline SolveResult solve_exact(const Instance& instance,
                               const SolveOptions& options = {}) {
  if (!instance.servable()) {
    throw InfeasibleInstance("forced policy: a requested page is larger than "
                             "the cache");
  }
  const auto plan = internal::plan_slots(instance, options.budget);
  if (plan.width <= 64) return internal::sweep<1>(instance, plan, options);
  if (plan.width <= 128) return internal::sweep<2>(instance, plan, options);
  if (plan.width <= 256) return internal::sweep<4>(instance, plan, options);
  if (plan.width <= 512) return internal::sweep<8>(instance, plan, options);
  throw BudgetExceeded("instance too large for exact solve: " +
                       std::to_string(plan.width) +
                       " simultaneously live pages");
}

inline constexpr std::size_t kBruteForceMaxGaps = 24;

// Exhaustive oracle. Ties go to the lexicographically smallest gap list.
inline SolveResult solve_brute_force(const Instance& instance) {
  const auto gaps = enumerate_gaps(instance);
  if (gaps.size() > kBruteForceMaxGaps) {
    throw BudgetExceeded("brute force refuses " + std::to_string(gaps.size()) +
                         " gaps (limit " + std::to_string(kBruteForceMaxGaps) +
                         ")");
  }
  SolveResult best;
  bool found = false;
  const std::uint64_t subsets = std::uint64_t{1} << gaps.size();
  std::vector<GapRef> chosen;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    chosen.clear();
    Amount value = 0;
    for (std::size_t i = 0; i < gaps.size(); ++i) {
      if ((mask >> i) & 1U) {
        chosen.push_back(gaps[i].ref);
        value += instance.page(gaps[i].ref.page).cost;
      }
    }
    ++best.explored.transitions;
    if (found && value < best.optimal_savings) continue;
    Service candidate(chosen);
    if (found && value == best.optimal_savings &&
        !(candidate.gaps() < best.witness.gaps())) {
      continue;
    }
    if (!validate_service(instance, candidate).valid()) continue;
    ++best.explored.states;
    best.optimal_savings = value;
    best.witness = std::move(candidate);
    found = true;
  }
  if (!found) {
    throw InfeasibleInstance("no valid service exists");
  }
  return best;
}

// Covers the positions start..end-1. A gap [s, e] becomes [s, e): the load a
// cached page adds at its own request e is already present at e - 1, so the
// packing limit on integer positions matches the cache constraint exactly,
// and consecutive gaps of one page do not overlap.
struct Interval {
  Position start = 0;
  Position end = 0;  // exclusive
  Amount weight = 1;
  Amount value = 1;

  friend bool operator==(const Interval&, const Interval&) = default;
};

struct IntervalPackingInstance {
  Amount limit = 1;
  std::vector<Interval> intervals;
};

// One interval per gap, in enumerate_gaps order. Optional policy only.
// Weight is the page size, value its cost.
inline IntervalPackingInstance export_interval_packing(
    const Instance& instance) {
  if (instance.policy() != Policy::kOptional) {
    throw Unsupported("interval packing export requires the optional policy");
  }
  IntervalPackingInstance out;
  out.limit = instance.capacity();
  for (const Gap& g : enumerate_gaps(instance)) {
    const Page& p = instance.page(g.ref.page);
    out.intervals.push_back(Interval{g.start, g.end, p.size, p.cost});
  }
  return out;
}

inline void write_interval_packing(std::ostream& os,
                                   const IntervalPackingInstance& ip) {
  os << "interval-packing 1\n";
  os << "limit " << ip.limit << "\n";
  for (const Interval& iv : ip.intervals) {
    os << iv.start << ' ' << iv.end << ' ' << iv.weight << ' ' << iv.value
       << "\n";
  }
}

}  // namespace gencache

#endif  // GENCACHE_SOLVER_HPP_
