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

#ifndef GENCACHE_GRAPH_HPP_
#define GENCACHE_GRAPH_HPP_

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gencache/errors.hpp"

namespace gencache {

using Vertex = std::uint32_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  bool touches(Vertex x) const { return u == x || v == x; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Simple undirected graph; the edge order is part of its identity.
class Graph {
 public:
  Graph() = default;
  Graph(std::uint32_t n, std::vector<Edge> edges)
      : n_(n), edges_(std::move(edges)) {
    std::set<std::pair<Vertex, Vertex>> seen;
    for (const Edge& e : edges_) {
      if (e.u >= n_ || e.v >= n_) {
        throw InvalidInstance("edge endpoint out of range: " +
                              std::to_string(e.u) + " " + std::to_string(e.v));
      }
      if (e.u == e.v) {
        throw InvalidInstance("self-loop on vertex " + std::to_string(e.u));
      }
      if (!seen.emplace(std::minmax(e.u, e.v)).second) {
        throw InvalidInstance("duplicate edge " + std::to_string(e.u) + " " +
                              std::to_string(e.v));
      }
    }
  }

  std::uint32_t n() const { return n_; }
  std::uint32_t m() const { return static_cast<std::uint32_t>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::uint32_t i) const { return edges_.at(i); }

  bool adjacent(Vertex a, Vertex b) const {
    return std::any_of(edges_.begin(), edges_.end(), [&](const Edge& e) {
      return (e.u == a && e.v == b) || (e.u == b && e.v == a);
    });
  }

  bool is_independent(const std::vector<Vertex>& set) const {
    for (Vertex x : set) {
      if (x >= n_) return false;
    }
    return std::none_of(edges_.begin(), edges_.end(), [&](const Edge& e) {
      return std::find(set.begin(), set.end(), e.u) != set.end() &&
             std::find(set.begin(), set.end(), e.v) != set.end();
    });
  }

 private:
  std::uint32_t n_ = 0;
  std::vector<Edge> edges_;
};

}  // namespace gencache

#endif  // GENCACHE_GRAPH_HPP_
