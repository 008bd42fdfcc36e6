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

// Line-based text formats.
//
// Instance:
//   caching-instance 1
//   cache <C>
//   policy optional|forced
//   scale <cost_scale>
//   pages <P>        then P lines  <id> <size> <cost>
//   blocks <d>       then d lines  <id> <kind> [<vertex>]
//   requests <R>     then R lines  <page-id> <block-id|->
//   roles <P>        optional; P lines
//                    <page-id> <role> <edge|-> <group|-> <vertex|->
// Block kinds are initial, final, phase and ins1..ins5.
//
// Service:  service 1, then lines <page-id> <ordinal>
// Graph:    <n> <m>, then m lines <u> <v> (0-based)

#ifndef GENCACHE_IO_HPP_
#define GENCACHE_IO_HPP_

#include <charconv>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gencache/core.hpp"
#include "gencache/errors.hpp"
#include "gencache/graph.hpp"
#include "gencache/reductions.hpp"

namespace gencache {

namespace internal {

class LineReader {
 public:
  explicit LineReader(std::istream& is) : is_(is) {}

  // Next non-blank line split on whitespace; empty at end of input.
  std::vector<std::string> next() {
    std::string line;
    while (std::getline(is_, line)) {
      ++line_no_;
      std::istringstream ss(line);
      std::vector<std::string> tokens;
      for (std::string tok; ss >> tok;) tokens.push_back(tok);
      if (!tokens.empty()) return tokens;
    }
    return {};
  }

  std::vector<std::string> expect(std::size_t min_tokens,
                                  std::size_t max_tokens,
                                  std::string_view what) {
    auto tokens = next();
    if (tokens.size() < min_tokens || tokens.size() > max_tokens) {
      fail("expected " + std::string(what));
    }
    return tokens;
  }

  // `<keyword> <value>` header line.
  std::string keyword(std::string_view key) {
    auto tokens = expect(2, 2, std::string(key) + " line");
    if (tokens[0] != key) fail("expected '" + std::string(key) + "'");
    return tokens[1];
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("line " + std::to_string(line_no_) + ": " + msg);
  }

  std::int64_t integer(const std::string& tok) const {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      fail("not an integer: '" + tok + "'");
    }
    return v;
  }

  std::int64_t non_negative(const std::string& tok) const {
    const auto v = integer(tok);
    if (v < 0) fail("negative value: '" + tok + "'");
    return v;
  }

 private:
  std::istream& is_;
  std::size_t line_no_ = 0;
};

inline std::string block_kind_token(const Block& b) {
  switch (b.kind) {
    case BlockKind::kInitial: return "initial";
    case BlockKind::kFinal: return "final";
    case BlockKind::kPhase: return "phase";
    case BlockKind::kInserted: return "ins" + std::to_string(b.slot);
  }
  return "?";
}

template <class T>
std::string opt_token(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string("-");
}

}  // namespace internal

inline void write_instance(std::ostream& os, const Instance& inst,
                           const std::vector<PageRole>* roles = nullptr) {
  os << "caching-instance 1\n";
  os << "cache " << inst.capacity() << "\n";
  os << "policy "
     << (inst.policy() == Policy::kForced ? "forced" : "optional") << "\n";
  os << "scale " << inst.cost_scale() << "\n";
  os << "pages " << inst.num_pages() << "\n";
  for (const Page& p : inst.pages()) {
    os << p.id << ' ' << p.size << ' ' << p.cost << "\n";
  }
  os << "blocks " << inst.blocks().size() << "\n";
  for (std::size_t b = 0; b < inst.blocks().size(); ++b) {
    const Block& blk = inst.blocks()[b];
    os << b << ' ' << internal::block_kind_token(blk);
    if (blk.vertex) os << ' ' << *blk.vertex;
    os << "\n";
  }
  os << "requests " << inst.num_requests() << "\n";
  for (const Request& r : inst.requests()) {
    os << inst.page(r.page).id << ' ' << internal::opt_token(r.block) << "\n";
  }
  if (roles != nullptr) {
    os << "roles " << roles->size() << "\n";
    for (std::size_t p = 0; p < roles->size(); ++p) {
      const PageRole& pr = (*roles)[p];
      os << inst.page(static_cast<PageIndex>(p)).id << ' '
         << to_string(pr.role) << ' ' << internal::opt_token(pr.edge) << ' '
         << internal::opt_token(pr.group) << ' '
         << internal::opt_token(pr.vertex) << "\n";
    }
  }
}

inline std::string to_text(const Instance& inst,
                           const std::vector<PageRole>* roles = nullptr) {
  std::ostringstream os;
  write_instance(os, inst, roles);
  return os.str();
}

struct ParsedInstance {
  Instance instance;
  std::optional<std::vector<PageRole>> roles;
};

inline ParsedInstance read_instance(std::istream& is) {
  internal::LineReader in(is);
  auto header = in.expect(2, 2, "header");
  if (header[0] != "caching-instance" || header[1] != "1") {
    in.fail("expected 'caching-instance 1'");
  }
  InstanceData data;
  data.capacity = in.integer(in.keyword("cache"));
  const std::string policy = in.keyword("policy");
  if (policy == "optional") {
    data.policy = Policy::kOptional;
  } else if (policy == "forced") {
    data.policy = Policy::kForced;
  } else {
    in.fail("unknown policy '" + policy + "'");
  }
  data.cost_scale = in.integer(in.keyword("scale"));

  const auto num_pages = in.non_negative(in.keyword("pages"));
  std::unordered_map<std::string, PageIndex> ids;
  for (std::int64_t i = 0; i < num_pages; ++i) {
    auto tok = in.expect(3, 3, "<id> <size> <cost>");
    ids.emplace(tok[0], static_cast<PageIndex>(i));
    data.pages.push_back(Page{tok[0], in.integer(tok[1]), in.integer(tok[2])});
  }

  const auto num_blocks = in.non_negative(in.keyword("blocks"));
  for (std::int64_t b = 0; b < num_blocks; ++b) {
    auto tok = in.expect(2, 3, "<id> <kind> [<vertex>]");
    if (in.integer(tok[0]) != b) in.fail("block ids must be 0..d-1 in order");
    Block blk;
    const std::string& kind = tok[1];
    if (kind == "initial") {
      blk.kind = BlockKind::kInitial;
    } else if (kind == "final") {
      blk.kind = BlockKind::kFinal;
    } else if (kind == "phase") {
      blk.kind = BlockKind::kPhase;
    } else if (kind.size() == 4 && kind.starts_with("ins") &&
               kind[3] >= '1' && kind[3] <= '5') {
      blk.kind = BlockKind::kInserted;
      blk.slot = kind[3] - '0';
    } else {
      in.fail("unknown block kind '" + kind + "'");
    }
    if (tok.size() == 3) {
      blk.vertex = static_cast<std::uint32_t>(in.non_negative(tok[2]));
    }
    data.blocks.push_back(blk);
  }

  const auto num_requests = in.non_negative(in.keyword("requests"));
  for (std::int64_t t = 0; t < num_requests; ++t) {
    auto tok = in.expect(2, 2, "<page-id> <block-id|->");
    auto it = ids.find(tok[0]);
    if (it == ids.end()) in.fail("request to unknown page '" + tok[0] + "'");
    Request r{it->second, std::nullopt};
    if (tok[1] != "-") {
      r.block = static_cast<BlockIndex>(in.non_negative(tok[1]));
    }
    data.requests.push_back(r);
  }

  std::optional<std::vector<PageRole>> roles;
  auto tail = in.next();
  if (!tail.empty()) {
    if (tail.size() != 2 || tail[0] != "roles") in.fail("expected 'roles'");
    const auto count = in.non_negative(tail[1]);
    if (count != num_pages) in.fail("roles must list every page");
    roles.emplace(static_cast<std::size_t>(count));
    auto opt = [&](const std::string& t) -> std::optional<std::uint32_t> {
      if (t == "-") return std::nullopt;
      return static_cast<std::uint32_t>(in.non_negative(t));
    };
    for (std::int64_t i = 0; i < count; ++i) {
      auto tok = in.expect(5, 5, "<page-id> <role> <edge> <group> <vertex>");
      auto it = ids.find(tok[0]);
      if (it == ids.end()) in.fail("role for unknown page '" + tok[0] + "'");
      auto role = parse_role(tok[1]);
      if (!role) in.fail("unknown role '" + tok[1] + "'");
      (*roles)[it->second] = PageRole{*role, opt(tok[2]), opt(tok[3]), opt(tok[4])};
    }
    if (!in.next().empty()) in.fail("trailing content");
  }
  return ParsedInstance{Instance(std::move(data)), std::move(roles)};
}

inline ParsedInstance instance_from_text(const std::string& text) {
  std::istringstream is(text);
  return read_instance(is);
}

inline void write_service(std::ostream& os, const Instance& inst,
                          const Service& service) {
  check_references(inst, service);
  os << "service 1\n";
  for (const GapRef& g : service.gaps()) {
    os << inst.page(g.page).id << ' ' << g.ordinal << "\n";
  }
}

inline Service read_service(std::istream& is, const Instance& inst) {
  internal::LineReader in(is);
  auto header = in.expect(2, 2, "header");
  if (header[0] != "service" || header[1] != "1") in.fail("expected 'service 1'");
  std::vector<GapRef> gaps;
  for (auto tok = in.next(); !tok.empty(); tok = in.next()) {
    if (tok.size() != 2) in.fail("expected <page-id> <ordinal>");
    auto page = inst.find_page(tok[0]);
    if (!page) throw StructuralError("service references unknown page '" + tok[0] + "'");
    const GapRef g{*page, static_cast<std::uint32_t>(in.non_negative(tok[1]))};
    if (!inst.has_gap(g)) {
      throw StructuralError("service references unknown gap " + tok[0] + " " +
                            tok[1]);
    }
    gaps.push_back(g);
  }
  return Service(std::move(gaps));
}

inline void write_graph(std::ostream& os, const Graph& g) {
  os << g.n() << ' ' << g.m() << "\n";
  for (const Edge& e : g.edges()) os << e.u << ' ' << e.v << "\n";
}

inline Graph read_graph(std::istream& is) {
  internal::LineReader in(is);
  auto head = in.expect(2, 2, "<n> <m>");
  const auto n = in.non_negative(head[0]);
  const auto m = in.non_negative(head[1]);
  std::vector<Edge> edges;
  for (std::int64_t i = 0; i < m; ++i) {
    auto tok = in.expect(2, 2, "<u> <v>");
    edges.push_back(Edge{static_cast<Vertex>(in.non_negative(tok[0])),
                         static_cast<Vertex>(in.non_negative(tok[1]))});
  }
  if (!in.next().empty()) in.fail("trailing content after edge list");
  return Graph(static_cast<std::uint32_t>(n), std::move(edges));
}

inline Graph graph_from_text(const std::string& text) {
  std::istringstream is(text);
  return read_graph(is);
}

}  // namespace gencache

#endif  // GENCACHE_IO_HPP_
