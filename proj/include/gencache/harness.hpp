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

// Independent-set oracle, built-in graph corpus and the round trip
// graph -> caching instance -> exact optimum -> independent set size.

#ifndef GENCACHE_HARNESS_HPP_
#define GENCACHE_HARNESS_HPP_

#include <bit>
#include <chrono>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gencache/core.hpp"
#include "gencache/errors.hpp"
#include "gencache/graph.hpp"
#include "gencache/properties.hpp"
#include "gencache/reductions.hpp"
#include "gencache/solver.hpp"

namespace gencache {

inline constexpr std::uint32_t kMisMaxVertices = 24;

struct IndependentSet {
  std::size_t size = 0;
  std::vector<Vertex> vertices;  // sorted
};

namespace internal {

class MisSearch {
 public:
  explicit MisSearch(const Graph& g) : n_(g.n()), adj_(g.n(), 0) {
    for (const Edge& e : g.edges()) {
      adj_[e.u] |= 1U << e.v;
      adj_[e.v] |= 1U << e.u;
    }
  }

  std::uint32_t run() {
    search(0, 0, n_ == 0 ? 0 : (n_ == 32 ? ~0U : (1U << n_) - 1));
    return best_set_;
  }

 private:
  // Include-first over vertices in index order, replacing the incumbent only
  // on strict improvement: the first maximum found is the lexicographically
  // smallest one.
  void search(std::uint32_t chosen, std::size_t size, std::uint32_t cand) {
    if (cand == 0) {
      if (size > best_size_ || !found_) {
        best_size_ = size;
        best_set_ = chosen;
        found_ = true;
      }
      return;
    }
    if (found_ && size + static_cast<std::size_t>(std::popcount(cand)) <=
                      best_size_) {
      return;
    }
    const int v = std::countr_zero(cand);
    const std::uint32_t bit = 1U << v;
    search(chosen | bit, size + 1, cand & ~bit & ~adj_[v]);
    search(chosen, size, cand & ~bit);
  }

  std::uint32_t n_;
  std::vector<std::uint32_t> adj_;
  std::size_t best_size_ = 0;
  std::uint32_t best_set_ = 0;
  bool found_ = false;
};

}  // namespace internal

inline IndependentSet max_independent_set(const Graph& g) {
  if (g.n() > kMisMaxVertices) {
    throw BudgetExceeded("independent-set oracle refuses " +
                         std::to_string(g.n()) + " vertices (limit " +
                         std::to_string(kMisMaxVertices) + ")");
  }
  const std::uint32_t mask = internal::MisSearch(g).run();
  IndependentSet out;
  for (Vertex v = 0; v < g.n(); ++v) {
    if ((mask >> v) & 1U) out.vertices.push_back(v);
  }
  out.size = out.vertices.size();
  return out;
}

struct CorpusGraph {
  std::string id;
  Graph graph;
};

// K2, P3, K3, P4, the star K1,3, C4, C5 and K4, in that order.
inline std::vector<CorpusGraph> builtin_corpus() {
  return {
      {"K2", Graph(2, {{0, 1}})},
      {"P3", Graph(3, {{0, 1}, {1, 2}})},
      {"K3", Graph(3, {{0, 1}, {0, 2}, {1, 2}})},
      {"P4", Graph(4, {{0, 1}, {1, 2}, {2, 3}})},
      {"K1_3", Graph(4, {{0, 1}, {0, 2}, {0, 3}})},
      {"C4", Graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}})},
      {"C5", Graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}})},
      {"K4", Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})},
  };
}

inline std::optional<CorpusGraph> find_corpus_graph(const std::string& id) {
  for (auto& cg : builtin_corpus()) {
    if (cg.id == id) return cg;
  }
  return std::nullopt;
}

enum class Verdict { kPass, kFail, kEasyDirectionOnly };

inline constexpr std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kEasyDirectionOnly: return "easy-direction-only";
  }
  return "?";
}

struct RoundTripOptions {
  std::optional<Amount> H;  // fault/bit only; default_H when unset
  Policy policy = Policy::kOptional;
  std::size_t budget = 1'000'000;
  bool timing = true;  // false: seconds reported as 0
};

struct RoundTripReport {
  std::string graph_id;
  Model model = Model::kSimple;
  Policy policy = Policy::kOptional;
  Amount H = 1;
  Amount d = 0;
  Amount C = 0;  // capacity of the solved instance
  std::optional<Amount> optimal_savings;
  std::optional<Amount> K_from_caching;
  std::size_t K_oracle = 0;
  Verdict verdict = Verdict::kFail;
  std::string detail;
  double seconds = 0.0;
};

namespace internal {

inline void run_round_trip(const Graph& g, Model model,
                           const RoundTripOptions& options,
                           RoundTripReport& rep) {
  if (model == Model::kSimple && options.H && *options.H != 1) {
    throw InvalidArgument("the simple model has H = 1");
  }
  const ReductionOutput out = reduce(g, model, options.H);
  rep.H = out.H;
  rep.d = out.d;

  const PropertyReport props = check_properties(out);
  if (!props.all_passed()) {
    const auto bad = props.failed();
    rep.detail = std::string("property (") + bad.front() + ") failed: " +
                 props[bad.front()].witness;
    return;
  }

  const IndependentSet mis = max_independent_set(g);
  rep.K_oracle = mis.size;
  const auto K = static_cast<Amount>(mis.size);

  const Instance inst = options.policy == Policy::kForced
                            ? optional_to_forced(out)
                            : out.instance;
  rep.C = inst.capacity();

  SolveResult solved;
  try {
    solved = solve_exact(inst, SolveOptions{options.budget});
  } catch (const BudgetExceeded& e) {
    const Service s = construct_service_from_is(out, mis.vertices);
    const ValidationReport v = validate_service(out.instance, s);
    const Amount got = v.valid() ? savings(out.instance, s) : -1;
    if (v.valid() && got == out.threshold(K)) {
      rep.verdict = Verdict::kEasyDirectionOnly;
      rep.detail = std::string("exact solve skipped: ") + e.what();
    } else {
      rep.detail = "constructed service does not reach threshold(K_oracle)";
    }
    return;
  }

  const Amount opt = solved.optimal_savings;
  rep.optimal_savings = opt;
  if (!validate_service(inst, solved.witness).valid() ||
      savings(inst, solved.witness) != opt) {
    rep.detail = "solver witness does not certify the optimum";
    return;
  }
  if (opt >= out.threshold(0)) {
    rep.K_from_caching =
        std::min<Amount>(static_cast<Amount>(g.n()), opt - out.threshold(0));
  }

  if (model == Model::kSimple) {
    if (rep.K_from_caching != K) {
      rep.detail = "optimum does not encode the maximum independent set";
      return;
    }
    // Original pages keep their indices and gap ordinals under the forced
    // transform, so the witness restricts to the reduction instance.
    std::vector<GapRef> original;
    for (const GapRef& r : solved.witness.gaps()) {
      if (r.page < out.instance.num_pages()) original.push_back(r);
    }
    const auto W = extract_is(out, Service(std::move(original)));
    if (!g.is_independent(W) || static_cast<Amount>(W.size()) != K) {
      rep.detail = "witness does not yield an independent set of size K";
      return;
    }
    rep.verdict = Verdict::kPass;
    return;
  }

  // Fault and bit below the proven H: sandwich only.
  const Amount upper = out.threshold(static_cast<Amount>(g.n()));
  if (opt < out.threshold(K) || opt > upper) {
    rep.detail = "optimum outside [threshold(K_oracle), threshold(n)]";
    return;
  }
  rep.verdict = Verdict::kPass;
}

}  // namespace internal

// Reduction, property check, exact solve and comparison with the oracle.
// With model simple the decoded K must equal the oracle's; with fault and bit
// the optimum must lie between threshold(K_oracle) and threshold(n). When the
// solve exceeds the budget, the row falls back to the constructed service.
inline RoundTripReport round_trip(const std::string& graph_id, const Graph& g,
                                  Model model,
                                  const RoundTripOptions& options = {}) {
  RoundTripReport rep;
  rep.graph_id = graph_id;
  rep.model = model;
  rep.policy = options.policy;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    internal::run_round_trip(g, model, options, rep);
  } catch (const Error& e) {
    rep.verdict = Verdict::kFail;
    rep.detail = e.what();
  }
  if (options.timing) {
    rep.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  }
  return rep;
}

struct CorpusReport {
  std::vector<RoundTripReport> rows;

  bool ok() const {
    for (const auto& r : rows) {
      if (r.verdict == Verdict::kFail) return false;
    }
    return true;
  }
};

// Rows are ordered by corpus position, then by the order of `models`.
inline CorpusReport run_corpus(const std::vector<CorpusGraph>& corpus,
                               const std::vector<Model>& models,
                               const RoundTripOptions& options = {}) {
  CorpusReport report;
  for (const CorpusGraph& cg : corpus) {
    for (Model m : models) {
      RoundTripOptions o = options;
      if (m == Model::kSimple) o.H.reset();
      report.rows.push_back(round_trip(cg.id, cg.graph, m, o));
    }
  }
  return report;
}

namespace internal {

inline std::string model_label(const RoundTripReport& r) {
  std::string s(to_string(r.model));
  if (r.policy == Policy::kForced) s += "-forced";
  return s;
}

template <class T>
std::string or_dash(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string("-");
}

inline std::string format_seconds(double s) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << s;
  return os.str();
}

}  // namespace internal

inline void write_corpus_csv(std::ostream& os, const CorpusReport& report) {
  os << "graph,model,H,C,d,optimal,K_caching,K_oracle,verdict,seconds\n";
  for (const auto& r : report.rows) {
    os << r.graph_id << ',' << internal::model_label(r) << ',' << r.H << ','
       << r.C << ',' << r.d << ',' << internal::or_dash(r.optimal_savings)
       << ',' << internal::or_dash(r.K_from_caching) << ',' << r.K_oracle
       << ',' << to_string(r.verdict) << ','
       << internal::format_seconds(r.seconds) << "\n";
  }
}

inline void write_corpus_table(std::ostream& os, const CorpusReport& report) {
  const auto row = [&](const std::vector<std::string>& cells) {
    static constexpr int kWidths[] = {6, 14, 5, 5, 6, 9, 9, 8, 20, 8};
    for (std::size_t i = 0; i < cells.size(); ++i) {
      os << std::left << std::setw(kWidths[i]) << cells[i];
    }
    os << "\n";
  };
  row({"graph", "model", "H", "C", "d", "optimal", "K_cache", "K_orac",
       "verdict", "seconds"});
  for (const auto& r : report.rows) {
    row({r.graph_id, internal::model_label(r), std::to_string(r.H),
         std::to_string(r.C), std::to_string(r.d),
         internal::or_dash(r.optimal_savings),
         internal::or_dash(r.K_from_caching), std::to_string(r.K_oracle),
         std::string(to_string(r.verdict)),
         internal::format_seconds(r.seconds)});
    if (r.verdict == Verdict::kFail && !r.detail.empty()) {
      os << "  ! " << r.detail << "\n";
    }
  }
}

}  // namespace gencache

#endif  // GENCACHE_HARNESS_HPP_
