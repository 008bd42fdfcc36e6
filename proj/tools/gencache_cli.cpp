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

// gencache: command-line front end.

#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gencache/gencache.hpp"

namespace {

using namespace gencache;

struct Common {
  std::string graph_file;
  std::string corpus_id;
  std::string model = "fault";
  std::string policy = "optional";
  std::optional<Amount> H;
  std::size_t budget = SolveOptions{}.budget;
  std::string out;
};

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw InvalidArgument("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  return in;
}

Policy parse_policy(const std::string& s) {
  if (s == "optional") return Policy::kOptional;
  if (s == "forced") return Policy::kForced;
  throw InvalidArgument("unknown policy '" + s + "'");
}

std::pair<std::string, Graph> load_graph(const Common& c) {
  if (!c.graph_file.empty() && !c.corpus_id.empty()) {
    throw InvalidArgument("give either --graph or --corpus-graph, not both");
  }
  if (!c.corpus_id.empty()) {
    auto cg = find_corpus_graph(c.corpus_id);
    if (!cg) throw InvalidArgument("unknown corpus graph '" + c.corpus_id + "'");
    return {cg->id, cg->graph};
  }
  if (c.graph_file.empty()) {
    throw InvalidArgument("a graph is required (--graph or --corpus-graph)");
  }
  auto in = open_input(c.graph_file);
  return {c.graph_file, read_graph(in)};
}

ReductionOutput load_reduction(const Common& c) {
  const Model model = parse_model(c.model);
  std::optional<Amount> H = c.H;
  if (model == Model::kSimple) H.reset();
  return reduce(load_graph(c).second, model, H);
}

Service load_service(const std::string& path, const Instance& inst) {
  auto in = open_input(path);
  return read_service(in, inst);
}

std::vector<Vertex> parse_vertices(const std::string& s) {
  std::vector<Vertex> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    const unsigned long v = std::stoul(tok, &used);
    if (used != tok.size()) throw InvalidArgument("bad vertex '" + tok + "'");
    out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

void print_vertices(std::ostream& os, const std::vector<Vertex>& w) {
  os << "K " << w.size() << "\nvertices";
  for (Vertex v : w) os << ' ' << v;
  os << "\n";
}

void add_graph_options(CLI::App* sub, Common& c) {
  sub->add_option("--graph", c.graph_file, "Graph file: '<n> <m>' then m edges");
  sub->add_option("--corpus-graph", c.corpus_id,
                  "Built-in graph: K2 P3 K3 P4 K1_3 C4 C5 K4");
}

void add_model_options(CLI::App* sub, Common& c) {
  sub->add_option("--model", c.model, "fault | bit | simple")
      ->check(CLI::IsMember({"fault", "bit", "simple"}));
  sub->add_option("--H", c.H, "Groups per edge (fault/bit; default 6mn+3n+1)")
      ->check(CLI::PositiveNumber);
}

void add_policy_option(CLI::App* sub, Common& c) {
  sub->add_option("--policy", c.policy, "optional | forced")
      ->check(CLI::IsMember({"optional", "forced"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"General caching: reductions, exact solvers and checks"};
  app.require_subcommand(1);
  Common c;
  std::string instance_file, service_file, vertices;
  bool brute = false, no_timing = false, csv = false;
  std::vector<std::string> models;
  std::function<int()> action;

  auto* gen = app.add_subcommand("gen", "Generate a reduction instance");
  add_graph_options(gen, c);
  add_model_options(gen, c);
  add_policy_option(gen, c);
  gen->add_option("--out", c.out, "Output file");
  gen->callback([&] {
    action = [&] {
      const ReductionOutput r = load_reduction(c);
      Output out(c.out);
      if (parse_policy(c.policy) == Policy::kForced) {
        write_instance(out.stream(), optional_to_forced(r));
      } else {
        write_instance(out.stream(), r.instance, &r.page_roles);
      }
      return 0;
    };
  });

  auto* solve = app.add_subcommand("solve", "Exact optimum of an instance");
  solve->add_option("--instance", instance_file, "Instance file")->required();
  solve->add_option("--budget", c.budget, "State budget per layer");
  solve->add_flag("--brute-force", brute, "Use the exhaustive oracle");
  solve->add_option("--out", c.out, "Write the optimal service here");
  solve->callback([&] {
    action = [&] {
      auto in = open_input(instance_file);
      const ParsedInstance p = read_instance(in);
      const SolveResult r = brute ? solve_brute_force(p.instance)
                                  : solve_exact(p.instance, SolveOptions{c.budget});
      std::cout << "optimal " << r.optimal_savings << "\n";
      if (!c.out.empty()) {
        Output out(c.out);
        write_service(out.stream(), p.instance, r.witness);
      } else {
        write_service(std::cout, p.instance, r.witness);
      }
      return 0;
    };
  });

  auto* verify = app.add_subcommand("verify-properties",
                                    "Check structural properties (a)-(f)");
  add_graph_options(verify, c);
  add_model_options(verify, c);
  verify->add_option("--out", c.out, "Output file");
  verify->callback([&] {
    action = [&] {
      const PropertyReport rep = check_properties(load_reduction(c));
      Output out(c.out);
      write_property_report(out.stream(), rep);
      return rep.all_passed() ? 0 : 1;
    };
  });

  auto* construct = app.add_subcommand(
      "construct", "Service for an independent set (default: a maximum one)");
  add_graph_options(construct, c);
  add_model_options(construct, c);
  construct->add_option("--is", vertices, "Comma-separated vertices");
  construct->add_option("--out", c.out, "Output file");
  construct->callback([&] {
    action = [&] {
      const ReductionOutput r = load_reduction(c);
      const auto W = construct->count("--is") > 0
                         ? parse_vertices(vertices)
                         : max_independent_set(r.graph).vertices;
      const Service s = construct_service_from_is(r, W);
      std::cerr << "savings " << savings(r.instance, s) << " threshold "
                << r.threshold(static_cast<Amount>(W.size())) << "\n";
      Output out(c.out);
      write_service(out.stream(), r.instance, s);
      return 0;
    };
  });

  auto* extract = app.add_subcommand("extract",
                                     "Vertex set encoded by a service");
  add_graph_options(extract, c);
  add_model_options(extract, c);
  extract->add_option("--service", service_file, "Service file")->required();
  extract->add_option("--out", c.out, "Output file");
  extract->callback([&] {
    action = [&] {
      const ReductionOutput r = load_reduction(c);
      const Service s = load_service(service_file, r.instance);
      if (!validate_service(r.instance, s).valid()) {
        throw InvalidService("service violates the cache constraints");
      }
      Output out(c.out);
      print_vertices(out.stream(), extract_is(r, s));
      return 0;
    };
  });

  auto* diagnose = app.add_subcommand("diagnose", "Per-block diagnostics CSV");
  add_graph_options(diagnose, c);
  add_model_options(diagnose, c);
  diagnose->add_option("--service", service_file,
                       "Service file (default: constructed from a maximum "
                       "independent set)");
  diagnose->add_option("--out", c.out, "Output file");
  diagnose->callback([&] {
    action = [&] {
      const ReductionOutput r = load_reduction(c);
      const Service s =
          service_file.empty()
              ? construct_service_from_is(r, max_independent_set(r.graph).vertices)
              : load_service(service_file, r.instance);
      if (!validate_service(r.instance, s).valid()) {
        throw InvalidService("service violates the cache constraints");
      }
      Output out(c.out);
      write_diagnostics_csv(out.stream(), diagnostics(r, s));
      return 0;
    };
  });

  auto* oracle = app.add_subcommand("oracle-is", "Maximum independent set");
  add_graph_options(oracle, c);
  oracle->add_option("--out", c.out, "Output file");
  oracle->callback([&] {
    action = [&] {
      Output out(c.out);
      print_vertices(out.stream(), max_independent_set(load_graph(c).second).vertices);
      return 0;
    };
  });

  auto* rt = app.add_subcommand("roundtrip",
                                "Reduce, solve and compare with the oracle");
  add_graph_options(rt, c);
  add_model_options(rt, c);
  add_policy_option(rt, c);
  rt->add_option("--budget", c.budget, "State budget per layer");
  rt->add_flag("--no-timing", no_timing, "Report 0 seconds");
  rt->add_flag("--csv", csv, "CSV instead of a table");
  rt->add_option("--out", c.out, "Output file");
  rt->callback([&] {
    action = [&] {
      auto [id, g] = load_graph(c);
      const Model model = parse_model(c.model);
      RoundTripOptions o;
      o.H = model == Model::kSimple ? std::nullopt : c.H;
      o.policy = parse_policy(c.policy);
      o.budget = c.budget;
      o.timing = !no_timing;
      CorpusReport rep;
      rep.rows.push_back(round_trip(id, g, model, o));
      Output out(c.out);
      if (csv) {
        write_corpus_csv(out.stream(), rep);
      } else {
        write_corpus_table(out.stream(), rep);
      }
      return rep.ok() ? 0 : 1;
    };
  });

  auto* corpus = app.add_subcommand("corpus", "Round trip over the built-in corpus");
  corpus->add_option("--models", models, "Models to run (default: simple)")
      ->check(CLI::IsMember({"fault", "bit", "simple"}));
  add_policy_option(corpus, c);
  corpus->add_option("--H", c.H, "Groups per edge for fault/bit")
      ->check(CLI::PositiveNumber);
  corpus->add_option("--budget", c.budget, "State budget per layer");
  corpus->add_flag("--no-timing", no_timing, "Report 0 seconds");
  corpus->add_option("--out", c.out, "CSV output file (table goes to stdout)");
  corpus->callback([&] {
    action = [&] {
      std::vector<Model> ms;
      for (const auto& m : models) ms.push_back(parse_model(m));
      if (ms.empty()) ms.push_back(Model::kSimple);
      RoundTripOptions o;
      o.H = c.H;
      o.policy = parse_policy(c.policy);
      o.budget = c.budget;
      o.timing = !no_timing;
      const CorpusReport rep = run_corpus(builtin_corpus(), ms, o);
      write_corpus_table(std::cout, rep);
      if (!c.out.empty()) {
        Output out(c.out);
        write_corpus_csv(out.stream(), rep);
      }
      return rep.ok() ? 0 : 1;
    };
  });

  auto* intervals = app.add_subcommand(
      "export-intervals", "Interval-packing form of an optional instance");
  intervals->add_option("--instance", instance_file, "Instance file")->required();
  intervals->add_option("--out", c.out, "Output file");
  intervals->callback([&] {
    action = [&] {
      auto in = open_input(instance_file);
      const ParsedInstance p = read_instance(in);
      Output out(c.out);
      write_interval_packing(out.stream(), export_interval_packing(p.instance));
      return 0;
    };
  });

  CLI11_PARSE(app, argc, argv);
  try {
    return action ? action() : 0;
  } catch (const gencache::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
