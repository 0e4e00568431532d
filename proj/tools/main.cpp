#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vigl/apsp.hpp"
#include "vigl/block.hpp"
#include "vigl/cycles.hpp"
#include "vigl/errors.hpp"
#include "vigl/gf.hpp"
#include "vigl/graph.hpp"
#include "vigl/matching.hpp"
#include "vigl/results.hpp"
#include "vigl/rng.hpp"
#include "vigl/separator.hpp"
#include "vigl/subgraph4.hpp"
#include "vigl/suites.hpp"

using namespace vigl;

namespace {

enum Exit { kOk = 0, kNo = 1, kInput = 2, kProbabilistic = 3, kInternal = 4 };

struct Config {
  std::string graph;
  std::string sep;
  bool auto_sep = false;
  std::int64_t budget = 6;
  std::uint64_t seed = 1;
  double fail_prob = 0.05;
  int trials = 3;
  std::string out;
  std::string kernel = "naive";
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw InputError("cannot write output file: " + path);
  }
  std::ostream& operator*() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void check_probability(double p) {
  if (!(p > 0 && p < 1)) throw InputError("--fail-prob must lie in (0, 1)");
}

MinPlusKernel parse_kernel(const std::string& name) {
  if (name == "naive") return MinPlusKernel::naive;
  if (name == "bd") return MinPlusKernel::bounded_difference;
  throw InputError("unknown kernel '" + name + "' (expected naive or bd)");
}

// --sep file, or the exact search with a small budget falling back to the
// greedy separator. The chosen k goes to stderr.
SeparatorDecomposition decomposition_for(const Graph& g, const Config& c) {
  if (!c.sep.empty()) {
    const SeparatorFile f = load_separator(c.sep);
    if (const auto why = separator_violation(g, f.separator, f.k))
      throw InputError("invalid separator: " + *why);
    return build_decomposition(g, f.separator, f.k);
  }
  if (!c.auto_sep) throw InputError("either --sep <file> or --auto-sep is required");
  std::optional<IntegrityWitness> w = exact_vertex_integrity(g, c.budget);
  const char* how = "exact";
  if (!w) {
    w = greedy_separator(g);
    how = "greedy";
  }
  std::cerr << "separator: k = " << w->iota << " (" << how << ", |S| = " << w->separator.size() << ")\n";
  return build_decomposition(g, w->separator, w->iota);
}

void print_cycle(std::ostream& out, const CycleReport& r) {
  out << r.length << "\n";
  for (std::size_t i = 0; i < r.vertices.size(); ++i) out << (i ? " " : "") << r.vertices[i];
  out << "\n";
}

void add_graph_options(CLI::App* cmd, Config& c) {
  cmd->add_option("graph", c.graph, "graph file")->required();
  cmd->add_option("--sep", c.sep, "separator file");
  cmd->add_flag("--auto-sep", c.auto_sep, "compute a separator");
  cmd->add_option("--budget", c.budget, "largest k tried by the exact separator search");
  cmd->add_option("--seed", c.seed, "random seed");
  cmd->add_option("--out", c.out, "output file (default stdout)");
}

// One benchmark measurement; returns the result column.
std::string bench_once(const std::string& command, const Graph& g, const SeparatorDecomposition& d,
                       const Config& c) {
  if (command == "girth") {
    const auto r = girth(g, d);
    return r ? std::to_string(r->length) : "none";
  }
  if (command == "even-girth") {
    const auto r = even_girth(g, d);
    return r ? std::to_string(r->length) : "none";
  }
  if (command == "square") {
    std::int64_t total = 0;
    for (auto x : square_on_edges(g, d)) total += x;
    return std::to_string(total);
  }
  if (command == "apsp") {
    ApspOptions opt;
    opt.kernel = parse_kernel(c.kernel);
    const auto dist = apsp(g, d, opt);
    std::int32_t diameter = 0;
    for (std::size_t u = 0; u < dist.n(); ++u)
      for (std::size_t v = 0; v < dist.n(); ++v)
        if (dist.reachable(u, v)) diameter = std::max(diameter, dist.at(u, v));
    return std::to_string(diameter);
  }
  if (command == "matching") {
    MatchingOptions opt;
    opt.seed = c.seed;
    return std::to_string(max_matching(g, d, opt).size());
  }
  if (command == "cycle") {
    CycleSearchOptions opt;
    opt.seed = c.seed;
    opt.failure_prob = c.fail_prob;
    return find_cycle_of_length(g, d, 5, opt) ? "found" : "none";
  }
  throw InputError("unknown bench command '" + command + "'");
}

int run(int argc, char** argv) {
  CLI::App app{"Graph algorithms parameterised by a vertex separator"};
  app.require_subcommand(1);
  // `--h` names the target graph of `subgraph`, so help is long-form only.
  app.set_help_flag("--help", "print this help and exit");
  Config c;
  std::function<int()> action;

  // gen
  auto* gen = app.add_subcommand("gen", "generate a planted instance");
  Vertex gen_n = 100, gen_sep = -1;
  std::int64_t gen_k = 8;
  double p_in = 0.3, p_cross = 0.1, p_sep = 0.0;
  std::string sep_out;
  gen->add_option("--n", gen_n, "vertex count")->check(CLI::PositiveNumber);
  gen->add_option("--k", gen_k, "k = |S| + component size")->check(CLI::PositiveNumber);
  gen->add_option("--sep-size", gen_sep, "|S| (default k/4)");
  gen->add_option("--p-in", p_in, "edge probability inside components");
  gen->add_option("--p-cross", p_cross, "edge probability between S and components");
  gen->add_option("--p-sep", p_sep, "edge probability inside S");
  gen->add_option("--seed", c.seed, "random seed");
  gen->add_option("--out", c.out, "graph output file (default stdout)");
  gen->add_option("--sep-out", sep_out, "also write the planted separator here");
  gen->callback([&] {
    action = [&] {
      const Vertex sep = gen_sep >= 0 ? gen_sep : static_cast<Vertex>(gen_k / 4);
      if (sep > gen_n || sep >= gen_k) throw InputError("separator size must be below k and at most n");
      PlantedOptions opt;
      opt.edge_prob_sep = p_sep;
      const auto inst = generate_planted(gen_n, sep, static_cast<Vertex>(gen_k - sep), p_in, p_cross, c.seed, opt);
      Output out(c.out);
      write_graph(*out, inst.graph);
      if (!sep_out.empty()) {
        std::ofstream s(sep_out);
        if (!s) throw InputError("cannot write separator file: " + sep_out);
        write_separator(s, inst.separator, inst.k);
      }
      return kOk;
    };
  });

  // decompose
  auto* dec = app.add_subcommand("decompose", "find a separator and print it");
  dec->add_option("graph", c.graph, "graph file")->required();
  dec->add_option("--budget", c.budget, "largest k tried by the exact search");
  dec->add_option("--out", c.out, "output file (default stdout)");
  dec->callback([&] {
    action = [&] {
      const Graph g = load_graph(c.graph);
      Config auto_config = c;
      auto_config.auto_sep = true;
      const auto d = decomposition_for(g, auto_config);
      Output out(c.out);
      write_separator(*out, d.separator(), d.k());
      return kOk;
    };
  });

  // girth / even-girth
  for (const bool even : {false, true}) {
    auto* cmd = app.add_subcommand(even ? "even-girth" : "girth",
                                   even ? "shortest even cycle" : "shortest cycle");
    add_graph_options(cmd, c);
    cmd->callback([&, even] {
      action = [&, even] {
        const Graph g = load_graph(c.graph);
        const auto d = decomposition_for(g, c);
        const auto r = even ? even_girth(g, d) : girth(g, d);
        Output out(c.out);
        if (!r) {
          *out << (even ? "no even cycle\n" : "no cycle\n");
          return kNo;
        }
        print_cycle(*out, *r);
        return kOk;
      };
    });
  }

  // cycle
  auto* cyc = app.add_subcommand("cycle", "cycle of a given length");
  add_graph_options(cyc, c);
  int length = 4;
  std::string strategy = "colorful";
  std::size_t max_trials = 0;
  cyc->add_option("--len", length, "cycle length")->required();
  cyc->add_option("--fail-prob", c.fail_prob, "allowed probability of a miss");
  cyc->add_option("--strategy", strategy, "colorful or ordered");
  cyc->add_option("--max-trials", max_trials, "cap on colourings (0 = none)");
  cyc->callback([&] {
    action = [&] {
      check_probability(c.fail_prob);
      const Graph g = load_graph(c.graph);
      const auto d = decomposition_for(g, c);
      CycleSearchOptions opt;
      opt.seed = c.seed;
      opt.failure_prob = c.fail_prob;
      opt.max_trials = max_trials;
      if (strategy == "ordered")
        opt.strategy = CycleStrategy::ordered;
      else if (strategy != "colorful")
        throw InputError("unknown strategy '" + strategy + "'");
      CycleSearchStats stats;
      const auto r = find_cycle_of_length(g, d, length, opt, &stats);
      Output out(c.out);
      if (!r) {
        *out << "no cycle of length " << length << " found (" << stats.trials_run << " trials"
             << (stats.capped ? ", capped" : "") << ", miss probability <= " << c.fail_prob << ")\n";
        return kNo;
      }
      print_cycle(*out, *r);
      return kOk;
    };
  });

  // subgraph
  auto* sub = app.add_subcommand("subgraph", "induced four-vertex subgraphs");
  add_graph_options(sub, c);
  std::string h_token, mode = "detect";
  sub->add_option("--h", h_token, "target graph, e.g. paw, co-claw, c4")->required();
  sub->add_option("--mode", mode, "count, detect or find");
  sub->add_option("--fail-prob", c.fail_prob, "allowed probability of a miss");
  sub->callback([&] {
    action = [&]() -> int {
      check_probability(c.fail_prob);
      const FourGraph h = FourGraph::parse(h_token);
      const Graph g = load_graph(c.graph);
      const auto d = decomposition_for(g, c);
      InducedSearchOptions opt;
      opt.failure_prob = c.fail_prob;
      opt.seed = c.seed;
      Output out(c.out);
      if (mode == "count") {
        *out << count_mod(g, d, h) << " mod " << count_modulus(h) << "\n";
        return kOk;
      }
      if (mode == "detect") {
        bool found;
        if (h.id() == FourGraphId::k4)
          found = detect_clique(g, d, 4);
        else if (h.id() == FourGraphId::co_k4)
          found = detect_independent_set(g, d, 4);
        else
          found = detect_induced(g, d, h, opt);
        *out << (found ? "yes" : "no") << "\n";
        return found ? kOk : kNo;
      }
      if (mode == "find") {
        const auto e = find_induced(g, d, h, opt);
        if (!e) {
          *out << "no induced " << h.token() << " found\n";
          return kNo;
        }
        *out << e->vertices[0] << " " << e->vertices[1] << " " << e->vertices[2] << " " << e->vertices[3] << "\n";
        return kOk;
      }
      throw InputError("unknown mode '" + mode + "' (expected count, detect or find)");
    };
  });

  // matching
  auto* mat = app.add_subcommand("matching", "maximum or perfect matching");
  add_graph_options(mat, c);
  bool perfect = false;
  int field_degree = 0;
  mat->add_flag("--perfect", perfect, "require a perfect matching");
  mat->add_option("--trials", c.trials, "instantiations before answering no");
  mat->add_option("--field", field_degree, "field degree q (0 = automatic)");
  mat->callback([&] {
    action = [&] {
      const Graph g = load_graph(c.graph);
      const auto d = decomposition_for(g, c);
      MatchingOptions opt;
      opt.seed = c.seed;
      opt.trials = c.trials;
      opt.field_degree = field_degree;
      Output out(c.out);
      if (perfect) {
        const auto m = find_perfect_matching(g, d, opt);
        if (!m) {
          const auto n = static_cast<std::size_t>(g.n());
          const double error = n % 2 ? 0.0 : no_answer_error_bound(n, matching_field(n, field_degree), c.trials);
          std::ostringstream conf;
          conf.precision(12);
          conf << 1.0 - error;
          *out << "no perfect matching (confidence >= " << conf.str() << ")\n";
          return kNo;
        }
        write_matching(*out, *m);
        return kOk;
      }
      write_matching(*out, max_matching(g, d, opt));
      return kOk;
    };
  });

  // apsp
  auto* ap = app.add_subcommand("apsp", "all-pairs hop distances");
  add_graph_options(ap, c);
  std::int32_t diameter = 0;
  ap->add_option("--kernel", c.kernel, "min-plus kernel: naive or bd");
  ap->add_option("--diameter", diameter, "use boolean powers up to this many hops");
  ap->callback([&] {
    action = [&] {
      const MinPlusKernel kernel = parse_kernel(c.kernel);
      const Graph g = load_graph(c.graph);
      const auto d = decomposition_for(g, c);
      ApspOptions opt;
      opt.kernel = kernel;
      const auto dist = diameter > 0 ? apsp_bounded_diameter(g, d, diameter) : apsp(g, d, opt);
      Output out(c.out);
      write_distances(*out, dist);
      return kOk;
    };
  });

  // verify
  auto* ver = app.add_subcommand("verify", "oracle verification suites");
  std::string suite = "all";
  SuiteOptions so;
  ver->add_option("--suite", suite, "suite name or all");
  ver->add_option("--n", so.n_max, "largest instance size");
  ver->add_option("--cases", so.cases, "number of cases");
  ver->add_option("--seed", so.seed, "random seed");
  ver->add_option("--fail-prob", so.failure_prob, "failure probability for randomized searches");
  ver->add_flag("--quick", so.quick, "skip exhaustive sweeps");
  ver->add_option("--out", c.out, "output file (default stdout)");
  ver->callback([&] {
    action = [&] {
      check_probability(so.failure_prob);
      std::vector<std::string> names;
      if (suite == "all")
        names = suite_names();
      else
        names.push_back(suite);
      Output out(c.out);
      bool ok = true;
      for (const auto& name : names)
        for (const auto& r : run_suite(name, so)) {
          *out << (r.passed ? (r.soft ? "SOFT " : "PASS ") : "FAIL ") << name << ": " << r.name << " (" << r.detail
               << ")\n";
          ok = ok && r.passed;
        }
      return ok ? kOk : kNo;
    };
  });

  // bench
  auto* bench = app.add_subcommand("bench", "timing rows as CSV");
  std::string bench_command = "girth";
  std::vector<Vertex> sizes{1024, 4096};
  std::int64_t bench_k = 32;
  int repeats = 3;
  bench->add_option("--command", bench_command, "girth, even-girth, square, apsp, matching or cycle");
  bench->add_option("--sizes", sizes, "vertex counts")->delimiter(',');
  bench->add_option("--k", bench_k, "k of the planted instances")->check(CLI::PositiveNumber);
  bench->add_option("--seed", c.seed, "random seed");
  bench->add_option("--kernel", c.kernel, "min-plus kernel for apsp: naive or bd");
  bench->add_option("--repeats", repeats, "runs per size; the minimum is reported")->check(CLI::PositiveNumber);
  bench->add_option("--fail-prob", c.fail_prob, "failure probability for cycle");
  bench->add_option("--out", c.out, "output file (default stdout)");
  bench->callback([&] {
    action = [&] {
      check_probability(c.fail_prob);
      parse_kernel(c.kernel);
      Output out(c.out);
      *out << "command,n,m,k,kernel,seed,wall_ms,result\n";
      for (Vertex n : sizes) {
        const auto sep = static_cast<Vertex>(std::max<std::int64_t>(bench_k / 4, 1));
        if (n < 1 || sep >= bench_k) throw InputError("bench needs n >= 1 and k >= 2");
        PlantedOptions opt;
        opt.edge_prob_sep = 0.1;
        const auto inst = generate_planted(n, std::min(sep, n), static_cast<Vertex>(bench_k - sep), 0.15, 0.02,
                                           derive_seed(c.seed, static_cast<std::uint64_t>(n)), opt);
        const auto d = build_decomposition(inst.graph, inst.separator, inst.k);
        double best = 0;
        std::string result;
        for (int r = 0; r < repeats; ++r) {
          const auto t0 = std::chrono::steady_clock::now();
          result = bench_once(bench_command, inst.graph, d, c);
          const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
          best = r == 0 ? ms : std::min(best, ms);
        }
        char ms[32];
        std::snprintf(ms, sizeof ms, "%.3f", best);
        *out << bench_command << "," << n << "," << inst.graph.m() << "," << inst.k << "," << c.kernel << ","
             << c.seed << "," << ms << "," << result << "\n";
      }
      return kOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }
  return action ? action() : kInput;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ProbabilisticFailure& e) {
    std::cerr << "probabilistic failure: " << e.what() << "\n";
    return kProbabilistic;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const PreconditionError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
