#include <doctest.h>

#include <sstream>

#include "support.hpp"
#include "vigl/errors.hpp"
#include "vigl/graph.hpp"
#include "vigl/oracles.hpp"
#include "vigl/separator.hpp"

using namespace vigl;
using testing_support::random_graph;
using testing_support::random_planted;
using testing_support::union_of_paths;

namespace {

std::size_t parse_error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    read_graph(in);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("graph text format round-trips byte for byte") {
  const std::string text = "p 5 4\n0 1\n0 4\n1 2\n3 4\n";
  std::istringstream in(text);
  Graph g = read_graph(in);
  CHECK(g.n() == 5);
  CHECK(g.m() == 4);
  CHECK(g.has_edge(4, 0));
  CHECK_FALSE(g.has_edge(2, 3));
  std::ostringstream out;
  write_graph(out, g);
  CHECK(out.str() == text);
}

TEST_CASE("malformed graph files report the offending line") {
  CHECK(parse_error_line("") == 1);
  CHECK(parse_error_line("q 3 1\n0 1\n") == 1);
  CHECK(parse_error_line("p 3 2\n0 1\n2 1\n") == 3);
  CHECK(parse_error_line("p 3 2\n0 1\n0 3\n") == 3);
  CHECK(parse_error_line("p 3 2\n0 1\n0 1\n") == 3);
  CHECK(parse_error_line("p 3 2\n0 1\n") == 3);
  CHECK(parse_error_line("p 3 1\n0 x\n") == 2);
  CHECK(parse_error_line("p 3 1\n0 1\n1 2\n") == 3);
  CHECK(parse_error_line("p 3 1\n1 1\n") == 2);
  CHECK(parse_error_line("p 3 1\n0 1\n\n") == 0);
}

TEST_CASE("separator file format") {
  std::istringstream in("0 3 6\nk 5\n");
  auto f = read_separator(in);
  CHECK(f.separator == std::vector<Vertex>{0, 3, 6});
  CHECK(f.k == 5);
  std::ostringstream out;
  write_separator(out, f.separator, f.k);
  CHECK(out.str() == "0 3 6\nk 5\n");
  std::istringstream empty("\nk 1\n");
  CHECK(read_separator(empty).separator.empty());
  std::istringstream bad("0 1\nk\n");
  CHECK_THROWS_AS(read_separator(bad), ParseError);
}

TEST_CASE("adjacency lists are sorted and edge ids consistent") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Graph g = random_graph(static_cast<Vertex>(1 + rng.below(30)), 0.3, rng);
    for (Vertex v = 0; v < g.n(); ++v) {
      auto nb = g.neighbors(v);
      CHECK(std::is_sorted(nb.begin(), nb.end()));
      auto ids = g.incident_edges(v);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        const Edge& e = g.edges()[ids[i]];
        CHECK(((e.u == v && e.v == nb[i]) || (e.v == v && e.u == nb[i])));
        CHECK(g.edge_id(v, nb[i]) == ids[i]);
      }
    }
  }
}

TEST_CASE("validate_separator examples") {
  CHECK(validate_separator(complete_graph(4), std::vector<Vertex>{0, 1, 2, 3}, 4));
  CHECK(validate_separator(cycle_graph(9), std::vector<Vertex>{0, 3, 6}, 5));
  CHECK_FALSE(validate_separator(cycle_graph(9), std::vector<Vertex>{0}, 5));
  CHECK_THROWS_AS(validate_separator(cycle_graph(9), std::vector<Vertex>{9}, 5), InputError);
  CHECK(separator_violation(cycle_graph(9), std::vector<Vertex>{0, 1, 2, 3}, 3).has_value());
}

TEST_CASE("validity is monotone in k") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    Graph g = random_graph(static_cast<Vertex>(1 + rng.below(12)), 0.25, rng);
    std::vector<Vertex> s;
    for (Vertex v = 0; v < g.n(); ++v)
      if (rng.bernoulli(0.3)) s.push_back(v);
    for (std::int64_t k = 0; k <= g.n() + 1; ++k)
      if (validate_separator(g, s, k)) CHECK(validate_separator(g, s, k + 1));
  }
}

TEST_CASE("decomposition packs components greedily") {
  Graph g = union_of_paths({3, 3, 2, 5});
  auto d = build_decomposition(g, std::vector<Vertex>{}, 5);
  REQUIRE(d.part_count() == 2);
  CHECK(d.part(0).size() == 6);
  CHECK(d.part(1).size() == 7);
  CHECK(d.component_count() == 4);

  auto single = build_decomposition(path_graph(4), std::vector<Vertex>{}, 4);
  REQUIRE(single.part_count() == 1);
  CHECK(single.part(0).size() == 4);

  auto none = build_decomposition(complete_graph(3), std::vector<Vertex>{0, 1, 2}, 3);
  CHECK(none.part_count() == 0);

  CHECK_THROWS_AS(build_decomposition(cycle_graph(9), std::vector<Vertex>{0}, 5),
                  PreconditionError);
}

TEST_CASE("decompositions of planted instances satisfy the structural invariants") {
  Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    auto inst = random_planted(rng, 60);
    REQUIRE(validate_separator(inst.graph, inst.separator, inst.k));
    auto d = build_decomposition(inst.graph, inst.separator, inst.k);
    CHECK_FALSE(decomposition_violation(inst.graph, d).has_value());
  }
}

TEST_CASE("exact vertex integrity on small families") {
  for (Vertex n = 1; n <= 6; ++n) {
    auto w = exact_vertex_integrity(complete_graph(n), 10);
    REQUIRE(w);
    CHECK(w->iota == n);
  }
  auto star = exact_vertex_integrity(star_graph(8), 5);
  REQUIRE(star);
  CHECK(star->iota == 2);
  CHECK(star->separator == std::vector<Vertex>{0});
  // Exhaustive subset search gives 5 for the 9-cycle.
  CHECK(oracle::vertex_integrity(cycle_graph(9)).iota == 5);
  auto c9 = exact_vertex_integrity(cycle_graph(9), 10);
  REQUIRE(c9);
  CHECK(c9->iota == 5);
  CHECK(validate_separator(cycle_graph(9), c9->separator, 5));
  CHECK_FALSE(exact_vertex_integrity(cycle_graph(9), 4).has_value());
  CHECK(exact_vertex_integrity(Graph(0), 1)->iota == 0);
}

TEST_CASE("exact vertex integrity agrees with exhaustive search") {
  for (int n = 0; n <= 5; ++n)
    oracle::for_each_graph(n, [](const Graph& g) {
      auto w = exact_vertex_integrity(g, 6);
      REQUIRE(w);
      CHECK(w->iota == oracle::vertex_integrity(g).iota);
      CHECK(validate_separator(g, w->separator, w->iota));
    });
  Rng rng(77);
  for (int trial = 0; trial < 150; ++trial) {
    Graph g = random_graph(static_cast<Vertex>(1 + rng.below(10)), 0.1 + 0.6 * rng.uniform01(), rng);
    auto w = exact_vertex_integrity(g, 10);
    REQUIRE(w);
    CHECK(w->iota == oracle::vertex_integrity(g).iota);
    CHECK(validate_separator(g, w->separator, w->iota));
  }
}

TEST_CASE("greedy separator") {
  auto edgeless = greedy_separator(Graph(7));
  CHECK(edgeless.separator.empty());
  CHECK(edgeless.iota == 1);
  CHECK(greedy_separator(complete_graph(5)).iota == 5);
  Rng rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    auto inst = random_planted(rng, 20);
    auto w = greedy_separator(inst.graph);
    CHECK(validate_separator(inst.graph, w.separator, w.iota));
    auto exact = exact_vertex_integrity(inst.graph, 20);
    REQUIRE(exact);
    CHECK(w.iota >= exact->iota);
    CHECK(w.iota <= exact->iota * exact->iota + exact->iota);
  }
}

TEST_CASE("planted generator") {
  auto full = generate_planted(10, 2, 2, 1.0, 1.0, 3);
  CHECK(full.k == 4);
  CHECK(validate_separator(full.graph, full.separator, 4));
  auto edgeless = generate_planted(10, 0, 1, 0.5, 0.0, 42);
  CHECK(edgeless.graph.m() == 0);
  auto a = generate_planted(30, 3, 5, 0.4, 0.3, 99);
  auto b = generate_planted(30, 3, 5, 0.4, 0.3, 99);
  CHECK(a.graph == b.graph);
  CHECK(a.separator == b.separator);
  auto c = generate_planted(30, 3, 5, 0.4, 0.3, 100);
  CHECK_FALSE(a.graph == c.graph);
  CHECK_THROWS_AS(generate_planted(5, 3, 3, 0.5, 0.5, 1), InputError);
  CHECK_THROWS_AS(generate_planted(5, 1, 2, 1.5, 0.5, 1), InputError);
  for (const auto& e : a.graph.edges()) {
    auto gu = a.group[e.u], gv = a.group[e.v];
    CHECK((gu < 0 || gv < 0 || gu == gv));
    CHECK_FALSE((gu < 0 && gv < 0));
  }
}
