#include <doctest.h>

#include <sstream>

#include "support.hpp"
#include "vigl/oracles.hpp"

using namespace vigl;
using testing_support::random_graph;

TEST_CASE("girth oracles on named graphs") {
  CHECK(oracle::girth(complete_graph(3)) == 3u);
  CHECK_FALSE(oracle::girth(path_graph(6)).has_value());
  CHECK(oracle::girth(petersen_graph()) == 5u);
  CHECK_FALSE(oracle::even_girth(cycle_graph(5)).has_value());
  CHECK(oracle::even_girth(cycle_graph(6)) == 6u);
  CHECK(oracle::even_girth(complete_graph(4)) == 4u);
  CHECK(oracle::even_girth(petersen_graph()) == 6u);
}

TEST_CASE("girth oracles agree with full cycle enumeration") {
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    Graph g = random_graph(static_cast<Vertex>(1 + rng.below(12)), 0.1 + 0.4 * rng.uniform01(), rng);
    auto cycles = oracle::all_cycles(g);
    std::optional<std::size_t> shortest, shortest_even;
    for (const auto& c : cycles) {
      CHECK(is_valid_cycle(g, c));
      if (!shortest || c.size() < *shortest) shortest = c.size();
      if (c.size() % 2 == 0 && (!shortest_even || c.size() < *shortest_even)) shortest_even = c.size();
    }
    CHECK(oracle::girth(g) == shortest);
    CHECK(oracle::even_girth(g) == shortest_even);
    for (std::size_t len = 3; len <= 8; ++len) {
      bool expect = std::any_of(cycles.begin(), cycles.end(),
                                [&](const auto& c) { return c.size() == len; });
      auto found = oracle::cycle_of_length(g, len);
      CHECK(found.has_value() == expect);
      if (found) CHECK((found->size() == len && is_valid_cycle(g, *found)));
    }
  }
}

TEST_CASE("cycle enumeration counts") {
  // K4 has 4 triangles and 3 four-cycles; the Petersen graph has 12 five-cycles.
  CHECK(oracle::all_cycles(complete_graph(4)).size() == 7);
  auto cycles = oracle::all_cycles(petersen_graph());
  CHECK(std::count_if(cycles.begin(), cycles.end(), [](const auto& c) { return c.size() == 5; }) == 12);
}

TEST_CASE("census implementations agree") {
  CHECK(oracle::count_induced(complete_graph(4), FourGraph(FourGraphId::diamond)) == 0);
  CHECK(oracle::count_induced(path_graph(4), FourGraph(FourGraphId::p4)) == 1);
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    Graph g = random_graph(10, rng.uniform01(), rng);
    auto a = oracle::census(g);
    CHECK(a == oracle::census_by_canonical_mask(g));
    std::int64_t total = 0;
    for (auto x : a) total += x;
    CHECK(total == 210);
    auto co = oracle::census(complement(g));
    for (auto h : FourGraph::all())
      CHECK(a[static_cast<std::size_t>(h.id())] == co[static_cast<std::size_t>(h.complement().id())]);
    for (auto h : FourGraph::all()) {
      auto e = oracle::find_induced(g, h);
      CHECK(e.has_value() == (a[static_cast<std::size_t>(h.id())] > 0));
      if (e) CHECK(is_valid_embedding(g, *e));
    }
  }
}

TEST_CASE("four-vertex graph table") {
  for (auto h : FourGraph::all()) {
    CHECK(FourGraph::classify(h.pair_mask()) == h);
    CHECK(h.complement().complement() == h);
    CHECK(FourGraph::classify(static_cast<std::uint8_t>(0x3f ^ h.pair_mask())) == h.complement());
    CHECK(FourGraph::parse(h.token()) == h);
  }
  CHECK(FourGraph(FourGraphId::p4).complement() == FourGraph(FourGraphId::p4));
}

TEST_CASE("matching oracles agree") {
  CHECK(oracle::max_matching(complete_graph(2)).size() == 1);
  CHECK(oracle::max_matching(cycle_graph(5)).size() == 2);
  CHECK(oracle::max_matching_dp(petersen_graph()).size() == 5);
  CHECK(oracle::max_matching_blossom(petersen_graph()).size() == 5);
  Rng rng(4);
  for (int trial = 0; trial < 400; ++trial) {
    Graph g = random_graph(static_cast<Vertex>(rng.below(13)), 0.05 + 0.5 * rng.uniform01(), rng);
    auto a = oracle::max_matching_dp(g);
    auto b = oracle::max_matching_blossom(g);
    CHECK(is_valid_matching(g, a));
    CHECK(is_valid_matching(g, b));
    CHECK(a.size() == b.size());
  }
}

TEST_CASE("apsp oracles agree") {
  auto p5 = oracle::apsp_bfs(path_graph(5));
  for (int u = 0; u < 5; ++u)
    for (int v = 0; v < 5; ++v) CHECK(p5.at(u, v) == std::abs(u - v));
  auto split = oracle::apsp_bfs(Graph(2));
  CHECK_FALSE(split.reachable(0, 1));
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    Graph g = random_graph(static_cast<Vertex>(rng.below(40)), 0.12 * rng.uniform01(), rng);
    auto d = oracle::apsp_bfs(g);
    CHECK(d == oracle::apsp_floyd_warshall(g));
    CHECK_FALSE(distance_violation(d).has_value());
  }
}

TEST_CASE("graph enumeration sizes") {
  CHECK(oracle::enumerate_all_graphs(3).size() == 8);
  CHECK(oracle::enumerate_all_graphs(4).size() == 64);
  std::size_t count = 0;
  oracle::for_each_graph(6, [&](const Graph&) { ++count; });
  CHECK(count == 32768);
}

TEST_CASE("clique and independent set oracles") {
  CHECK(oracle::max_clique_size(complete_graph(5)) == 5);
  CHECK(oracle::max_clique_size(petersen_graph()) == 2);
  CHECK(oracle::max_independent_set_size(petersen_graph()) == 4);
  CHECK(oracle::max_independent_set_size(cycle_graph(7)) == 3);
}

TEST_CASE("corpus regeneration is deterministic and manifests round-trip") {
  oracle::Corpus c;
  c.name = "mixed";
  c.seed_begin = 10;
  c.seed_end = 20;
  c.n_min = 5;
  c.n_max = 30;
  c.params["sep_max"] = 3;
  c.params["p_in"] = 0.375;
  std::ostringstream out;
  oracle::write_manifest(out, c);
  std::istringstream in(out.str());
  auto back = oracle::read_manifest(in);
  CHECK(back.name == c.name);
  CHECK(back.seed_begin == 10);
  CHECK(back.seed_end == 20);
  CHECK(back.params == c.params);
  auto a = c.instances();
  auto b = back.instances();
  REQUIRE(a.size() == 10);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].graph == b[i].graph);
    CHECK(a[i].graph.n() >= 5);
    CHECK(a[i].graph.n() <= 30);
    CHECK(validate_separator(a[i].graph, a[i].separator, a[i].k));
  }
  std::istringstream bad("seeds 5\n");
  CHECK_THROWS(oracle::read_manifest(bad));
}
