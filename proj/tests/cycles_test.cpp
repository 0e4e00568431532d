#include <doctest.h>

#include "support.hpp"
#include "vigl/cycles.hpp"
#include "vigl/errors.hpp"
#include "vigl/oracles.hpp"

using namespace vigl;
using testing_support::decompose;
using testing_support::decompose_greedy;

TEST_CASE("probe on small graphs") {
  auto tri = bfs_cycle_probe(complete_graph(3), 0);
  REQUIRE(tri.cycle);
  CHECK(tri.cycle->size() == 3);
  CHECK(tri.walk_length == 3);

  CHECK_FALSE(bfs_cycle_probe(path_graph(6), 2).cycle);

  auto c6 = bfs_cycle_probe(cycle_graph(6), 0);
  REQUIRE(c6.cycle);
  CHECK(c6.cycle->size() == 6);
  CHECK(c6.depth == 2);
  CHECK(c6.layer == std::vector<Vertex>{2, 4});

  CHECK(bfs_layer(cycle_graph(6), 0, 3) == std::vector<Vertex>{3});
  CHECK_THROWS_AS(bfs_cycle_probe(path_graph(2), 5), InputError);
}

TEST_CASE("probe cycle never shorter than girth, never longer than walk") {
  Rng rng(77);
  for (int iter = 0; iter < 300; ++iter) {
    auto g = testing_support::random_graph(static_cast<Vertex>(2 + rng.below(14)), rng.uniform01() * 0.4, rng);
    auto girth = oracle::girth(g);
    for (Vertex v = 0; v < g.n(); ++v) {
      auto p = bfs_cycle_probe(g, v);
      if (!p.cycle) continue;
      REQUIRE(girth);
      CHECK(is_valid_cycle(g, *p.cycle));
      CHECK(p.cycle->size() >= *girth);
      CHECK(p.cycle->size() <= p.walk_length);
    }
  }
}

TEST_CASE("girth on named graphs") {
  auto pet = petersen_graph();
  auto r = girth(pet, decompose_greedy(pet));
  REQUIRE(r);
  CHECK(r->length == 5);
  CHECK(r->kind == CycleKind::girth);

  std::vector<Edge> e{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {0, 2}};
  Graph chord(5, e);
  CHECK(girth(chord, decompose_greedy(chord))->length == 3);

  auto forest = testing_support::union_of_paths({3, 4, 1});
  CHECK_FALSE(girth(forest, decompose_greedy(forest)));
}

TEST_CASE("even girth on named graphs") {
  auto c6 = cycle_graph(6);
  CHECK(even_girth(c6, decompose_greedy(c6))->length == 6);
  auto c5 = cycle_graph(5);
  CHECK_FALSE(even_girth(c5, decompose_greedy(c5)));
  auto k4 = complete_graph(4);
  CHECK(even_girth(k4, decompose_greedy(k4))->length == 4);
  CHECK(even_girth(petersen_graph(), decompose_greedy(petersen_graph()))->length == 6);
}

TEST_CASE("has_even_cycle matches oracle on all graphs up to 6 vertices") {
  for (Vertex n = 1; n <= 6; ++n)
    oracle::for_each_graph(n, [&](const Graph& g) {
      CHECK(has_even_cycle(g) == oracle::even_girth(g).has_value());
    });
}

TEST_CASE("girth and even girth agree with oracles on planted graphs") {
  Rng rng(2024);
  for (int iter = 0; iter < 400; ++iter) {
    auto inst = testing_support::random_planted(rng, 24);
    auto d = decompose(inst);
    auto r = girth(inst.graph, d);
    auto want = oracle::girth(inst.graph);
    REQUIRE(r.has_value() == want.has_value());
    if (r) {
      CHECK(r->length == *want);
      CHECK(is_valid_report(inst.graph, *r));
    }
    auto e = even_girth(inst.graph, d);
    auto want_e = oracle::even_girth(inst.graph);
    REQUIRE(e.has_value() == want_e.has_value());
    if (e) {
      CHECK(e->length == *want_e);
      CHECK(e->length % 2 == 0);
      CHECK(is_valid_report(inst.graph, *e));
      REQUIRE(r);
      CHECK(r->length <= e->length);
    }
  }
}

TEST_CASE("odd cycle hidden behind an even probe") {
  // From vertex 0 the probe closes the hexagon first (walk 6), while the
  // pentagon 0-6-7-8-9 is shorter; both parts of G - {0} are paths.
  std::vector<Edge> e{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5},
                      {0, 6}, {6, 7}, {7, 8}, {8, 9}, {0, 9}};
  Graph g(10, e);
  CHECK(bfs_cycle_probe(g, 0).cycle->size() == 6);
  auto d = build_decomposition(g, std::vector<Vertex>{0}, 6);
  auto r = girth(g, d);
  REQUIRE(r);
  CHECK(r->length == 5);
  CHECK(is_valid_report(g, *r));
}

TEST_CASE("girth agrees with oracle on larger planted graphs") {
  Rng rng(5);
  for (int iter = 0; iter < 300; ++iter) {
    auto inst = testing_support::random_planted(rng, 40, 6, 3);
    auto r = girth(inst.graph, decompose(inst));
    auto want = oracle::girth(inst.graph);
    REQUIRE(r.has_value() == want.has_value());
    if (r) CHECK(r->length == *want);
  }
}

TEST_CASE("fixed length cycles on named graphs") {
  auto c7 = cycle_graph(7);
  auto d7 = decompose_greedy(c7);
  auto r = find_cycle_of_length(c7, d7, 7);
  REQUIRE(r);
  CHECK(r->length == 7);
  CHECK(r->kind == CycleKind::fixed_length);
  CHECK_FALSE(find_cycle_of_length(c7, d7, 6));

  auto tree = star_graph(6);
  CHECK_FALSE(find_cycle_of_length(tree, decompose_greedy(tree), 4));

  auto pet = petersen_graph();
  auto dp = decompose_greedy(pet);
  CHECK(find_cycle_of_length(pet, dp, 5));
  CHECK_FALSE(find_cycle_of_length(pet, dp, 3));
  CHECK_FALSE(find_cycle_of_length(pet, dp, 4));

  CycleSearchOptions opt;
  opt.strategy = CycleStrategy::ordered;
  CHECK(find_cycle_of_length(pet, dp, 5, opt)->length == 5);
  CHECK(find_cycle_of_length(pet, dp, 6, opt)->length == 6);
  CHECK_FALSE(find_cycle_of_length(pet, dp, 4, opt));
}

TEST_CASE("fixed length input validation") {
  auto g = cycle_graph(5);
  auto d = decompose_greedy(g);
  CHECK_THROWS_AS(find_cycle_of_length(g, d, 2), InputError);
  CHECK_THROWS_AS(find_cycle_of_length(g, d, 9), InputError);
  CycleSearchOptions opt;
  opt.failure_prob = 1.0;
  CHECK_THROWS_AS(find_cycle_of_length(g, d, 4, opt), InputError);
  opt.failure_prob = 0.0;
  CHECK_THROWS_AS(find_cycle_of_length(g, d, 4, opt), InputError);
}

TEST_CASE("trial counts") {
  CHECK(color_coding_trials(3, 0.05, CycleStrategy::colorful) == 14);  // ceil(2.9957 * 4.5)
  CHECK(color_coding_trials(8, 0.05, CycleStrategy::colorful) == 1247);  // ceil(ln 20 * 8^8 / 8!)
  CHECK(color_coding_trials(3, 0.05, CycleStrategy::ordered) == 14);  // 27/6 = 4.5
}

TEST_CASE("fixed length agrees with oracle on planted graphs") {
  Rng rng(31337);
  for (auto strategy : {CycleStrategy::colorful, CycleStrategy::ordered}) {
    int positives = 0;
    for (int iter = 0; iter < 120; ++iter) {
      auto inst = testing_support::random_planted(rng, 16, 4, 4);
      auto d = decompose(inst);
      int length = 3 + static_cast<int>(rng.below(3));
      CycleSearchOptions opt;
      opt.strategy = strategy;
      opt.seed = rng.next();
      opt.failure_prob = 1e-3;
      auto r = find_cycle_of_length(inst.graph, d, length, opt);
      auto want = oracle::cycle_of_length(inst.graph, static_cast<std::size_t>(length));
      CHECK(r.has_value() == want.has_value());
      if (r) {
        ++positives;
        CHECK(r->length == static_cast<std::size_t>(length));
        CHECK(is_valid_report(inst.graph, *r));
      }
    }
    CHECK(positives > 10);
  }
}

TEST_CASE("fixed length search is deterministic per seed") {
  Rng rng(8);
  auto inst = testing_support::random_planted(rng, 30, 4, 6);
  auto d = decompose(inst);
  CycleSearchOptions opt;
  opt.seed = 99;
  CycleSearchStats s1, s2;
  auto a = find_cycle_of_length(inst.graph, d, 5, opt, &s1);
  auto b = find_cycle_of_length(inst.graph, d, 5, opt, &s2);
  CHECK(a.has_value() == b.has_value());
  if (a) CHECK(a->vertices == b->vertices);
  CHECK(s1.trials_run == s2.trials_run);
}
