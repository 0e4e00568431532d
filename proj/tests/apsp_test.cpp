#include <doctest.h>

#include <cstdlib>
#include <queue>

#include "support.hpp"
#include "vigl/apsp.hpp"
#include "vigl/errors.hpp"
#include "vigl/oracles.hpp"

using namespace vigl;
using testing_support::decompose;
using testing_support::decompose_greedy;
using testing_support::union_of_paths;

namespace {

constexpr std::int32_t kInf = DistanceMatrix::kUnreachable;

DistanceBlock block(std::initializer_list<std::initializer_list<std::int32_t>> rows) {
  DistanceBlock b(rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (auto x : r) b(i, j++) = x;
    ++i;
  }
  return b;
}

DistanceMatrix dijkstra_all(const DistanceBlock& w) {
  const std::size_t n = w.rows();
  DistanceMatrix d(n);
  for (std::size_t s = 0; s < n; ++s) {
    using Item = std::pair<std::int32_t, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    d.at(s, s) = 0;
    pq.push({0, s});
    while (!pq.empty()) {
      auto [dist, x] = pq.top();
      pq.pop();
      if (dist > d.at(s, x)) continue;
      for (std::size_t y = 0; y < n; ++y) {
        if (y == x || w(x, y) >= kInf) continue;
        if (dist + w(x, y) < d.at(s, y)) {
          d.at(s, y) = dist + w(x, y);
          pq.push({d.at(s, y), y});
        }
      }
    }
  }
  return d;
}

// Every input vertex keeps its distances, every part path is a certificate of
// bounded differences.
void check_partition(const Graph& g, const SeparatorDecomposition& d) {
  const NicePartition p = nice_partition(g, d);
  const auto why = nice_partition_violation(g, p);
  INFO(why.value_or(""));
  REQUIRE_FALSE(why.has_value());
  CHECK(validate_separator(p.graph, p.separator, static_cast<std::int64_t>(2 * p.size_class)));
  const auto before = oracle::apsp_bfs(g);
  const auto after = oracle::apsp_bfs(p.graph);
  for (Vertex u = 0; u < g.n(); ++u)
    for (Vertex v = 0; v < g.n(); ++v) REQUIRE(before.at(u, v) == after.at(u, v));
  for (const auto& part : p.parts)
    for (std::size_t j = 1; j < part.size(); ++j)
      for (Vertex w = 0; w < p.graph.n(); ++w) {
        const auto a = after.at(part[j - 1], w), b = after.at(part[j], w);
        if (a == kInf)
          REQUIRE(b == kInf);
        else
          REQUIRE(std::abs(a - b) <= 1);
      }
}

}  // namespace

TEST_CASE("min-plus products") {
  const auto a = block({{1, 3}, {2, 0}});
  const auto b = block({{0, 5}, {1, 0}});
  for (auto kernel : {MinPlusKernel::naive, MinPlusKernel::bounded_difference})
    CHECK(min_plus(a, b, kernel) == block({{1, 3}, {1, 0}}));

  const auto id = block({{0, kInf, kInf}, {kInf, 0, kInf}, {kInf, kInf, 0}});
  const auto m = block({{4, kInf, 2}, {0, 1, kInf}});
  CHECK(min_plus(m, id) == m);
  CHECK(min_plus(m, id, MinPlusKernel::bounded_difference) == m);
  CHECK_THROWS_AS(min_plus(m, a), InputError);
}

TEST_CASE("bounded-difference kernel matches the naive kernel") {
  Rng rng(5);
  for (int iter = 0; iter < 100; ++iter) {
    DistanceBlock a(64, 64), b(64, 64);
    for (std::size_t j = 0; j < 64; ++j) a(0, j) = static_cast<std::int32_t>(rng.below(40));
    for (std::size_t i = 1; i < 64; ++i)
      for (std::size_t j = 0; j < 64; ++j)
        a(i, j) = std::max<std::int32_t>(0, a(i - 1, j) + static_cast<std::int32_t>(rng.below(3)) - 1);
    for (std::size_t i = 0; i < 64; ++i)
      for (std::size_t j = 0; j < 64; ++j)
        b(i, j) = rng.bernoulli(0.1) ? kInf : static_cast<std::int32_t>(rng.below(60));
    if (iter % 4 == 0)
      for (std::size_t j = 0; j < 64; j += 7)
        for (std::size_t i = 0; i < 64; ++i) a(i, j) = kInf;
    REQUIRE(min_plus(a, b, MinPlusKernel::bounded_difference) == min_plus(a, b));
  }
  // Arbitrary rows still give exact answers.
  for (int iter = 0; iter < 30; ++iter) {
    DistanceBlock a(20, 15), b(15, 12);
    for (std::size_t i = 0; i < 20; ++i)
      for (std::size_t j = 0; j < 15; ++j)
        a(i, j) = rng.bernoulli(0.2) ? kInf : static_cast<std::int32_t>(rng.below(100));
    for (std::size_t i = 0; i < 15; ++i)
      for (std::size_t j = 0; j < 12; ++j)
        b(i, j) = rng.bernoulli(0.2) ? kInf : static_cast<std::int32_t>(rng.below(100));
    REQUIRE(min_plus(a, b, MinPlusKernel::bounded_difference) == min_plus(a, b));
  }
}

TEST_CASE("weighted APSP on a small separator graph") {
  CHECK(weighted_apsp_small(block({{0, 7}, {7, 0}})).at(0, 1) == 7);
  const auto tri = weighted_apsp_small(block({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}));
  CHECK(tri.at(0, 2) == 2);
  CHECK(tri.at(2, 0) == 2);

  Rng rng(17);
  for (int iter = 0; iter < 40; ++iter) {
    DistanceBlock w(30, 30, kInf);
    for (std::size_t u = 0; u < 30; ++u)
      for (std::size_t v = u + 1; v < 30; ++v)
        if (rng.bernoulli(0.15)) w(u, v) = w(v, u) = 1 + static_cast<std::int32_t>(rng.below(20));
    CHECK(weighted_apsp_small(w) == dijkstra_all(w));
  }
}

TEST_CASE("nice partition examples") {
  SUBCASE("single Hamiltonian part") {
    const Graph g = path_graph(4);
    const auto d = build_decomposition(g, std::vector<Vertex>{}, 4);
    const auto p = nice_partition(g, d);
    REQUIRE(p.parts.size() == 1);
    CHECK(p.parts[0].size() == p.size_class);
    check_partition(g, d);
  }
  SUBCASE("nine-cycle with three separator vertices") {
    const Graph g = cycle_graph(9);
    const std::vector<Vertex> s{0, 3, 6};
    const auto d = build_decomposition(g, s, 5);
    const auto p = nice_partition(g, d);
    CHECK(p.size_class >= 3);
    for (const auto& part : p.parts) CHECK(part.size() == p.size_class);
    const auto before = oracle::apsp_bfs(g);
    const auto after = oracle::apsp_bfs(p.graph);
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
      const auto u = static_cast<Vertex>(rng.below(9)), v = static_cast<Vertex>(rng.below(9));
      CHECK(before.at(u, v) == after.at(u, v));
    }
    check_partition(g, d);
  }
  SUBCASE("disconnected input") {
    const Graph g = union_of_paths({3, 4, 2});
    const auto d = build_decomposition(g, std::vector<Vertex>{3}, 4);
    check_partition(g, d);
  }
  SUBCASE("separator only") {
    const Graph g = complete_graph(3);
    check_partition(g, build_decomposition(g, std::vector<Vertex>{0, 1, 2}, 3));
  }
}

TEST_CASE("nice partition preserves distances on planted graphs") {
  Rng rng(29);
  std::size_t probes = 0;
  for (int iter = 0; iter < 400; ++iter) {
    const auto inst = testing_support::random_planted(rng, 60, 6, 8);
    check_partition(inst.graph, decompose(inst));
    probes += static_cast<std::size_t>(inst.graph.n()) * static_cast<std::size_t>(inst.graph.n());
  }
  CHECK(probes >= 10000);
}

TEST_CASE("apsp named graphs") {
  const Graph p5 = path_graph(5);
  const auto d5 = apsp(p5, decompose_greedy(p5));
  for (Vertex u = 0; u < 5; ++u)
    for (Vertex v = 0; v < 5; ++v) CHECK(d5.at(u, v) == std::abs(u - v));

  const Graph star = star_graph(6);
  const auto ds = apsp(star, build_decomposition(star, std::vector<Vertex>{0}, 2));
  for (Vertex u = 0; u < 7; ++u)
    for (Vertex v = 0; v < 7; ++v)
      CHECK(ds.at(u, v) == (u == v ? 0 : (u == 0 || v == 0) ? 1 : 2));

  const Graph two = union_of_paths({2, 3});
  const auto dt = apsp(two, decompose_greedy(two));
  CHECK(dt.at(0, 1) == 1);
  CHECK(dt.at(0, 2) == kInf);
  CHECK(dt.at(2, 4) == 2);
}

TEST_CASE("apsp matches the BFS oracle on planted graphs") {
  Rng rng(41);
  for (int iter = 0; iter < 500; ++iter) {
    const auto inst = testing_support::random_planted(rng, 80, 6, 10);
    const auto d = decompose(inst);
    ApspOptions opt;
    opt.kernel = iter % 2 ? MinPlusKernel::bounded_difference : MinPlusKernel::naive;
    const auto got = apsp(inst.graph, d, opt);
    REQUIRE(got == oracle::apsp_bfs(inst.graph));
    REQUIRE_FALSE(distance_violation(got).has_value());
  }
}

TEST_CASE("apsp dense fallback") {
  const Graph g = cycle_graph(12);
  ApspOptions opt;
  opt.dense_exponent = 0.5;
  CHECK(apsp(g, decompose_greedy(g), opt) == oracle::apsp_bfs(g));
}

TEST_CASE("bounded-diameter APSP") {
  const Graph k33 = complete_bipartite(3, 3);
  const auto d = apsp_bounded_diameter(k33, decompose_greedy(k33), 2);
  CHECK(d == oracle::apsp_bfs(k33));

  const Graph c8 = cycle_graph(8);
  const auto e = apsp_bounded_diameter(c8, decompose_greedy(c8), 3);
  CHECK(e.at(0, 4) == kInf);
  CHECK(e.at(1, 5) == kInf);
  CHECK(e.at(0, 3) == 3);
  CHECK(e.at(0, 7) == 1);

  CHECK_THROWS_AS(apsp_bounded_diameter(c8, decompose_greedy(c8), 0), InputError);

  Rng rng(53);
  int checked = 0;
  for (int iter = 0; iter < 300; ++iter) {
    const auto inst = testing_support::random_planted(rng, 50, 5, 8);
    const auto want = oracle::apsp_bfs(inst.graph);
    std::int32_t diameter = 0;
    for (Vertex u = 0; u < inst.graph.n(); ++u)
      for (Vertex v = 0; v < inst.graph.n(); ++v)
        if (want.at(u, v) != kInf) diameter = std::max(diameter, want.at(u, v));
    if (diameter > 6) continue;
    ++checked;
    REQUIRE(apsp_bounded_diameter(inst.graph, decompose(inst), 6) == want);
  }
  CHECK(checked > 100);
}
