#include <doctest.h>

#include "support.hpp"
#include "vigl/errors.hpp"
#include "vigl/matching.hpp"
#include "vigl/oracles.hpp"

using namespace vigl;
using testing_support::decompose;
using testing_support::decompose_greedy;

namespace {

TutteInstance instance(const Graph& g, std::uint64_t seed = 7) {
  return TutteInstance::random(g, decompose_greedy(g), Field::standard(32), seed);
}

}  // namespace

TEST_CASE("Tutte rank on small graphs") {
  CHECK(tutte_rank(instance(complete_graph(2))) == 2);
  CHECK(tutte_rank(instance(complete_graph(3))) == 2);
  CHECK(tutte_rank(instance(path_graph(4))) == 4);
  CHECK(tutte_rank(instance(petersen_graph())) == 10);
  CHECK(tutte_rank(instance(star_graph(6))) == 2);
  CHECK(tutte_rank(instance(Graph(5))) == 0);
}

TEST_CASE("structured basis matches dense rank and is nonsingular") {
  Rng rng(61);
  for (int iter = 0; iter < 300; ++iter) {
    auto inst = testing_support::random_planted(rng, 30, 5, 7);
    auto d = decompose(inst);
    const Field f = Field::standard(iter % 2 ? 8 : 32);
    auto t = TutteInstance::random(inst.graph, d, f, rng.next());
    const auto x = tutte_basis(t);
    const auto dense = to_dense(t.matrix);
    REQUIRE(x.size() == rank(dense));
    CHECK(x.size() % 2 == 0);
    Index xi(x.begin(), x.end());
    CHECK(rank(principal(dense, xi)) == x.size());
    CHECK(x.size() / 2 <= oracle::max_matching(inst.graph).size());
  }
}

TEST_CASE("Schur chain agrees with the dense determinant") {
  Rng rng(62);
  for (int iter = 0; iter < 300; ++iter) {
    auto inst = testing_support::random_planted(rng, 16, 4, 5);
    auto t = TutteInstance::random(inst.graph, decompose(inst), Field::standard(iter % 3 ? 32 : 8), rng.next());
    CHECK(tutte_nonsingular(t) == !det(to_dense(t.matrix)).is_zero());
  }
}

TEST_CASE("perfect matching detection") {
  auto c6 = cycle_graph(6);
  CHECK(has_perfect_matching(c6, decompose_greedy(c6)));
  auto c5 = cycle_graph(5);
  CHECK_FALSE(has_perfect_matching(c5, decompose_greedy(c5)));
  auto star = star_graph(4);
  CHECK_FALSE(has_perfect_matching(star, decompose_greedy(star)));
  Graph empty(0);
  CHECK(has_perfect_matching(empty, decompose_greedy(empty)));
  CHECK(no_answer_error_bound(60, Field::standard(32), 3) < 1e-20);

  Rng rng(63);
  for (int iter = 0; iter < 300; ++iter) {
    auto inst = testing_support::random_planted(rng, 40, 5, 8);
    const bool want = 2 * oracle::max_matching(inst.graph).size() == static_cast<std::size_t>(inst.graph.n());
    MatchingOptions opt;
    opt.seed = rng.next();
    CHECK(has_perfect_matching(inst.graph, decompose(inst), opt) == want);
  }
}

TEST_CASE("delete_edges_crossing") {
  const Field f = Field::standard(32);
  Rng rng(64);
  SUBCASE("no cross entries is a no-op") {
    // Two disjoint edges 0-1 and 2-3; crossing sides {0,1} and {2,3}.
    auto g = Graph(4, std::vector<Edge>{{0, 1}, {2, 3}});
    auto m = to_dense(TutteInstance::random(g, decompose_greedy(g), f, 3).matrix);
    auto r = delete_edges_crossing(m, inverse(m), {0, 1}, {2, 3});
    CHECK(r.matrix == m);
    CHECK(r.surviving.empty());
  }
  SUBCASE("an undeletable edge survives") {
    auto g = path_graph(2);
    auto m = to_dense(TutteInstance::random(g, decompose_greedy(g), f, 3).matrix);
    auto r = delete_edges_crossing(m, inverse(m), {0}, {1});
    CHECK(r.surviving.size() == 1);
  }
  SUBCASE("surviving entries form a matching and the inverse stays exact") {
    for (int iter = 0; iter < 150; ++iter) {
      // Random graph with a planted perfect matching between the halves.
      const auto half = static_cast<Vertex>(1 + rng.below(7));
      std::vector<Edge> edges;
      for (Vertex i = 0; i < half; ++i) edges.push_back({i, static_cast<Vertex>(half + i)});
      for (Vertex u = 0; u < 2 * half; ++u)
        for (Vertex v = u + 1; v < 2 * half; ++v)
          if (v != u + half && rng.bernoulli(0.35)) edges.push_back({u, v});
      auto g = Graph(2 * half, edges);
      auto m = to_dense(TutteInstance::random(g, decompose_greedy(g), f, rng.next()).matrix);
      Index u_set, w_set;
      for (Vertex i = 0; i < half; ++i) u_set.push_back(static_cast<std::size_t>(i));
      for (Vertex i = half; i < 2 * half; ++i) w_set.push_back(static_cast<std::size_t>(i));
      auto r = delete_edges_crossing(m, inverse(m), u_set, w_set);
      CHECK(r.inverse == inverse(r.matrix));
      std::vector<int> deg(static_cast<std::size_t>(2 * half), 0);
      for (auto [a, b] : r.surviving) {
        ++deg[a];
        ++deg[b];
      }
      // Every within-side vertex set is unaffected, so each side vertex may
      // stay unmatched; none is matched twice.
      for (int c : deg) CHECK(c <= 1);
      // The pruned graph keeps a perfect matching.
      std::vector<Edge> kept;
      for (const auto& e : g.edges()) {
        const bool cross = (e.u < half) != (e.v < half);
        if (!cross || !r.matrix(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v)).is_zero())
          kept.push_back(e);
      }
      Graph pruned(g.n(), kept);
      CHECK(2 * oracle::max_matching(pruned).size() == static_cast<std::size_t>(g.n()));
    }
  }
}

TEST_CASE("dense perfect matching") {
  const Field f = Field::standard(32);
  auto pet = petersen_graph();
  auto m = to_dense(TutteInstance::random(pet, decompose_greedy(pet), f, 5).matrix);
  std::vector<Vertex> vs(10);
  for (Vertex v = 0; v < 10; ++v) vs[v] = v;
  auto pm = dense_perfect_matching(m, vs);
  REQUIRE(pm);
  CHECK(is_perfect_matching(pet, *pm));
  auto c5 = cycle_graph(5);
  auto m5 = to_dense(TutteInstance::random(c5, decompose_greedy(c5), f, 5).matrix);
  CHECK_FALSE(dense_perfect_matching(m5, {0, 1, 2, 3, 4}));
}

TEST_CASE("find_perfect_matching") {
  auto c6 = cycle_graph(6);
  auto pm = find_perfect_matching(c6, decompose_greedy(c6));
  REQUIRE(pm);
  CHECK(pm->size() == 3);
  CHECK(is_perfect_matching(c6, *pm));
  auto c5 = cycle_graph(5);
  CHECK_FALSE(find_perfect_matching(c5, decompose_greedy(c5)));

  Rng rng(65);
  int positives = 0;
  for (int iter = 0; iter < 300; ++iter) {
    auto inst = testing_support::random_planted(rng, 40, 5, 8);
    auto d = decompose(inst);
    const bool want = 2 * oracle::max_matching(inst.graph).size() == static_cast<std::size_t>(inst.graph.n());
    MatchingOptions opt;
    opt.seed = rng.next();
    MatchingStats stats;
    auto got = find_perfect_matching(inst.graph, d, opt, &stats);
    REQUIRE(got.has_value() == want);
    if (got) {
      ++positives;
      CHECK(is_perfect_matching(inst.graph, *got));
      CHECK(stats.attempts <= 2);
      CHECK(stats.failure_bound > 0.0);
      CHECK(stats.failure_bound < 0.1);
    }
  }
  CHECK(positives > 30);
}

TEST_CASE("maximum matching") {
  auto star = star_graph(6);
  CHECK(max_matching(star, decompose_greedy(star)).size() == 1);
  auto p4 = path_graph(4);
  CHECK(max_matching(p4, decompose_greedy(p4)).size() == 2);
  Graph empty(3);
  CHECK(max_matching(empty, decompose_greedy(empty)).size() == 0);

  Rng rng(66);
  for (int iter = 0; iter < 300; ++iter) {
    auto inst = testing_support::random_planted(rng, 50, 6, 10);
    auto d = decompose(inst);
    MatchingOptions opt;
    opt.seed = rng.next();
    opt.field_degree = 32;
    MatchingStats stats;
    auto m = max_matching(inst.graph, d, opt, &stats);
    CHECK(is_valid_matching(inst.graph, m));
    CHECK(m.size() == oracle::max_matching(inst.graph).size());
    CHECK(stats.attempts == 1);
  }
}

TEST_CASE("max_matching size equals half the rank of its instantiation") {
  Rng rng(67);
  for (int iter = 0; iter < 100; ++iter) {
    auto inst = testing_support::random_planted(rng, 30, 5, 8);
    auto d = decompose(inst);
    MatchingOptions opt;
    opt.seed = rng.next();
    opt.field_degree = 32;
    const Field f = matching_field(static_cast<std::size_t>(inst.graph.n()), 32);
    auto t = TutteInstance::random(inst.graph, d, f, derive_seed(opt.seed, 0));
    MatchingStats stats;
    auto m = max_matching(inst.graph, d, opt, &stats);
    if (stats.attempts == 1) CHECK(2 * m.size() == tutte_rank(t));
  }
}

TEST_CASE("Schur chain conserves the determinant step by step") {
  Rng rng(68);
  int checked = 0;
  for (int iter = 0; iter < 200; ++iter) {
    auto inst = testing_support::random_planted(rng, 16, 4, 5);
    auto t = TutteInstance::random(inst.graph, decompose(inst), Field::standard(32), rng.next());
    auto chain = schur_chain(t);
    if (!chain) continue;
    const Field& f = t.field;
    const std::size_t parts = chain->t_prime.size();
    // B_i over S* and T'_i, ..., T'_nu.
    auto b_matrix = [&](std::size_t i) {
      std::vector<std::size_t> offset;
      std::size_t size = chain->s_star.size();
      for (std::size_t j = i; j < parts; ++j) {
        offset.push_back(size);
        size += chain->t_prime[j].size();
      }
      FieldMatrix b(f, size, size);
      const std::size_t s = chain->s_star.size();
      for (std::size_t r = 0; r < s; ++r)
        for (std::size_t c = 0; c < s; ++c) b(r, c) = chain->gamma[i](r, c);
      for (std::size_t j = i; j < parts; ++j) {
        const std::size_t o = offset[j - i], a = chain->t_prime[j].size();
        for (std::size_t r = 0; r < a; ++r) {
          for (std::size_t c = 0; c < a; ++c) b(o + r, o + c) = chain->alpha[j](r, c);
          for (std::size_t c = 0; c < s; ++c) b(o + r, c) = b(c, o + r) = chain->beta[j](r, c);
        }
      }
      return b;
    };
    CHECK(det(b_matrix(0)) == det(to_dense(t.matrix)));
    for (std::size_t i = 0; i < parts; ++i)
      CHECK(det(b_matrix(i)) == f.mul(det(chain->alpha[i]), det(b_matrix(i + 1))));
    ++checked;
  }
  CHECK(checked > 50);
}
