#include <doctest.h>

#include <bit>

#include "support.hpp"
#include "vigl/block.hpp"
#include "vigl/errors.hpp"
#include "vigl/gf.hpp"
#include "vigl/oracles.hpp"

using namespace vigl;
using testing_support::random_planted;

namespace {

// Schoolbook polynomial product followed by long division.
std::uint64_t reference_mul(std::uint64_t a, std::uint64_t b, std::uint64_t modulus, int q) {
  unsigned __int128 p = 0;
  for (int i = 0; i < 64; ++i)
    if (b >> i & 1) p ^= static_cast<unsigned __int128>(a) << i;
  for (int d = 127; d >= q; --d)
    if (static_cast<std::uint64_t>(p >> d) & 1) p ^= static_cast<unsigned __int128>(modulus) << (d - q);
  return static_cast<std::uint64_t>(p);
}

// Irreducible iff no nonconstant divisor of degree <= deg/2.
bool reference_irreducible(std::uint64_t f, int deg) {
  auto mod = [](std::uint64_t a, std::uint64_t m) {
    const int dm = 63 - std::countl_zero(m);
    while (a && 63 - std::countl_zero(a) >= dm) a ^= m << ((63 - std::countl_zero(a)) - dm);
    return a;
  };
  for (std::uint64_t g = 2; g < (std::uint64_t{1} << (deg / 2 + 1)); ++g)
    if (mod(f, g) == 0) return false;
  return true;
}

FieldMatrix random_alternating(const Field& f, std::size_t n, Rng& rng, double density = 1.0) {
  FieldMatrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.bernoulli(density)) m(i, j) = m(j, i) = f.random_nonzero(rng);
  return m;
}

const int kDegrees[] = {8, 16, 20, 32};

}  // namespace

TEST_CASE("field axioms") {
  for (int q : kDegrees) {
    const Field f = Field::standard(q);
    Rng rng(static_cast<std::uint64_t>(q));
    for (int i = 0; i < 10000; ++i) {
      const auto a = f.random(rng), b = f.random(rng), c = f.random(rng);
      CHECK(Field::add(a, a).is_zero());
      CHECK(f.mul(Field::one(), a) == a);
      CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
      CHECK(f.mul(a, Field::add(b, c)) == Field::add(f.mul(a, b), f.mul(a, c)));
      CHECK(f.mul(a, b) == f.mul(b, a));
      CHECK(f.mul(a, b).value == reference_mul(a.value, b.value, f.modulus(), q));
      if (!a.is_zero()) CHECK(f.mul(a, f.inv(a)) == Field::one());
    }
    CHECK_THROWS_AS(f.inv(Field::zero()), ArithmeticError);
  }
}

TEST_CASE("small field example and moduli") {
  const Field f(3, 0xB);
  // x * x^2 = x^3 = x + 1 modulo x^3 + x + 1
  CHECK(f.mul(f.element(2), f.element(4)).value == reference_mul(2, 4, 0xB, 3));
  CHECK(f.mul(f.element(2), f.element(4)).value == 3);
  for (int q : kDegrees) CHECK(is_irreducible(Field::standard(q).modulus(), q));
  CHECK_THROWS_AS(Field(8, 0x101), InputError);
  int count = 0;
  for (std::uint64_t f8 = 0x100; f8 < 0x200; ++f8) {
    const bool fast = is_irreducible(f8, 8);
    CHECK(fast == reference_irreducible(f8, 8));
    count += fast;
  }
  CHECK(count == 30);
  for (std::uint64_t f6 = 0x40; f6 < 0x80; ++f6) CHECK(is_irreducible(f6, 6) == reference_irreducible(f6, 6));
  CHECK(Field::for_vertex_count(10).degree() == 20);
  CHECK(Field::for_vertex_count(200).degree() == 32);
}

TEST_CASE("inverse, rank and determinant") {
  const Field f = Field::standard(32);
  CHECK(inverse(FieldMatrix::identity(f, 5)) == FieldMatrix::identity(f, 5));
  CHECK(rank(FieldMatrix(f, 4, 6)) == 0);
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.below(9);
    auto a = FieldMatrix::random(f, n, n, rng);
    auto b = FieldMatrix::random(f, n, n, rng);
    CHECK(det(mat_mul(a, b)) == f.mul(det(a), det(b)));
    CHECK(det(a.transposed()) == det(a));
    if (auto inv = try_inverse(a)) {
      CHECK(mat_mul(*inv, a) == FieldMatrix::identity(f, n));
      CHECK(mat_mul(a, *inv) == FieldMatrix::identity(f, n));
    }
  }
  FieldMatrix singular(f, 3, 3);
  singular(0, 0) = singular(1, 1) = Field::one();
  CHECK(det(singular).is_zero());
  try {
    inverse(singular);
    CHECK(false);
  } catch (const SingularMatrixError& e) {
    CHECK(e.rank() == 2);
  }
}

TEST_CASE("Tutte rank of small graphs") {
  const Field f = Field::standard(32);
  Rng rng(17);
  Graph p4 = path_graph(4);
  auto t = random_tutte(p4, build_decomposition(p4, std::vector<Vertex>{}, 4), f, rng);
  CHECK(rank(to_dense(t)) == 2 * oracle::max_matching(p4).size());
  CHECK(rank(to_dense(t)) == 4);
  for (int trial = 0; trial < 100; ++trial) {
    auto inst = random_planted(rng, 24);
    auto d = testing_support::decompose(inst);
    auto dense = to_dense(random_tutte(inst.graph, d, f, rng));
    const auto r = rank(dense);
    CHECK(r % 2 == 0);
    CHECK(r == 2 * oracle::max_matching(inst.graph).size());
  }
}

TEST_CASE("row basis") {
  const Field f = Field::standard(16);
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows = 1 + rng.below(8), cols = 1 + rng.below(8);
    FieldMatrix a(f, rows, cols);
    // low-rank input: a few random rows repeated with random multiples
    auto base = FieldMatrix::random(f, 1 + rng.below(4), cols, rng);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t b = 0; b < base.rows(); ++b) {
        const auto c = rng.bernoulli(0.5) ? f.random(rng) : Field::zero();
        for (std::size_t j = 0; j < cols; ++j) a(i, j) = Field::add(a(i, j), f.mul(c, base(b, j)));
      }
    const auto x = row_basis(a);
    const auto all_cols = complement_index(cols, {});
    CHECK(x.size() == rank(a));
    CHECK(rank(submatrix(a, x, all_cols)) == x.size());
    // greedy: every skipped row depends on the chosen rows before it
    for (std::size_t i = 0; i < rows; ++i) {
      if (std::find(x.begin(), x.end(), i) != x.end()) continue;
      Index prefix;
      for (auto r : x)
        if (r < i) prefix.push_back(r);
      Index with = prefix;
      with.push_back(i);
      CHECK(rank(submatrix(a, with, all_cols)) == prefix.size());
    }
    CHECK(column_basis(a).size() == x.size());
  }
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_alternating(f, 1 + rng.below(10), rng, 0.3);
    auto x = row_basis(a);
    CHECK(rank(principal(a, x)) == x.size());
  }
}

TEST_CASE("blocked rectangular product") {
  const Field f = Field::standard(20);
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t k = 1 + rng.below(6), n = 1 + rng.below(30);
    auto a = FieldMatrix::random(f, k, n, rng);
    auto b = FieldMatrix::random(f, n, k, rng);
    CHECK(mat_mul_blocked(a, b, k) == mat_mul(a, b));
    CHECK(mat_mul_blocked(b, a, 1 + rng.below(7)) == mat_mul(b, a));
  }
}

TEST_CASE("Schur complement") {
  const Field f = Field::standard(32);
  Rng rng(6);
  FieldMatrix blocks(f, 4, 4);
  blocks(0, 0) = f.element(3);
  blocks(1, 1) = f.element(5);
  blocks(0, 1) = f.element(7);
  blocks(2, 3) = f.element(9);
  blocks(3, 2) = f.element(11);
  const Index x{0, 1}, y{2, 3};
  CHECK(schur_complement(blocks, x) == principal(blocks, y));

  FieldMatrix two(f, 2, 2);
  two(0, 0) = two(0, 1) = two(1, 0) = Field::one();
  auto s = schur_complement(two, Index{0});
  REQUIRE(s.rows() == 1);
  CHECK(s(0, 0) == Field::one());
  CHECK(det(two) == f.mul(det(principal(two, Index{0})), det(s)));

  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.below(7);
    auto a = FieldMatrix::random(f, n, n, rng);
    Index xs;
    for (std::size_t i = 0; i < n; ++i)
      if (rng.bernoulli(0.5)) xs.push_back(i);
    if (!try_inverse(principal(a, xs))) continue;
    CHECK(det(a) == f.mul(det(principal(a, xs)), det(schur_complement(a, xs))));
  }
  FieldMatrix zero(f, 3, 3);
  CHECK_THROWS_AS(schur_complement(zero, Index{0}), PreconditionError);
}

TEST_CASE("local inverse updates") {
  const Field f = Field::standard(32);
  Rng rng(7);
  auto m = FieldMatrix::random(f, 6, 6, rng);
  while (!try_inverse(m)) m = FieldMatrix::random(f, 6, 6, rng);
  const auto n = inverse(m);
  const Index s{1, 4}, t{0, 2, 3};
  auto same = harvey_update(n, FieldMatrix(f, 2, 3), s, t);
  REQUIRE(same);
  CHECK(*same == n);

  // rank-one change of the 2x2 identity
  auto id = FieldMatrix::identity(f, 2);
  FieldMatrix delta(f, 1, 1);
  delta(0, 0) = f.element(6);
  auto updated = harvey_update(id, delta, Index{0}, Index{1});
  REQUIRE(updated);
  auto modified = id;
  modified(0, 1) = f.element(6);
  CHECK(*updated == inverse(modified));

  int accepted = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto a = FieldMatrix::random(f, 8, 8, rng);
    auto a_inv = try_inverse(a);
    if (!a_inv) continue;
    Index rows, cols;
    for (std::size_t i = 0; i < 8; ++i) {
      if (rng.bernoulli(0.4)) rows.push_back(i);
      if (rng.bernoulli(0.4)) cols.push_back(i);
    }
    auto d = FieldMatrix::random(f, rows.size(), cols.size(), rng);
    auto b = a;
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j)
        b(rows[i], cols[j]) = Field::add(b(rows[i], cols[j]), d(i, j));
    auto up = harvey_update(*a_inv, d, rows, cols);
    auto re = try_inverse(b);
    CHECK(up.has_value() == re.has_value());
    if (up && re) {
      CHECK(*up == *re);
      ++accepted;
    }
  }
  CHECK(accepted > 150);

  // cancelling the whole matrix is rejected
  const Index all{0, 1, 2, 3, 4, 5};
  CHECK_FALSE(harvey_update(n, m, all, all).has_value());
}

TEST_CASE("Pfaffian") {
  const Field f = Field::standard(32);
  Rng rng(8);
  FieldMatrix two(f, 2, 2);
  two(0, 1) = two(1, 0) = f.element(12345);
  CHECK(pfaffian_small(two) == f.element(12345));
  CHECK(pfaffian_small(FieldMatrix(f, 4, 4)).is_zero());
  for (std::size_t n = 0; n <= 10; ++n)
    for (int trial = 0; trial < 20; ++trial) {
      auto a = random_alternating(f, n, rng, 0.7);
      auto pf = pfaffian_small(a);
      if (n % 2)
        CHECK(pf.is_zero());
      else
        CHECK(f.mul(pf, pf) == det(a));
    }
  FieldMatrix diag(f, 2, 2);
  diag(0, 0) = Field::one();
  CHECK_THROWS_AS(pfaffian_small(diag), PreconditionError);
}

TEST_CASE("debug text round trip") {
  const Field f = Field::standard(20);
  Rng rng(9);
  auto a = FieldMatrix::random(f, 3, 4, rng);
  const auto text = to_debug_string(a);
  CHECK(text.rfind("gf 20 100009 3 4\n", 0) == 0);
  CHECK(from_debug_string(text) == a);
}

TEST_CASE("structured products match dense products") {
  const Field f = Field::standard(32);
  Rng rng(10);
  for (int trial = 0; trial < 40; ++trial) {
    auto inst = random_planted(rng, 64, 6, 10);
    auto d = testing_support::decompose(inst);
    auto t = random_tutte(inst.graph, d, f, rng);
    const auto n = static_cast<std::size_t>(inst.graph.n());
    const auto dense = to_dense(t);
    auto m = FieldMatrix::random(f, n, n, rng);
    CHECK(structured_mul(t, m, Side::left) == mat_mul(dense, m));
    CHECK(structured_mul(t, m, Side::right) == mat_mul(m, dense));
    CHECK(structured_mul(t, FieldMatrix::identity(f, n)) == dense);
    CHECK(structured_mul(t, FieldMatrix(f, n, n)).is_zero());

    auto adj = block_adjacency(inst.graph, d);
    IntMatrix im(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) im(i, j) = static_cast<std::int64_t>(rng.below(5));
    const auto da = to_dense(adj);
    CHECK(structured_mul(adj, im, Side::left) == multiply(da, im));
    CHECK(structured_mul(adj, im, Side::right) == multiply(im, da));
    for (Vertex u = 0; u < inst.graph.n(); ++u)
      for (Vertex v = 0; v < inst.graph.n(); ++v)
        CHECK(da(u, v) == (inst.graph.has_edge(u, v) ? 1 : 0));
  }
}

TEST_CASE("squares on edges") {
  auto run = [](const Graph& g) {
    return square_on_edges(g, testing_support::decompose_greedy(g));
  };
  for (auto x : run(complete_graph(3))) CHECK(x == 1);
  for (auto x : run(cycle_graph(4))) CHECK(x == 0);
  for (auto x : run(petersen_graph())) CHECK(x == 0);
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto inst = random_planted(rng, 50, 5, 8);
    auto sq = square_on_edges(inst.graph, testing_support::decompose(inst));
    for (std::size_t id = 0; id < inst.graph.m(); ++id) {
      const auto& e = inst.graph.edges()[id];
      std::int64_t common = 0;
      for (Vertex w : inst.graph.neighbors(e.u)) common += inst.graph.has_edge(w, e.v);
      CHECK(sq[id] == common);
    }
  }
}
