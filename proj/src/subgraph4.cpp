#include "vigl/subgraph4.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "vigl/block.hpp"
#include "vigl/errors.hpp"
#include "vigl/rng.hpp"

namespace vigl {

namespace {

using i128 = __int128;

i128 choose2(i128 x) { return x * (x - 1) / 2; }
i128 choose3(i128 x) { return x * (x - 1) * (x - 2) / 6; }

// Adjacency bitsets of an induced subgraph, indexed by position in `vertices`.
class DenseGraph {
 public:
  DenseGraph(const Graph& g, std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
    words_ = (vertices_.size() + 63) / 64;
    bits_.assign(vertices_.size() * words_, 0);
    std::vector<std::pair<Vertex, std::size_t>> index;
    index.reserve(vertices_.size());
    for (std::size_t i = 0; i < vertices_.size(); ++i) index.push_back({vertices_[i], i});
    std::sort(index.begin(), index.end());
    for (std::size_t a = 0; a < vertices_.size(); ++a)
      for (Vertex y : g.neighbors(vertices_[a])) {
        auto it = std::lower_bound(index.begin(), index.end(), std::pair<Vertex, std::size_t>{y, 0});
        if (it != index.end() && it->first == y) row(a)[it->second / 64] |= std::uint64_t{1} << (it->second % 64);
      }
  }

  std::size_t size() const { return vertices_.size(); }
  std::size_t words() const { return words_; }
  Vertex vertex(std::size_t a) const { return vertices_[a]; }
  std::uint64_t* row(std::size_t a) { return bits_.data() + a * words_; }
  const std::uint64_t* row(std::size_t a) const { return bits_.data() + a * words_; }
  bool adjacent(std::size_t a, std::size_t b) const { return row(a)[b / 64] >> (b % 64) & 1; }

  void complement() {
    for (std::size_t a = 0; a < size(); ++a) {
      for (std::size_t w = 0; w < words_; ++w) row(a)[w] = ~row(a)[w];
      row(a)[a / 64] &= ~(std::uint64_t{1} << (a % 64));
      trim(row(a));
    }
  }

  void trim(std::uint64_t* bits) const {
    if (size() % 64) bits[words_ - 1] &= (std::uint64_t{1} << (size() % 64)) - 1;
  }

 private:
  std::vector<Vertex> vertices_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

template <class F>
void for_each_bit(const std::uint64_t* bits, std::size_t words, F&& f) {
  for (std::size_t w = 0; w < words; ++w)
    for (std::uint64_t word = bits[w]; word; word &= word - 1)
      f(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
}

std::optional<std::array<std::size_t, 4>> dense_c4(const DenseGraph& h) {
  std::vector<std::uint64_t> common(h.words());
  for (std::size_t a = 0; a < h.size(); ++a)
    for (std::size_t b = a + 1; b < h.size(); ++b) {
      if (h.adjacent(a, b)) continue;
      for (std::size_t w = 0; w < h.words(); ++w) common[w] = h.row(a)[w] & h.row(b)[w];
      std::optional<std::array<std::size_t, 4>> hit;
      for_each_bit(common.data(), h.words(), [&](std::size_t x) {
        if (hit) return;
        for (std::size_t w = 0; w < h.words() && !hit; ++w) {
          std::uint64_t rest = common[w] & ~h.row(x)[w];
          if (w == x / 64) rest &= ~(std::uint64_t{1} << (x % 64));
          if (rest) hit = std::array<std::size_t, 4>{a, x, b, w * 64 + static_cast<std::size_t>(std::countr_zero(rest))};
        }
      });
      if (hit) return hit;
    }
  return std::nullopt;
}

// Two edges with no edge between them: positions (a, c, b, e) for edges ab, ce.
std::optional<std::array<std::size_t, 4>> dense_co_c4(const DenseGraph& h) {
  std::vector<std::uint64_t> rest(h.words());
  for (std::size_t a = 0; a < h.size(); ++a)
    for (std::size_t b = a + 1; b < h.size(); ++b) {
      if (!h.adjacent(a, b)) continue;
      for (std::size_t w = 0; w < h.words(); ++w) rest[w] = ~(h.row(a)[w] | h.row(b)[w]);
      rest[a / 64] &= ~(std::uint64_t{1} << (a % 64));
      rest[b / 64] &= ~(std::uint64_t{1} << (b % 64));
      h.trim(rest.data());
      std::optional<std::array<std::size_t, 4>> hit;
      for_each_bit(rest.data(), h.words(), [&](std::size_t c) {
        if (hit) return;
        for (std::size_t w = 0; w < h.words() && !hit; ++w)
          if (std::uint64_t e = h.row(c)[w] & rest[w])
            hit = std::array<std::size_t, 4>{a, c, b, w * 64 + static_cast<std::size_t>(std::countr_zero(e))};
      });
      if (hit) return hit;
    }
  return std::nullopt;
}

bool dense_clique(const DenseGraph& h, std::vector<std::uint64_t> candidates, int need) {
  if (need <= 0) return true;
  std::size_t count = 0;
  for (auto w : candidates) count += static_cast<std::size_t>(std::popcount(w));
  if (count < static_cast<std::size_t>(need)) return false;
  for (std::size_t w = 0; w < candidates.size(); ++w)
    while (candidates[w]) {
      const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(candidates[w]));
      candidates[w] &= candidates[w] - 1;
      std::vector<std::uint64_t> next(candidates.size());
      std::size_t left = 0;
      for (std::size_t x = 0; x < next.size(); ++x) {
        next[x] = candidates[x] & h.row(v)[x];
        left += static_cast<std::size_t>(std::popcount(next[x]));
      }
      if (left + 1 >= static_cast<std::size_t>(need) && dense_clique(h, std::move(next), need - 1)) return true;
      std::size_t remaining = 0;
      for (auto c : candidates) remaining += static_cast<std::size_t>(std::popcount(c));
      if (remaining < static_cast<std::size_t>(need)) return false;
    }
  return false;
}

bool has_clique(const DenseGraph& h, int size) {
  std::vector<std::uint64_t> all(h.words(), ~std::uint64_t{0});
  h.trim(all.data());
  return dense_clique(h, std::move(all), size);
}

// Labels four vertices so that vertices[i] plays vertex i of h's representative.
std::optional<InducedEmbedding> embed(const Graph& g, std::array<Vertex, 4> vs, FourGraph h) {
  std::array<int, 4> perm{0, 1, 2, 3};
  do {
    bool ok = true;
    for (int i = 0; i < 4 && ok; ++i)
      for (int j = i + 1; j < 4 && ok; ++j)
        ok = h.adjacent(i, j) == g.has_edge(vs[perm[i]], vs[perm[j]]);
    if (ok) {
      InducedEmbedding e{h, {vs[perm[0]], vs[perm[1]], vs[perm[2]], vs[perm[3]]}};
      return e;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

InducedEmbedding checked(const Graph& g, InducedEmbedding e) {
  if (!is_valid_embedding(g, e)) throw InternalError("induced embedding failed validation");
  return e;
}

InducedEmbedding from_dense(const Graph& g, const DenseGraph& h, const std::array<std::size_t, 4>& pos,
                            FourGraph target) {
  return checked(g, InducedEmbedding{target, {h.vertex(pos[0]), h.vertex(pos[1]), h.vertex(pos[2]), h.vertex(pos[3])}});
}

std::vector<Vertex> with_separator(const SeparatorDecomposition& d, std::initializer_list<std::size_t> parts) {
  std::vector<Vertex> vs(d.separator().begin(), d.separator().end());
  for (std::size_t i : parts) vs.insert(vs.end(), d.part(i).begin(), d.part(i).end());
  return vs;
}

struct Restricted {
  InducedSubgraph sub;
  SeparatorDecomposition d;
};

Restricted restrict_to(const Graph& g, const SeparatorDecomposition& d, const std::vector<Vertex>& kept) {
  Restricted r{induced_subgraph(g, kept), {}};
  std::vector<Vertex> sep;
  for (std::size_t i = 0; i < r.sub.original.size(); ++i)
    if (d.in_separator(r.sub.original[i])) sep.push_back(static_cast<Vertex>(i));
  r.d = build_decomposition(r.sub.graph, sep, d.k());
  return r;
}

void require_not_clique_type(FourGraph h) {
  if (h.id() == FourGraphId::k4 || h.id() == FourGraphId::co_k4)
    throw InputError("K4 and coK4 are handled by detect_clique / detect_independent_set");
}

}  // namespace

bool count_supported(FourGraph h) {
  switch (h.id()) {
    case FourGraphId::k4:
    case FourGraphId::co_k4:
    case FourGraphId::c4:
    case FourGraphId::co_c4:
      return false;
    default:
      return true;
  }
}

int count_modulus(FourGraph h) {
  switch (h.id()) {
    case FourGraphId::diamond:
    case FourGraphId::paw:
      return 6;
    case FourGraphId::claw:
    case FourGraphId::co_claw:
    case FourGraphId::p4:
    case FourGraphId::co_paw:
      return 4;
    case FourGraphId::co_diamond:
      return 2;
    default:
      throw InputError("no modular count for " + std::string(h.name()));
  }
}

std::int64_t count_mod(const Graph& g, const SeparatorDecomposition& d, FourGraph h) {
  const int q = count_modulus(h);
  const auto common = square_on_edges(g, d);
  const i128 n = g.n(), m = static_cast<i128>(g.m());
  i128 paths2 = 0, stars3 = 0, tri3 = 0, p4_raw = 0, paw = 0, diamond = 0;
  for (Vertex v = 0; v < g.n(); ++v) {
    const i128 deg = static_cast<i128>(g.degree(v));
    paths2 += choose2(deg);
    stars3 += choose3(deg);
    i128 twice_tri = 0;
    for (auto id : g.incident_edges(v)) twice_tri += common[id];
    paw += twice_tri / 2 * (deg - 2);
  }
  for (std::size_t id = 0; id < g.m(); ++id) {
    const auto& e = g.edges()[id];
    tri3 += common[id];
    p4_raw += static_cast<i128>(g.degree(e.u) - 1) * static_cast<i128>(g.degree(e.v) - 1);
    diamond += choose2(common[id]);
  }
  const i128 triangles = tri3 / 3;

  // Subgraph (not necessarily induced) counts on four vertices.
  const i128 s_co_diamond = m * choose2(n - 2);
  const i128 s_co_paw = paths2 * (n - 3);
  const i128 s_co_c4 = choose2(m) - paths2;
  const i128 s_claw = stars3;
  const i128 s_co_claw = triangles * (n - 3);
  const i128 s_p4 = p4_raw - 3 * triangles;
  const i128 s_paw = paw;
  const i128 s_diamond = diamond;

  // Induced counts by inclusion-exclusion; the C4 and K4 terms carry
  // coefficients divisible by q and are omitted.
  i128 c = 0;
  switch (h.id()) {
    case FourGraphId::diamond:
      c = s_diamond;
      break;
    case FourGraphId::paw:
      c = s_paw - 4 * s_diamond;
      break;
    case FourGraphId::claw:
      c = s_claw - s_paw + 2 * s_diamond;
      break;
    case FourGraphId::co_claw:
      c = s_co_claw - s_paw + 2 * s_diamond;
      break;
    case FourGraphId::p4:
      c = s_p4 - 2 * s_paw + 6 * s_diamond;
      break;
    case FourGraphId::co_paw:
      c = s_co_paw - 3 * s_claw - 3 * s_co_claw - 2 * s_p4 + 5 * s_paw - 8 * s_diamond;
      break;
    case FourGraphId::co_diamond:
      c = s_co_diamond - 2 * s_co_paw - 2 * s_co_c4 + 3 * s_claw + 3 * s_co_claw + 3 * s_p4 - 4 * s_paw +
          5 * s_diamond;
      break;
    default:
      break;
  }
  c %= q;
  if (c < 0) c += q;
  return static_cast<std::int64_t>(c);
}

std::size_t detection_rounds(double failure_prob) {
  if (!(failure_prob > 0.0 && failure_prob < 1.0)) throw InputError("failure probability must lie in (0, 1)");
  return static_cast<std::size_t>(std::ceil(std::log(1.0 / failure_prob) / std::log(16.0 / 15.0)));
}

bool detect_induced(const Graph& g, const SeparatorDecomposition& d, FourGraph h,
                    const InducedSearchOptions& options) {
  require_not_clique_type(h);
  if (h.id() == FourGraphId::c4) return detect_c4(g, d).has_value();
  if (h.id() == FourGraphId::co_c4) return detect_co_c4(g, d).has_value();
  const std::size_t rounds = detection_rounds(options.failure_prob);
  check_decomposition(g, d);
  if (count_mod(g, d, h) != 0) return true;
  std::vector<Vertex> kept;
  for (std::size_t r = 0; r < rounds; ++r) {
    Rng rng(derive_seed(options.seed, r));
    kept.clear();
    for (Vertex v = 0; v < g.n(); ++v)
      if (rng.bernoulli(0.5)) kept.push_back(v);
    if (kept.size() < 4) continue;
    auto sample = restrict_to(g, d, kept);
    if (count_mod(sample.sub.graph, sample.d, h) != 0) return true;
  }
  return false;
}

std::optional<InducedEmbedding> detect_c4(const Graph& g, const SeparatorDecomposition& d) {
  check_decomposition(g, d);
  const FourGraph c4(FourGraphId::c4);
  if (d.part_count() == 0) {
    DenseGraph h(g, with_separator(d, {}));
    if (auto p = dense_c4(h)) return from_dense(g, h, *p, c4);
    return std::nullopt;
  }
  for (std::size_t i = 0; i < d.part_count(); ++i) {
    DenseGraph h(g, with_separator(d, {i}));
    if (auto p = dense_c4(h)) return from_dense(g, h, *p, c4);
  }
  // A copy meeting two parts alternates between S and the parts: u, v in S
  // nonadjacent with common neighbours in two different parts.
  const auto& sep = d.separator();
  const std::size_t s = sep.size();
  std::vector<std::int64_t> first_part(s * s, -1);
  std::vector<Vertex> first_witness(s * s, -1);
  std::vector<std::size_t> sep_nb;
  for (std::size_t i = 0; i < d.part_count(); ++i)
    for (Vertex x : d.part(i)) {
      sep_nb.clear();
      for (Vertex y : g.neighbors(x))
        if (d.in_separator(y)) sep_nb.push_back(d.local_index(y));
      for (std::size_t a = 0; a < sep_nb.size(); ++a)
        for (std::size_t b = a + 1; b < sep_nb.size(); ++b) {
          const std::size_t u = std::min(sep_nb[a], sep_nb[b]), v = std::max(sep_nb[a], sep_nb[b]);
          if (g.has_edge(sep[u], sep[v])) continue;
          const std::size_t cell = u * s + v;
          if (first_part[cell] < 0) {
            first_part[cell] = static_cast<std::int64_t>(i);
            first_witness[cell] = x;
          } else if (first_part[cell] != static_cast<std::int64_t>(i)) {
            return checked(g, InducedEmbedding{c4, {sep[u], first_witness[cell], sep[v], x}});
          }
        }
    }
  return std::nullopt;
}

std::optional<InducedEmbedding> detect_co_c4(const Graph& g, const SeparatorDecomposition& d) {
  check_decomposition(g, d);
  const FourGraph co_c4(FourGraphId::co_c4);
  // An edge inside each of two parts: parts are mutually nonadjacent.
  std::optional<Edge> inner;
  std::size_t edge_part = 0;
  for (std::size_t i = 0; i < d.part_count(); ++i)
    for (Vertex x : d.part(i)) {
      bool done = false;
      for (Vertex y : g.neighbors(x))
        if (!d.in_separator(y)) {
          if (inner) return checked(g, InducedEmbedding{co_c4, {inner->u, x, inner->v, y}});
          inner = Edge{x, y};
          edge_part = i;
          done = true;
          break;
        }
      if (done) break;
    }

  // Every other copy lies in S + T_e + T_i for some i, or takes one private
  // neighbour from each of two parts.
  if (d.part_count() <= 1) {
    DenseGraph h(g, d.part_count() == 0 ? with_separator(d, {}) : with_separator(d, {0}));
    if (auto p = dense_co_c4(h)) return from_dense(g, h, *p, co_c4);
  }
  for (std::size_t i = 0; i < d.part_count(); ++i) {
    if (i == edge_part) continue;
    DenseGraph h(g, with_separator(d, {edge_part, i}));
    if (auto p = dense_co_c4(h)) return from_dense(g, h, *p, co_c4);
  }

  const auto& sep = d.separator();
  const std::size_t s = sep.size();
  if (s < 2) return std::nullopt;
  // private[u * s + v] holds up to two parts where u has a neighbour outside N(v).
  std::vector<std::array<std::int64_t, 2>> priv(s * s, {-1, -1});
  std::vector<std::int64_t> degree_in(s), common(s * s);
  std::vector<std::size_t> sep_nb;
  for (std::size_t i = 0; i < d.part_count(); ++i) {
    std::fill(degree_in.begin(), degree_in.end(), 0);
    std::fill(common.begin(), common.end(), 0);
    std::vector<std::size_t> touched;
    for (Vertex x : d.part(i)) {
      sep_nb.clear();
      for (Vertex y : g.neighbors(x))
        if (d.in_separator(y)) sep_nb.push_back(d.local_index(y));
      for (std::size_t a : sep_nb) {
        if (degree_in[a]++ == 0) touched.push_back(a);
        for (std::size_t b : sep_nb)
          if (a != b) ++common[a * s + b];
      }
    }
    for (std::size_t u : touched)
      for (std::size_t v = 0; v < s; ++v) {
        if (u == v || g.has_edge(sep[u], sep[v])) continue;
        if (degree_in[u] > common[u * s + v]) {
          auto& p = priv[u * s + v];
          if (p[0] < 0)
            p[0] = static_cast<std::int64_t>(i);
          else if (p[1] < 0)
            p[1] = static_cast<std::int64_t>(i);
        }
      }
  }
  auto private_neighbour = [&](std::size_t u, std::size_t v, std::int64_t part) {
    for (Vertex x : d.part(static_cast<std::size_t>(part)))
      if (g.has_edge(sep[u], x) && !g.has_edge(sep[v], x)) return x;
    throw InternalError("private neighbour count without a witness");
  };
  for (std::size_t u = 0; u < s; ++u)
    for (std::size_t v = u + 1; v < s; ++v) {
      const auto& pu = priv[u * s + v];
      const auto& pv = priv[v * s + u];
      if (pu[0] < 0 || pv[0] < 0) continue;
      std::int64_t iu = pu[0], iv = pv[0];
      if (iu == iv) {
        if (pu[1] >= 0)
          iu = pu[1];
        else if (pv[1] >= 0)
          iv = pv[1];
        else
          continue;
      }
      const Vertex x = private_neighbour(u, v, iu), y = private_neighbour(v, u, iv);
      return checked(g, InducedEmbedding{co_c4, {sep[u], sep[v], x, y}});
    }
  return std::nullopt;
}

namespace {

std::optional<InducedEmbedding> brute_force(const Graph& g, FourGraph h) {
  const Vertex n = g.n();
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      for (Vertex c = b + 1; c < n; ++c)
        for (Vertex e = c + 1; e < n; ++e)
          if (auto emb = embed(g, {a, b, c, e}, h)) return emb;
  return std::nullopt;
}

constexpr Vertex kBruteForceSize = 12;

// One self-reduction pass; nullopt when a detection misses or the budget runs out.
std::optional<InducedEmbedding> reduce_once(const Graph& g, const SeparatorDecomposition& d, FourGraph h,
                                            std::uint64_t seed) {
  std::size_t levels = 1;
  for (double size = g.n(); size > kBruteForceSize; size *= 0.8) ++levels;
  InducedSearchOptions inner{1.0 / (10.0 * static_cast<double>(levels)), seed};
  std::size_t budget = 5 * levels + 1, calls = 0;
  auto detect = [&](const Graph& x, const SeparatorDecomposition& dx) {
    inner.seed = derive_seed(seed, calls++);
    return detect_induced(x, dx, h, inner);
  };

  if (!detect(g, d)) return std::nullopt;
  std::vector<Vertex> all(static_cast<std::size_t>(g.n()));
  for (Vertex v = 0; v < g.n(); ++v) all[v] = v;
  Restricted cur = restrict_to(g, d, all);
  while (cur.sub.graph.n() > kBruteForceSize) {
    bool shrunk = false;
    for (Vertex cls = 0; cls < 5 && !shrunk; ++cls) {
      if (calls >= budget) return std::nullopt;
      std::vector<Vertex> kept;
      for (Vertex v = 0; v < cur.sub.graph.n(); ++v)
        if (v % 5 != cls) kept.push_back(v);
      auto next = restrict_to(cur.sub.graph, cur.d, kept);
      if (detect(next.sub.graph, next.d)) {
        for (auto& v : next.sub.original) v = cur.sub.original[v];
        cur = std::move(next);
        shrunk = true;
      }
    }
    if (!shrunk) return std::nullopt;
  }
  auto e = brute_force(cur.sub.graph, h);
  if (!e) return std::nullopt;
  for (auto& v : e->vertices) v = cur.sub.original[v];
  return checked(g, *e);
}

}  // namespace

std::optional<InducedEmbedding> find_induced(const Graph& g, const SeparatorDecomposition& d, FourGraph h,
                                             const InducedSearchOptions& options) {
  require_not_clique_type(h);
  if (h.id() == FourGraphId::c4) return detect_c4(g, d);
  if (h.id() == FourGraphId::co_c4) return detect_co_c4(g, d);
  detection_rounds(options.failure_prob);
  check_decomposition(g, d);
  const auto repeats = static_cast<std::size_t>(std::max(1.0, std::ceil(std::log2(1.0 / options.failure_prob))));
  for (std::size_t r = 0; r < repeats; ++r)
    if (auto e = reduce_once(g, d, h, derive_seed(options.seed, 0x10000 + r))) return e;
  return std::nullopt;
}

bool detect_clique(const Graph& g, const SeparatorDecomposition& d, int size) {
  if (size < 1) throw InputError("clique size must be at least 1");
  check_decomposition(g, d);
  if (d.part_count() == 0) return has_clique(DenseGraph(g, with_separator(d, {})), size);
  for (std::size_t i = 0; i < d.part_count(); ++i)
    if (has_clique(DenseGraph(g, with_separator(d, {i})), size)) return true;
  return false;
}

bool detect_independent_set(const Graph& g, const SeparatorDecomposition& d, int size) {
  if (size < 1) throw InputError("independent set size must be at least 1");
  check_decomposition(g, d);
  if (d.component_count() >= static_cast<std::size_t>(size)) return true;
  std::vector<Vertex> all(static_cast<std::size_t>(g.n()));
  for (Vertex v = 0; v < g.n(); ++v) all[v] = v;
  DenseGraph h(g, std::move(all));
  h.complement();
  return has_clique(h, size);
}

}  // namespace vigl
