#include "vigl/matching.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "vigl/errors.hpp"
#include "vigl/rng.hpp"

namespace vigl {

TutteInstance TutteInstance::random(const Graph& g, const SeparatorDecomposition& d, const Field& f,
                                    std::uint64_t seed) {
  TutteInstance t{g, d, f, {}, {}, seed};
  Rng rng(seed);
  t.values.reserve(g.m());
  for (std::size_t i = 0; i < g.m(); ++i) t.values.push_back(f.random_nonzero(rng));
  t.matrix = tutte_from_values(g, d, f, t.values);
  return t;
}

TutteInstance TutteInstance::restricted(const std::vector<Vertex>& vertices) const {
  auto sub = induced_subgraph(graph, vertices);
  std::vector<Vertex> sep;
  for (std::size_t i = 0; i < sub.original.size(); ++i)
    if (decomposition.in_separator(sub.original[i])) sep.push_back(static_cast<Vertex>(i));
  TutteInstance t{sub.graph, build_decomposition(sub.graph, sep, decomposition.k()), field, {}, {}, seed};
  for (const auto& e : t.graph.edges())
    t.values.push_back(values[*graph.edge_id(sub.original[e.u], sub.original[e.v])]);
  t.matrix = tutte_from_values(t.graph, t.decomposition, field, t.values);
  return t;
}

Field matching_field(std::size_t n, int field_degree) {
  return field_degree == 0 ? Field::for_vertex_count(n) : Field::standard(field_degree);
}

namespace {

constexpr std::size_t kDummy = SIZE_MAX;

Index real_of(const Index& idx) {
  Index out;
  for (auto i : idx)
    if (i != kDummy) out.push_back(i);
  return out;
}

Index concat(const Index& a, const Index& b) {
  Index out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Index padded(Index idx, std::size_t size) {
  idx.resize(size, kDummy);
  return idx;
}

// Harvey's recursive elimination on a nonsingular alternating matrix. Every
// call receives the inverse restricted to its own index set and leaves the
// parent's restricted inverse consistent through harvey_update.
class Eliminator {
 public:
  explicit Eliminator(FieldMatrix& m) : m_(m) {}

  template <class Run>
  void child(const Index& parent, FieldMatrix& inv, const Index& sub, Run&& run) {
    if (sub.empty()) return;
    Index pos;
    pos.reserve(sub.size());
    for (auto v : sub) pos.push_back(static_cast<std::size_t>(std::find(parent.begin(), parent.end(), v) - parent.begin()));
    FieldMatrix local = principal(inv, pos);
    const FieldMatrix before = principal(m_, sub);
    run(local);
    const FieldMatrix delta = add(before, principal(m_, sub));
    if (delta.is_zero()) return;
    auto next = harvey_update(inv, delta, pos, pos);
    if (!next) throw InternalError("local inverse inconsistent: deletion made the matrix singular");
    inv = *std::move(next);
  }

  // u and w have equal power-of-two length; inv is over real(u) ++ real(w).
  void crossing(const Index& u, const Index& w, FieldMatrix& inv) {
    const Index ru = real_of(u), rw = real_of(w);
    if (ru.empty() || rw.empty()) return;
    if (u.size() == 1) {
      const std::size_t a = ru[0], b = rw[0];
      const FieldElement x = m_(a, b);
      if (x.is_zero()) return;
      // Deletable iff I + Delta inv[{a,b}] is nonsingular, Delta = [[0,x],[x,0]].
      const Field& f = m_.field();
      FieldMatrix k = FieldMatrix::identity(f, 2);
      for (std::size_t c = 0; c < 2; ++c) {
        k(0, c) = Field::add(k(0, c), f.mul(x, inv(1, c)));
        k(1, c) = Field::add(k(1, c), f.mul(x, inv(0, c)));
      }
      if (!det(k).is_zero()) m_(a, b) = m_(b, a) = Field::zero();
      return;
    }
    const std::size_t h = u.size() / 2;
    const Index parts_u[2] = {Index(u.begin(), u.begin() + h), Index(u.begin() + h, u.end())};
    const Index parts_w[2] = {Index(w.begin(), w.begin() + h), Index(w.begin() + h, w.end())};
    const Index parent = concat(ru, rw);
    for (const auto& pu : parts_u)
      for (const auto& pw : parts_w)
        child(parent, inv, concat(real_of(pu), real_of(pw)), [&](FieldMatrix& local) { crossing(pu, pw, local); });
  }

  void within(const Index& idx, FieldMatrix& inv) {
    if (idx.size() <= 1) return;
    const std::size_t h = idx.size() / 2;
    const Index a(idx.begin(), idx.begin() + h), b(idx.begin() + h, idx.end());
    child(idx, inv, a, [&](FieldMatrix& local) { within(a, local); });
    child(idx, inv, b, [&](FieldMatrix& local) { within(b, local); });
    const std::size_t size = std::bit_ceil(std::max(a.size(), b.size()));
    child(idx, inv, idx, [&](FieldMatrix& local) { crossing(padded(a, size), padded(b, size), local); });
  }

 private:
  FieldMatrix& m_;
};

Index iota_index(std::size_t n) {
  Index out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i;
  return out;
}

}  // namespace

CrossingResult delete_edges_crossing(FieldMatrix m, FieldMatrix inverse, const Index& u_set, const Index& w_set) {
  if (!m.square() || inverse.rows() != m.rows() || inverse.cols() != m.cols())
    throw InputError("delete_edges_crossing dimension mismatch");
  const std::size_t size = std::bit_ceil(std::max<std::size_t>({u_set.size(), w_set.size(), 1}));
  Eliminator e(m);
  const Index all = iota_index(m.rows());
  e.child(all, inverse, concat(u_set, w_set),
          [&](FieldMatrix& local) { e.crossing(padded(u_set, size), padded(w_set, size), local); });
  if (mat_mul(m, inverse) != FieldMatrix::identity(m.field(), m.rows())) {
    std::ostringstream msg;
    msg << "delete_edges_crossing self-check failed: " << m.rows() << "x" << m.rows() << " matrix, |U| = "
        << u_set.size() << ", |W| = " << w_set.size() << "; was the given inverse exact?";
    throw InternalError(msg.str());
  }
  CrossingResult r{std::move(m), std::move(inverse), {}};
  for (auto a : u_set)
    for (auto b : w_set)
      if (!r.matrix(a, b).is_zero()) r.surviving.push_back({a, b});
  return r;
}

std::optional<Matching> dense_perfect_matching(const FieldMatrix& m, const std::vector<Vertex>& vertices) {
  if (m.rows() != vertices.size()) throw InputError("dense_perfect_matching dimension mismatch");
  if (vertices.empty()) return Matching{};
  if (vertices.size() % 2) return std::nullopt;
  auto inv = try_inverse(m);
  if (!inv) return std::nullopt;
  FieldMatrix work = m;
  Eliminator e(work);
  e.within(iota_index(m.rows()), *inv);
  std::vector<Edge> edges;
  std::vector<int> used(vertices.size(), 0);
  for (std::size_t a = 0; a < vertices.size(); ++a)
    for (std::size_t b = a + 1; b < vertices.size(); ++b)
      if (!work(a, b).is_zero()) {
        ++used[a];
        ++used[b];
        edges.push_back({std::min(vertices[a], vertices[b]), std::max(vertices[a], vertices[b])});
      }
  if (std::any_of(used.begin(), used.end(), [](int c) { return c != 1; })) return std::nullopt;
  return Matching::from_edges(std::move(edges));
}

std::optional<SchurChainState> schur_chain(const TutteInstance& t) {
  const auto& d = t.decomposition;
  SchurChainState c;
  c.s_star.assign(d.separator().begin(), d.separator().end());
  for (std::size_t i = 0; i < d.part_count(); ++i) {
    const auto& part = d.part(i);
    const Index basis = row_basis(t.matrix.alphas[i]);
    std::vector<char> in_basis(part.size(), 0);
    std::vector<Vertex> tp;
    for (auto b : basis) {
      in_basis[b] = 1;
      tp.push_back(part[b]);
    }
    for (std::size_t j = 0; j < part.size(); ++j)
      if (!in_basis[j]) c.s_star.push_back(part[j]);
    c.alpha.push_back(principal(t.matrix.alphas[i], basis));
    c.t_prime.push_back(std::move(tp));
  }
  if (c.s_star.size() - d.separator().size() > d.separator().size()) return std::nullopt;
  c.gamma.push_back(extract(t.matrix, c.s_star, c.s_star));
  for (std::size_t i = 0; i < d.part_count(); ++i) {
    auto inv = try_inverse(c.alpha[i]);
    if (!inv) throw InternalError("basis block of a part is singular");
    c.alpha_inv.push_back(*inv);
    c.beta.push_back(extract(t.matrix, c.t_prime[i], c.s_star));
    FieldMatrix next = c.gamma.back();
    if (!c.t_prime[i].empty()) mul_add(c.beta[i].transposed(), mat_mul(c.alpha_inv[i], c.beta[i]), next);
    c.gamma.push_back(std::move(next));
  }
  return c;
}

namespace {

enum class AttemptStatus { no_matching, failed, found };

struct Attempt {
  AttemptStatus status = AttemptStatus::failed;
  Matching matching;
  double failure_bound = 0.0;
};

Attempt find_attempt(const TutteInstance& t) {
  Attempt out;
  const auto& g = t.graph;
  if (g.n() % 2) {
    out.status = AttemptStatus::no_matching;
    return out;
  }
  auto chain = schur_chain(t);
  if (!chain || !try_inverse(chain->gamma.back())) {
    out.status = AttemptStatus::no_matching;
    return out;
  }
  double events = 1;
  std::vector<Edge> edges;
  Index s_tilde = iota_index(chain->s_star.size());  // positions in S*
  for (std::size_t i = chain->t_prime.size(); i-- > 0;) {
    const auto& tp = chain->t_prime[i];
    if (tp.empty()) continue;
    const std::size_t a = tp.size(), b = s_tilde.size();
    FieldMatrix bp(t.field, a + b, a + b);
    for (std::size_t r = 0; r < a; ++r)
      for (std::size_t c = 0; c < a; ++c) bp(r, c) = chain->alpha[i](r, c);
    for (std::size_t r = 0; r < a; ++r)
      for (std::size_t c = 0; c < b; ++c) bp(r, a + c) = bp(a + c, r) = chain->beta[i](r, s_tilde[c]);
    for (std::size_t r = 0; r < b; ++r)
      for (std::size_t c = 0; c < b; ++c) bp(a + r, a + c) = chain->gamma[i](s_tilde[r], s_tilde[c]);
    auto inv = try_inverse(bp);
    if (!inv) return out;
    Index u_set, w_set;
    for (std::size_t c = 0; c < b; ++c) u_set.push_back(a + c);
    for (std::size_t r = 0; r < a; ++r) w_set.push_back(r);
    events += static_cast<double>(a * b);
    auto res = delete_edges_crossing(std::move(bp), *std::move(inv), u_set, w_set);
    std::vector<int> deg_s(b, 0), deg_t(a, 0);
    for (auto [su, tw] : res.surviving) {
      ++deg_s[su - a];
      ++deg_t[tw];
      const Vertex x = chain->s_star[s_tilde[su - a]], y = tp[tw];
      edges.push_back({std::min(x, y), std::max(x, y)});
    }
    if (std::any_of(deg_s.begin(), deg_s.end(), [](int c) { return c > 1; }) ||
        std::any_of(deg_t.begin(), deg_t.end(), [](int c) { return c > 1; }))
      return out;
    Index next_s, t_inner;
    std::vector<Vertex> inner_vertices;
    for (std::size_t c = 0; c < b; ++c)
      if (!deg_s[c]) next_s.push_back(s_tilde[c]);
    for (std::size_t r = 0; r < a; ++r)
      if (!deg_t[r]) {
        t_inner.push_back(r);
        inner_vertices.push_back(tp[r]);
      }
    events += static_cast<double>(t_inner.size() * t_inner.size());
    auto inner = dense_perfect_matching(principal(chain->alpha[i], t_inner), inner_vertices);
    if (!inner) return out;
    edges.insert(edges.end(), inner->edges.begin(), inner->edges.end());
    s_tilde = std::move(next_s);
  }
  std::vector<Vertex> last;
  for (auto p : s_tilde) last.push_back(chain->s_star[p]);
  events += static_cast<double>(last.size() * last.size());
  auto final_part = dense_perfect_matching(principal(chain->gamma[0], s_tilde), last);
  if (!final_part) return out;
  edges.insert(edges.end(), final_part->edges.begin(), final_part->edges.end());
  out.matching = Matching::from_edges(std::move(edges));
  out.failure_bound = std::min(1.0, events * static_cast<double>(g.n()) / static_cast<double>(t.field.order()));
  if (is_perfect_matching(g, out.matching)) out.status = AttemptStatus::found;
  return out;
}

}  // namespace

bool tutte_nonsingular(const TutteInstance& t) {
  if (t.graph.n() % 2) return false;
  auto chain = schur_chain(t);
  return chain && try_inverse(chain->gamma.back()).has_value();
}

bool has_perfect_matching(const Graph& g, const SeparatorDecomposition& d, const MatchingOptions& options) {
  check_decomposition(g, d);
  if (g.n() % 2) return false;
  const Field f = matching_field(static_cast<std::size_t>(g.n()), options.field_degree);
  for (int trial = 0; trial < std::max(1, options.trials); ++trial)
    if (tutte_nonsingular(TutteInstance::random(g, d, f, derive_seed(options.seed, static_cast<std::uint64_t>(trial)))))
      return true;
  return false;
}

double no_answer_error_bound(std::size_t n, const Field& f, int trials) {
  return std::pow(std::min(1.0, static_cast<double>(n) / static_cast<double>(f.order())), std::max(1, trials));
}

std::vector<Vertex> tutte_basis(const TutteInstance& t) {
  const auto& d = t.decomposition;
  const auto& sep = d.separator();
  const std::size_t s = sep.size();
  const Field& f = t.field;
  std::vector<Vertex> basis;
  FieldMatrix gamma = t.matrix.gamma;  // becomes the Schur complement on S
  std::vector<Vertex> outside;         // non-basis part vertices, one row each
  std::vector<std::vector<FieldElement>> rows;
  for (std::size_t i = 0; i < d.part_count(); ++i) {
    const auto& part = d.part(i);
    const FieldMatrix& alpha = t.matrix.alphas[i];
    const FieldMatrix beta_t = t.matrix.betas[i].transposed();  // A[T_i, S]
    const Index tp = row_basis(alpha);
    const Index tpp = complement_index(part.size(), tp);
    for (auto x : tp) basis.push_back(part[x]);
    FieldMatrix b_pp = submatrix(beta_t, tpp, iota_index(s));
    if (!tp.empty()) {
      auto inv = try_inverse(principal(alpha, tp));
      if (!inv) throw InternalError("basis block of a part is singular");
      const FieldMatrix b_p = submatrix(beta_t, tp, iota_index(s));
      const FieldMatrix cross = submatrix(alpha, tpp, tp);
      const FieldMatrix inv_b = mat_mul(*inv, b_p);
      mul_add(cross, inv_b, b_pp);
      mul_add(b_p.transposed(), inv_b, gamma);
      // Schur complement vanishes on the non-basis block.
      FieldMatrix inner = principal(alpha, tpp);
      mul_add(cross, mat_mul(*inv, cross.transposed()), inner);
      if (!inner.is_zero()) throw InternalError("Schur complement nonzero on a part's non-basis block");
    }
    for (std::size_t r = 0; r < tpp.size(); ++r) {
      outside.push_back(part[tpp[r]]);
      rows.emplace_back(b_pp.row(r), b_pp.row(r) + s);
    }
  }
  if (s > 0) {
    FieldMatrix stacked(f, rows.size(), s);
    for (std::size_t r = 0; r < rows.size(); ++r) std::copy(rows[r].begin(), rows[r].end(), stacked.row(r));
    const Index y = row_basis(stacked);
    const std::size_t size = s + y.size();
    FieldMatrix small(f, size, size);
    for (std::size_t r = 0; r < s; ++r)
      for (std::size_t c = 0; c < s; ++c) small(r, c) = gamma(r, c);
    for (std::size_t r = 0; r < y.size(); ++r)
      for (std::size_t c = 0; c < s; ++c) small(s + r, c) = small(c, s + r) = stacked(y[r], c);
    for (auto x : row_basis(small)) basis.push_back(x < s ? sep[x] : outside[y[x - s]]);
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

std::size_t tutte_rank(const TutteInstance& t) { return tutte_basis(t).size(); }

std::optional<Matching> find_perfect_matching(const Graph& g, const SeparatorDecomposition& d,
                                              const MatchingOptions& options, MatchingStats* stats) {
  check_decomposition(g, d);
  const Field f = matching_field(static_cast<std::size_t>(g.n()), options.field_degree);
  MatchingStats local;
  int misses = 0;
  for (int attempt = 0; attempt < std::max(1, options.max_attempts); ++attempt) {
    ++local.attempts;
    auto t = TutteInstance::random(g, d, f, derive_seed(options.seed, static_cast<std::uint64_t>(attempt)));
    auto a = find_attempt(t);
    local.failure_bound = a.failure_bound;
    if (a.status == AttemptStatus::found) {
      if (stats) *stats = local;
      return a.matching;
    }
    if (a.status == AttemptStatus::no_matching && ++misses >= std::max(1, options.trials)) {
      if (stats) *stats = local;
      return std::nullopt;
    }
  }
  if (stats) *stats = local;
  if (misses > 0 && misses == local.attempts) return std::nullopt;
  throw ProbabilisticFailure("no valid perfect matching after " + std::to_string(local.attempts) + " attempts");
}

Matching max_matching(const Graph& g, const SeparatorDecomposition& d, const MatchingOptions& options,
                      MatchingStats* stats) {
  check_decomposition(g, d);
  const Field f = matching_field(static_cast<std::size_t>(g.n()), options.field_degree);
  MatchingStats local;
  for (int attempt = 0; attempt < std::max(1, options.max_attempts); ++attempt) {
    ++local.attempts;
    auto t = TutteInstance::random(g, d, f, derive_seed(options.seed, static_cast<std::uint64_t>(attempt)));
    const auto x = tutte_basis(t);
    auto a = find_attempt(t.restricted(x));
    local.failure_bound = a.failure_bound;
    if (a.status != AttemptStatus::found || 2 * a.matching.size() != x.size()) continue;
    std::vector<Edge> edges;
    for (const auto& e : a.matching.edges) edges.push_back({x[e.u], x[e.v]});
    Matching m = Matching::from_edges(std::move(edges));
    if (!is_valid_matching(g, m)) continue;
    if (stats) *stats = local;
    return m;
  }
  if (stats) *stats = local;
  throw ProbabilisticFailure("no valid maximum matching after " + std::to_string(local.attempts) + " attempts");
}

}  // namespace vigl
