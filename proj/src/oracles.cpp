#include "vigl/oracles.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>

#include "vigl/errors.hpp"
#include "vigl/rng.hpp"

namespace vigl::oracle {

namespace {

constexpr std::int32_t kInf = DistanceMatrix::kUnreachable;

std::vector<std::uint8_t> dense_adjacency(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.n());
  std::vector<std::uint8_t> a(n * n, 0);
  for (const auto& e : g.edges()) a[e.u * n + e.v] = a[e.v * n + e.u] = 1;
  return a;
}

struct PathSearch {
  const Graph& g;
  Vertex root = 0;
  std::vector<bool> on_path;
  std::vector<Vertex> path;
};

}  // namespace

std::optional<std::size_t> girth(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.n());
  std::size_t best = SIZE_MAX;
  std::vector<std::int32_t> dist(n);
  std::vector<Vertex> parent(n), queue;
  for (Vertex s = 0; s < g.n(); ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    parent[s] = -1;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Vertex x = queue[head];
      for (Vertex y : g.neighbors(x)) {
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          parent[y] = x;
          queue.push_back(y);
        } else if (parent[x] != y) {
          best = std::min(best, static_cast<std::size_t>(dist[x] + dist[y] + 1));
        }
      }
    }
  }
  if (best == SIZE_MAX) return std::nullopt;
  return best;
}

namespace {

// home[v]: distance from v back to the root using vertices >= root only.
void even_dfs(PathSearch& s, const std::vector<std::size_t>& home, std::size_t& best) {
  Vertex x = s.path.back();
  for (Vertex y : s.g.neighbors(x)) {
    if (y == s.root) {
      if (s.path.size() >= 4 && s.path.size() % 2 == 0) best = std::min(best, s.path.size());
      continue;
    }
    if (y < s.root || s.on_path[y]) continue;
    if (s.path.size() + home[y] >= best) continue;
    s.on_path[y] = true;
    s.path.push_back(y);
    even_dfs(s, home, best);
    s.path.pop_back();
    s.on_path[y] = false;
  }
}

}  // namespace

std::optional<std::size_t> even_girth(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.n());
  std::vector<std::vector<std::size_t>> home(n, std::vector<std::size_t>(n, SIZE_MAX / 2));
  std::vector<Vertex> queue;
  for (Vertex r = 0; r < g.n(); ++r) {
    home[r][r] = 0;
    queue.assign(1, r);
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (Vertex y : g.neighbors(queue[head]))
        if (y > r && home[r][y] == SIZE_MAX / 2) {
          home[r][y] = home[r][queue[head]] + 1;
          queue.push_back(y);
        }
  }
  PathSearch s{g, 0, std::vector<bool>(n, false), {}};
  for (std::size_t limit = 4; limit <= n; limit += 2) {
    std::size_t best = limit + 1;
    for (Vertex r = 0; r < g.n(); ++r) {
      s.root = r;
      s.path.assign(1, r);
      s.on_path[r] = true;
      even_dfs(s, home[r], best);
      s.on_path[r] = false;
    }
    if (best <= limit) return best;
  }
  return std::nullopt;
}

namespace {

void cycle_dfs(PathSearch& s, std::vector<std::vector<Vertex>>& out) {
  Vertex x = s.path.back();
  for (Vertex y : s.g.neighbors(x)) {
    if (y == s.root) {
      if (s.path.size() >= 3 && s.path[1] < s.path.back()) out.push_back(s.path);
      continue;
    }
    if (y < s.root || s.on_path[y]) continue;
    s.on_path[y] = true;
    s.path.push_back(y);
    cycle_dfs(s, out);
    s.path.pop_back();
    s.on_path[y] = false;
  }
}

bool length_dfs(PathSearch& s, std::size_t length) {
  Vertex x = s.path.back();
  for (Vertex y : s.g.neighbors(x)) {
    if (y == s.root) {
      if (s.path.size() == length && length >= 3) return true;
      continue;
    }
    if (y < s.root || s.on_path[y] || s.path.size() >= length) continue;
    s.on_path[y] = true;
    s.path.push_back(y);
    if (length_dfs(s, length)) return true;
    s.path.pop_back();
    s.on_path[y] = false;
  }
  return false;
}

}  // namespace

std::vector<std::vector<Vertex>> all_cycles(const Graph& g) {
  std::vector<std::vector<Vertex>> out;
  PathSearch s{g, 0, std::vector<bool>(static_cast<std::size_t>(g.n()), false), {}};
  for (Vertex r = 0; r < g.n(); ++r) {
    s.root = r;
    s.path.assign(1, r);
    s.on_path[r] = true;
    cycle_dfs(s, out);
    s.on_path[r] = false;
  }
  return out;
}

std::optional<std::vector<Vertex>> cycle_of_length(const Graph& g, std::size_t length) {
  if (length < 3) return std::nullopt;
  PathSearch s{g, 0, std::vector<bool>(static_cast<std::size_t>(g.n()), false), {}};
  for (Vertex r = 0; r < g.n(); ++r) {
    s.root = r;
    s.path.assign(1, r);
    s.on_path[r] = true;
    if (length_dfs(s, length)) return s.path;
    s.on_path[r] = false;
  }
  return std::nullopt;
}

namespace {

template <class Visit>
void for_each_quad(const Graph& g, Visit visit) {
  const auto n = static_cast<std::size_t>(g.n());
  const auto a = dense_adjacency(g);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q)
      for (std::size_t r = q + 1; r < n; ++r)
        for (std::size_t s = r + 1; s < n; ++s) {
          const std::size_t v[4] = {p, q, r, s};
          std::uint8_t mask = 0;
          for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
              if (a[v[i] * n + v[j]]) mask |= static_cast<std::uint8_t>(1u << pair_bit(i, j));
          visit(v, mask);
        }
}

std::uint8_t relabel(std::uint8_t mask, const std::array<int, 4>& perm) {
  std::uint8_t out = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (mask >> pair_bit(i, j) & 1) out |= static_cast<std::uint8_t>(1u << pair_bit(perm[i], perm[j]));
  return out;
}

std::uint8_t canonical_mask(std::uint8_t mask) {
  std::array<int, 4> perm{0, 1, 2, 3};
  std::uint8_t best = 0xff;
  do {
    best = std::min(best, relabel(mask, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

Census census(const Graph& g) {
  Census c{};
  for_each_quad(g, [&](const std::size_t*, std::uint8_t mask) {
    ++c[static_cast<std::size_t>(FourGraph::classify(mask).id())];
  });
  return c;
}

Census census_by_canonical_mask(const Graph& g) {
  std::array<int, 64> class_of{};
  class_of.fill(-1);
  for (auto h : FourGraph::all())
    class_of[canonical_mask(h.pair_mask())] = static_cast<int>(h.id());
  Census c{};
  for_each_quad(g, [&](const std::size_t*, std::uint8_t mask) {
    ++c[static_cast<std::size_t>(class_of[canonical_mask(mask)])];
  });
  return c;
}

std::int64_t count_induced(const Graph& g, FourGraph h) {
  return census(g)[static_cast<std::size_t>(h.id())];
}

std::optional<InducedEmbedding> find_induced(const Graph& g, FourGraph h) {
  std::optional<InducedEmbedding> found;
  for_each_quad(g, [&](const std::size_t* v, std::uint8_t mask) {
    if (found || !(FourGraph::classify(mask) == h)) return;
    std::array<int, 4> perm{0, 1, 2, 3};
    do {
      InducedEmbedding e{h, {}};
      for (int i = 0; i < 4; ++i) e.vertices[i] = static_cast<Vertex>(v[perm[i]]);
      if (is_valid_embedding(g, e)) {
        found = e;
        return;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  });
  return found;
}

Matching max_matching_dp(const Graph& g) {
  const int n = g.n();
  if (n > 22) throw PreconditionError("subset matching oracle limited to n <= 22");
  const std::uint32_t full = n == 0 ? 0 : ((1u << n) - 1);
  std::vector<std::uint8_t> dp(static_cast<std::size_t>(full) + 1, 0);
  std::vector<std::uint32_t> nbr(static_cast<std::size_t>(n), 0);
  for (const auto& e : g.edges()) {
    nbr[e.u] |= 1u << e.v;
    nbr[e.v] |= 1u << e.u;
  }
  for (std::uint32_t mask = 1; mask <= full && full; ++mask) {
    const int v = std::countr_zero(mask);
    const std::uint32_t rest = mask & ~(1u << v);
    std::uint8_t best = dp[rest];
    for (std::uint32_t cand = nbr[v] & rest; cand; cand &= cand - 1) {
      const int u = std::countr_zero(cand);
      best = std::max<std::uint8_t>(best, dp[rest & ~(1u << u)] + 1);
    }
    dp[mask] = best;
  }
  std::vector<Edge> edges;
  std::uint32_t mask = full;
  while (mask) {
    const int v = std::countr_zero(mask);
    const std::uint32_t rest = mask & ~(1u << v);
    if (dp[mask] == dp[rest]) {
      mask = rest;
      continue;
    }
    for (std::uint32_t cand = nbr[v] & rest; cand; cand &= cand - 1) {
      const int u = std::countr_zero(cand);
      if (dp[rest & ~(1u << u)] + 1 == dp[mask]) {
        edges.push_back({static_cast<Vertex>(v), static_cast<Vertex>(u)});
        mask = rest & ~(1u << u);
        break;
      }
    }
  }
  return Matching::from_edges(std::move(edges));
}

namespace {

// Edmonds' algorithm with explicit blossom contraction via base labels.
class Blossom {
 public:
  explicit Blossom(const Graph& g)
      : g_(g), n_(static_cast<std::size_t>(g.n())), match_(n_, -1), parent_(n_), base_(n_),
        used_(n_), in_blossom_(n_) {}

  Matching run() {
    for (Vertex v = 0; v < g_.n(); ++v)
      if (match_[v] < 0) {
        Vertex end = find_path(v);
        while (end >= 0) {
          Vertex pv = parent_[end], next = match_[pv];
          match_[end] = pv;
          match_[pv] = end;
          end = next;
        }
      }
    std::vector<Edge> edges;
    for (Vertex v = 0; v < g_.n(); ++v)
      if (match_[v] > v) edges.push_back({v, match_[v]});
    return Matching::from_edges(std::move(edges));
  }

 private:
  Vertex lca(Vertex a, Vertex b) {
    std::vector<bool> seen(n_, false);
    while (true) {
      a = base_[a];
      seen[a] = true;
      if (match_[a] < 0) break;
      a = parent_[match_[a]];
    }
    while (true) {
      b = base_[b];
      if (seen[b]) return b;
      b = parent_[match_[b]];
    }
  }

  void mark_path(Vertex v, Vertex b, Vertex child) {
    while (base_[v] != b) {
      in_blossom_[base_[v]] = in_blossom_[base_[match_[v]]] = true;
      parent_[v] = child;
      child = match_[v];
      v = parent_[match_[v]];
    }
  }

  Vertex find_path(Vertex root) {
    std::fill(used_.begin(), used_.end(), false);
    std::fill(parent_.begin(), parent_.end(), -1);
    std::iota(base_.begin(), base_.end(), 0);
    used_[root] = true;
    std::queue<Vertex> q;
    q.push(root);
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop();
      for (Vertex to : g_.neighbors(v)) {
        if (base_[v] == base_[to] || match_[v] == to) continue;
        if (to == root || (match_[to] >= 0 && parent_[match_[to]] >= 0)) {
          Vertex b = lca(v, to);
          std::fill(in_blossom_.begin(), in_blossom_.end(), false);
          mark_path(v, b, to);
          mark_path(to, b, v);
          for (std::size_t i = 0; i < n_; ++i)
            if (in_blossom_[base_[i]]) {
              base_[i] = b;
              if (!used_[i]) {
                used_[i] = true;
                q.push(static_cast<Vertex>(i));
              }
            }
        } else if (parent_[to] < 0) {
          parent_[to] = v;
          if (match_[to] < 0) return to;
          used_[match_[to]] = true;
          q.push(match_[to]);
        }
      }
    }
    return -1;
  }

  const Graph& g_;
  std::size_t n_;
  std::vector<Vertex> match_, parent_, base_;
  std::vector<bool> used_, in_blossom_;
};

}  // namespace

Matching max_matching_blossom(const Graph& g) { return Blossom(g).run(); }

Matching max_matching(const Graph& g) {
  return g.n() <= 18 ? max_matching_dp(g) : max_matching_blossom(g);
}

DistanceMatrix apsp_bfs(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.n());
  DistanceMatrix d(n);
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < g.n(); ++s) {
    d.at(s, s) = 0;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Vertex x = queue[head];
      for (Vertex y : g.neighbors(x))
        if (d.at(s, y) == kInf) {
          d.at(s, y) = d.at(s, x) + 1;
          queue.push_back(y);
        }
    }
  }
  return d;
}

DistanceMatrix apsp_floyd_warshall(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.n());
  DistanceMatrix d(n);
  for (std::size_t v = 0; v < n; ++v) d.at(v, v) = 0;
  for (const auto& e : g.edges()) d.at(e.u, e.v) = d.at(e.v, e.u) = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (d.at(i, k) == kInf) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (d.at(k, j) != kInf) d.at(i, j) = std::min(d.at(i, j), d.at(i, k) + d.at(k, j));
    }
  return d;
}

IntegrityWitness vertex_integrity(const Graph& g) {
  const int n = g.n();
  if (n > 24) throw PreconditionError("exhaustive integrity oracle limited to n <= 24");
  IntegrityWitness best{n, {}};
  for (Vertex v = 0; v < n; ++v) best.separator.push_back(v);
  if (n == 0) return best;
  std::vector<bool> removed(static_cast<std::size_t>(n));
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const int size = std::popcount(mask);
    if (size >= best.iota) continue;
    for (int v = 0; v < n; ++v) removed[v] = mask >> v & 1;
    std::size_t largest = 0;
    for (const auto& c : connected_components(g, removed)) largest = std::max(largest, c.size());
    const auto value = static_cast<std::int64_t>(size + largest);
    if (value < best.iota) {
      best.iota = value;
      best.separator.clear();
      for (int v = 0; v < n; ++v)
        if (mask >> v & 1) best.separator.push_back(v);
    }
  }
  return best;
}

namespace {

void clique_search(const std::vector<std::uint64_t>& nbr, std::uint64_t cand, std::size_t size,
                   std::size_t& best) {
  if (!cand) {
    best = std::max(best, size);
    return;
  }
  if (size + static_cast<std::size_t>(std::popcount(cand)) <= best) return;
  const int v = std::countr_zero(cand);
  clique_search(nbr, cand & nbr[v], size + 1, best);
  clique_search(nbr, cand & ~(std::uint64_t{1} << v), size, best);
}

}  // namespace

std::size_t max_clique_size(const Graph& g) {
  if (g.n() > 64) throw PreconditionError("clique oracle limited to n <= 64");
  std::vector<std::uint64_t> nbr(static_cast<std::size_t>(g.n()), 0);
  for (const auto& e : g.edges()) {
    nbr[e.u] |= std::uint64_t{1} << e.v;
    nbr[e.v] |= std::uint64_t{1} << e.u;
  }
  std::size_t best = 0;
  const std::uint64_t all = g.n() == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << g.n()) - 1);
  clique_search(nbr, all, 0, best);
  return best;
}

std::size_t max_independent_set_size(const Graph& g) { return max_clique_size(complement(g)); }

void for_each_graph(int n, const std::function<void(const Graph&)>& visit) {
  if (n < 0 || n > 6) throw PreconditionError("graph enumeration limited to n <= 6");
  std::vector<Edge> pairs;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) pairs.push_back({i, j});
  const std::uint32_t count = 1u << pairs.size();
  std::vector<Edge> edges;
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    edges.clear();
    for (std::size_t p = 0; p < pairs.size(); ++p)
      if (mask >> p & 1) edges.push_back(pairs[p]);
    visit(Graph(n, edges));
  }
}

std::vector<Graph> enumerate_all_graphs(int n) {
  std::vector<Graph> out;
  for_each_graph(n, [&](const Graph& g) { out.push_back(g); });
  return out;
}

double Corpus::param(const std::string& key, double fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

PlantedInstance Corpus::instance(std::uint64_t seed) const {
  std::uint64_t tag = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) tag = (tag ^ c) * 0x100000001b3ULL;
  Rng rng(derive_seed(seed, tag));
  const auto span = static_cast<std::uint64_t>(std::max<Vertex>(0, n_max - n_min));
  const auto n = static_cast<Vertex>(n_min + static_cast<Vertex>(rng.below(span + 1)));
  const auto sep_max = static_cast<Vertex>(param("sep_max", 4));
  const auto comp_max = static_cast<Vertex>(param("comp_max", 6));
  const Vertex sep = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(std::min(sep_max, n)) + 1));
  Vertex comp = 0;
  if (n > sep)
    comp = 1 + static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(std::min(comp_max, n - sep))));
  auto draw = [&](const std::string& key, double lo, double hi) {
    double u = rng.uniform01();
    return params.count(key) ? param(key, 0) : lo + (hi - lo) * u;
  };
  const double p_in = draw("p_in", 0.15, 0.85);
  const double p_cross = draw("p_cross", 0.05, 0.6);
  PlantedOptions opt;
  opt.edge_prob_sep = draw("p_sep", 0.0, 0.5);
  return generate_planted(n, sep, comp, p_in, p_cross, derive_seed(seed, 1), opt);
}

std::vector<PlantedInstance> Corpus::instances() const {
  std::vector<PlantedInstance> out;
  for (std::uint64_t s = seed_begin; s < seed_end; ++s) out.push_back(instance(s));
  return out;
}

Corpus read_manifest(std::istream& in) {
  Corpus c;
  c.params.clear();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    bool ok = true;
    if (key == "corpus") {
      ok = static_cast<bool>(ls >> c.name);
    } else if (key == "seeds") {
      ok = static_cast<bool>(ls >> c.seed_begin >> c.seed_end) && c.seed_begin <= c.seed_end;
    } else if (key == "n") {
      ok = static_cast<bool>(ls >> c.n_min >> c.n_max) && 0 <= c.n_min && c.n_min <= c.n_max;
    } else if (key == "param") {
      std::string name;
      double value = 0;
      ok = static_cast<bool>(ls >> name >> value);
      if (ok) c.params[name] = value;
    } else {
      throw ParseError(lineno, "unknown manifest key '" + key + "'");
    }
    std::string extra;
    if (!ok || (ls >> extra)) throw ParseError(lineno, "malformed '" + key + "' line");
  }
  return c;
}

void write_manifest(std::ostream& out, const Corpus& c) {
  out.precision(17);
  out << "corpus " << c.name << '\n'
      << "seeds " << c.seed_begin << ' ' << c.seed_end << '\n'
      << "n " << c.n_min << ' ' << c.n_max << '\n';
  for (const auto& [key, value] : c.params) out << "param " << key << ' ' << value << '\n';
}

}  // namespace vigl::oracle
