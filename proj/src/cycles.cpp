#include "vigl/cycles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "vigl/block.hpp"
#include "vigl/errors.hpp"
#include "vigl/gf.hpp"
#include "vigl/rng.hpp"

namespace vigl {

namespace {

// Cycle closed by the non-tree edge x-w in a BFS tree.
std::vector<Vertex> tree_cycle(const std::vector<Vertex>& parent, const std::vector<std::int32_t>& dist,
                               Vertex x, Vertex w) {
  std::vector<Vertex> up_x{x}, up_w{w};
  while (dist[up_x.back()] > dist[up_w.back()]) up_x.push_back(parent[up_x.back()]);
  while (dist[up_w.back()] > dist[up_x.back()]) up_w.push_back(parent[up_w.back()]);
  while (up_x.back() != up_w.back()) {
    up_x.push_back(parent[up_x.back()]);
    up_w.push_back(parent[up_w.back()]);
  }
  up_w.pop_back();
  up_x.insert(up_x.end(), up_w.rbegin(), up_w.rend());
  return up_x;
}

struct Bfs {
  std::vector<std::int32_t> dist;
  std::vector<Vertex> parent;
  std::vector<Vertex> order;

  explicit Bfs(std::size_t n) : dist(n, -1), parent(n, -1) {}

  void reset() {
    for (Vertex v : order) dist[v] = -1, parent[v] = -1;
    order.clear();
  }
};

// Shortest cycle of a (small) graph by BFS from every vertex.
std::optional<std::vector<Vertex>> shortest_cycle(const Graph& g) {
  std::optional<std::vector<Vertex>> best;
  std::size_t best_walk = SIZE_MAX;
  Bfs bfs(static_cast<std::size_t>(g.n()));
  for (Vertex root = 0; root < g.n(); ++root) {
    bfs.reset();
    bfs.dist[root] = 0;
    bfs.order.push_back(root);
    for (std::size_t head = 0; head < bfs.order.size(); ++head) {
      const Vertex x = bfs.order[head];
      if (2 * static_cast<std::size_t>(bfs.dist[x]) + 1 >= best_walk) break;
      for (Vertex y : g.neighbors(x)) {
        if (bfs.dist[y] < 0) {
          bfs.dist[y] = bfs.dist[x] + 1;
          bfs.parent[y] = x;
          bfs.order.push_back(y);
        } else if (bfs.parent[x] != y) {
          const auto walk = static_cast<std::size_t>(bfs.dist[x] + bfs.dist[y] + 1);
          if (walk < best_walk) {
            best_walk = walk;
            best = tree_cycle(bfs.parent, bfs.dist, x, y);
          }
        }
      }
    }
  }
  return best;
}

std::vector<Vertex> lift(const std::vector<Vertex>& local, const std::vector<Vertex>& original) {
  std::vector<Vertex> out;
  out.reserve(local.size());
  for (Vertex v : local) out.push_back(original[v]);
  return out;
}

std::optional<CycleReport> report(const Graph& g, std::vector<Vertex> cycle, CycleKind kind) {
  CycleReport r{cycle.size(), std::move(cycle), kind};
  if (!is_valid_report(g, r)) throw InternalError("cycle failed structural validation");
  return r;
}

Vertex common_neighbor(const Graph& g, Vertex u, Vertex v) {
  auto a = g.neighbors(u), b = g.neighbors(v);
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return a[i];
    if (a[i] < b[j])
      ++i;
    else
      ++j;
  }
  return -1;
}

}  // namespace

ProbeResult bfs_cycle_probe(const Graph& g, Vertex v) {
  if (v < 0 || v >= g.n()) throw InputError("probe vertex out of range");
  ProbeResult result;
  Bfs bfs(static_cast<std::size_t>(g.n()));
  bfs.dist[v] = 0;
  bfs.order.push_back(v);
  for (std::size_t head = 0; head < bfs.order.size(); ++head) {
    const Vertex x = bfs.order[head];
    result.depth = static_cast<std::size_t>(bfs.dist[x]);
    for (Vertex y : g.neighbors(x)) {
      if (bfs.dist[y] < 0) {
        bfs.dist[y] = bfs.dist[x] + 1;
        bfs.parent[y] = x;
        bfs.order.push_back(y);
      } else if (bfs.parent[x] != y) {
        result.walk_length = static_cast<std::size_t>(bfs.dist[x] + bfs.dist[y] + 1);
        result.cycle = tree_cycle(bfs.parent, bfs.dist, x, y);
        for (Vertex u : bfs.order)
          if (static_cast<std::size_t>(bfs.dist[u]) == result.depth) result.layer.push_back(u);
        std::sort(result.layer.begin(), result.layer.end());
        return result;
      }
    }
  }
  // No cycle in the component of v; report the last layer reached.
  for (Vertex u : bfs.order)
    if (static_cast<std::size_t>(bfs.dist[u]) == result.depth) result.layer.push_back(u);
  std::sort(result.layer.begin(), result.layer.end());
  return result;
}

std::vector<Vertex> bfs_layer(const Graph& g, Vertex v, std::size_t distance) {
  Bfs bfs(static_cast<std::size_t>(g.n()));
  bfs.dist[v] = 0;
  bfs.order.push_back(v);
  std::vector<Vertex> layer;
  for (std::size_t head = 0; head < bfs.order.size(); ++head) {
    const Vertex x = bfs.order[head];
    if (static_cast<std::size_t>(bfs.dist[x]) == distance) {
      layer.push_back(x);
      continue;
    }
    for (Vertex y : g.neighbors(x))
      if (bfs.dist[y] < 0) {
        bfs.dist[y] = bfs.dist[x] + 1;
        bfs.order.push_back(y);
      }
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

std::optional<CycleReport> girth(const Graph& g, const SeparatorDecomposition& d) {
  check_decomposition(g, d);
  // Triangles anywhere show up as an edge with a common neighbour.
  const auto sq = square_on_edges(g, d);
  for (std::size_t id = 0; id < g.m(); ++id)
    if (sq[id] > 0) {
      const auto& e = g.edges()[id];
      return report(g, {e.u, e.v, common_neighbor(g, e.u, e.v)}, CycleKind::girth);
    }

  std::optional<std::vector<Vertex>> best;
  auto offer = [&](std::vector<Vertex> c) {
    if (!best || c.size() < best->size()) best = std::move(c);
  };
  for (const auto& part : d.parts()) {
    auto sub = induced_subgraph(g, part);
    if (auto c = shortest_cycle(sub.graph)) offer(lift(*c, sub.original));
  }

  std::size_t l_min = SIZE_MAX;
  std::vector<std::pair<Vertex, std::size_t>> probes;  // (v, cycle length)
  for (Vertex v : d.separator()) {
    auto probe = bfs_cycle_probe(g, v);
    if (!probe.cycle) continue;
    probes.push_back({v, probe.cycle->size()});
    l_min = std::min(l_min, probe.cycle->size());
    offer(*std::move(probe.cycle));
  }

  // Even l_min: a shortest cycle through S may have length l_min - 1 = 2t + 1.
  // Its middle edge joins two vertices at distance t from some v in L, which
  // becomes a triangle with the new vertex v* joined to that layer.
  if (l_min != SIZE_MAX && l_min % 2 == 0 && best->size() >= l_min) {
    const std::size_t t = (l_min - 2) / 2;
    std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    std::vector<Vertex> roots, sep(d.separator());
    Vertex next = g.n();
    for (auto [v, len] : probes) {
      if (len != l_min) continue;
      for (Vertex x : bfs_layer(g, v, t)) edges.push_back({x, next});
      roots.push_back(v);
      sep.push_back(next++);
    }
    Graph h(next, edges);
    auto dh = build_decomposition(h, sep, 2 * d.k());
    const auto sqh = square_on_edges(h, dh);
    for (std::size_t id = 0; id < h.m() && best->size() >= l_min; ++id) {
      const auto& e = h.edges()[id];
      if (e.v < g.n() || sqh[id] == 0) continue;
      const Vertex root = roots[e.v - g.n()];
      const Vertex x = e.u, y = common_neighbor(h, e.u, e.v);
      Bfs bfs(static_cast<std::size_t>(g.n()));
      bfs.dist[root] = 0;
      bfs.order.push_back(root);
      for (std::size_t head = 0; head < bfs.order.size(); ++head) {
        const Vertex a = bfs.order[head];
        if (static_cast<std::size_t>(bfs.dist[a]) == t) continue;
        for (Vertex b : g.neighbors(a))
          if (bfs.dist[b] < 0) {
            bfs.dist[b] = bfs.dist[a] + 1;
            bfs.parent[b] = a;
            bfs.order.push_back(b);
          }
      }
      offer(tree_cycle(bfs.parent, bfs.dist, x, y));
    }
  }
  if (!best) return std::nullopt;
  return report(g, *std::move(best), CycleKind::girth);
}

bool has_even_cycle(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.n());
  std::vector<std::int32_t> disc(n, -1), low(n, 0);
  std::vector<std::uint32_t> edge_stack;
  std::vector<std::int32_t> vertex_mark(n, -1);
  std::int32_t timer = 0, block_id = 0;
  struct Frame {
    Vertex v;
    std::int64_t parent_edge;
    std::size_t next;
  };
  auto close_block = [&](std::uint32_t until) {
    std::size_t edges = 0, vertices = 0;
    while (true) {
      const std::uint32_t id = edge_stack.back();
      edge_stack.pop_back();
      ++edges;
      for (Vertex x : {g.edges()[id].u, g.edges()[id].v})
        if (vertex_mark[x] != block_id) {
          vertex_mark[x] = block_id;
          ++vertices;
        }
      if (id == until) break;
    }
    ++block_id;
    if (edges == 1) return false;
    if (edges == vertices) return vertices % 2 == 0;
    return true;
  };
  std::vector<Frame> stack;
  for (Vertex root = 0; root < g.n(); ++root) {
    if (disc[root] >= 0) continue;
    disc[root] = low[root] = timer++;
    stack.push_back({root, -1, 0});
    while (!stack.empty()) {
      Frame& f = stack.back();
      auto nb = g.neighbors(f.v);
      auto ids = g.incident_edges(f.v);
      if (f.next < nb.size()) {
        const Vertex w = nb[f.next];
        const std::uint32_t id = ids[f.next];
        ++f.next;
        if (static_cast<std::int64_t>(id) == f.parent_edge) continue;
        if (disc[w] < 0) {
          edge_stack.push_back(id);
          disc[w] = low[w] = timer++;
          stack.push_back({w, id, 0});
        } else if (disc[w] < disc[f.v]) {
          edge_stack.push_back(id);
          low[f.v] = std::min(low[f.v], disc[w]);
        }
        continue;
      }
      const Frame done = f;
      stack.pop_back();
      if (stack.empty()) break;
      Frame& parent = stack.back();
      low[parent.v] = std::min(low[parent.v], low[done.v]);
      if (low[done.v] >= disc[parent.v] &&
          close_block(static_cast<std::uint32_t>(done.parent_edge)))
        return true;
    }
  }
  return false;
}

namespace {

// Depth-first search for a cycle of exactly `length` vertices through root,
// using only vertices with allowed[v]; dist holds BFS distances to the root
// inside the allowed subgraph and prunes hopeless branches.
struct ExactCycleSearch {
  const Graph& g;
  const std::vector<char>& allowed;
  const std::vector<std::int32_t>& dist;
  std::size_t length;
  Vertex root;
  std::vector<char> on_path;
  std::vector<Vertex> path;

  bool extend() {
    const Vertex x = path.back();
    const std::size_t edges_used = path.size() - 1;
    for (Vertex y : g.neighbors(x)) {
      if (y == root) {
        if (path.size() == length) return true;
        continue;
      }
      if (!allowed[y] || on_path[y] || dist[y] < 0) continue;
      // after stepping to y, length - edges_used - 1 edges remain to close
      if (static_cast<std::size_t>(dist[y]) > length - edges_used - 1) continue;
      if (path.size() + 1 > length) continue;
      on_path[y] = 1;
      path.push_back(y);
      if (extend()) return true;
      path.pop_back();
      on_path[y] = 0;
    }
    return false;
  }
};

std::vector<std::int32_t> distances_within(const Graph& g, Vertex root, const std::vector<char>& allowed) {
  std::vector<std::int32_t> dist(static_cast<std::size_t>(g.n()), -1);
  std::vector<Vertex> queue{root};
  dist[root] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (Vertex y : g.neighbors(queue[head]))
      if (allowed[y] && dist[y] < 0) {
        dist[y] = dist[queue[head]] + 1;
        queue.push_back(y);
      }
  return dist;
}

std::optional<std::vector<Vertex>> cycle_through(const Graph& g, Vertex root, std::size_t length,
                                                 const std::vector<char>& allowed,
                                                 const std::vector<std::int32_t>& dist) {
  ExactCycleSearch s{g, allowed, dist, length, root, std::vector<char>(static_cast<std::size_t>(g.n()), 0), {root}};
  s.on_path[root] = 1;
  if (s.extend()) return s.path;
  return std::nullopt;
}

}  // namespace

std::optional<CycleReport> even_girth(const Graph& g, const SeparatorDecomposition& d) {
  check_decomposition(g, d);
  if (!has_even_cycle(g)) return std::nullopt;

  struct Local {
    InducedSubgraph sub;
    bool has_even;
    std::vector<std::vector<std::int32_t>> dist;  // per root, within vertices >= root
  };
  std::vector<Local> parts;
  for (const auto& part : d.parts()) {
    Local l{induced_subgraph(g, part), false, {}};
    l.has_even = has_even_cycle(l.sub.graph);
    if (l.has_even)
      for (Vertex r = 0; r < l.sub.graph.n(); ++r) {
        std::vector<char> allowed(static_cast<std::size_t>(l.sub.graph.n()), 0);
        for (Vertex x = r; x < l.sub.graph.n(); ++x) allowed[x] = 1;
        l.dist.push_back(distances_within(l.sub.graph, r, allowed));
      }
    parts.push_back(std::move(l));
  }
  // Cycles meeting S are found from their first separator vertex.
  std::vector<std::vector<char>> sep_allowed;
  std::vector<std::vector<std::int32_t>> sep_dist;
  {
    std::vector<char> allowed(static_cast<std::size_t>(g.n()), 1);
    for (Vertex s : d.separator()) {
      sep_allowed.push_back(allowed);
      sep_dist.push_back(distances_within(g, s, allowed));
      allowed[s] = 0;
    }
  }
  for (std::size_t length = 4; length <= static_cast<std::size_t>(g.n()); length += 2) {
    for (auto& l : parts) {
      if (!l.has_even || static_cast<std::size_t>(l.sub.graph.n()) < length) continue;
      for (Vertex r = 0; r < l.sub.graph.n(); ++r) {
        std::vector<char> allowed(static_cast<std::size_t>(l.sub.graph.n()), 0);
        for (Vertex x = r; x < l.sub.graph.n(); ++x) allowed[x] = 1;
        if (auto c = cycle_through(l.sub.graph, r, length, allowed, l.dist[r]))
          return report(g, lift(*c, l.sub.original), CycleKind::even_girth);
      }
    }
    for (std::size_t i = 0; i < d.separator().size(); ++i)
      if (auto c = cycle_through(g, d.separator()[i], length, sep_allowed[i], sep_dist[i]))
        return report(g, *c, CycleKind::even_girth);
  }
  throw InternalError("even cycle exists but none was found");
}

std::size_t color_coding_trials(int length, double failure_prob, CycleStrategy strategy) {
  if (!(failure_prob > 0.0 && failure_prob < 1.0))
    throw InputError("failure probability must lie in (0, 1)");
  const double l = length;
  double ratio = std::pow(l, l);
  if (strategy == CycleStrategy::colorful)
    ratio /= std::tgamma(l + 1);
  else
    ratio /= 2 * l;
  return static_cast<std::size_t>(std::ceil(std::log(1.0 / failure_prob) * ratio));
}

namespace {

// Colourful paths from an anchor: reach[mask] is the set of vertices that end
// a path from the anchor using exactly the colours in mask, one vertex each.
class ColorfulSearch {
 public:
  ColorfulSearch(const Graph& g, const std::vector<std::uint8_t>& color, int length)
      : g_(g), color_(color), length_(length),
        words_((static_cast<std::size_t>(g.n()) + 63) / 64),
        reach_((std::size_t{1} << length) * words_, 0) {}

  // A colourful cycle through anchor avoiding vertices with blocked[v] set.
  std::optional<std::vector<Vertex>> cycle_through(Vertex anchor, const std::vector<char>* blocked) {
    const std::size_t full = (std::size_t{1} << length_) - 1;
    std::fill(reach_.begin(), reach_.end(), 0);
    const std::size_t start = std::size_t{1} << color_[anchor];
    set(start, anchor);
    for (std::size_t mask = start; mask < full; ++mask) {
      if (!(mask & start)) continue;
      const std::uint64_t* row = bits(mask);
      for (std::size_t w = 0; w < words_; ++w)
        for (std::uint64_t word = row[w]; word; word &= word - 1) {
          const auto x = static_cast<Vertex>(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
          for (Vertex y : g_.neighbors(x)) {
            const std::size_t bit = std::size_t{1} << color_[y];
            if ((mask & bit) || (blocked && (*blocked)[y])) continue;
            set(mask | bit, y);
          }
        }
    }
    const std::uint64_t* last = bits(full);
    for (Vertex x : g_.neighbors(anchor)) {
      if (!(last[x / 64] >> (x % 64) & 1)) continue;
      std::vector<Vertex> path{x};
      std::size_t mask = full;
      while (mask != start) {
        const Vertex cur = path.back();
        mask ^= std::size_t{1} << color_[cur];
        const std::uint64_t* prev = bits(mask);
        for (Vertex y : g_.neighbors(cur))
          if (prev[y / 64] >> (y % 64) & 1) {
            path.push_back(y);
            break;
          }
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
    return std::nullopt;
  }

 private:
  std::uint64_t* bits(std::size_t mask) { return reach_.data() + mask * words_; }
  void set(std::size_t mask, Vertex v) { bits(mask)[v / 64] |= std::uint64_t{1} << (v % 64); }

  const Graph& g_;
  const std::vector<std::uint8_t>& color_;
  int length_;
  std::size_t words_;
  std::vector<std::uint64_t> reach_;
};

std::vector<std::uint8_t> random_coloring(Vertex n, int length, std::uint64_t seed, std::size_t trial) {
  Rng rng(derive_seed(seed, trial));
  std::vector<std::uint8_t> color(static_cast<std::size_t>(n));
  for (auto& c : color) c = static_cast<std::uint8_t>(rng.below(static_cast<std::uint64_t>(length)));
  return color;
}

// Colourful cycles contained in one part, anchored at their colour-0 vertex.
std::optional<std::vector<Vertex>> colorful_in_parts(const std::vector<InducedSubgraph>& parts,
                                                     const std::vector<std::uint8_t>& color,
                                                     int length) {
  for (const auto& sub : parts) {
    if (sub.graph.n() < length) continue;
    std::vector<std::uint8_t> local(static_cast<std::size_t>(sub.graph.n()));
    for (std::size_t i = 0; i < local.size(); ++i) local[i] = color[sub.original[i]];
    ColorfulSearch search(sub.graph, local, length);
    for (Vertex r = 0; r < sub.graph.n(); ++r)
      if (local[r] == 0)
        if (auto c = search.cycle_through(r, nullptr)) return lift(*c, sub.original);
  }
  return std::nullopt;
}

std::optional<std::vector<Vertex>> colorful_trial(const Graph& g, const SeparatorDecomposition& d,
                                                  const std::vector<InducedSubgraph>& parts,
                                                  const std::vector<std::uint8_t>& color, int length) {
  if (auto c = colorful_in_parts(parts, color, length)) return c;
  ColorfulSearch search(g, color, length);
  std::vector<char> blocked(static_cast<std::size_t>(g.n()), 0);
  for (Vertex s : d.separator()) {
    if (auto c = search.cycle_through(s, &blocked)) return c;
    blocked[s] = 1;
  }
  return std::nullopt;
}

// Layered digraph H (arc v->w iff vw in E and c(w) = c(v) + 1 mod l), with
// random nonzero arc weights; per part the powers of the weighted adjacency
// matrix of H[S + T_i] certify directed walks between separator vertices.
class OrderedTrial {
 public:
  OrderedTrial(const Graph& g, const SeparatorDecomposition& d, const std::vector<std::uint8_t>& color,
               int length, const Field& field, Rng& rng)
      : g_(g), d_(d), color_(color), length_(length) {
    const auto& sep = d.separator();
    for (std::size_t i = 0; i < d.part_count(); ++i) {
      Block b;
      b.vertices = sep;
      b.vertices.insert(b.vertices.end(), d.part(i).begin(), d.part(i).end());
      const std::size_t m = b.vertices.size();
      FieldMatrix adj(field, m, m);
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t c = 0; c < m; ++c)
          if (g.has_edge(b.vertices[a], b.vertices[c]) && arc(b.vertices[a], b.vertices[c]))
            adj(a, c) = field.random_nonzero(rng);
      b.powers.push_back(FieldMatrix::identity(field, m));
      for (int p = 1; p <= length; ++p) b.powers.push_back(mat_mul(b.powers.back(), adj));
      blocks_.push_back(std::move(b));
    }
    if (d.part_count() == 0 && !sep.empty()) {
      // Only separator vertices: one block over S.
      Block b;
      b.vertices = sep;
      const std::size_t m = sep.size();
      FieldMatrix adj(field, m, m);
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t c = 0; c < m; ++c)
          if (g.has_edge(sep[a], sep[c]) && arc(sep[a], sep[c])) adj(a, c) = field.random_nonzero(rng);
      b.powers.push_back(FieldMatrix::identity(field, m));
      for (int p = 1; p <= length; ++p) b.powers.push_back(mat_mul(b.powers.back(), adj));
      blocks_.push_back(std::move(b));
    }
  }

  std::optional<std::vector<Vertex>> search() {
    const auto& sep = d_.separator();
    const std::size_t s = sep.size();
    for (int r = 0; r < length_; ++r) {
      auto pos = [&](Vertex v) { return (color_[v] - r + length_) % length_; };
      for (std::size_t src = 0; src < s; ++src) {
        if (color_[sep[src]] != r) continue;
        // BFS over separator vertices in increasing position, then close.
        std::vector<std::int32_t> prev(s, -1);
        std::vector<std::pair<std::size_t, int>> via(s, {0, 0});  // (block, steps)
        std::vector<char> seen(s, 0);
        std::vector<std::size_t> queue{src};
        seen[src] = 1;
        for (std::size_t head = 0; head < queue.size(); ++head) {
          const std::size_t a = queue[head];
          const int pa = pos(sep[a]);
          // closing arc a -> src
          for (std::size_t bi = 0; bi < blocks_.size(); ++bi)
            if (!blocks_[bi].powers[static_cast<std::size_t>(length_ - pa)](a, src).is_zero()) {
              std::vector<Vertex> cycle;
              std::vector<std::size_t> chain{a};
              while (chain.back() != src) chain.push_back(static_cast<std::size_t>(prev[chain.back()]));
              std::reverse(chain.begin(), chain.end());
              for (std::size_t c = 0; c + 1 < chain.size(); ++c) {
                auto [blk, steps] = via[chain[c + 1]];
                append_walk(cycle, blk, chain[c], chain[c + 1], steps);
              }
              append_walk(cycle, bi, a, src, length_ - pa);
              return cycle;
            }
          for (std::size_t b = 0; b < s; ++b) {
            if (seen[b] || pos(sep[b]) <= pa) continue;
            const int steps = pos(sep[b]) - pa;
            for (std::size_t bi = 0; bi < blocks_.size(); ++bi)
              if (!blocks_[bi].powers[static_cast<std::size_t>(steps)](a, b).is_zero()) {
                seen[b] = 1;
                prev[b] = static_cast<std::int32_t>(a);
                via[b] = {bi, steps};
                queue.push_back(b);
                break;
              }
          }
        }
      }
    }
    return std::nullopt;
  }

 private:
  struct Block {
    std::vector<Vertex> vertices;  // separator first, in separator order
    std::vector<FieldMatrix> powers;
  };

  bool arc(Vertex v, Vertex w) const { return (color_[v] + 1) % length_ == color_[w]; }

  // Appends the walk from local index a to local index b (excluding b) of
  // the given number of steps, read off nonzero terms of the powers.
  void append_walk(std::vector<Vertex>& out, std::size_t blk, std::size_t a, std::size_t b, int steps) const {
    const Block& block = blocks_[blk];
    const FieldMatrix& one = block.powers[1];
    std::size_t cur = a;
    for (int left = steps; left > 0; --left) {
      out.push_back(block.vertices[cur]);
      if (left == 1) break;
      for (std::size_t x = 0; x < block.vertices.size(); ++x)
        if (!one(cur, x).is_zero() && !block.powers[static_cast<std::size_t>(left - 1)](x, b).is_zero()) {
          cur = x;
          break;
        }
    }
  }

  const Graph& g_;
  const SeparatorDecomposition& d_;
  const std::vector<std::uint8_t>& color_;
  int length_;
  std::vector<Block> blocks_;
};

}  // namespace

std::optional<CycleReport> find_cycle_of_length(const Graph& g, const SeparatorDecomposition& d,
                                                int length, const CycleSearchOptions& options,
                                                CycleSearchStats* stats) {
  if (length < 3 || length > options.max_length)
    throw InputError("cycle length must lie in [3, " + std::to_string(options.max_length) + "]");
  check_decomposition(g, d);
  std::size_t trials = color_coding_trials(length, options.failure_prob, options.strategy);
  CycleSearchStats local;
  local.trials_planned = trials;
  if (options.max_trials && trials > options.max_trials) {
    trials = options.max_trials;
    local.capped = true;
  }
  std::vector<InducedSubgraph> parts;
  for (const auto& part : d.parts()) parts.push_back(induced_subgraph(g, part));
  const Field field = Field::standard(options.field_degree);
  std::optional<std::vector<Vertex>> found;
  for (std::size_t t = 0; t < trials && !found; ++t) {
    ++local.trials_run;
    const auto color = random_coloring(g.n(), length, options.seed, t);
    if (options.strategy == CycleStrategy::colorful) {
      found = colorful_trial(g, d, parts, color, length);
    } else {
      found = colorful_in_parts(parts, color, length);
      if (!found && !d.separator().empty()) {
        Rng weights(derive_seed(options.seed ^ 0x5eedULL, t));
        found = OrderedTrial(g, d, color, length, field, weights).search();
      }
    }
  }
  if (stats) *stats = local;
  if (!found) return std::nullopt;
  return report(g, *std::move(found), CycleKind::fixed_length);
}

}  // namespace vigl
