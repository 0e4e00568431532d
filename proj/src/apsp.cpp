#include "vigl/apsp.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "vigl/block.hpp"
#include "vigl/errors.hpp"

namespace vigl {
namespace {

constexpr std::int32_t kInf = DistanceMatrix::kUnreachable;

std::size_t as_index(Vertex v) { return static_cast<std::size_t>(v); }

// A vertex of the transformed graph before ids are assigned: the input vertex
// it stands for, and whether it is that vertex itself or a copy.
struct Member {
  Vertex original;
  bool is_original;
};
using Group = std::vector<Member>;

DistanceBlock bfs_all(const Graph& g) {
  const auto n = as_index(g.n());
  DistanceBlock d(n, n, kInf);
  std::vector<Vertex> queue;
  for (std::size_t s = 0; s < n; ++s) {
    std::int32_t* row = d.row(s);
    row[s] = 0;
    queue.assign(1, static_cast<Vertex>(s));
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex x = queue[head];
      for (Vertex y : g.neighbors(x))
        if (row[as_index(y)] == kInf) {
          row[as_index(y)] = row[as_index(x)] + 1;
          queue.push_back(y);
        }
    }
  }
  return d;
}

class NiceBuilder {
 public:
  NiceBuilder(const Graph& g, const SeparatorDecomposition& d)
      : g_(g), d_(d), limit_(static_cast<std::size_t>(std::max<std::int64_t>(d.k(), 1))) {}

  NicePartition run();

 private:
  void split_component(const std::vector<Vertex>& seps, const std::vector<std::size_t>& comps);
  std::vector<Vertex> inner_path(Vertex from, Vertex to, std::size_t comp) const;
  void emit(const Group& group);

  const Graph& g_;
  const SeparatorDecomposition& d_;
  std::size_t limit_;
  std::vector<std::vector<Vertex>> comps_;
  std::vector<std::int32_t> comp_of_;
  std::vector<Edge> edges_;
  std::vector<Vertex> origin_;
  std::vector<std::vector<Vertex>> parts_;
};

NicePartition NiceBuilder::run() {
  const auto n = as_index(g_.n());
  std::vector<bool> removed(n);
  for (Vertex s : d_.separator()) removed[as_index(s)] = true;
  comps_ = connected_components(g_, removed);
  comp_of_.assign(n, -1);
  for (std::size_t c = 0; c < comps_.size(); ++c)
    for (Vertex v : comps_[c]) comp_of_[as_index(v)] = static_cast<std::int32_t>(c);

  origin_.resize(n);
  for (std::size_t v = 0; v < n; ++v) origin_[v] = static_cast<Vertex>(v);
  edges_ = g_.edges();

  for (const auto& whole : connected_components(g_)) {
    std::vector<Vertex> seps;
    std::vector<std::size_t> comps;
    for (Vertex v : whole) {
      if (removed[as_index(v)])
        seps.push_back(v);
      else if (comps_[as_index(comp_of_[as_index(v)])].front() == v)
        comps.push_back(as_index(comp_of_[as_index(v)]));
    }
    if (seps.empty()) {
      Group group;
      for (Vertex v : comps_[comps.front()]) group.push_back({v, true});
      emit(group);
    } else {
      split_component(seps, comps);
    }
  }

  // Equal sizes: pad short parts at the end of their path and S with a path
  // hanging off its first vertex.
  std::size_t c = d_.separator().size();
  for (const auto& part : parts_) c = std::max(c, part.size());
  auto fresh = [&] {
    origin_.push_back(NicePartition::kSynthetic);
    return static_cast<Vertex>(origin_.size() - 1);
  };
  for (auto& part : parts_)
    while (part.size() < c) {
      const Vertex v = fresh();
      edges_.push_back({part.back(), v});
      part.push_back(v);
    }
  std::vector<Vertex> sep(d_.separator().begin(), d_.separator().end());
  while (sep.size() < c) {
    const Vertex v = fresh();
    if (!sep.empty()) edges_.push_back({sep.back(), v});
    sep.push_back(v);
  }

  NicePartition out;
  out.graph = Graph::from_edges_dedup(static_cast<Vertex>(origin_.size()), std::move(edges_));
  out.separator = std::move(sep);
  out.parts = std::move(parts_);
  out.origin = std::move(origin_);
  out.size_class = c;
  out.original_n = g_.n();
  return out;
}

// Shortest path from `from` to `to` whose inner vertices lie in component
// `comp`; returns the inner vertices only.
std::vector<Vertex> NiceBuilder::inner_path(Vertex from, Vertex to, std::size_t comp) const {
  std::unordered_map<Vertex, Vertex> parent{{from, from}};
  std::vector<Vertex> queue{from};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex x = queue[head];
    for (Vertex y : g_.neighbors(x)) {
      if (parent.contains(y)) continue;
      if (y == to && x != from) {
        std::vector<Vertex> path;
        for (Vertex z = x; z != from; z = parent[z]) path.push_back(z);
        std::reverse(path.begin(), path.end());
        return path;
      }
      if (comp_of_[as_index(y)] != static_cast<std::int32_t>(comp)) continue;
      parent.emplace(y, x);
      queue.push_back(y);
    }
  }
  throw InternalError("no path through the component joining two separator vertices");
}

void NiceBuilder::split_component(const std::vector<Vertex>& seps,
                                  const std::vector<std::size_t>& comps) {
  std::unordered_map<Vertex, std::vector<std::size_t>> owned;
  std::unordered_map<std::size_t, std::vector<Vertex>> attach;
  for (std::size_t c : comps) {
    std::vector<Vertex>& nb = attach[c];
    for (Vertex v : comps_[c])
      for (Vertex w : g_.neighbors(v))
        if (d_.in_separator(w)) nb.push_back(w);
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    owned[nb.front()].push_back(c);
  }

  // Spanning tree on S: direct edges first, otherwise through a component
  // touching both the tree and the rest.
  struct TreeLink {
    Vertex parent;
    std::int64_t via;
  };
  std::unordered_map<Vertex, TreeLink> link{{seps.front(), {seps.front(), -1}}};
  std::unordered_map<Vertex, std::vector<Vertex>> children;
  std::vector<Vertex> order{seps.front()};
  auto add = [&](Vertex child, Vertex parent, std::int64_t via) {
    link.emplace(child, TreeLink{parent, via});
    children[parent].push_back(child);
    order.push_back(child);
  };
  std::size_t head = 0;
  while (true) {
    for (; head < order.size(); ++head)
      for (Vertex w : g_.neighbors(order[head]))
        if (d_.in_separator(w) && !link.contains(w)) add(w, order[head], -1);
    if (order.size() == seps.size()) break;
    bool grew = false;
    for (std::size_t c : comps) {
      const auto& nb = attach[c];
      const auto in = std::find_if(nb.begin(), nb.end(), [&](Vertex s) { return link.contains(s); });
      if (in == nb.end()) continue;
      const Vertex s = *in;
      for (Vertex t : nb)
        if (!link.contains(t)) {
          add(t, s, static_cast<std::int64_t>(c));
          grew = true;
        }
      if (grew) break;
    }
    if (!grew) throw InternalError("separator vertices of a connected component are not linked");
  }

  // Bottom-up grouping.
  std::unordered_map<Vertex, std::vector<Group>> groups;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex s = *it;
    std::vector<Group>& mine = groups[s];
    Group cur;
    auto close = [&] {
      cur.push_back({s, false});
      mine.push_back(std::move(cur));
      cur.clear();
    };
    const auto& own = owned[s];
    for (std::size_t j = 0; j < own.size(); ++j) {
      for (Vertex v : comps_[own[j]]) cur.push_back({v, true});
      if (cur.size() > limit_ || j + 1 == own.size()) close();
    }
    for (Vertex child : children[s]) {
      const TreeLink& l = link.at(child);
      if (l.via >= 0)
        for (Vertex v : inner_path(s, child, static_cast<std::size_t>(l.via)))
          cur.push_back({v, false});
      std::vector<Group>& theirs = groups[child];
      if (!theirs.empty()) {
        cur.insert(cur.end(), theirs.back().begin(), theirs.back().end());
        theirs.pop_back();
      }
      if (cur.size() > 3 * limit_) close();
    }
    if (!cur.empty()) close();
  }
  for (Vertex s : order)
    for (const Group& group : groups[s]) emit(group);
}

// Doubles a spanning tree of the group into a closed walk and turns repeated
// visits into fresh vertices, so the walk becomes a Hamiltonian path.
void NiceBuilder::emit(const Group& group) {
  const std::size_t size = group.size();
  std::unordered_map<Vertex, std::vector<std::size_t>> by_original;
  for (std::size_t x = 0; x < size; ++x) by_original[group[x].original].push_back(x);
  std::vector<std::vector<std::size_t>> adj(size);
  for (std::size_t x = 0; x < size; ++x)
    for (Vertex w : g_.neighbors(group[x].original)) {
      const auto it = by_original.find(w);
      if (it == by_original.end()) continue;
      for (std::size_t y : it->second) adj[x].push_back(y);
    }

  std::vector<std::size_t> parent(size, size);
  std::vector<std::vector<std::size_t>> tree(size);
  std::vector<std::size_t> queue{0};
  parent[0] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (std::size_t y : adj[queue[head]])
      if (parent[y] == size) {
        parent[y] = queue[head];
        tree[queue[head]].push_back(y);
        queue.push_back(y);
      }
  if (queue.size() != size) throw InternalError("part of the nice partition is disconnected");

  std::vector<std::size_t> walk;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  walk.push_back(0);
  while (!stack.empty()) {
    auto& [x, next] = stack.back();
    if (next < tree[x].size()) {
      const std::size_t y = tree[x][next++];
      walk.push_back(y);
      stack.push_back({y, 0});
    } else {
      stack.pop_back();
      if (!stack.empty()) walk.push_back(stack.back().first);
    }
  }

  std::vector<Vertex> id(size, -1);
  std::vector<Vertex> path;
  path.reserve(walk.size());
  for (std::size_t x : walk) {
    Vertex v;
    if (id[x] < 0 && group[x].is_original) {
      v = group[x].original;
    } else {
      origin_.push_back(group[x].original);
      v = static_cast<Vertex>(origin_.size() - 1);
    }
    if (id[x] < 0) id[x] = v;
    if (!path.empty()) edges_.push_back({std::min(path.back(), v), std::max(path.back(), v)});
    path.push_back(v);
  }
  for (std::size_t x = 0; x < size; ++x)
    for (std::size_t y : adj[x])
      if (x < y) edges_.push_back({std::min(id[x], id[y]), std::max(id[x], id[y])});
  parts_.push_back(std::move(path));
}

std::int32_t row_drop(const std::int32_t* prev, const std::int32_t* cur, std::size_t len) {
  std::int32_t delta = 0;
  for (std::size_t k = 0; k < len; ++k) {
    if (cur[k] >= kInf) continue;
    if (prev[k] >= kInf) return kInf;
    delta = std::max(delta, prev[k] - cur[k]);
  }
  return delta;
}

DistanceBlock min_plus_naive(const DistanceBlock& a, const DistanceBlock& b) {
  DistanceBlock c(a.rows(), b.cols(), kInf);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::int32_t* out = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const std::int32_t x = a(i, k);
      if (x >= kInf) continue;
      const std::int32_t* in = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) out[j] = std::min(out[j], x + in[j]);
    }
    for (std::size_t j = 0; j < b.cols(); ++j) out[j] = std::min(out[j], kInf);
  }
  return c;
}

DistanceBlock min_plus_bounded(const DistanceBlock& a, const DistanceBlock& b) {
  const std::size_t inner = a.cols();
  const DistanceBlock bt = b.transposed();
  DistanceBlock c(a.rows(), b.cols(), kInf);
  std::vector<std::size_t> arg(b.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const std::int32_t* ar = a.row(i);
    const std::int32_t delta = i == 0 ? kInf : row_drop(a.row(i - 1), ar, inner);
    for (std::size_t j = 0; j < b.cols(); ++j) {
      const std::int32_t* bc = bt.row(j);
      std::int32_t floor = -1;
      std::int32_t best = kInf;
      std::size_t best_k = arg[j];
      if (i > 0 && delta < kInf && c(i - 1, j) < kInf) {
        floor = std::max(c(i - 1, j) - delta, 0);
        if (inner > 0 && ar[best_k] < kInf) best = std::min(kInf, ar[best_k] + bc[best_k]);
      }
      for (std::size_t k = 0; k < inner && best > floor; ++k) {
        if (ar[k] >= kInf) continue;
        const std::int32_t v = ar[k] + bc[k];
        if (v < best) {
          best = v;
          best_k = k;
        }
      }
      c(i, j) = std::min(best, kInf);
      arg[j] = best_k;
    }
  }
  return c;
}

}  // namespace

NicePartition nice_partition(const Graph& g, const SeparatorDecomposition& d) {
  return NiceBuilder(g, d).run();
}

std::optional<std::string> nice_partition_violation(const Graph& g, const NicePartition& p) {
  const Graph& h = p.graph;
  const auto total = as_index(h.n());
  if (p.origin.size() != total) return "origin map has the wrong size";
  if (p.original_n != g.n()) return "original vertex count differs";
  for (Vertex v = 0; v < g.n(); ++v)
    if (p.origin[as_index(v)] != v) return "input vertex " + std::to_string(v) + " is not mapped to itself";
  for (const auto& e : g.edges())
    if (!h.has_edge(e.u, e.v)) return "input edge missing from the transformed graph";
  for (const auto& e : h.edges()) {
    const Vertex a = p.origin[as_index(e.u)], b = p.origin[as_index(e.v)];
    if (a == NicePartition::kSynthetic || b == NicePartition::kSynthetic) continue;
    if (!g.has_edge(a, b)) return "transformed edge does not map to an input edge";
  }
  if (p.separator.size() != p.size_class) return "separator size differs from the size class";
  std::vector<std::int64_t> where(total, -2);
  for (Vertex s : p.separator) {
    if (where[as_index(s)] != -2) return "vertex listed twice";
    where[as_index(s)] = -1;
  }
  for (std::size_t i = 0; i < p.parts.size(); ++i) {
    const auto& part = p.parts[i];
    if (part.size() != p.size_class) return "part " + std::to_string(i) + " has the wrong size";
    for (std::size_t j = 0; j < part.size(); ++j) {
      if (where[as_index(part[j])] != -2) return "vertex listed twice";
      where[as_index(part[j])] = static_cast<std::int64_t>(i);
      if (j > 0 && !h.has_edge(part[j - 1], part[j]))
        return "part " + std::to_string(i) + " path breaks at position " + std::to_string(j);
    }
  }
  for (std::size_t v = 0; v < total; ++v)
    if (where[v] == -2) return "vertex " + std::to_string(v) + " is in no part";
  for (const auto& e : h.edges()) {
    const auto a = where[as_index(e.u)], b = where[as_index(e.v)];
    if (a >= 0 && b >= 0 && a != b) return "edge between two parts";
  }
  return std::nullopt;
}

DistanceBlock min_plus(const DistanceBlock& a, const DistanceBlock& b, MinPlusKernel kernel) {
  if (a.cols() != b.rows()) throw InputError("min-plus dimension mismatch");
  return kernel == MinPlusKernel::naive ? min_plus_naive(a, b) : min_plus_bounded(a, b);
}

DistanceMatrix weighted_apsp_small(const DistanceBlock& weights) {
  if (weights.rows() != weights.cols()) throw InputError("weight matrix is not square");
  const std::size_t n = weights.rows();
  DistanceMatrix d(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) d.at(u, v) = u == v ? 0 : std::min(weights(u, v), kInf);
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t u = 0; u < n; ++u) {
      const std::int32_t uw = d.at(u, w);
      if (uw >= kInf) continue;
      for (std::size_t v = 0; v < n; ++v) d.at(u, v) = std::min(d.at(u, v), uw + d.at(w, v));
    }
  return d;
}

namespace {

// Steps (1) to (5) on one instance; correct for any graph, used per
// connected component.
DistanceMatrix apsp_pipeline(const Graph& g, const SeparatorDecomposition& d, MinPlusKernel kernel) {
  const auto n = as_index(g.n());

  // (1) transform
  const NicePartition p = nice_partition(g, d);
  const std::size_t c = p.size_class;
  const std::size_t nu = p.parts.size();

  // (2) per-part distances inside G'[S' + T'_i]
  DistanceBlock ws(c, c, kInf);
  for (std::size_t a = 0; a < c; ++a)
    for (std::size_t b = 0; b < c; ++b)
      if (p.graph.has_edge(p.separator[a], p.separator[b])) ws(a, b) = 1;
  std::vector<DistanceBlock> to_sep(nu), within(nu);
  for (std::size_t i = 0; i < nu; ++i) {
    std::vector<Vertex> vs = p.separator;
    vs.insert(vs.end(), p.parts[i].begin(), p.parts[i].end());
    const DistanceBlock local = bfs_all(induced_subgraph(p.graph, vs).graph);
    to_sep[i] = DistanceBlock(c, c);
    within[i] = DistanceBlock(c, c);
    for (std::size_t a = 0; a < c; ++a)
      for (std::size_t b = 0; b < c; ++b) {
        ws(a, b) = std::min(ws(a, b), local(a, b));
        to_sep[i](a, b) = local(c + a, b);
        within[i](a, b) = local(c + a, c + b);
      }
  }

  // (3) weighted distances on S'
  const DistanceMatrix ds_matrix = weighted_apsp_small(ws);
  DistanceBlock ds(c, c);
  for (std::size_t a = 0; a < c; ++a)
    for (std::size_t b = 0; b < c; ++b) ds(a, b) = ds_matrix.at(a, b);

  // Positions of input vertices.
  std::vector<std::int64_t> part_of(n, -1);
  std::vector<std::size_t> index(n, 0);
  for (std::size_t a = 0; a < c; ++a) {
    const Vertex v = p.separator[a];
    if (as_index(v) < n) index[as_index(v)] = a;
  }
  for (std::size_t i = 0; i < nu; ++i)
    for (std::size_t r = 0; r < c; ++r) {
      const Vertex v = p.parts[i][r];
      if (as_index(v) < n) {
        part_of[as_index(v)] = static_cast<std::int64_t>(i);
        index[as_index(v)] = r;
      }
    }
  std::vector<std::vector<Vertex>> members(nu);
  std::vector<Vertex> seps;
  for (std::size_t v = 0; v < n; ++v) {
    if (part_of[v] < 0)
      seps.push_back(static_cast<Vertex>(v));
    else
      members[as_index(static_cast<Vertex>(part_of[v]))].push_back(static_cast<Vertex>(v));
  }

  // (4) + (5) products and assembly, only for i <= j.
  DistanceMatrix out(n);
  for (Vertex u : seps)
    for (Vertex v : seps) out.at(as_index(u), as_index(v)) = ds(index[as_index(u)], index[as_index(v)]);
  std::vector<DistanceBlock> star(nu);
  for (std::size_t i = 0; i < nu; ++i) {
    star[i] = min_plus(to_sep[i], ds, kernel);
    for (Vertex v : members[i])
      for (Vertex s : seps) {
        const std::int32_t x = star[i](index[as_index(v)], index[as_index(s)]);
        out.at(as_index(v), as_index(s)) = x;
        out.at(as_index(s), as_index(v)) = x;
      }
  }
  for (std::size_t i = 0; i < nu; ++i)
    for (std::size_t j = i; j < nu; ++j) {
      const DistanceBlock pair = min_plus(star[i], to_sep[j].transposed(), kernel);
      for (Vertex u : members[i])
        for (Vertex v : members[j]) {
          const std::size_t ru = index[as_index(u)], rv = index[as_index(v)];
          std::int32_t x = pair(ru, rv);
          if (i == j) x = std::min(x, within[i](ru, rv));
          out.at(as_index(u), as_index(v)) = x;
          out.at(as_index(v), as_index(u)) = x;
        }
    }
  return out;
}

}  // namespace

DistanceMatrix apsp(const Graph& g, const SeparatorDecomposition& d, const ApspOptions& options) {
  const auto n = as_index(g.n());
  DistanceMatrix out(n);
  if (options.dense_exponent > 0 &&
      static_cast<double>(d.k()) >= std::pow(static_cast<double>(n), options.dense_exponent)) {
    const DistanceBlock all = bfs_all(g);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) out.at(u, v) = all(u, v);
    return out;
  }
  const auto components = connected_components(g);
  if (components.size() <= 1) return apsp_pipeline(g, d, options.kernel);
  for (const auto& comp : components) {
    const InducedSubgraph sub = induced_subgraph(g, comp);
    std::vector<Vertex> sep;
    for (std::size_t i = 0; i < comp.size(); ++i)
      if (d.in_separator(comp[i])) sep.push_back(static_cast<Vertex>(i));
    const DistanceMatrix local =
        apsp_pipeline(sub.graph, build_decomposition(sub.graph, sep, d.k()), options.kernel);
    for (std::size_t a = 0; a < comp.size(); ++a)
      for (std::size_t b = 0; b < comp.size(); ++b)
        out.at(as_index(comp[a]), as_index(comp[b])) = local.at(a, b);
  }
  return out;
}

DistanceMatrix apsp_bounded_diameter(const Graph& g, const SeparatorDecomposition& d,
                                     std::int32_t d_max) {
  if (d_max < 1) throw InputError("d_max must be at least 1");
  const auto n = as_index(g.n());
  const BlockAdjacency a = block_adjacency(g, d);
  DistanceMatrix out(n);
  for (std::size_t v = 0; v < n; ++v) out.at(v, v) = 0;
  IntMatrix b = to_dense(a);
  for (std::int32_t i = 1;; ++i) {
    bool fresh = false;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        if (b(u, v) != 0 && out.at(u, v) == kInf) {
          out.at(u, v) = i;
          fresh = true;
        }
    if (i == d_max || !fresh) break;
    b = structured_mul(a, b, Side::right);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) b(u, v) = b(u, v) != 0 ? 1 : 0;
  }
  return out;
}

}  // namespace vigl
