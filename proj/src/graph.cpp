#include "vigl/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "vigl/errors.hpp"

namespace vigl {

Graph::Graph(Vertex n) : n_(n) {
  if (n < 0) throw InputError("negative vertex count");
  build();
}

Graph::Graph(Vertex n, std::span<const Edge> edges) : n_(n), edges_(edges.begin(), edges.end()) {
  if (n < 0) throw InputError("negative vertex count");
  for (auto& e : edges_) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw InputError("edge endpoint out of range: " + std::to_string(e.u) + " " +
                       std::to_string(e.v));
    if (e.u == e.v) throw InputError("self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end())
    throw InputError("duplicate edge " + std::to_string(dup->u) + " " + std::to_string(dup->v));
  build();
}

Graph Graph::from_edges_dedup(Vertex n, std::vector<Edge> edges) {
  for (auto& e : edges)
    if (e.u > e.v) std::swap(e.u, e.v);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph(n, edges);
}

void Graph::build() {
  offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (Vertex v = 0; v < n_; ++v) offsets_[v + 1] += offsets_[v];
  adj_.assign(offsets_[n_], 0);
  adj_edge_.assign(offsets_[n_], 0);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  // Edges are sorted by (u, v): for each vertex x, neighbors smaller than x
  // arrive (as e.u with e.v == x) in increasing order of e.u, and neighbors
  // larger arrive in increasing order of e.v. Two passes keep lists sorted.
  for (std::size_t id = 0; id < edges_.size(); ++id) {
    const auto& e = edges_[id];
    // pass 1 places the smaller endpoint into the larger endpoint's list
    adj_[fill[e.v]] = e.u;
    adj_edge_[fill[e.v]++] = static_cast<std::uint32_t>(id);
  }
  for (std::size_t id = 0; id < edges_.size(); ++id) {
    const auto& e = edges_[id];
    adj_[fill[e.u]] = e.v;
    adj_edge_[fill[e.u]++] = static_cast<std::uint32_t>(id);
  }
  // After pass 1 a vertex's list holds its smaller neighbors sorted; pass 2
  // appends larger ones sorted, so every list is ascending.
}

bool Graph::has_edge(Vertex u, Vertex v) const { return edge_id(u, v).has_value(); }

std::optional<std::size_t> Graph::edge_id(Vertex u, Vertex v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return std::nullopt;
  if (degree(u) > degree(v)) std::swap(u, v);
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return std::nullopt;
  return adj_edge_[offsets_[u] + static_cast<std::size_t>(it - nb.begin())];
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  std::vector<Vertex> local(static_cast<std::size_t>(g.n()), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (local[vertices[i]] != -1) throw InputError("repeated vertex in induced subgraph");
    local[vertices[i]] = static_cast<Vertex>(i);
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (Vertex w : g.neighbors(vertices[i])) {
      Vertex j = local[w];
      if (j > static_cast<Vertex>(i)) edges.push_back({static_cast<Vertex>(i), j});
    }
  InducedSubgraph result;
  result.graph = Graph(static_cast<Vertex>(vertices.size()), edges);
  result.original.assign(vertices.begin(), vertices.end());
  return result;
}

Graph complement(const Graph& g) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < g.n(); ++u) {
    auto nb = g.neighbors(u);
    auto it = std::upper_bound(nb.begin(), nb.end(), u);
    for (Vertex v = u + 1; v < g.n(); ++v) {
      if (it != nb.end() && *it == v) {
        ++it;
        continue;
      }
      edges.push_back({u, v});
    }
  }
  return Graph(g.n(), edges);
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g,
                                                      const std::vector<bool>& removed) {
  const auto n = static_cast<std::size_t>(g.n());
  std::vector<bool> seen(n, false);
  if (!removed.empty())
    for (std::size_t v = 0; v < n; ++v) seen[v] = removed[v];
  std::vector<std::vector<Vertex>> comps;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.n(); ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> comp;
    seen[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (Vertex w : g.neighbors(v))
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::int64_t parse_int(std::string_view tok, std::size_t line, const char* what) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, std::string("expected integer ") + what + ", got '" +
                               std::string(tok) + "'");
  return value;
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\r'; });
}

void strip_cr(std::string& s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
}

}  // namespace

Graph read_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError(1, "empty input, expected 'p <n> <m>'");
  ++lineno;
  strip_cr(line);
  auto head = split_tokens(line);
  if (head.size() != 3 || head[0] != "p") throw ParseError(lineno, "expected 'p <n> <m>'");
  const auto n = parse_int(head[1], lineno, "n");
  const auto m = parse_int(head[2], lineno, "m");
  if (n < 0 || n > INT32_MAX) throw ParseError(lineno, "vertex count out of range");
  if (m < 0) throw ParseError(lineno, "negative edge count");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(std::min<std::int64_t>(m, 1 << 24)));
  std::vector<std::pair<Edge, std::size_t>> seen;
  for (std::int64_t i = 0; i < m; ++i) {
    if (!std::getline(in, line))
      throw ParseError(lineno + 1, "expected " + std::to_string(m) + " edge lines, found " +
                                       std::to_string(i));
    ++lineno;
    strip_cr(line);
    auto tok = split_tokens(line);
    if (tok.size() != 2) throw ParseError(lineno, "expected '<u> <v>'");
    const auto u = parse_int(tok[0], lineno, "u");
    const auto v = parse_int(tok[1], lineno, "v");
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw ParseError(lineno, "vertex id out of range [0, " + std::to_string(n) + ")");
    if (u >= v) throw ParseError(lineno, "edge must satisfy u < v");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    seen.push_back({edges.back(), lineno});
  }
  while (std::getline(in, line)) {
    ++lineno;
    if (!blank(line)) throw ParseError(lineno, "unexpected content after edge list");
  }
  std::sort(seen.begin(), seen.end());
  for (std::size_t i = 1; i < seen.size(); ++i)
    if (seen[i].first == seen[i - 1].first)
      throw ParseError(std::max(seen[i].second, seen[i - 1].second), "duplicate edge");
  return Graph(static_cast<Vertex>(n), edges);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << "p " << g.n() << ' ' << g.m() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file: " + path);
  return read_graph(in);
}

void save_graph(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write graph file: " + path);
  write_graph(out, g);
}

SeparatorFile read_separator(std::istream& in) {
  SeparatorFile file;
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "expected separator vertex line");
  strip_cr(line);
  for (auto tok : split_tokens(line)) {
    auto v = parse_int(tok, 1, "vertex id");
    if (v < 0 || v > INT32_MAX) throw ParseError(1, "vertex id out of range");
    file.separator.push_back(static_cast<Vertex>(v));
  }
  if (!std::getline(in, line)) throw ParseError(2, "expected 'k <k>'");
  strip_cr(line);
  auto tok = split_tokens(line);
  if (tok.size() != 2 || tok[0] != "k") throw ParseError(2, "expected 'k <k>'");
  file.k = parse_int(tok[1], 2, "k");
  if (file.k < 0) throw ParseError(2, "k must be non-negative");
  std::size_t lineno = 2;
  while (std::getline(in, line)) {
    ++lineno;
    if (!blank(line)) throw ParseError(lineno, "unexpected content after 'k' line");
  }
  return file;
}

void write_separator(std::ostream& out, std::span<const Vertex> separator, std::int64_t k) {
  for (std::size_t i = 0; i < separator.size(); ++i) {
    if (i) out << ' ';
    out << separator[i];
  }
  out << "\nk " << k << '\n';
}

SeparatorFile load_separator(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open separator file: " + path);
  return read_separator(in);
}

Graph path_graph(Vertex n) {
  std::vector<Edge> e;
  for (Vertex i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return Graph(n, e);
}

Graph cycle_graph(Vertex n) {
  std::vector<Edge> e;
  for (Vertex i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  if (n >= 3) e.push_back({0, n - 1});
  return Graph(n, e);
}

Graph complete_graph(Vertex n) {
  std::vector<Edge> e;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) e.push_back({i, j});
  return Graph(n, e);
}

Graph star_graph(Vertex leaves) {
  std::vector<Edge> e;
  for (Vertex i = 1; i <= leaves; ++i) e.push_back({0, i});
  return Graph(leaves + 1, e);
}

Graph complete_bipartite(Vertex a, Vertex b) {
  std::vector<Edge> e;
  for (Vertex i = 0; i < a; ++i)
    for (Vertex j = 0; j < b; ++j) e.push_back({i, a + j});
  return Graph(a + b, e);
}

Graph petersen_graph() {
  std::vector<Edge> e;
  for (Vertex i = 0; i < 5; ++i) {
    e.push_back({i, static_cast<Vertex>((i + 1) % 5)});
    e.push_back({i, static_cast<Vertex>(i + 5)});
    e.push_back({static_cast<Vertex>(i + 5), static_cast<Vertex>((i + 2) % 5 + 5)});
  }
  return Graph::from_edges_dedup(10, e);
}

}  // namespace vigl
