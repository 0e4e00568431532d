#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vigl {

using Vertex = std::int32_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Undirected simple graph, vertices 0..n-1. Adjacency is stored in CSR form
// with sorted neighbor lists; each adjacency slot also records the id of its
// edge in the sorted edge list.
class Graph {
 public:
  Graph() = default;
  explicit Graph(Vertex n);
  // Throws InputError on self-loops, duplicates or out-of-range endpoints.
  Graph(Vertex n, std::span<const Edge> edges);
  // Same as above but silently normalizes (u,v) order and drops duplicates;
  // self-loops still throw.
  static Graph from_edges_dedup(Vertex n, std::vector<Edge> edges);

  Vertex n() const { return n_; }
  std::size_t m() const { return edges_.size(); }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  // Edge ids parallel to neighbors(v).
  std::span<const std::uint32_t> incident_edges(Vertex v) const {
    return {adj_edge_.data() + offsets_[v], adj_edge_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  // Sorted lexicographically, u < v in every edge.
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_edge(Vertex u, Vertex v) const;
  std::optional<std::size_t> edge_id(Vertex u, Vertex v) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  void build();

  Vertex n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adj_;
  std::vector<std::uint32_t> adj_edge_;
};

// G[vertices]; vertex i of the result is vertices[i].
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> original;
};
InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

Graph complement(const Graph& g);

// Connected components, each sorted, ordered by smallest vertex. Vertices with
// removed[v] set are skipped.
std::vector<std::vector<Vertex>> connected_components(const Graph& g,
                                                      const std::vector<bool>& removed = {});

Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);
Graph load_graph(const std::string& path);
void save_graph(const std::string& path, const Graph& g);

struct SeparatorFile {
  std::vector<Vertex> separator;
  std::int64_t k = 0;
};
SeparatorFile read_separator(std::istream& in);
void write_separator(std::ostream& out, std::span<const Vertex> separator, std::int64_t k);
SeparatorFile load_separator(const std::string& path);

// Handy constructors for tests, examples and the CLI.
Graph path_graph(Vertex n);
Graph cycle_graph(Vertex n);
Graph complete_graph(Vertex n);
Graph star_graph(Vertex leaves);
Graph complete_bipartite(Vertex a, Vertex b);
Graph petersen_graph();

}  // namespace vigl
