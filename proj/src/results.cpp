#include "vigl/results.hpp"

#include <algorithm>
#include <ostream>

namespace vigl {

bool is_valid_cycle(const Graph& g, std::span<const Vertex> cycle) {
  if (cycle.size() < 3) return false;
  std::vector<Vertex> sorted(cycle.begin(), cycle.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  if (sorted.front() < 0 || sorted.back() >= g.n()) return false;
  for (std::size_t i = 0; i < cycle.size(); ++i)
    if (!g.has_edge(cycle[i], cycle[(i + 1) % cycle.size()])) return false;
  return true;
}

bool is_valid_report(const Graph& g, const CycleReport& report) {
  if (report.length != report.vertices.size()) return false;
  if (!is_valid_cycle(g, report.vertices)) return false;
  return report.kind != CycleKind::even_girth || report.length % 2 == 0;
}

Matching Matching::from_edges(std::vector<Edge> edges) {
  Matching m;
  for (auto& e : edges)
    if (e.u > e.v) std::swap(e.u, e.v);
  std::sort(edges.begin(), edges.end());
  m.edges = std::move(edges);
  for (const auto& e : m.edges) {
    m.saturated.push_back(e.u);
    m.saturated.push_back(e.v);
  }
  std::sort(m.saturated.begin(), m.saturated.end());
  return m;
}

bool is_valid_matching(const Graph& g, const Matching& m) {
  std::vector<bool> used(static_cast<std::size_t>(g.n()), false);
  std::vector<Vertex> covered;
  for (const auto& e : m.edges) {
    if (e.u >= e.v || !g.has_edge(e.u, e.v)) return false;
    if (used[e.u] || used[e.v]) return false;
    used[e.u] = used[e.v] = true;
    covered.push_back(e.u);
    covered.push_back(e.v);
  }
  std::sort(covered.begin(), covered.end());
  return covered == m.saturated && std::is_sorted(m.edges.begin(), m.edges.end());
}

bool is_perfect_matching(const Graph& g, const Matching& m) {
  return is_valid_matching(g, m) && m.saturated.size() == static_cast<std::size_t>(g.n());
}

void write_matching(std::ostream& out, const Matching& m) {
  for (const auto& e : m.edges) out << e.u << ' ' << e.v << '\n';
}

bool is_valid_embedding(const Graph& g, const InducedEmbedding& e) {
  for (int i = 0; i < 4; ++i) {
    if (e.vertices[i] < 0 || e.vertices[i] >= g.n()) return false;
    for (int j = i + 1; j < 4; ++j) {
      if (e.vertices[i] == e.vertices[j]) return false;
      if (g.has_edge(e.vertices[i], e.vertices[j]) != e.target.adjacent(i, j)) return false;
    }
  }
  return true;
}

std::optional<std::string> distance_violation(const DistanceMatrix& d) {
  const auto n = d.n();
  constexpr auto inf = DistanceMatrix::kUnreachable;
  for (std::size_t u = 0; u < n; ++u) {
    if (d.at(u, u) != 0) return "nonzero diagonal at " + std::to_string(u);
    for (std::size_t v = 0; v < n; ++v) {
      if (d.at(u, v) != d.at(v, u))
        return "asymmetric at " + std::to_string(u) + "," + std::to_string(v);
      if (d.at(u, v) < 0) return "negative entry";
    }
  }
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t u = 0; u < n; ++u) {
      if (d.at(u, v) == inf) continue;
      for (std::size_t w = 0; w < n; ++w) {
        if (d.at(v, w) == inf) continue;
        if (d.at(u, w) > d.at(u, v) + d.at(v, w))
          return "triangle inequality fails at " + std::to_string(u) + "," + std::to_string(v) +
                 "," + std::to_string(w);
      }
    }
  return std::nullopt;
}

void write_distances(std::ostream& out, const DistanceMatrix& d) {
  for (std::size_t u = 0; u < d.n(); ++u) {
    for (std::size_t v = 0; v < d.n(); ++v) {
      if (v) out << ' ';
      if (d.reachable(u, v))
        out << d.at(u, v);
      else
        out << -1;
    }
    out << '\n';
  }
}

}  // namespace vigl
