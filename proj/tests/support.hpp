#pragma once

#include <vector>

#include "vigl/graph.hpp"
#include "vigl/rng.hpp"
#include "vigl/separator.hpp"

namespace testing_support {

inline vigl::Graph random_graph(vigl::Vertex n, double p, vigl::Rng& rng) {
  std::vector<vigl::Edge> edges;
  for (vigl::Vertex u = 0; u < n; ++u)
    for (vigl::Vertex v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) edges.push_back({u, v});
  return vigl::Graph(n, edges);
}

// Disjoint union of paths with the given vertex counts, laid out consecutively.
inline vigl::Graph union_of_paths(const std::vector<vigl::Vertex>& sizes) {
  std::vector<vigl::Edge> edges;
  vigl::Vertex base = 0;
  for (auto s : sizes) {
    for (vigl::Vertex i = 0; i + 1 < s; ++i) edges.push_back({base + i, base + i + 1});
    base += s;
  }
  return vigl::Graph(base, edges);
}

// Random planted instance with small random parameters.
inline vigl::PlantedInstance random_planted(vigl::Rng& rng, vigl::Vertex n_max,
                                            vigl::Vertex sep_max = 4, vigl::Vertex comp_max = 6) {
  auto n = static_cast<vigl::Vertex>(1 + rng.below(static_cast<std::uint64_t>(n_max)));
  auto sep = static_cast<vigl::Vertex>(rng.below(static_cast<std::uint64_t>(std::min(sep_max, n)) + 1));
  vigl::Vertex comp = 0;
  if (n > sep)
    comp = 1 + static_cast<vigl::Vertex>(
                   rng.below(static_cast<std::uint64_t>(std::min(comp_max, n - sep))));
  vigl::PlantedOptions opt;
  opt.edge_prob_sep = rng.uniform01() * 0.5;
  return vigl::generate_planted(n, sep, comp, 0.1 + 0.8 * rng.uniform01(),
                                0.05 + 0.5 * rng.uniform01(), rng.next(), opt);
}

inline vigl::SeparatorDecomposition decompose(const vigl::PlantedInstance& inst) {
  return vigl::build_decomposition(inst.graph, inst.separator, inst.k);
}

inline vigl::SeparatorDecomposition decompose_greedy(const vigl::Graph& g) {
  auto w = vigl::greedy_separator(g);
  return vigl::build_decomposition(g, w.separator, w.iota);
}

}  // namespace testing_support
