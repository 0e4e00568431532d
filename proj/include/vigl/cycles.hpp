#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "vigl/graph.hpp"
#include "vigl/results.hpp"
#include "vigl/separator.hpp"

namespace vigl {

struct ProbeResult {
  // A cycle through the BFS tree found at the first non-tree edge.
  std::optional<std::vector<Vertex>> cycle;
  // Length of the closed walk root -> x -> w -> root (at least cycle length).
  std::size_t walk_length = 0;
  // BFS layer being scanned when the probe stopped; layers 0..depth are
  // complete.
  std::size_t depth = 0;
  // All vertices at distance `depth` from the root.
  std::vector<Vertex> layer;
};

// Breadth-first search from v that stops at the first non-tree edge. Touches
// at most n edges.
ProbeResult bfs_cycle_probe(const Graph& g, Vertex v);

// Vertices at exactly the given distance from v.
std::vector<Vertex> bfs_layer(const Graph& g, Vertex v, std::size_t distance);

std::optional<CycleReport> girth(const Graph& g, const SeparatorDecomposition& d);
std::optional<CycleReport> even_girth(const Graph& g, const SeparatorDecomposition& d);

// True iff g has an even cycle: some biconnected block is neither a bridge
// nor an odd cycle. Linear time.
bool has_even_cycle(const Graph& g);

enum class CycleStrategy {
  // Colourful-cycle dynamic programming, inside each part and through each
  // separator vertex.
  colorful,
  // Layered digraph on consecutive colours with matrix powers over GF(2^q)
  // and a reachability graph on the separator.
  ordered,
};

struct CycleSearchOptions {
  double failure_prob = 0.05;
  std::uint64_t seed = 1;
  CycleStrategy strategy = CycleStrategy::colorful;
  // Upper bound on colourings tried; 0 means no cap.
  std::size_t max_trials = 0;
  int max_length = 8;
  int field_degree = 32;
};

struct CycleSearchStats {
  std::size_t trials_planned = 0;
  std::size_t trials_run = 0;
  bool capped = false;
};

// Colourings needed for the requested failure probability:
// ceil(ln(1/p) * l^l / l!) for colorful, ceil(ln(1/p) * l^l / (2l)) for ordered.
std::size_t color_coding_trials(int length, double failure_prob, CycleStrategy strategy);

// A cycle of exactly the given length, or nullopt. One-sided: a returned
// cycle is always genuine; a miss has probability at most failure_prob
// (unless the trial count was capped).
std::optional<CycleReport> find_cycle_of_length(const Graph& g, const SeparatorDecomposition& d,
                                                int length, const CycleSearchOptions& options = {},
                                                CycleSearchStats* stats = nullptr);

}  // namespace vigl
