#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vigl/dense.hpp"
#include "vigl/graph.hpp"
#include "vigl/results.hpp"
#include "vigl/separator.hpp"

namespace vigl {

// Transformed instance in which every part is connected, carries a
// Hamiltonian path, and has exactly as many vertices as the separator.
struct NicePartition {
  static constexpr Vertex kSynthetic = -1;

  Graph graph;
  // S' = S followed by synthetic padding.
  std::vector<Vertex> separator;
  // Each part listed in the order of its Hamiltonian path.
  std::vector<std::vector<Vertex>> parts;
  // origin[v] is the vertex of the input graph that v stands for, or
  // kSynthetic for padding. Vertices 0..n-1 are the input vertices.
  std::vector<Vertex> origin;
  std::size_t size_class = 0;
  Vertex original_n = 0;
};

NicePartition nice_partition(const Graph& g, const SeparatorDecomposition& d);

// Structural check of a NicePartition against the graph it came from.
std::optional<std::string> nice_partition_violation(const Graph& g, const NicePartition& p);

using DistanceBlock = Dense<std::int32_t>;

enum class MinPlusKernel {
  naive,
  // Walks rows in order and uses the previous row's answer as a lower bound
  // whenever consecutive rows of the left factor differ by a bounded amount.
  bounded_difference,
};

// C[i][j] = min_k a[i][k] + b[k][j], with DistanceMatrix::kUnreachable
// absorbing.
DistanceBlock min_plus(const DistanceBlock& a, const DistanceBlock& b,
                       MinPlusKernel kernel = MinPlusKernel::naive);

struct ApspOptions {
  MinPlusKernel kernel = MinPlusKernel::naive;
  // When positive and k >= n^dense_exponent, fall back to a BFS from every
  // vertex. Zero keeps the separator pipeline for every input.
  double dense_exponent = 0.0;
};

DistanceMatrix apsp(const Graph& g, const SeparatorDecomposition& d, const ApspOptions& options = {});

// Distances up to d_max from boolean powers of the adjacency matrix; pairs not
// reached within d_max hops are kUnreachable.
DistanceMatrix apsp_bounded_diameter(const Graph& g, const SeparatorDecomposition& d,
                                     std::int32_t d_max);

// Floyd-Warshall on a symmetric weight matrix; kUnreachable marks a missing
// edge and the diagonal is ignored.
DistanceMatrix weighted_apsp_small(const DistanceBlock& weights);

}  // namespace vigl
