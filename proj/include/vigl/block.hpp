#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vigl/dense.hpp"
#include "vigl/gf.hpp"
#include "vigl/graph.hpp"
#include "vigl/rng.hpp"
#include "vigl/separator.hpp"

namespace vigl {

// A symmetric matrix supported on the edges of a graph, stored as
//   gamma = A[S], betas[i] = A[S, T_i], alphas[i] = A[T_i]
// with the T_i x T_j blocks (i != j) implicitly zero. Rows and columns inside
// each block follow the decomposition's local indices.
template <class Mat>
struct BlockForm {
  SeparatorDecomposition decomposition;
  Mat gamma;
  std::vector<Mat> betas;
  std::vector<Mat> alphas;
};

// 0/1 adjacency matrix.
using BlockAdjacency = BlockForm<IntMatrix>;
// Tutte matrix over GF(2^q). In characteristic 2 skew symmetry is plain
// symmetry with a zero diagonal, so one value serves (u,v) and (v,u).
using BlockTutteMatrix = BlockForm<FieldMatrix>;

BlockAdjacency block_adjacency(const Graph& g, const SeparatorDecomposition& d);
BlockTutteMatrix random_tutte(const Graph& g, const SeparatorDecomposition& d, const Field& f,
                              Rng& rng);
// Tutte matrix with values[id] on edge id; random_tutte draws in that order.
BlockTutteMatrix tutte_from_values(const Graph& g, const SeparatorDecomposition& d, const Field& f,
                                   std::span<const FieldElement> values);

std::int64_t entry(const BlockAdjacency& a, Vertex u, Vertex v);
FieldElement entry(const BlockTutteMatrix& a, Vertex u, Vertex v);

IntMatrix to_dense(const BlockAdjacency& a);
FieldMatrix to_dense(const BlockTutteMatrix& a);
// A[rows, cols] in the given vertex orders.
FieldMatrix extract(const BlockTutteMatrix& a, std::span<const Vertex> rows,
                    std::span<const Vertex> cols);
IntMatrix extract(const BlockAdjacency& a, std::span<const Vertex> rows,
                  std::span<const Vertex> cols);

enum class Side { left, right };

// A*M (Side::left) or M*A (Side::right) for n x n M, blockwise:
//   (AM)[S]   = gamma M[S] + sum_i beta_i M[T_i]
//   (AM)[T_i] = beta_i^T M[S] + alpha_i M[T_i]
// and MA = (A M^T)^T since A is symmetric.
FieldMatrix structured_mul(const BlockTutteMatrix& a, const FieldMatrix& m, Side side = Side::left);
IntMatrix structured_mul(const BlockAdjacency& a, const IntMatrix& m, Side side = Side::left);

// A^2[u,v] (number of common neighbours) for every edge, indexed by edge id,
// from the stored blocks only.
std::vector<std::int64_t> square_on_edges(const Graph& g, const SeparatorDecomposition& d);

// Restriction A[X] of a Tutte matrix with each index tagged as separator-side
// or part-side.
struct SkewView {
  const BlockTutteMatrix* matrix = nullptr;
  std::vector<Vertex> index;
  std::vector<bool> separator_side;

  static SkewView of(const BlockTutteMatrix& a, std::vector<Vertex> index);
  std::size_t size() const { return index.size(); }
  FieldMatrix materialize() const;
};

}  // namespace vigl
