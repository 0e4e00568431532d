#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "vigl/block.hpp"
#include "vigl/gf.hpp"
#include "vigl/graph.hpp"
#include "vigl/results.hpp"
#include "vigl/separator.hpp"

namespace vigl {

// A random instantiation of the Tutte matrix: value[id] on edge id, nonzero,
// shared by (u,v) and (v,u).
struct TutteInstance {
  Graph graph;
  SeparatorDecomposition decomposition;
  Field field;
  std::vector<FieldElement> values;
  BlockTutteMatrix matrix;
  std::uint64_t seed = 0;

  static TutteInstance random(const Graph& g, const SeparatorDecomposition& d, const Field& f,
                              std::uint64_t seed);
  // The same values on G[vertices], with the separator restricted.
  TutteInstance restricted(const std::vector<Vertex>& vertices) const;
};

// Index set X with A[X] nonsingular and |X| = rank A, found blockwise: part
// bases, Schur complement, row basis against S, then a small dense basis.
std::vector<Vertex> tutte_basis(const TutteInstance& t);
std::size_t tutte_rank(const TutteInstance& t);

struct MatchingOptions {
  std::uint64_t seed = 1;
  // Independent instantiations for has_perfect_matching.
  int trials = 3;
  // 0 picks Field::for_vertex_count(n).
  int field_degree = 0;
  // Instantiations tried by find_perfect_matching / max_matching.
  int max_attempts = 5;
};

struct MatchingStats {
  int attempts = 0;
  // Union bound on the failure probability of the last attempt.
  double failure_bound = 0.0;
};

Field matching_field(std::size_t n, int field_degree);

// Blockwise Schur chain: T'_i is a basis of A[T_i], S* is S followed by the
// remaining part vertices, gamma[0] = A[S*] and
//   gamma[i+1] = gamma[i] + beta[i]^T alpha_inv[i] beta[i]
// with alpha[i] = A[T'_i], beta[i] = A[T'_i, S*].
struct SchurChainState {
  std::vector<Vertex> s_star;
  std::vector<std::vector<Vertex>> t_prime;
  std::vector<FieldMatrix> alpha, alpha_inv, beta;
  std::vector<FieldMatrix> gamma;
};

// nullopt when more part vertices must be matched into S than S has.
std::optional<SchurChainState> schur_chain(const TutteInstance& t);

// Schur chain on one instantiation: true iff A is nonsingular.
bool tutte_nonsingular(const TutteInstance& t);

// One-sided: true is always correct.
bool has_perfect_matching(const Graph& g, const SeparatorDecomposition& d, const MatchingOptions& options = {});
// Probability bound for a wrong "no": (n / |F|)^trials.
double no_answer_error_bound(std::size_t n, const Field& f, int trials);

struct CrossingResult {
  FieldMatrix matrix;
  FieldMatrix inverse;
  // Nonzero (u, w) entries left between the two sides.
  std::vector<std::pair<std::size_t, std::size_t>> surviving;
};

// Harvey's DeleteEdgesCrossing: zeroes every entry m[u][w] = m[w][u]
// (u in u_set, w in w_set) whose removal keeps m nonsingular, one at a time
// in recursive quartering order. `inverse` must equal m^-1. Sides are padded
// to a common power of two with inert dummies.
CrossingResult delete_edges_crossing(FieldMatrix m, FieldMatrix inverse, const Index& u_set, const Index& w_set);

// Perfect matching of the graph whose Tutte instantiation is the nonsingular
// alternating matrix m over `vertices` (nonzero entries are edges).
std::optional<Matching> dense_perfect_matching(const FieldMatrix& m, const std::vector<Vertex>& vertices);

// nullopt when no perfect matching is detected. Throws ProbabilisticFailure
// if every attempt produced an invalid matching.
std::optional<Matching> find_perfect_matching(const Graph& g, const SeparatorDecomposition& d,
                                              const MatchingOptions& options = {},
                                              MatchingStats* stats = nullptr);

Matching max_matching(const Graph& g, const SeparatorDecomposition& d, const MatchingOptions& options = {},
                      MatchingStats* stats = nullptr);

}  // namespace vigl
