#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vigl/graph.hpp"

namespace vigl {

inline constexpr std::int32_t kSeparatorPart = -1;

// Separator S plus parts T_1..T_nu. Every part has between k and 2k-1
// vertices except possibly the last, and no edge joins two different parts.
class SeparatorDecomposition {
 public:
  SeparatorDecomposition() = default;

  const std::vector<Vertex>& separator() const { return separator_; }
  const std::vector<std::vector<Vertex>>& parts() const { return parts_; }
  std::size_t part_count() const { return parts_.size(); }
  const std::vector<Vertex>& part(std::size_t i) const { return parts_[i]; }
  std::int64_t k() const { return k_; }
  Vertex n() const { return static_cast<Vertex>(part_of_.size()); }

  // Part index of v, or kSeparatorPart.
  std::int32_t part_of(Vertex v) const { return part_of_[v]; }
  // Position of v inside separator() or inside its part.
  std::int32_t local_index(Vertex v) const { return local_index_[v]; }
  bool in_separator(Vertex v) const { return part_of_[v] == kSeparatorPart; }
  // Connected components of G - S (before packing).
  std::size_t component_count() const { return component_count_; }

  friend SeparatorDecomposition build_decomposition(const Graph&, std::span<const Vertex>,
                                                    std::int64_t);

 private:
  std::vector<Vertex> separator_;
  std::vector<std::vector<Vertex>> parts_;
  std::int64_t k_ = 0;
  std::vector<std::int32_t> part_of_;
  std::vector<std::int32_t> local_index_;
  std::size_t component_count_ = 0;
};

// Why (g, s, k) fails to be a k-separator, or nullopt if it is one.
// Out-of-range vertex ids throw InputError.
std::optional<std::string> separator_violation(const Graph& g, std::span<const Vertex> s,
                                               std::int64_t k);
bool validate_separator(const Graph& g, std::span<const Vertex> s, std::int64_t k);

// Components of G - S in order of their smallest vertex, packed greedily:
// a component joins an open part (size < k) if there is one, otherwise it
// starts a new part. Throws PreconditionError on an invalid separator.
SeparatorDecomposition build_decomposition(const Graph& g, std::span<const Vertex> s,
                                           std::int64_t k);

// Violated structural condition of d with respect to g, or nullopt.
std::optional<std::string> decomposition_violation(const Graph& g,
                                                   const SeparatorDecomposition& d);
void check_decomposition(const Graph& g, const SeparatorDecomposition& d);

struct IntegrityWitness {
  std::int64_t iota = 0;
  std::vector<Vertex> separator;
};

// Exact vertex integrity by bounded branching; nullopt if it exceeds budget.
std::optional<IntegrityWitness> exact_vertex_integrity(const Graph& g, std::int64_t budget);

// Max-degree greedy; always returns a valid pair, no approximation guarantee.
IntegrityWitness greedy_separator(const Graph& g);

struct PlantedOptions {
  // Edges among separator vertices; zero keeps S independent.
  double edge_prob_sep = 0.0;
  // Relabel vertices by a seeded permutation.
  bool shuffle_labels = true;
};

struct PlantedInstance {
  Graph graph;
  std::vector<Vertex> separator;  // sorted
  std::int64_t k = 0;
  std::uint64_t seed = 0;
  // Per vertex: -1 for separator, otherwise index of its planted component.
  std::vector<std::int32_t> group;
};

// Separator of sep_size vertices, remaining vertices chopped into consecutive
// chunks of comp_size; edges within chunks with edge_prob_in and between a
// chunk and the separator with edge_prob_cross. k = sep_size + comp_size.
PlantedInstance generate_planted(Vertex n, Vertex sep_size, Vertex comp_size,
                                 double edge_prob_in, double edge_prob_cross,
                                 std::uint64_t seed, const PlantedOptions& options = {});

}  // namespace vigl
