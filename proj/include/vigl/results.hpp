#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vigl/four_graph.hpp"
#include "vigl/graph.hpp"

// Output types shared by the algorithms and the oracles, with their
// structural validators.
namespace vigl {

enum class CycleKind { girth, even_girth, fixed_length };

struct CycleReport {
  std::size_t length = 0;
  std::vector<Vertex> vertices;  // cyclic order
  CycleKind kind = CycleKind::girth;
};

// Consecutive vertices adjacent (cyclically), all distinct, length >= 3.
bool is_valid_cycle(const Graph& g, std::span<const Vertex> cycle);
// Validity plus the kind-specific condition (even length for even_girth).
bool is_valid_report(const Graph& g, const CycleReport& report);

struct Matching {
  std::vector<Edge> edges;         // sorted, u < v
  std::vector<Vertex> saturated;   // sorted

  std::size_t size() const { return edges.size(); }
  static Matching from_edges(std::vector<Edge> edges);
};

bool is_valid_matching(const Graph& g, const Matching& m);
bool is_perfect_matching(const Graph& g, const Matching& m);
void write_matching(std::ostream& out, const Matching& m);

struct InducedEmbedding {
  FourGraph target;
  // vertices[i] plays vertex i of the target's labelled representative.
  std::array<Vertex, 4> vertices{};
};

bool is_valid_embedding(const Graph& g, const InducedEmbedding& e);

// Symmetric hop-distance matrix. Unreachable pairs hold kUnreachable, which
// is large enough to stay absorbing under one addition of two entries.
class DistanceMatrix {
 public:
  static constexpr std::int32_t kUnreachable = 0x3fffffff;

  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, kUnreachable) {}

  std::size_t n() const { return n_; }
  std::int32_t& at(std::size_t u, std::size_t v) { return d_[u * n_ + v]; }
  std::int32_t at(std::size_t u, std::size_t v) const { return d_[u * n_ + v]; }
  bool reachable(std::size_t u, std::size_t v) const { return at(u, v) != kUnreachable; }
  const std::int32_t* row(std::size_t u) const { return d_.data() + u * n_; }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::int32_t> d_;
};

// Symmetry, zero diagonal and triangle inequality; returns the first
// violation found.
std::optional<std::string> distance_violation(const DistanceMatrix& d);
// n lines of n integers, unreachable printed as -1.
void write_distances(std::ostream& out, const DistanceMatrix& d);

}  // namespace vigl
