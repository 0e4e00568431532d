#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vigl/graph.hpp"
#include "vigl/results.hpp"
#include "vigl/separator.hpp"

// Brute-force reference implementations. Deliberately simple and slow; none
// of the library's fast paths are used here.
namespace vigl::oracle {

// Shortest cycle length by BFS from every vertex.
std::optional<std::size_t> girth(const Graph& g);
// Shortest even cycle by depth-first enumeration of simple paths under an
// increasing length bound.
std::optional<std::size_t> even_girth(const Graph& g);

// Every simple cycle exactly once, rotated to start at its smallest vertex
// with the smaller of the two neighbours second. Intended for n <= 12.
std::vector<std::vector<Vertex>> all_cycles(const Graph& g);

// Some cycle of exactly the given length, by exhaustive search.
std::optional<std::vector<Vertex>> cycle_of_length(const Graph& g, std::size_t length);

// Induced copies of each four-vertex graph, indexed by FourGraphId.
using Census = std::array<std::int64_t, kFourGraphCount>;
// Enumerates all 4-subsets, classifies by edge count and degrees.
Census census(const Graph& g);
// Second implementation: classifies by minimal relabelled pair mask.
Census census_by_canonical_mask(const Graph& g);
std::int64_t count_induced(const Graph& g, FourGraph h);
std::optional<InducedEmbedding> find_induced(const Graph& g, FourGraph h);

// Subset dynamic programming over vertex masks; n <= 22.
Matching max_matching_dp(const Graph& g);
// Edmonds' blossom algorithm.
Matching max_matching_blossom(const Graph& g);
Matching max_matching(const Graph& g);

DistanceMatrix apsp_bfs(const Graph& g);
DistanceMatrix apsp_floyd_warshall(const Graph& g);

// Minimum over all vertex subsets S of |S| + largest component of G - S.
IntegrityWitness vertex_integrity(const Graph& g);

std::size_t max_clique_size(const Graph& g);
std::size_t max_independent_set_size(const Graph& g);

// All 2^(n(n-1)/2) labelled graphs on n <= 6 vertices, in pair-mask order.
void for_each_graph(int n, const std::function<void(const Graph&)>& visit);
std::vector<Graph> enumerate_all_graphs(int n);

// Named, seeded family of planted instances.
struct Corpus {
  std::string name = "planted";
  std::uint64_t seed_begin = 1;
  std::uint64_t seed_end = 101;  // exclusive
  Vertex n_min = 6;
  Vertex n_max = 40;
  std::map<std::string, double> params;

  double param(const std::string& key, double fallback) const;
  std::size_t size() const { return static_cast<std::size_t>(seed_end - seed_begin); }
  PlantedInstance instance(std::uint64_t seed) const;
  std::vector<PlantedInstance> instances() const;
};

// Manifest format: lines "corpus <name>", "seeds <begin> <end>",
// "n <min> <max>", "param <key> <value>"; '#' starts a comment.
Corpus read_manifest(std::istream& in);
void write_manifest(std::ostream& out, const Corpus& c);

}  // namespace vigl::oracle
