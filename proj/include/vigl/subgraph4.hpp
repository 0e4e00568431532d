#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "vigl/four_graph.hpp"
#include "vigl/graph.hpp"
#include "vigl/results.hpp"
#include "vigl/separator.hpp"

namespace vigl {

// Graphs whose induced count is available modulo count_modulus(h): all but
// K4, coK4, C4 and coC4.
bool count_supported(FourGraph h);
// q_H for supported h; throws InputError otherwise.
int count_modulus(FourGraph h);

// Induced copies of h modulo q_H, in linear time from degrees and the
// per-edge common-neighbour counts.
std::int64_t count_mod(const Graph& g, const SeparatorDecomposition& d, FourGraph h);

struct InducedSearchOptions {
  double failure_prob = 0.05;
  std::uint64_t seed = 1;
};

// Random half-deletion rounds for the given failure probability:
// ceil(ln(1/p) / ln(16/15)).
std::size_t detection_rounds(double failure_prob);

// One-sided: true is always correct. C4 and coC4 use the deterministic tests.
bool detect_induced(const Graph& g, const SeparatorDecomposition& d, FourGraph h,
                    const InducedSearchOptions& options = {});

std::optional<InducedEmbedding> detect_c4(const Graph& g, const SeparatorDecomposition& d);
std::optional<InducedEmbedding> detect_co_c4(const Graph& g, const SeparatorDecomposition& d);

// Self-reduction over five vertex classes driven by detect_induced.
std::optional<InducedEmbedding> find_induced(const Graph& g, const SeparatorDecomposition& d, FourGraph h,
                                             const InducedSearchOptions& options = {});

bool detect_clique(const Graph& g, const SeparatorDecomposition& d, int size);
bool detect_independent_set(const Graph& g, const SeparatorDecomposition& d, int size);

}  // namespace vigl
