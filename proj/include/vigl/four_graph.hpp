#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace vigl {

enum class FourGraphId : std::uint8_t {
  k4,
  co_k4,
  diamond,
  co_diamond,
  claw,
  co_claw,
  paw,
  co_paw,
  c4,
  co_c4,
  p4,
};

inline constexpr std::size_t kFourGraphCount = 11;

// One of the eleven graphs on four vertices, stored as a 6-bit mask over the
// vertex pairs 01 02 03 12 13 23 of a fixed labelled representative.
class FourGraph {
 public:
  constexpr FourGraph() = default;
  constexpr explicit FourGraph(FourGraphId id) : id_(id) {}

  static const std::array<FourGraph, kFourGraphCount>& all();
  // Lowercase CLI token such as "co-paw"; throws InputError if unknown.
  static FourGraph parse(std::string_view token);
  // Isomorphism class of the labelled graph given by a pair mask.
  static FourGraph classify(std::uint8_t pair_mask);

  constexpr FourGraphId id() const { return id_; }
  std::uint8_t pair_mask() const;
  bool adjacent(int i, int j) const;
  FourGraph complement() const;
  std::string_view name() const;
  std::string_view token() const;
  int edge_count() const;

  friend constexpr bool operator==(FourGraph a, FourGraph b) { return a.id_ == b.id_; }

 private:
  FourGraphId id_ = FourGraphId::k4;
};

// Index of pair {i, j} (i != j) in the 6-bit pair mask.
constexpr int pair_bit(int i, int j) {
  if (i > j) {
    int t = i;
    i = j;
    j = t;
  }
  constexpr int base[3] = {0, 3, 5};
  return base[i] + (j - i - 1);
}

}  // namespace vigl
