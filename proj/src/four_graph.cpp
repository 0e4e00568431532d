#include "vigl/four_graph.hpp"

#include <algorithm>
#include <bit>

#include "vigl/errors.hpp"

namespace vigl {

namespace {

struct Info {
  std::string_view name;
  std::string_view token;
  std::uint8_t mask;
  FourGraphId complement;
};

constexpr std::uint8_t bits(std::initializer_list<std::pair<int, int>> pairs) {
  std::uint8_t m = 0;
  for (auto [i, j] : pairs) m |= static_cast<std::uint8_t>(1u << pair_bit(i, j));
  return m;
}

const Info kInfo[kFourGraphCount] = {
    {"K4", "k4", 0x3f, FourGraphId::co_k4},
    {"coK4", "co-k4", 0x00, FourGraphId::k4},
    {"diamond", "diamond", bits({{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}), FourGraphId::co_diamond},
    {"coDiamond", "co-diamond", bits({{2, 3}}), FourGraphId::diamond},
    {"claw", "claw", bits({{0, 1}, {0, 2}, {0, 3}}), FourGraphId::co_claw},
    {"coClaw", "co-claw", bits({{1, 2}, {1, 3}, {2, 3}}), FourGraphId::claw},
    {"paw", "paw", bits({{0, 1}, {0, 2}, {1, 2}, {2, 3}}), FourGraphId::co_paw},
    {"coPaw", "co-paw", bits({{0, 3}, {1, 3}}), FourGraphId::paw},
    {"C4", "c4", bits({{0, 1}, {1, 2}, {2, 3}, {0, 3}}), FourGraphId::co_c4},
    {"coC4", "co-c4", bits({{0, 2}, {1, 3}}), FourGraphId::c4},
    {"P4", "p4", bits({{0, 1}, {1, 2}, {2, 3}}), FourGraphId::p4},
};

const Info& info(FourGraphId id) { return kInfo[static_cast<std::size_t>(id)]; }

}  // namespace

const std::array<FourGraph, kFourGraphCount>& FourGraph::all() {
  static const std::array<FourGraph, kFourGraphCount> graphs = [] {
    std::array<FourGraph, kFourGraphCount> a{};
    for (std::size_t i = 0; i < kFourGraphCount; ++i) a[i] = FourGraph(static_cast<FourGraphId>(i));
    return a;
  }();
  return graphs;
}

FourGraph FourGraph::parse(std::string_view token) {
  for (auto h : all())
    if (h.token() == token) return h;
  throw InputError("unknown four-vertex graph '" + std::string(token) +
                   "' (expected k4, co-k4, diamond, co-diamond, claw, co-claw, paw, co-paw, "
                   "c4, co-c4 or p4)");
}

FourGraph FourGraph::classify(std::uint8_t pair_mask) {
  pair_mask &= 0x3f;
  std::array<int, 4> deg{};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (pair_mask >> pair_bit(i, j) & 1) ++deg[i], ++deg[j];
  std::sort(deg.begin(), deg.end());
  const int m = std::popcount(pair_mask);
  using enum FourGraphId;
  switch (m) {
    case 0: return FourGraph(co_k4);
    case 1: return FourGraph(co_diamond);
    case 2: return FourGraph(deg[0] == 0 ? co_paw : co_c4);
    case 3:
      if (deg[3] == 3) return FourGraph(claw);
      return FourGraph(deg[0] == 0 ? co_claw : p4);
    case 4: return FourGraph(deg[3] == 3 ? paw : c4);
    case 5: return FourGraph(diamond);
    default: return FourGraph(k4);
  }
}

std::uint8_t FourGraph::pair_mask() const { return info(id_).mask; }

bool FourGraph::adjacent(int i, int j) const {
  return i != j && (pair_mask() >> pair_bit(i, j) & 1);
}

FourGraph FourGraph::complement() const { return FourGraph(info(id_).complement); }
std::string_view FourGraph::name() const { return info(id_).name; }
std::string_view FourGraph::token() const { return info(id_).token; }
int FourGraph::edge_count() const { return std::popcount(pair_mask()); }

}  // namespace vigl
