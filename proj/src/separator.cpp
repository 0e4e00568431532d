#include "vigl/separator.hpp"

#include <algorithm>
#include <numeric>

#include "vigl/errors.hpp"
#include "vigl/rng.hpp"

namespace vigl {

namespace {

std::vector<bool> membership(const Graph& g, std::span<const Vertex> s) {
  std::vector<bool> in(static_cast<std::size_t>(g.n()), false);
  for (Vertex v : s) {
    if (v < 0 || v >= g.n())
      throw InputError("separator vertex " + std::to_string(v) + " out of range [0, " +
                       std::to_string(g.n()) + ")");
    in[v] = true;
  }
  return in;
}

std::vector<Vertex> normalized(std::span<const Vertex> s) {
  std::vector<Vertex> out(s.begin(), s.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::optional<std::string> separator_violation(const Graph& g, std::span<const Vertex> s,
                                               std::int64_t k) {
  auto in = membership(g, s);
  const auto size = static_cast<std::int64_t>(std::count(in.begin(), in.end(), true));
  if (k < 0) return "k must be non-negative";
  if (size > k)
    return "separator has " + std::to_string(size) + " vertices, more than k = " +
           std::to_string(k);
  for (const auto& comp : connected_components(g, in))
    if (static_cast<std::int64_t>(comp.size()) > k - size)
      return "component containing vertex " + std::to_string(comp.front()) + " has " +
             std::to_string(comp.size()) + " vertices, more than k - |S| = " +
             std::to_string(k - size);
  return std::nullopt;
}

bool validate_separator(const Graph& g, std::span<const Vertex> s, std::int64_t k) {
  return !separator_violation(g, s, k).has_value();
}

SeparatorDecomposition build_decomposition(const Graph& g, std::span<const Vertex> s,
                                           std::int64_t k) {
  if (auto why = separator_violation(g, s, k)) throw PreconditionError("invalid separator: " + *why);
  SeparatorDecomposition d;
  d.k_ = k;
  d.separator_ = normalized(s);
  const auto n = static_cast<std::size_t>(g.n());
  d.part_of_.assign(n, kSeparatorPart);
  d.local_index_.assign(n, 0);
  std::vector<bool> in(n, false);
  for (std::size_t i = 0; i < d.separator_.size(); ++i) {
    in[d.separator_[i]] = true;
    d.local_index_[d.separator_[i]] = static_cast<std::int32_t>(i);
  }
  auto comps = connected_components(g, in);
  d.component_count_ = comps.size();
  for (auto& comp : comps) {
    if (d.parts_.empty() || static_cast<std::int64_t>(d.parts_.back().size()) >= k)
      d.parts_.emplace_back();
    auto& part = d.parts_.back();
    part.insert(part.end(), comp.begin(), comp.end());
  }
  for (std::size_t i = 0; i < d.parts_.size(); ++i) {
    auto& part = d.parts_[i];
    std::sort(part.begin(), part.end());
    for (std::size_t j = 0; j < part.size(); ++j) {
      d.part_of_[part[j]] = static_cast<std::int32_t>(i);
      d.local_index_[part[j]] = static_cast<std::int32_t>(j);
    }
  }
  return d;
}

std::optional<std::string> decomposition_violation(const Graph& g,
                                                   const SeparatorDecomposition& d) {
  if (d.n() != g.n()) return "decomposition covers a different vertex count";
  const auto k = d.k();
  const auto s = static_cast<std::int64_t>(d.separator().size());
  if (s > k) return "separator larger than k";
  std::vector<int> seen(static_cast<std::size_t>(g.n()), 0);
  for (std::size_t i = 0; i < d.separator().size(); ++i) {
    Vertex v = d.separator()[i];
    if (v < 0 || v >= g.n()) return "separator vertex out of range";
    if (seen[v]++) return "vertex listed twice";
    if (d.part_of(v) != kSeparatorPart || d.local_index(v) != static_cast<std::int32_t>(i))
      return "separator index map inconsistent";
  }
  for (std::size_t i = 0; i < d.part_count(); ++i) {
    const auto& part = d.part(i);
    const auto size = static_cast<std::int64_t>(part.size());
    if (size == 0) return "empty part";
    if (size > 2 * k - 1) return "part " + std::to_string(i) + " larger than 2k-1";
    if (i + 1 < d.part_count() && size < k)
      return "part " + std::to_string(i) + " smaller than k and not last";
    for (std::size_t j = 0; j < part.size(); ++j) {
      Vertex v = part[j];
      if (v < 0 || v >= g.n()) return "part vertex out of range";
      if (seen[v]++) return "vertex listed twice";
      if (d.part_of(v) != static_cast<std::int32_t>(i) ||
          d.local_index(v) != static_cast<std::int32_t>(j))
        return "part index map inconsistent";
    }
  }
  for (Vertex v = 0; v < g.n(); ++v)
    if (!seen[v]) return "vertex " + std::to_string(v) + " not covered";
  for (const auto& e : g.edges()) {
    auto a = d.part_of(e.u), b = d.part_of(e.v);
    if (a != kSeparatorPart && b != kSeparatorPart && a != b)
      return "edge " + std::to_string(e.u) + " " + std::to_string(e.v) + " joins two parts";
  }
  if (k > 0 && static_cast<std::int64_t>(d.part_count()) > g.n() / k + 1)
    return "too many parts";
  return std::nullopt;
}

void check_decomposition(const Graph& g, const SeparatorDecomposition& d) {
  if (auto why = decomposition_violation(g, d))
    throw PreconditionError("invalid decomposition: " + *why);
}

namespace {

// True (with s extended) if some S' containing s with |S'| <= iota works.
bool branch(const Graph& g, std::int64_t iota, std::vector<bool>& in, std::vector<Vertex>& s) {
  const auto size = static_cast<std::int64_t>(s.size());
  const std::int64_t room = iota - size;
  // Find the first oversized component of G - S.
  std::vector<bool> seen = in;
  std::vector<Vertex> order;
  for (Vertex start = 0; start < g.n(); ++start) {
    if (seen[start]) continue;
    order.clear();
    seen[start] = true;
    order.push_back(start);
    for (std::size_t head = 0; head < order.size(); ++head)
      for (Vertex w : g.neighbors(order[head]))
        if (!seen[w]) {
          seen[w] = true;
          order.push_back(w);
        }
    if (static_cast<std::int64_t>(order.size()) <= room) continue;
    if (room <= 0) return false;
    // Any valid extension removes one of these room+1 connected vertices.
    std::vector<Vertex> choices(order.begin(), order.begin() + room + 1);
    std::sort(choices.begin(), choices.end());
    for (Vertex x : choices) {
      in[x] = true;
      s.push_back(x);
      if (branch(g, iota, in, s)) return true;
      s.pop_back();
      in[x] = false;
    }
    return false;
  }
  return true;
}

}  // namespace

std::optional<IntegrityWitness> exact_vertex_integrity(const Graph& g, std::int64_t budget) {
  if (budget < 1) throw PreconditionError("budget must be at least 1");
  if (g.n() == 0) return IntegrityWitness{0, {}};
  for (std::int64_t iota = 1; iota <= budget; ++iota) {
    std::vector<bool> in(static_cast<std::size_t>(g.n()), false);
    std::vector<Vertex> s;
    if (branch(g, iota, in, s)) {
      std::sort(s.begin(), s.end());
      return IntegrityWitness{iota, s};
    }
  }
  return std::nullopt;
}

IntegrityWitness greedy_separator(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.n());
  std::vector<bool> in(n, false);
  std::vector<std::size_t> deg(n);
  for (Vertex v = 0; v < g.n(); ++v) deg[v] = g.degree(v);
  std::vector<Vertex> chosen;
  std::int64_t best_k = -1;
  std::size_t best_len = 0;
  std::size_t remaining_edges = g.m();
  while (true) {
    std::size_t largest = 0;
    for (const auto& comp : connected_components(g, in)) largest = std::max(largest, comp.size());
    const auto k = static_cast<std::int64_t>(chosen.size() + largest);
    if (best_k < 0 || k < best_k) {
      best_k = k;
      best_len = chosen.size();
    }
    if (remaining_edges == 0 || largest <= chosen.size()) break;
    Vertex pick = -1;
    for (Vertex v = 0; v < g.n(); ++v)
      if (!in[v] && (pick < 0 || deg[v] > deg[pick])) pick = v;
    in[pick] = true;
    chosen.push_back(pick);
    remaining_edges -= deg[pick];
    for (Vertex w : g.neighbors(pick))
      if (!in[w]) --deg[w];
  }
  chosen.resize(best_len);
  std::sort(chosen.begin(), chosen.end());
  return IntegrityWitness{best_k, chosen};
}

PlantedInstance generate_planted(Vertex n, Vertex sep_size, Vertex comp_size,
                                 double edge_prob_in, double edge_prob_cross,
                                 std::uint64_t seed, const PlantedOptions& options) {
  if (n < 0 || sep_size < 0 || comp_size < 0) throw InputError("sizes must be non-negative");
  if (static_cast<std::int64_t>(sep_size) + comp_size > n)
    throw InputError("sep_size + comp_size exceeds n");
  if (comp_size == 0 && n > sep_size) throw InputError("comp_size must be positive");
  auto bad = [](double p) { return !(p >= 0.0 && p <= 1.0); };
  if (bad(edge_prob_in) || bad(edge_prob_cross) || bad(options.edge_prob_sep))
    throw InputError("edge probabilities must lie in [0, 1]");

  Rng rng(seed);
  std::vector<std::int32_t> group(static_cast<std::size_t>(n), -1);
  for (Vertex v = sep_size; v < n; ++v) group[v] = (v - sep_size) / comp_size;
  std::vector<Edge> edges;
  for (Vertex u = 0; u < sep_size; ++u)
    for (Vertex v = u + 1; v < sep_size; ++v)
      if (rng.bernoulli(options.edge_prob_sep)) edges.push_back({u, v});
  for (Vertex v = sep_size; v < n; ++v) {
    for (Vertex s = 0; s < sep_size; ++s)
      if (rng.bernoulli(edge_prob_cross)) edges.push_back({s, v});
    for (Vertex w = v + 1; w < n && group[w] == group[v]; ++w)
      if (rng.bernoulli(edge_prob_in)) edges.push_back({v, w});
  }
  std::vector<Vertex> label(static_cast<std::size_t>(n));
  std::iota(label.begin(), label.end(), 0);
  if (options.shuffle_labels) rng.shuffle(std::span<Vertex>(label));
  for (auto& e : edges) e = {label[e.u], label[e.v]};

  PlantedInstance inst;
  inst.graph = Graph::from_edges_dedup(n, std::move(edges));
  inst.k = static_cast<std::int64_t>(sep_size) + comp_size;
  inst.seed = seed;
  inst.group.assign(static_cast<std::size_t>(n), -1);
  for (Vertex v = 0; v < n; ++v) inst.group[label[v]] = group[v];
  for (Vertex v = 0; v < sep_size; ++v) inst.separator.push_back(label[v]);
  std::sort(inst.separator.begin(), inst.separator.end());
  return inst;
}

}  // namespace vigl
