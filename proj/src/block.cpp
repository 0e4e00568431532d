#include "vigl/block.hpp"

#include "vigl/errors.hpp"

namespace vigl {

namespace {

struct IntMaker {
  IntMatrix operator()(std::size_t r, std::size_t c) const { return IntMatrix(r, c); }
};
struct FieldMaker {
  Field f;
  FieldMatrix operator()(std::size_t r, std::size_t c) const { return FieldMatrix(f, r, c); }
};

void accumulate(const IntMatrix& a, const IntMatrix& b, IntMatrix& c) { multiply_add(a, b, c); }
void accumulate(const FieldMatrix& a, const FieldMatrix& b, FieldMatrix& c) { mul_add(a, b, c); }

template <class Mat, class Maker, class Value>
BlockForm<Mat> make_form(const Graph& g, const SeparatorDecomposition& d, Maker make, Value value) {
  BlockForm<Mat> a;
  a.decomposition = d;
  const std::size_t s = d.separator().size();
  a.gamma = make(s, s);
  for (const auto& part : d.parts()) {
    a.betas.push_back(make(s, part.size()));
    a.alphas.push_back(make(part.size(), part.size()));
  }
  for (const auto& e : g.edges()) {
    const auto x = value();
    const auto pu = d.part_of(e.u), pv = d.part_of(e.v);
    const auto lu = static_cast<std::size_t>(d.local_index(e.u));
    const auto lv = static_cast<std::size_t>(d.local_index(e.v));
    if (pu == kSeparatorPart && pv == kSeparatorPart) {
      a.gamma(lu, lv) = a.gamma(lv, lu) = x;
    } else if (pu == kSeparatorPart) {
      a.betas[pv](lu, lv) = x;
    } else if (pv == kSeparatorPart) {
      a.betas[pu](lv, lu) = x;
    } else if (pu == pv) {
      a.alphas[pu](lu, lv) = a.alphas[pu](lv, lu) = x;
    } else {
      throw PreconditionError("edge joins two parts of the decomposition");
    }
  }
  return a;
}

template <class Mat>
auto entry_of(const BlockForm<Mat>& a, Vertex u, Vertex v) {
  const auto& d = a.decomposition;
  const auto pu = d.part_of(u), pv = d.part_of(v);
  const auto lu = static_cast<std::size_t>(d.local_index(u));
  const auto lv = static_cast<std::size_t>(d.local_index(v));
  using T = std::remove_cvref_t<decltype(a.gamma(0, 0))>;
  if (pu == kSeparatorPart && pv == kSeparatorPart) return T(a.gamma(lu, lv));
  if (pu == kSeparatorPart) return T(a.betas[pv](lu, lv));
  if (pv == kSeparatorPart) return T(a.betas[pu](lv, lu));
  if (pu == pv) return T(a.alphas[pu](lu, lv));
  return T{};
}

template <class Mat, class Maker>
Mat extract_of(const BlockForm<Mat>& a, std::span<const Vertex> rows, std::span<const Vertex> cols,
               Maker make) {
  Mat m = make(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = entry_of(a, rows[i], cols[j]);
  return m;
}

std::vector<Vertex> all_vertices(const SeparatorDecomposition& d) {
  std::vector<Vertex> v(static_cast<std::size_t>(d.n()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<Vertex>(i);
  return v;
}

template <class Mat, class Maker>
Mat gather_rows(const Mat& m, const std::vector<Vertex>& rows, Maker make) {
  Mat out = make(rows.size(), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(static_cast<std::size_t>(rows[i]), j);
  return out;
}

template <class Mat>
void scatter_rows(const Mat& block, const std::vector<Vertex>& rows, Mat& out) {
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < block.cols(); ++j) out(static_cast<std::size_t>(rows[i]), j) = block(i, j);
}

template <class Mat, class Maker>
Mat left_mul(const BlockForm<Mat>& a, const Mat& m, Maker make) {
  const auto& d = a.decomposition;
  const auto n = static_cast<std::size_t>(d.n());
  if (m.rows() != n) throw InputError("structured product dimension mismatch");
  const Mat ms = gather_rows(m, d.separator(), make);
  Mat out = make(n, m.cols());
  Mat top = make(d.separator().size(), m.cols());
  accumulate(a.gamma, ms, top);
  for (std::size_t i = 0; i < d.part_count(); ++i) {
    const Mat mt = gather_rows(m, d.part(i), make);
    accumulate(a.betas[i], mt, top);
    Mat rows = make(d.part(i).size(), m.cols());
    accumulate(a.betas[i].transposed(), ms, rows);
    accumulate(a.alphas[i], mt, rows);
    scatter_rows(rows, d.part(i), out);
  }
  scatter_rows(top, d.separator(), out);
  return out;
}

template <class Mat, class Maker>
Mat structured(const BlockForm<Mat>& a, const Mat& m, Side side, Maker make) {
  if (m.rows() != m.cols()) throw InputError("structured product needs a square matrix");
  if (side == Side::left) return left_mul(a, m, make);
  return left_mul(a, m.transposed(), make).transposed();
}

}  // namespace

BlockAdjacency block_adjacency(const Graph& g, const SeparatorDecomposition& d) {
  return make_form<IntMatrix>(g, d, IntMaker{}, [] { return std::int64_t{1}; });
}

BlockTutteMatrix random_tutte(const Graph& g, const SeparatorDecomposition& d, const Field& f,
                              Rng& rng) {
  return make_form<FieldMatrix>(g, d, FieldMaker{f}, [&] { return f.random_nonzero(rng); });
}

BlockTutteMatrix tutte_from_values(const Graph& g, const SeparatorDecomposition& d, const Field& f,
                                   std::span<const FieldElement> values) {
  if (values.size() != g.m()) throw InputError("one Tutte value per edge expected");
  std::size_t next = 0;
  return make_form<FieldMatrix>(g, d, FieldMaker{f}, [&] { return values[next++]; });
}

std::int64_t entry(const BlockAdjacency& a, Vertex u, Vertex v) { return entry_of(a, u, v); }
FieldElement entry(const BlockTutteMatrix& a, Vertex u, Vertex v) { return entry_of(a, u, v); }

IntMatrix to_dense(const BlockAdjacency& a) {
  auto all = all_vertices(a.decomposition);
  return extract_of(a, all, all, IntMaker{});
}

FieldMatrix to_dense(const BlockTutteMatrix& a) {
  auto all = all_vertices(a.decomposition);
  return extract_of(a, all, all, FieldMaker{a.gamma.field()});
}

FieldMatrix extract(const BlockTutteMatrix& a, std::span<const Vertex> rows,
                    std::span<const Vertex> cols) {
  return extract_of(a, rows, cols, FieldMaker{a.gamma.field()});
}

IntMatrix extract(const BlockAdjacency& a, std::span<const Vertex> rows,
                  std::span<const Vertex> cols) {
  return extract_of(a, rows, cols, IntMaker{});
}

FieldMatrix structured_mul(const BlockTutteMatrix& a, const FieldMatrix& m, Side side) {
  if (!(m.field() == a.gamma.field())) throw InputError("structured product over different fields");
  return structured(a, m, side, FieldMaker{a.gamma.field()});
}

IntMatrix structured_mul(const BlockAdjacency& a, const IntMatrix& m, Side side) {
  return structured(a, m, side, IntMaker{});
}

std::vector<std::int64_t> square_on_edges(const Graph& g, const SeparatorDecomposition& d) {
  const BlockAdjacency a = block_adjacency(g, d);
  IntMatrix zeta = multiply(a.gamma, a.gamma);
  std::vector<IntMatrix> eta, delta;
  for (std::size_t i = 0; i < d.part_count(); ++i) {
    const IntMatrix beta_t = a.betas[i].transposed();
    multiply_add(a.betas[i], beta_t, zeta);
    IntMatrix e = multiply(a.gamma, a.betas[i]);
    multiply_add(a.betas[i], a.alphas[i], e);
    eta.push_back(std::move(e));
    IntMatrix dl = multiply(beta_t, a.betas[i]);
    multiply_add(a.alphas[i], a.alphas[i], dl);
    delta.push_back(std::move(dl));
  }
  std::vector<std::int64_t> out(g.m());
  for (std::size_t id = 0; id < g.m(); ++id) {
    const auto& e = g.edges()[id];
    const auto pu = d.part_of(e.u), pv = d.part_of(e.v);
    const auto lu = static_cast<std::size_t>(d.local_index(e.u));
    const auto lv = static_cast<std::size_t>(d.local_index(e.v));
    if (pu == kSeparatorPart && pv == kSeparatorPart)
      out[id] = zeta(lu, lv);
    else if (pu == kSeparatorPart)
      out[id] = eta[pv](lu, lv);
    else if (pv == kSeparatorPart)
      out[id] = eta[pu](lv, lu);
    else
      out[id] = delta[pu](lu, lv);
  }
  return out;
}

SkewView SkewView::of(const BlockTutteMatrix& a, std::vector<Vertex> index) {
  SkewView v;
  v.matrix = &a;
  for (Vertex x : index) v.separator_side.push_back(a.decomposition.in_separator(x));
  v.index = std::move(index);
  return v;
}

FieldMatrix SkewView::materialize() const { return extract(*matrix, index, index); }

}  // namespace vigl
