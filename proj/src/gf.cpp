#include "vigl/gf.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "vigl/errors.hpp"

#if defined(__x86_64__)
#include <immintrin.h>
#endif

namespace vigl {

namespace {

// Low 64 bits of a carry-less product; callers keep operands small enough.
std::uint64_t clmul_soft(std::uint64_t a, std::uint64_t b) {
  if (std::popcount(a) > std::popcount(b)) std::swap(a, b);
  std::uint64_t r = 0;
  while (a) {
    r ^= b << std::countr_zero(a);
    a &= a - 1;
  }
  return r;
}

#if defined(__x86_64__)
__attribute__((target("pclmul,sse2"))) std::uint64_t clmul_hw(std::uint64_t a, std::uint64_t b) {
  const __m128i x = _mm_cvtsi64_si128(static_cast<long long>(a));
  const __m128i y = _mm_cvtsi64_si128(static_cast<long long>(b));
  return static_cast<std::uint64_t>(_mm_cvtsi128_si64(_mm_clmulepi64_si128(x, y, 0)));
}

using ClmulFn = std::uint64_t (*)(std::uint64_t, std::uint64_t);
const ClmulFn clmul = __builtin_cpu_supports("pclmul") ? clmul_hw : clmul_soft;
#else
constexpr auto clmul = clmul_soft;
#endif

int poly_degree(std::uint64_t p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) {
  const int dm = poly_degree(m);
  for (int d = poly_degree(a); d >= dm; d = poly_degree(a)) a ^= m << (d - dm);
  return a;
}

std::uint64_t poly_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  // a, b have degree < deg m <= 32, so the product fits in 64 bits.
  return poly_mod(clmul_soft(a, b), m);
}

std::uint64_t poly_gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a = poly_mod(a, b);
    std::swap(a, b);
  }
  return a;
}

}  // namespace

bool is_irreducible(std::uint64_t poly, int degree) {
  if (degree < 1 || degree > 32 || poly_degree(poly) != degree) return false;
  // Rabin: x^(2^q) = x mod f, and gcd(x^(2^(q/p)) - x, f) = 1 for primes p | q.
  auto frobenius = [&](int times) {
    std::uint64_t x = poly_mod(2, poly);
    for (int i = 0; i < times; ++i) x = poly_mulmod(x, x, poly);
    return x;
  };
  const std::uint64_t x = poly_mod(2, poly);
  if (frobenius(degree) != x) return false;
  int rest = degree;
  for (int p = 2; p <= rest; ++p) {
    if (rest % p) continue;
    while (rest % p == 0) rest /= p;
    if (poly_gcd(poly, frobenius(degree / p) ^ x) != 1) return false;
  }
  return true;
}

Field::Field(int q, std::uint64_t modulus) : q_(q), modulus_(modulus) {
  if (!is_irreducible(modulus, q))
    throw InputError("modulus is not an irreducible polynomial of degree " + std::to_string(q));
  mask_ = (std::uint64_t{1} << q) - 1;
}

Field Field::standard(int q) {
  switch (q) {
    case 8: return Field(8, 0x11B);
    case 16: return Field(16, 0x1100B);
    case 20: return Field(20, 0x100009);
    case 32: return Field(32, 0x10000008DULL);
    default: throw InputError("no standard modulus for q = " + std::to_string(q));
  }
}

Field Field::for_vertex_count(std::size_t n) {
  int log = 0;
  while ((std::size_t{1} << log) < n) ++log;
  const int want = std::max(20, 3 * log);
  return standard(want <= 20 ? 20 : 32);
}

FieldElement Field::mul(FieldElement a, FieldElement b) const {
  std::uint64_t p = clmul(a.value, b.value);
  const std::uint64_t tail = modulus_ ^ (std::uint64_t{1} << q_);
  while (p >> q_) p = (p & mask_) ^ clmul(p >> q_, tail);
  return {static_cast<std::uint32_t>(p)};
}

FieldElement Field::pow(FieldElement a, std::uint64_t e) const {
  FieldElement r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

FieldElement Field::inv(FieldElement a) const {
  if (a.is_zero()) throw ArithmeticError("inverse of zero field element");
  return pow(a, order() - 2);
}

FieldElement Field::element(std::uint64_t bits) const {
  if (bits > mask_) throw InputError("value does not fit the field");
  return {static_cast<std::uint32_t>(bits)};
}

FieldElement Field::random(Rng& rng) const { return {static_cast<std::uint32_t>(rng.below(order()))}; }

FieldElement Field::random_nonzero(Rng& rng) const {
  return {static_cast<std::uint32_t>(1 + rng.below(order() - 1))};
}

FieldMatrix FieldMatrix::identity(const Field& f, std::size_t n) {
  FieldMatrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Field::one();
  return m;
}

FieldMatrix FieldMatrix::random(const Field& f, std::size_t rows, std::size_t cols, Rng& rng) {
  FieldMatrix m(f, rows, cols);
  for (auto& x : m.a_) x = f.random(rng);
  return m;
}

bool FieldMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](FieldElement x) { return x.is_zero(); });
}

FieldMatrix FieldMatrix::transposed() const {
  FieldMatrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

FieldMatrix add(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("matrix dimension mismatch");
  FieldMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = Field::add(a(i, j), b(i, j));
  return c;
}

void mul_add(const FieldMatrix& a, const FieldMatrix& b, FieldMatrix& c) {
  if (a.cols() != b.rows() || c.rows() != a.rows() || c.cols() != b.cols())
    throw InputError("matrix dimension mismatch");
  const Field& f = a.field();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    FieldElement* out = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const FieldElement x = a(i, k);
      if (x.is_zero()) continue;
      const FieldElement* in = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!in[j].is_zero()) out[j] = Field::add(out[j], f.mul(x, in[j]));
    }
  }
}

FieldMatrix mat_mul(const FieldMatrix& a, const FieldMatrix& b) {
  FieldMatrix c(a.field(), a.rows(), b.cols());
  mul_add(a, b, c);
  return c;
}

FieldMatrix mat_mul_blocked(const FieldMatrix& a, const FieldMatrix& b, std::size_t block) {
  if (a.cols() != b.rows()) throw InputError("matrix dimension mismatch");
  if (block == 0) throw InputError("block width must be positive");
  const Field& f = a.field();
  FieldMatrix c(f, a.rows(), b.cols());
  for (std::size_t start = 0; start < a.cols(); start += block) {
    FieldMatrix ab(f, a.rows(), block), bb(f, block, b.cols());
    for (std::size_t t = 0; t < block && start + t < a.cols(); ++t) {
      for (std::size_t i = 0; i < a.rows(); ++i) ab(i, t) = a(i, start + t);
      for (std::size_t j = 0; j < b.cols(); ++j) bb(t, j) = b(start + t, j);
    }
    mul_add(ab, bb, c);
  }
  return c;
}

FieldMatrix submatrix(const FieldMatrix& a, std::span<const std::size_t> rows,
                      std::span<const std::size_t> cols) {
  FieldMatrix s(a.field(), rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = a(rows[i], cols[j]);
  return s;
}

FieldMatrix principal(const FieldMatrix& a, std::span<const std::size_t> idx) {
  return submatrix(a, idx, idx);
}

Index complement_index(std::size_t n, std::span<const std::size_t> idx) {
  std::vector<bool> in(n, false);
  for (auto i : idx) in[i] = true;
  Index out;
  for (std::size_t i = 0; i < n; ++i)
    if (!in[i]) out.push_back(i);
  return out;
}

namespace {

// row_i ^= factor * row_j over columns [from, cols).
void axpy_row(FieldMatrix& m, std::size_t target, std::size_t source, FieldElement factor,
              std::size_t from = 0) {
  const Field& f = m.field();
  FieldElement* t = m.row(target);
  const FieldElement* s = m.row(source);
  for (std::size_t j = from; j < m.cols(); ++j)
    if (!s[j].is_zero()) t[j] = Field::add(t[j], f.mul(factor, s[j]));
}

void scale_row(FieldMatrix& m, std::size_t r, FieldElement factor) {
  const Field& f = m.field();
  FieldElement* t = m.row(r);
  for (std::size_t j = 0; j < m.cols(); ++j) t[j] = f.mul(factor, t[j]);
}

void swap_rows(FieldMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(m.row(a), m.row(a) + m.cols(), m.row(b));
}

// Forward elimination; returns rank and the product of pivots.
std::pair<std::size_t, FieldElement> eliminate(FieldMatrix& m) {
  const Field& f = m.field();
  std::size_t r = 0;
  FieldElement product = Field::one();
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    swap_rows(m, r, p);
    const FieldElement pivot_inv = f.inv(m(r, c));
    product = f.mul(product, m(r, c));
    for (std::size_t i = r + 1; i < m.rows(); ++i)
      if (!m(i, c).is_zero()) axpy_row(m, i, r, f.mul(m(i, c), pivot_inv), c);
    ++r;
  }
  return {r, product};
}

}  // namespace

FieldElement det(const FieldMatrix& a) {
  if (!a.square()) throw InputError("determinant of a non-square matrix");
  FieldMatrix m = a;
  auto [r, product] = eliminate(m);
  return r == a.rows() ? product : Field::zero();
}

std::size_t rank(const FieldMatrix& a) {
  FieldMatrix m = a;
  return eliminate(m).first;
}

std::optional<FieldMatrix> try_inverse(const FieldMatrix& a) {
  if (!a.square()) throw InputError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  const Field& f = a.field();
  FieldMatrix aug(f, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = Field::one();
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && aug(p, c).is_zero()) ++p;
    if (p == n) return std::nullopt;
    swap_rows(aug, c, p);
    scale_row(aug, c, f.inv(aug(c, c)));
    for (std::size_t i = 0; i < n; ++i)
      if (i != c && !aug(i, c).is_zero()) axpy_row(aug, i, c, aug(i, c), c);
  }
  FieldMatrix inv(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

FieldMatrix inverse(const FieldMatrix& a) {
  auto inv = try_inverse(a);
  if (!inv) throw SingularMatrixError(rank(a), a.rows());
  return *std::move(inv);
}

Index row_basis(const FieldMatrix& a) {
  const Field& f = a.field();
  // Reduced copies of accepted rows, each normalized to 1 at its pivot.
  FieldMatrix basis(f, std::min(a.rows(), a.cols()), a.cols());
  std::vector<std::size_t> pivot;
  Index chosen;
  FieldMatrix work(f, 1, a.cols());
  for (std::size_t i = 0; i < a.rows() && chosen.size() < a.cols(); ++i) {
    std::copy(a.row(i), a.row(i) + a.cols(), work.row(0));
    for (std::size_t b = 0; b < chosen.size(); ++b) {
      const FieldElement x = work(0, pivot[b]);
      if (x.is_zero()) continue;
      FieldElement* w = work.row(0);
      const FieldElement* src = basis.row(b);
      for (std::size_t j = 0; j < a.cols(); ++j)
        if (!src[j].is_zero()) w[j] = Field::add(w[j], f.mul(x, src[j]));
    }
    std::size_t p = 0;
    while (p < a.cols() && work(0, p).is_zero()) ++p;
    if (p == a.cols()) continue;
    const FieldElement s = f.inv(work(0, p));
    const std::size_t b = chosen.size();
    for (std::size_t j = 0; j < a.cols(); ++j) basis(b, j) = f.mul(s, work(0, j));
    pivot.push_back(p);
    chosen.push_back(i);
  }
  return chosen;
}

Index column_basis(const FieldMatrix& a) { return row_basis(a.transposed()); }

FieldMatrix schur_complement(const FieldMatrix& a, std::span<const std::size_t> x) {
  if (!a.square()) throw InputError("Schur complement of a non-square matrix");
  const Index y = complement_index(a.rows(), x);
  auto ax_inv = try_inverse(principal(a, x));
  if (!ax_inv) throw PreconditionError("Schur complement pivot block is singular");
  FieldMatrix result = principal(a, y);
  const FieldMatrix left = mat_mul(submatrix(a, y, x), *ax_inv);
  mul_add(left, submatrix(a, x, y), result);  // minus equals plus in characteristic 2
  return result;
}

std::optional<FieldMatrix> harvey_update(const FieldMatrix& n_inv, const FieldMatrix& delta,
                                         std::span<const std::size_t> s,
                                         std::span<const std::size_t> t) {
  if (!n_inv.square() || delta.rows() != s.size() || delta.cols() != t.size())
    throw InputError("harvey_update dimension mismatch");
  const Field& f = n_inv.field();
  const Index all = complement_index(n_inv.rows(), {});
  FieldMatrix k = FieldMatrix::identity(f, s.size());
  mul_add(delta, submatrix(n_inv, t, s), k);
  auto k_inv = try_inverse(k);
  if (!k_inv) return std::nullopt;
  const FieldMatrix left = mat_mul(submatrix(n_inv, all, s), *k_inv);
  const FieldMatrix right = mat_mul(delta, submatrix(n_inv, t, all));
  FieldMatrix result = n_inv;
  mul_add(left, right, result);
  return result;
}

namespace {

FieldElement pfaffian_rec(const FieldMatrix& a, std::vector<std::size_t>& idx) {
  if (idx.empty()) return Field::one();
  const Field& f = a.field();
  const std::size_t first = idx.front();
  FieldElement sum = Field::zero();
  for (std::size_t j = 1; j < idx.size(); ++j) {
    const FieldElement x = a(first, idx[j]);
    if (x.is_zero()) continue;
    std::vector<std::size_t> rest;
    for (std::size_t t = 1; t < idx.size(); ++t)
      if (t != j) rest.push_back(idx[t]);
    sum = Field::add(sum, f.mul(x, pfaffian_rec(a, rest)));
  }
  return sum;
}

}  // namespace

FieldElement pfaffian_small(const FieldMatrix& a) {
  if (!a.square()) throw PreconditionError("Pfaffian of a non-square matrix");
  if (a.rows() > 12) throw PreconditionError("Pfaffian expansion limited to dimension 12");
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (!a(i, i).is_zero()) throw PreconditionError("Pfaffian needs a zero diagonal");
    for (std::size_t j = 0; j < i; ++j)
      if (a(i, j) != a(j, i)) throw PreconditionError("Pfaffian needs an alternating matrix");
  }
  if (a.rows() % 2) return Field::zero();
  std::vector<std::size_t> idx(a.rows());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return pfaffian_rec(a, idx);
}

std::string to_debug_string(const FieldMatrix& a) {
  std::ostringstream out;
  const int width = (a.field().degree() + 3) / 4;
  char buf[16];
  std::snprintf(buf, sizeof buf, "%llx", static_cast<unsigned long long>(a.field().modulus()));
  out << "gf " << a.field().degree() << ' ' << buf << ' ' << a.rows() << ' ' << a.cols() << '\n';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%0*x", width, a(i, j).value);
      if (j) out << ' ';
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

FieldMatrix from_debug_string(const std::string& text) {
  std::istringstream in(text);
  std::string tag, modulus_hex;
  int q = 0;
  std::size_t rows = 0, cols = 0;
  if (!(in >> tag >> q >> modulus_hex >> rows >> cols) || tag != "gf")
    throw ParseError(1, "expected 'gf <q> <modulus> <rows> <cols>'");
  const Field f(q, std::stoull(modulus_hex, nullptr, 16));
  FieldMatrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      std::string tok;
      if (!(in >> tok)) throw ParseError(2 + i, "missing matrix entry");
      m(i, j) = f.element(std::stoull(tok, nullptr, 16));
    }
  return m;
}

}  // namespace vigl
