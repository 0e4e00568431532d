#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vigl/rng.hpp"

namespace vigl {

struct FieldElement {
  std::uint32_t value = 0;

  constexpr bool is_zero() const { return value == 0; }
  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

// GF(2^q) for 1 <= q <= 32; elements are polynomials over GF(2) packed into
// the low q bits, reduced modulo an irreducible polynomial of degree q.
class Field {
 public:
  Field() : Field(8, 0x11B) {}
  // Throws InputError unless modulus has degree q and is irreducible.
  Field(int q, std::uint64_t modulus);

  // Fixed moduli for q in {8, 16, 20, 32}.
  static Field standard(int q);
  // Smallest standard q >= max(20, 3 ceil(log2 n)), capped at 32.
  static Field for_vertex_count(std::size_t n);

  int degree() const { return q_; }
  std::uint64_t modulus() const { return modulus_; }
  std::uint64_t order() const { return std::uint64_t{1} << q_; }

  static constexpr FieldElement zero() { return {0}; }
  static constexpr FieldElement one() { return {1}; }
  static constexpr FieldElement add(FieldElement a, FieldElement b) { return {a.value ^ b.value}; }
  FieldElement mul(FieldElement a, FieldElement b) const;
  // Throws ArithmeticError on zero.
  FieldElement inv(FieldElement a) const;
  FieldElement pow(FieldElement a, std::uint64_t e) const;
  FieldElement element(std::uint64_t bits) const;

  FieldElement random(Rng& rng) const;
  FieldElement random_nonzero(Rng& rng) const;

  friend bool operator==(const Field& a, const Field& b) {
    return a.q_ == b.q_ && a.modulus_ == b.modulus_;
  }

 private:
  int q_;
  std::uint64_t modulus_;
  std::uint64_t mask_;
};

bool is_irreducible(std::uint64_t poly, int degree);

class FieldMatrix {
 public:
  FieldMatrix() = default;
  FieldMatrix(const Field& f, std::size_t rows, std::size_t cols)
      : field_(f), rows_(rows), cols_(cols), a_(rows * cols) {}

  static FieldMatrix identity(const Field& f, std::size_t n);
  static FieldMatrix random(const Field& f, std::size_t rows, std::size_t cols, Rng& rng);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  FieldElement& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  FieldElement operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  FieldElement* row(std::size_t i) { return a_.data() + i * cols_; }
  const FieldElement* row(std::size_t i) const { return a_.data() + i * cols_; }

  bool is_zero() const;
  FieldMatrix transposed() const;

  friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FieldElement> a_;
};

using Index = std::vector<std::size_t>;

FieldMatrix add(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix mat_mul(const FieldMatrix& a, const FieldMatrix& b);
// c += a * b
void mul_add(const FieldMatrix& a, const FieldMatrix& b, FieldMatrix& c);
// Product with the inner dimension cut into blocks of the given width, the
// ragged last block zero padded; same result as mat_mul.
FieldMatrix mat_mul_blocked(const FieldMatrix& a, const FieldMatrix& b, std::size_t block);

FieldMatrix submatrix(const FieldMatrix& a, std::span<const std::size_t> rows,
                      std::span<const std::size_t> cols);
FieldMatrix principal(const FieldMatrix& a, std::span<const std::size_t> idx);
Index complement_index(std::size_t n, std::span<const std::size_t> idx);

FieldElement det(const FieldMatrix& a);
std::size_t rank(const FieldMatrix& a);
// Throws SingularMatrixError carrying the rank.
FieldMatrix inverse(const FieldMatrix& a);
std::optional<FieldMatrix> try_inverse(const FieldMatrix& a);
// Lexicographically first maximal independent set of rows.
Index row_basis(const FieldMatrix& a);
Index column_basis(const FieldMatrix& a);

// a[Y] - a[Y,x] a[x]^-1 a[x,Y] with Y the complement of x, rows and columns
// in increasing index order. Throws PreconditionError if a[x] is singular.
FieldMatrix schur_complement(const FieldMatrix& a, std::span<const std::size_t> x);

// Inverse of M + Delta (Delta placed at rows s, columns t) given N = M^-1:
//   N - N[., s] (I + Delta N[t, s])^-1 Delta N[t, .]
// nullopt when I + Delta N[t, s] is singular, i.e. M + Delta is singular.
std::optional<FieldMatrix> harvey_update(const FieldMatrix& n_inv, const FieldMatrix& delta,
                                         std::span<const std::size_t> s,
                                         std::span<const std::size_t> t);

// Pfaffian of an alternating matrix (symmetric, zero diagonal) of dimension
// at most 12 by expansion along the first row; 0 for odd dimension.
FieldElement pfaffian_small(const FieldMatrix& a);

// Debug text: header "gf <q> <modulus-hex> <rows> <cols>", then one line of
// hex entries per row.
std::string to_debug_string(const FieldMatrix& a);
FieldMatrix from_debug_string(const std::string& text);

}  // namespace vigl
