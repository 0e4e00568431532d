#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "vigl/errors.hpp"

namespace vigl {

// Row-major dense matrix over an ordinary arithmetic type.
template <class T>
class Dense {
 public:
  Dense() = default;
  Dense(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  static Dense identity(std::size_t n) {
    Dense m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  T* row(std::size_t i) { return a_.data() + i * cols_; }
  const T* row(std::size_t i) const { return a_.data() + i * cols_; }

  Dense transposed() const {
    Dense t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const Dense&, const Dense&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> a_;
};

using IntMatrix = Dense<std::int64_t>;

// Classical product; zero entries of a are skipped.
template <class T>
Dense<T> multiply(const Dense<T>& a, const Dense<T>& b) {
  if (a.cols() != b.rows()) throw InputError("matrix dimension mismatch");
  Dense<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    T* out = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T x = a(i, k);
      if (x == T{}) continue;
      const T* in = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) out[j] += x * in[j];
    }
  }
  return c;
}

// c += a * b.
template <class T>
void multiply_add(const Dense<T>& a, const Dense<T>& b, Dense<T>& c) {
  if (a.cols() != b.rows() || c.rows() != a.rows() || c.cols() != b.cols())
    throw InputError("matrix dimension mismatch");
  for (std::size_t i = 0; i < a.rows(); ++i) {
    T* out = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T x = a(i, k);
      if (x == T{}) continue;
      const T* in = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) out[j] += x * in[j];
    }
  }
}

}  // namespace vigl
