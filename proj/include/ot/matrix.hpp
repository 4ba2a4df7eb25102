#pragma once

#include <cstddef>
#include <vector>

#include "ot/error.hpp"

namespace ot {

// Minimal dense row-major matrix; works for double and exact rationals alike.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols, T init = T()) : rows_(rows), cols_(cols), d_(rows * cols, init) {}

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (size_t i = 0; i < rows.size(); ++i) {
      require(rows[i].size() == m.cols_, Errc::dimension_mismatch, "ragged matrix rows");
      for (size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  T& operator()(size_t i, size_t j) { return d_[i * cols_ + j]; }
  const T& operator()(size_t i, size_t j) const { return d_[i * cols_ + j]; }

  bool operator==(const Matrix& o) const = default;

  std::vector<T> row_sums() const {
    std::vector<T> s(rows_, T(0));
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) s[i] += (*this)(i, j);
    return s;
  }

  std::vector<T> col_sums() const {
    std::vector<T> s(cols_, T(0));
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) s[j] += (*this)(i, j);
    return s;
  }

  template <class U, class F>
  Matrix<U> map(F f) const {
    Matrix<U> m(rows_, cols_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) m(i, j) = f((*this)(i, j));
    return m;
  }

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<T> d_;
};

}  // namespace ot
