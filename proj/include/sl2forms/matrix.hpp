#pragma once

// Dense matrices over a Field context and exact Gaussian elimination.

#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "fields.hpp"

namespace sl2forms {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
    return out;
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <Field K>
using MatrixOf = Matrix<typename K::value_type>;

template <Field K>
using VectorOf = std::vector<typename K::value_type>;

template <Field K>
MatrixOf<K> zero_matrix(const K& k, std::size_t rows, std::size_t cols) {
  return MatrixOf<K>(rows, cols, k.zero());
}

template <Field K>
MatrixOf<K> identity_matrix(const K& k, std::size_t n) {
  auto m = zero_matrix(k, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = k.one();
  return m;
}

template <Field K>
MatrixOf<K> from_columns(const K& k, std::size_t rows, const std::vector<VectorOf<K>>& cols) {
  auto m = zero_matrix(k, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw domain_error("from_columns: ragged columns");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> t(a.cols(), a.rows(), T{});
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

template <Field K>
MatrixOf<K> multiply(const K& k, const MatrixOf<K>& a, const MatrixOf<K>& b) {
  if (a.cols() != b.rows()) throw domain_error("multiply: dimension mismatch");
  auto c = zero_matrix(k, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      if (k.is_zero(a(i, l))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!k.is_zero(b(l, j))) c(i, j) = k.add(c(i, j), k.mul(a(i, l), b(l, j)));
    }
  return c;
}

template <Field K>
VectorOf<K> apply(const K& k, const MatrixOf<K>& a, const VectorOf<K>& v) {
  if (a.cols() != v.size()) throw domain_error("apply: dimension mismatch");
  VectorOf<K> out(a.rows(), k.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!k.is_zero(v[j]) && !k.is_zero(a(i, j)))
        out[i] = k.add(out[i], k.mul(a(i, j), v[j]));
  return out;
}

template <Field K>
MatrixOf<K> add(const K& k, const MatrixOf<K>& a, const MatrixOf<K>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw domain_error("add: shape mismatch");
  auto c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = k.add(a(i, j), b(i, j));
  return c;
}

template <Field K>
MatrixOf<K> scale(const K& k, const typename K::value_type& c, MatrixOf<K> a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = k.mul(c, a(i, j));
  return a;
}

/// P^T G P.
template <Field K>
MatrixOf<K> congruence(const K& k, const MatrixOf<K>& g, const MatrixOf<K>& p) {
  return multiply(k, transpose(p), multiply(k, g, p));
}

template <Field K>
bool matrices_equal(const K& k, const MatrixOf<K>& a, const MatrixOf<K>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!k.equal(a(i, j), b(i, j))) return false;
  return true;
}

template <Field K>
bool is_symmetric(const K& k, const MatrixOf<K>& a) {
  return a.square() && matrices_equal(k, a, transpose(a));
}

/// Reduced row echelon form computed in place; returns the pivot columns.
template <Field K>
std::vector<std::size_t> row_reduce(const K& k, MatrixOf<K>& a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t sel = row;
    while (sel < a.rows() && k.is_zero(a(sel, col))) ++sel;
    if (sel == a.rows()) continue;
    if (sel != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(sel, j), a(row, j));
    const auto inv = k.inv(a(row, col));
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) = k.mul(a(row, j), inv);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || k.is_zero(a(i, col))) continue;
      const auto factor = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j)
        if (!k.is_zero(a(row, j))) a(i, j) = k.sub(a(i, j), k.mul(factor, a(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <Field K>
std::size_t rank(const K& k, MatrixOf<K> a) {
  return row_reduce(k, a).size();
}

/// Basis of {v : a v = 0}, one vector per free column of the echelon form.
template <Field K>
std::vector<VectorOf<K>> kernel(const K& k, MatrixOf<K> a) {
  const auto pivots = row_reduce(k, a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<VectorOf<K>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    VectorOf<K> v(a.cols(), k.zero());
    v[free] = k.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = k.neg(a(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

template <Field K>
typename K::value_type determinant(const K& k, MatrixOf<K> a) {
  if (!a.square()) throw domain_error("determinant: matrix is not square");
  auto det = k.one();
  const std::size_t n = a.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && k.is_zero(a(sel, col))) ++sel;
    if (sel == n) return k.zero();
    if (sel != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(sel, j), a(col, j));
      det = k.neg(det);
    }
    det = k.mul(det, a(col, col));
    const auto inv = k.inv(a(col, col));
    for (std::size_t i = col + 1; i < n; ++i) {
      if (k.is_zero(a(i, col))) continue;
      const auto factor = k.mul(a(i, col), inv);
      for (std::size_t j = col; j < n; ++j) a(i, j) = k.sub(a(i, j), k.mul(factor, a(col, j)));
    }
  }
  return det;
}

template <Field K>
MatrixOf<K> inverse(const K& k, const MatrixOf<K>& a) {
  if (!a.square()) throw domain_error("inverse: matrix is not square");
  const std::size_t n = a.rows();
  auto aug = zero_matrix(k, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = k.one();
  }
  const auto pivots = row_reduce(k, aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1)
    throw arithmetic_error("inverse: singular matrix");
  auto out = zero_matrix(k, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

/// Tracks the span of inserted vectors in echelon form.
template <Field K>
class IncrementalSpan {
 public:
  explicit IncrementalSpan(K k) : k_(std::move(k)) {}

  /// Adds v if it is independent of the vectors so far; returns whether it was.
  bool insert(VectorOf<K> v) {
    for (const auto& [pivot, row] : rows_) {
      if (k_.is_zero(v[pivot])) continue;
      const auto c = v[pivot];
      for (std::size_t j = 0; j < v.size(); ++j)
        if (!k_.is_zero(row[j])) v[j] = k_.sub(v[j], k_.mul(c, row[j]));
    }
    std::size_t pivot = 0;
    while (pivot < v.size() && k_.is_zero(v[pivot])) ++pivot;
    if (pivot == v.size()) return false;
    const auto inv = k_.inv(v[pivot]);
    for (auto& x : v) x = k_.mul(x, inv);
    for (auto& [p, row] : rows_) {
      if (k_.is_zero(row[pivot])) continue;
      const auto c = row[pivot];
      for (std::size_t j = 0; j < v.size(); ++j)
        if (!k_.is_zero(v[j])) row[j] = k_.sub(row[j], k_.mul(c, v[j]));
    }
    rows_.emplace_back(pivot, std::move(v));
    return true;
  }

  std::size_t size() const { return rows_.size(); }

 private:
  K k_;
  std::vector<std::pair<std::size_t, VectorOf<K>>> rows_;
};

/// Kronecker product.
template <Field K>
MatrixOf<K> kronecker(const K& k, const MatrixOf<K>& a, const MatrixOf<K>& b) {
  auto c = zero_matrix(k, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t s = 0; s < b.cols(); ++s)
          c(i * b.rows() + r, j * b.cols() + s) = k.mul(a(i, j), b(r, s));
  return c;
}

/// Block-diagonal matrix diag(a, b).
template <Field K>
MatrixOf<K> block_diagonal(const K& k, const MatrixOf<K>& a, const MatrixOf<K>& b) {
  auto c = zero_matrix(k, a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, a.cols() + j) = b(i, j);
  return c;
}

template <Field K>
std::string to_string(const K& k, const MatrixOf<K>& a) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < a.cols(); ++j) os << (j ? "," : "") << k.to_string(a(i, j));
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace sl2forms
