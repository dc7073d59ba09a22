#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "dagger/scalar.hpp"

namespace dagger {

template <class B>
using Vector = std::vector<Scalar<B>>;

/// Dense row-major matrix over V or K.
template <class B>
class Matrix {
 public:
  Matrix() = default;

  Matrix(RingPtr<B> ring, std::size_t rows, std::size_t cols)
      : ring_(std::move(ring)),
        rows_(rows),
        cols_(cols),
        data_(rows * cols, Scalar<B>::zero(ring_)) {}

  static Matrix identity(RingPtr<B> ring, std::size_t n) {
    Matrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar<B>::one(ring);
    return m;
  }

  static Matrix from_rows(RingPtr<B> ring, const std::vector<Vector<B>>& rows) {
    std::size_t r = rows.size(), c = r == 0 ? 0 : rows.front().size();
    Matrix m(std::move(ring), r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw InvalidInput("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_columns(RingPtr<B> ring, std::size_t rows,
                             const std::vector<Vector<B>>& cols) {
    Matrix m(std::move(ring), rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw DescriptorMismatch("column length");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  const RingPtr<B>& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Scalar<B>& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar<B>& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  Vector<B> column(std::size_t j) const {
    Vector<B> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
    return out;
  }

  std::vector<Vector<B>> columns() const {
    std::vector<Vector<B>> out;
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
    return out;
  }

  /// Row-major flattening, used to view M_d(K) as K^(d*d).
  const Vector<B>& entries() const { return data_; }

  static Matrix from_entries(RingPtr<B> ring, std::size_t rows, std::size_t cols,
                             Vector<B> entries) {
    if (entries.size() != rows * cols) throw DescriptorMismatch("entry count");
    Matrix m;
    m.ring_ = std::move(ring);
    m.rows_ = rows;
    m.cols_ = cols;
    m.data_ = std::move(entries);
    return m;
  }

  Matrix operator*(const Matrix& other) const {
    if (cols_ != other.rows_) throw DescriptorMismatch("matrix shapes for product");
    Matrix out(ring_, rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const auto& a = (*this)(i, k);
        if (a.is_zero()) continue;
        for (std::size_t j = 0; j < other.cols_; ++j) {
          const auto& b = other(k, j);
          if (!b.is_zero()) out(i, j) += a * b;
        }
      }
    return out;
  }

  Vector<B> operator*(const Vector<B>& x) const {
    if (x.size() != cols_) throw DescriptorMismatch("matrix-vector shapes");
    Vector<B> out(rows_, Scalar<B>::zero(ring_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k)
        if (!(*this)(i, k).is_zero() && !x[k].is_zero()) out[i] += (*this)(i, k) * x[k];
    return out;
  }

  Matrix operator+(const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
      throw DescriptorMismatch("matrix shapes for sum");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += other.data_[i];
    return out;
  }

  Matrix operator-(const Matrix& other) const {
    Matrix neg = other;
    for (auto& x : neg.data_) x = -x;
    return *this + neg;
  }

  Matrix scaled(const Scalar<B>& s) const {
    Matrix out = *this;
    for (auto& x : out.data_) x = s * x;
    return out;
  }

  Matrix transpose() const {
    Matrix out(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  Matrix pow(unsigned n) const {
    Matrix result = identity(ring_, rows_), base = *this;
    while (n > 0) {
      if (n & 1) result = result * base;
      n >>= 1;
      if (n > 0) base = base * base;
    }
    return result;
  }

  bool operator==(const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) return false;
    for (std::size_t i = 0; i < data_.size(); ++i)
      if (data_[i] != other.data_[i]) return false;
    return true;
  }

  /// Smallest entry valuation (kInfinity for the zero matrix).
  std::int64_t min_valuation() const {
    std::int64_t v = kInfinity;
    for (const auto& x : data_) v = std::min(v, x.val());
    return v;
  }

  bool is_integral() const { return min_valuation() >= 0; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  /// row[target] += factor * row[source]
  void add_row_multiple(std::size_t target, std::size_t source, const Scalar<B>& factor) {
    if (factor.is_zero()) return;
    for (std::size_t j = 0; j < cols_; ++j)
      if (!(*this)(source, j).is_zero()) (*this)(target, j) += factor * (*this)(source, j);
  }

  /// col[target] += factor * col[source]
  void add_col_multiple(std::size_t target, std::size_t source, const Scalar<B>& factor) {
    if (factor.is_zero()) return;
    for (std::size_t i = 0; i < rows_; ++i)
      if (!(*this)(i, source).is_zero()) (*this)(i, target) += factor * (*this)(i, source);
  }

  void scale_row(std::size_t r, const Scalar<B>& factor) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = factor * (*this)(r, j);
  }

  void scale_col(std::size_t c, const Scalar<B>& factor) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = factor * (*this)(i, c);
  }

 private:
  RingPtr<B> ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vector<B> data_;
};

template <class B>
Matrix<B> kronecker(const Matrix<B>& a, const Matrix<B>& b) {
  Matrix<B> out(a.ring(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

/// Horizontal concatenation [a | b].
template <class B>
Matrix<B> hconcat(const Matrix<B>& a, const Matrix<B>& b) {
  if (a.rows() != b.rows()) throw DescriptorMismatch("row counts for concatenation");
  Matrix<B> out(a.ring(), a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

/// Characteristic polynomial det(xI - A) by Berkowitz's division-free
/// algorithm.  Coefficients are returned highest degree first, so the
/// result has size n + 1 and starts with 1.
template <class B>
Vector<B> characteristic_polynomial(const Matrix<B>& a) {
  if (!a.is_square()) throw DescriptorMismatch("characteristic polynomial of non-square matrix");
  const auto& ring = a.ring();
  const std::size_t n = a.rows();
  if (n == 0) return {Scalar<B>::one(ring)};
  Vector<B> poly{Scalar<B>::one(ring), -a(n - 1, n - 1)};
  for (std::size_t k = n - 1; k-- > 0;) {
    const std::size_t m = n - 1 - k;  // size of the trailing block
    // Toeplitz column: 1, -a_kk, -R C, -R A1 C, ..., -R A1^(m-1) C
    Vector<B> t{Scalar<B>::one(ring), -a(k, k)};
    Vector<B> c(m, Scalar<B>::zero(ring));
    for (std::size_t i = 0; i < m; ++i) c[i] = a(k + 1 + i, k);
    for (std::size_t step = 0; step < m; ++step) {
      Scalar<B> rc = Scalar<B>::zero(ring);
      for (std::size_t i = 0; i < m; ++i) rc += a(k, k + 1 + i) * c[i];
      t.push_back(-rc);
      Vector<B> next(m, Scalar<B>::zero(ring));
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          if (!c[j].is_zero()) next[i] += a(k + 1 + i, k + 1 + j) * c[j];
      c = std::move(next);
    }
    Vector<B> out(m + 2, Scalar<B>::zero(ring));
    for (std::size_t i = 0; i < m + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, m); ++j)
        if (i - j < t.size()) out[i] += t[i - j] * poly[j];
    poly = std::move(out);
  }
  return poly;
}

template <class B>
Scalar<B> determinant(const Matrix<B>& a) {
  auto poly = characteristic_polynomial(a);
  Scalar<B> c0 = poly.back();
  return (a.rows() % 2 == 0) ? c0 : -c0;
}

template <class B>
std::ostream& operator<<(std::ostream& os, const Matrix<B>& a) {
  os << '[';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < a.cols(); ++j) os << (j ? ", " : "") << a(i, j);
    os << ']';
  }
  return os << ']';
}

}  // namespace dagger
