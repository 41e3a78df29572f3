#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gka/errors.hpp"
#include "gka/field.hpp"

namespace gka {

template <ScalarField F>
using Vector = std::vector<typename F::value_type>;

/// Dense row-major matrix over a field. Acts on column vectors: y = M x,
/// so an m x n matrix is a linear map K^n -> K^m. 0 x k and k x 0 are valid.
template <ScalarField F>
class Matrix {
 public:
  using value_type = typename F::value_type;

  Matrix() = default;
  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  static Matrix identity(const F& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  /// Builds a matrix from row vectors of equal length.
  static Matrix from_rows(const F& field, std::size_t cols, const std::vector<Vector<F>>& rows) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw ShapeError("row length mismatch in from_rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<value_type> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const value_type> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  Vector<F> row_vector(std::size_t i) const { return Vector<F>(row(i).begin(), row(i).end()); }
  Vector<F> column(std::size_t j) const {
    Vector<F> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }
  void set_column(std::size_t j, const Vector<F>& v) {
    if (v.size() != rows_) throw ShapeError("column length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!field_.is_zero(x)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Vector<F> apply(const Vector<F>& x) const {
    if (x.size() != cols_) throw ShapeError("apply: vector has " + std::to_string(x.size()) +
                                            " entries, matrix has " + std::to_string(cols_) + " columns");
    Vector<F> y(rows_, field_.zero());
    for (std::size_t j = 0; j < cols_; ++j) {
      if (field_.is_zero(x[j])) continue;
      for (std::size_t i = 0; i < rows_; ++i) {
        const auto& a = (*this)(i, j);
        if (!field_.is_zero(a)) y[i] = field_.add(y[i], field_.mul(a, x[j]));
      }
    }
    return y;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw ShapeError("matrix product shape mismatch");
    const F& f = a.field_;
    Matrix c(f, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const auto& aik = a(i, k);
        if (f.is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const auto& bkj = b(k, j);
          if (!f.is_zero(bkj)) c(i, j) = f.add(c(i, j), f.mul(aik, bkj));
        }
      }
    return c;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("matrix sum shape mismatch");
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] = a.field_.add(a.data_[k], b.data_[k]);
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("matrix difference shape mismatch");
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] = a.field_.sub(a.data_[k], b.data_[k]);
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || !(a.field_ == b.field_)) return false;
    for (std::size_t k = 0; k < a.data_.size(); ++k)
      if (!a.field_.eq(a.data_[k], b.data_[k])) return false;
    return true;
  }

 private:
  F field_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<value_type> data_;
};

/// Reduces `m` in place to reduced row echelon form and drops zero rows.
/// Returns the pivot column of each remaining row.
template <ScalarField F>
std::vector<std::size_t> row_reduce(Matrix<F>& m) {
  const F& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = r;
    while (sel < m.rows() && f.is_zero(m(sel, c))) ++sel;
    if (sel == m.rows()) continue;
    if (sel != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(r, j));
    const auto inv = f.div(f.one(), m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || f.is_zero(m(i, c))) continue;
      const auto factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!f.is_zero(m(r, j))) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix<F> trimmed(f, r, m.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) trimmed(i, j) = m(i, j);
  m = std::move(trimmed);
  return pivots;
}

template <ScalarField F>
std::size_t rank(Matrix<F> m) {
  return row_reduce(m).size();
}

/// Square-matrix invertibility by elimination.
template <ScalarField F>
bool is_invertible(const Matrix<F>& m) {
  return m.rows() == m.cols() && rank(m) == m.rows();
}

}  // namespace gka
