#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gka/matrix.hpp"

namespace gka {

/// A subspace of K^n stored by the reduced row echelon form of a spanning
/// set. The echelon form is unique, so equality is structural.
template <ScalarField F>
class Subspace {
 public:
  Subspace() = default;

  /// Row space of `generators` (rows are vectors of K^ambient).
  static Subspace row_space(Matrix<F> generators) {
    Subspace s;
    s.field_ = generators.field();
    s.ambient_ = generators.cols();
    s.pivots_ = row_reduce(generators);
    s.basis_ = std::move(generators);
    return s;
  }

  static Subspace span(const F& field, std::size_t ambient, const std::vector<Vector<F>>& vectors) {
    return row_space(Matrix<F>::from_rows(field, ambient, vectors));
  }

  static Subspace zero(const F& field, std::size_t ambient) {
    return row_space(Matrix<F>(field, 0, ambient));
  }

  static Subspace full(const F& field, std::size_t ambient) {
    return row_space(Matrix<F>::identity(field, ambient));
  }

  const F& field() const { return field_; }
  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  const Matrix<F>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  Vector<F> basis_vector(std::size_t i) const { return basis_.row_vector(i); }

  /// Canonical representative of v modulo this subspace (zero in pivot slots).
  Vector<F> reduce(Vector<F> v) const {
    if (v.size() != ambient_) throw ShapeError("reduce: vector length mismatch");
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      const auto c = v[pivots_[i]];
      if (field_.is_zero(c)) continue;
      for (std::size_t j = pivots_[i]; j < ambient_; ++j)
        if (!field_.is_zero(basis_(i, j))) v[j] = field_.sub(v[j], field_.mul(c, basis_(i, j)));
    }
    return v;
  }

  bool contains_vector(const Vector<F>& v) const {
    for (const auto& x : reduce(v))
      if (!field_.is_zero(x)) return false;
    return true;
  }

  /// Coordinates of v in the echelon basis; nullopt when v is not in the span.
  std::optional<Vector<F>> coordinates(const Vector<F>& v) const {
    if (!contains_vector(v)) return std::nullopt;
    Vector<F> c(dim());
    for (std::size_t i = 0; i < pivots_.size(); ++i) c[i] = v[pivots_[i]];
    return c;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  F field_{};
  std::size_t ambient_ = 0;
  Matrix<F> basis_;
  std::vector<std::size_t> pivots_;
};

/// {x : M x = 0}, a subspace of K^cols.
template <ScalarField F>
Subspace<F> kernel(const Matrix<F>& m) {
  const F& f = m.field();
  Matrix<F> r = m;
  const auto pivots = row_reduce(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector<F>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector<F> v(m.cols(), f.zero());
    v[free] = f.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(r(i, free));
    basis.push_back(std::move(v));
  }
  return Subspace<F>::span(f, m.cols(), basis);
}

/// Column space of M, a subspace of K^rows.
template <ScalarField F>
Subspace<F> image(const Matrix<F>& m) {
  return Subspace<F>::row_space(m.transpose());
}

template <ScalarField F>
Subspace<F> sum(const Subspace<F>& v, const Subspace<F>& w) {
  if (v.ambient_dim() != w.ambient_dim()) throw ShapeError("sum: ambient dimension mismatch");
  Matrix<F> stacked(v.field(), v.dim() + w.dim(), v.ambient_dim());
  for (std::size_t i = 0; i < v.dim(); ++i)
    for (std::size_t j = 0; j < v.ambient_dim(); ++j) stacked(i, j) = v.basis()(i, j);
  for (std::size_t i = 0; i < w.dim(); ++i)
    for (std::size_t j = 0; j < v.ambient_dim(); ++j) stacked(v.dim() + i, j) = w.basis()(i, j);
  return Subspace<F>::row_space(std::move(stacked));
}

/// Zassenhaus: echelon form of [v | v ; w | 0]; rows with zero left half
/// span the intersection in their right half.
template <ScalarField F>
Subspace<F> intersect(const Subspace<F>& v, const Subspace<F>& w) {
  if (v.ambient_dim() != w.ambient_dim()) throw ShapeError("intersect: ambient dimension mismatch");
  const std::size_t n = v.ambient_dim();
  const F& f = v.field();
  Matrix<F> z(f, v.dim() + w.dim(), 2 * n);
  for (std::size_t i = 0; i < v.dim(); ++i)
    for (std::size_t j = 0; j < n; ++j) z(i, j) = z(i, n + j) = v.basis()(i, j);
  for (std::size_t i = 0; i < w.dim(); ++i)
    for (std::size_t j = 0; j < n; ++j) z(v.dim() + i, j) = w.basis()(i, j);
  const auto pivots = row_reduce(z);
  std::vector<Vector<F>> out;
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] < n) continue;
    out.emplace_back(z.row(i).begin() + static_cast<std::ptrdiff_t>(n), z.row(i).end());
  }
  return Subspace<F>::span(f, n, out);
}

/// W ⊆ V.
template <ScalarField F>
bool contains(const Subspace<F>& v, const Subspace<F>& w) {
  if (v.ambient_dim() != w.ambient_dim()) throw ShapeError("contains: ambient dimension mismatch");
  for (std::size_t i = 0; i < w.dim(); ++i)
    if (!v.contains_vector(w.basis_vector(i))) return false;
  return true;
}

/// Some x with M x = b, or nullopt when b is not in the image.
template <ScalarField F>
std::optional<Vector<F>> solve(const Matrix<F>& m, const Vector<F>& b) {
  if (b.size() != m.rows()) throw ShapeError("solve: right-hand side length mismatch");
  const F& f = m.field();
  Matrix<F> aug(f, m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const auto pivots = row_reduce(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  Vector<F> x(m.cols(), f.zero());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, m.cols());
  return x;
}

/// Image of the subspace V under M.
template <ScalarField F>
Subspace<F> apply(const Matrix<F>& m, const Subspace<F>& v) {
  if (v.ambient_dim() != m.cols()) throw ShapeError("apply: subspace does not live in the domain");
  std::vector<Vector<F>> images;
  images.reserve(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) images.push_back(m.apply(v.basis_vector(i)));
  return Subspace<F>::span(m.field(), m.rows(), images);
}

/// Linear map K^n -> K^n / W, using the non-pivot coordinates of the
/// reduced representative as quotient coordinates.
template <ScalarField F>
Matrix<F> quotient_map(const Subspace<F>& w) {
  const F& f = w.field();
  const std::size_t n = w.ambient_dim();
  std::vector<bool> is_pivot(n, false);
  for (auto p : w.pivots()) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  Matrix<F> q(f, free_cols.size(), n);
  for (std::size_t j = 0; j < n; ++j) {
    Vector<F> e(n, f.zero());
    e[j] = f.one();
    const auto r = w.reduce(std::move(e));
    for (std::size_t k = 0; k < free_cols.size(); ++k) q(k, j) = r[free_cols[k]];
  }
  return q;
}

/// Right inverse of quotient_map(W): embeds quotient coordinates into the
/// non-pivot slots.
template <ScalarField F>
Matrix<F> quotient_section(const Subspace<F>& w) {
  const F& f = w.field();
  const std::size_t n = w.ambient_dim();
  std::vector<bool> is_pivot(n, false);
  for (auto p : w.pivots()) is_pivot[p] = true;
  Matrix<F> s(f, n, n - w.dim());
  std::size_t k = 0;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) s(j, k++) = f.one();
  return s;
}

}  // namespace gka
