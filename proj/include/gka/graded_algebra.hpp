#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gka/degree_set.hpp"
#include "gka/labeled_space.hpp"
#include "gka/subspace.hpp"

namespace gka {

/// The finite range of degrees a graded object is stored on. In Z_n this is
/// always every residue [0, n-1] and sums wrap; in Z it is [lo, hi] and sums
/// leaving the range are simply not represented.
class DegreeWindow {
 public:
  DegreeWindow() = default;

  static DegreeWindow cyclic(Degree n) {
    DegreeWindow w;
    w.group_ = GradedGroup::cyclic(n);
    w.lo_ = 0;
    w.hi_ = n - 1;
    return w;
  }
  static DegreeWindow integers(Degree lo, Degree hi) {
    if (lo > hi) throw PreconditionError("empty degree window [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
    DegreeWindow w;
    w.lo_ = lo;
    w.hi_ = hi;
    return w;
  }

  const GradedGroup& group() const { return group_; }
  bool is_cyclic() const { return group_.is_cyclic(); }
  Degree lo() const { return lo_; }
  Degree hi() const { return hi_; }
  std::size_t size() const { return static_cast<std::size_t>(hi_ - lo_ + 1); }

  bool contains(Degree d) const { return is_cyclic() || (lo_ <= d && d <= hi_); }
  Degree normalize(Degree d) const { return group_.normalize(d); }
  std::size_t index(Degree d) const {
    if (!contains(d)) throw WindowViolation("degree " + std::to_string(d) + " outside window " + to_string());
    return static_cast<std::size_t>(normalize(d) - lo_);
  }
  Degree at(std::size_t i) const { return lo_ + static_cast<Degree>(i); }

  /// a + b when it is represented in this window.
  std::optional<Degree> sum(Degree a, Degree b) const {
    const Degree s = normalize(a + b);
    if (!contains(s)) return std::nullopt;
    return s;
  }

  std::vector<Degree> degrees() const {
    std::vector<Degree> out;
    for (Degree d = lo_; d <= hi_; ++d) out.push_back(d);
    return out;
  }

  DegreeWindow shifted(Degree g) const {
    if (is_cyclic()) return *this;
    return integers(lo_ + g, hi_ + g);
  }

  std::string to_string() const {
    if (is_cyclic()) return group_.to_string();
    return "[" + std::to_string(lo_) + "," + std::to_string(hi_) + "]";
  }

  friend bool operator==(const DegreeWindow&, const DegreeWindow&) = default;

 private:
  GradedGroup group_ = GradedGroup::integers();
  Degree lo_ = 0;
  Degree hi_ = 0;
};

/// Membership of a degree of `window` in U. Over Z_n, U may be given either
/// in Z_n or as a periodic subset of Z whose period divides n.
inline bool support_contains(const DegreeSet& u, const DegreeWindow& window, Degree d) {
  if (window.is_cyclic() && !u.group().is_cyclic()) {
    if (u.is_windowed() || window.group().order() % u.period() != 0)
      throw PreconditionError("support " + u.to_string() + " is not well defined on " + window.group().to_string());
  } else if (window.is_cyclic() && u.group() != window.group()) {
    throw PreconditionError("support lives in " + u.group().to_string() + ", object is graded by " +
                            window.group().to_string());
  } else if (!window.is_cyclic() && u.group().is_cyclic()) {
    throw PreconditionError("support lives in " + u.group().to_string() + ", object is Z-graded");
  }
  return u.contains(window.normalize(d));
}

/// A graded algebra stored on a degree window. A_0 = K^k ⊕ (radical part):
/// its first k basis vectors are the orthogonal idempotents e_0..e_{k-1}.
/// mult(g, h) maps the matched tensor A_g ⊗ A_h to A_{g+h}.
template <ScalarField F>
class GradedAlgebra {
 public:
  GradedAlgebra() = default;

  GradedAlgebra(F field, DegreeWindow window, std::vector<LabeledSpace> components)
      : field_(std::move(field)), window_(std::move(window)), components_(std::move(components)) {
    if (!window_.contains(0)) throw PreconditionError("algebra window " + window_.to_string() + " must contain 0");
    if (components_.size() != window_.size())
      throw ShapeError("algebra needs one component per window degree (" + std::to_string(window_.size()) +
                       "), got " + std::to_string(components_.size()));
    k_ = components_[window_.index(0)].idempotents;
    if (k_ < 1) throw LabelError("an algebra needs at least one idempotent");
    for (std::size_t i = 0; i < components_.size(); ++i) {
      const auto& c = components_[i];
      if (c.idempotents != k_) throw LabelError("components disagree on the idempotent count");
      if (c.left_tags.size() != c.dim()) throw LabelError("algebra component " + std::to_string(window_.at(i)) +
                                                          " needs a left tag per basis vector");
      for (std::size_t b = 0; b < c.dim(); ++b)
        if (c.left_tags[b] < 0 || c.left_tags[b] >= k_ || c.right_tags[b] < 0 || c.right_tags[b] >= k_)
          throw LabelError("tag out of range in degree " + std::to_string(window_.at(i)));
    }
    const auto& a0 = component(0);
    if (a0.dim() < static_cast<std::size_t>(k_))
      throw LabelError("A_0 must start with the " + std::to_string(k_) + " idempotents");
    for (int t = 0; t < k_; ++t)
      if (a0.left_tags[t] != t || a0.right_tags[t] != t)
        throw LabelError("basis vector " + std::to_string(t) + " of A_0 must be the idempotent e_" + std::to_string(t));
    const std::size_t w = window_.size();
    tensors_.resize(w * w);
    mults_.resize(w * w);
    for (std::size_t i = 0; i < w; ++i)
      for (std::size_t j = 0; j < w; ++j) {
        const auto target = window_.sum(window_.at(i), window_.at(j));
        if (!target) continue;
        tensors_[i * w + j] = TensorBasis(components_[i], components_[j]);
        mults_[i * w + j] = Matrix<F>(field_, components_[window_.index(*target)].dim(), tensors_[i * w + j].size());
      }
    // e_t e_t = e_t.
    auto& m00 = mults_[pair_index(0, 0)];
    const auto& t00 = tensors_[pair_index(0, 0)];
    for (int t = 0; t < k_; ++t) m00->operator()(t, t00.index(t, t)) = field_.one();
  }

  const F& field() const { return field_; }
  const DegreeWindow& window() const { return window_; }
  const GradedGroup& group() const { return window_.group(); }
  int idempotents() const { return k_; }

  const LabeledSpace& component(Degree d) const { return components_[window_.index(d)]; }
  const std::vector<LabeledSpace>& components() const { return components_; }
  std::size_t dim(Degree d) const { return window_.contains(d) ? component(d).dim() : 0; }
  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> out;
    for (const auto& c : components_) out.push_back(c.dim());
    return out;
  }

  bool has_product(Degree g, Degree h) const {
    return window_.contains(g) && window_.contains(h) && window_.sum(g, h).has_value();
  }
  const TensorBasis& tensor(Degree g, Degree h) const { return tensors_[checked_pair(g, h)]; }
  const Matrix<F>& mult(Degree g, Degree h) const { return *mults_[checked_pair(g, h)]; }

  void set_mult(Degree g, Degree h, Matrix<F> m) {
    auto& slot = mults_[checked_pair(g, h)];
    if (m.rows() != slot->rows() || m.cols() != slot->cols())
      throw ShapeError("mult(" + std::to_string(g) + "," + std::to_string(h) + ") must be " +
                       std::to_string(slot->rows()) + "x" + std::to_string(slot->cols()));
    slot = std::move(m);
  }

  /// The unit e_0 + ... + e_{k-1} in A_0.
  Vector<F> unit() const {
    Vector<F> u(component(0).dim(), field_.zero());
    for (int t = 0; t < k_; ++t) u[t] = field_.one();
    return u;
  }

  /// Product of basis vector i of A_g with basis vector j of A_h.
  Vector<F> basis_product(Degree g, std::size_t i, Degree h, std::size_t j) const {
    const auto& tb = tensor(g, h);
    const auto& m = mult(g, h);
    const auto c = tb.index(i, j);
    if (c == TensorBasis::npos) return Vector<F>(m.rows(), field_.zero());
    return m.column(c);
  }

  /// Product of arbitrary elements a ∈ A_g, b ∈ A_h.
  Vector<F> product(Degree g, const Vector<F>& a, Degree h, const Vector<F>& b) const {
    const auto& tb = tensor(g, h);
    Vector<F> t(tb.size(), field_.zero());
    for (std::size_t c = 0; c < tb.size(); ++c) {
      const auto [i, j] = tb.pairs()[c];
      t[c] = field_.mul(a.at(i), b.at(j));
    }
    return mult(g, h).apply(t);
  }

  friend bool operator==(const GradedAlgebra& a, const GradedAlgebra& b) {
    if (!(a.field_ == b.field_) || a.window_ != b.window_ || a.components_ != b.components_) return false;
    for (std::size_t i = 0; i < a.mults_.size(); ++i)
      if (a.mults_[i].has_value() && !(*a.mults_[i] == *b.mults_[i])) return false;
    return true;
  }

 private:
  std::size_t pair_index(Degree g, Degree h) const { return window_.index(g) * window_.size() + window_.index(h); }
  std::size_t checked_pair(Degree g, Degree h) const {
    if (!has_product(g, h))
      throw WindowViolation("product of degrees " + std::to_string(g) + " and " + std::to_string(h) +
                            " is not represented on window " + window_.to_string());
    return pair_index(g, h);
  }

  F field_{};
  DegreeWindow window_;
  std::vector<LabeledSpace> components_;
  int k_ = 1;
  std::vector<TensorBasis> tensors_;
  std::vector<std::optional<Matrix<F>>> mults_;
};

template <ScalarField F>
using AlgebraPtr = std::shared_ptr<const GradedAlgebra<F>>;

template <ScalarField F>
AlgebraPtr<F> share(GradedAlgebra<F> a) {
  return std::make_shared<const GradedAlgebra<F>>(std::move(a));
}

namespace detail {

inline std::string degree_list(std::initializer_list<Degree> ds) {
  std::string s = "(";
  bool first = true;
  for (auto d : ds) {
    s += (first ? "" : ",") + std::to_string(d);
    first = false;
  }
  return s + ")";
}

template <ScalarField F>
bool vec_eq(const F& f, const Vector<F>& a, const Vector<F>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!f.eq(a[i], b[i])) return false;
  return true;
}

/// Σ_q v_q · (b_i b_q) for basis i of A_g and v ∈ A_h.
template <ScalarField F>
Vector<F> left_basis_times(const GradedAlgebra<F>& a, Degree g, std::size_t i, Degree h, const Vector<F>& v) {
  const auto& f = a.field();
  const auto& tb = a.tensor(g, h);
  const auto& m = a.mult(g, h);
  Vector<F> out(m.rows(), f.zero());
  for (std::size_t q = 0; q < v.size(); ++q) {
    if (f.is_zero(v[q])) continue;
    const auto c = tb.index(i, q);
    if (c == TensorBasis::npos) continue;
    for (std::size_t p = 0; p < m.rows(); ++p)
      if (!f.is_zero(m(p, c))) out[p] = f.add(out[p], f.mul(v[q], m(p, c)));
  }
  return out;
}

/// Σ_p v_p · (b_p b_k) for v ∈ A_g and basis k of A_h.
template <ScalarField F>
Vector<F> right_basis_times(const GradedAlgebra<F>& a, Degree g, const Vector<F>& v, Degree h, std::size_t k) {
  const auto& f = a.field();
  const auto& tb = a.tensor(g, h);
  const auto& m = a.mult(g, h);
  Vector<F> out(m.rows(), f.zero());
  for (std::size_t p = 0; p < v.size(); ++p) {
    if (f.is_zero(v[p])) continue;
    const auto c = tb.index(p, k);
    if (c == TensorBasis::npos) continue;
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (!f.is_zero(m(r, c))) out[r] = f.add(out[r], f.mul(v[p], m(r, c)));
  }
  return out;
}

}  // namespace detail

/// Checks tag compatibility, the unit law, and associativity on every triple
/// whose partial sums stay in the window. Witness: the failing degree triple.
template <ScalarField F>
Verdict validate_algebra(const GradedAlgebra<F>& a) {
  const auto& f = a.field();
  const auto& w = a.window();
  Verdict v;
  v.window_certified = !w.is_cyclic();
  auto fail = [&](Degree x, Degree y, Degree z, std::string why) {
    v.holds = false;
    v.witness = {x, y, z};
    v.detail = std::move(why);
    return v;
  };
  const auto degs = w.degrees();

  for (auto g : degs)
    for (auto h : degs) {
      if (!a.has_product(g, h)) continue;
      const auto& tb = a.tensor(g, h);
      const auto& m = a.mult(g, h);
      const auto& cg = a.component(g);
      const auto& ch = a.component(h);
      const auto& ct = a.component(*w.sum(g, h));
      for (std::size_t c = 0; c < tb.size(); ++c) {
        const auto [i, j] = tb.pairs()[c];
        for (std::size_t p = 0; p < m.rows(); ++p)
          if (!f.is_zero(m(p, c)) && (ct.left_tags[p] != cg.left_tags[i] || ct.right_tags[p] != ch.right_tags[j]))
            return fail(g, h, 0, "product " + detail::degree_list({g, h}) + " does not respect idempotent tags");
      }
    }

  for (auto g : degs) {
    const auto& cg = a.component(g);
    for (std::size_t i = 0; i < cg.dim(); ++i) {
      Vector<F> basis(cg.dim(), f.zero());
      basis[i] = f.one();
      Vector<F> e_left(a.dim(0), f.zero());
      e_left[cg.left_tags[i]] = f.one();
      Vector<F> e_right(a.dim(0), f.zero());
      e_right[cg.right_tags[i]] = f.one();
      if (!detail::vec_eq(f, a.product(0, e_left, g, basis), basis))
        return fail(0, g, 0, "left unit law fails in degree " + std::to_string(g));
      if (!detail::vec_eq(f, a.product(g, basis, 0, e_right), basis))
        return fail(g, 0, 0, "right unit law fails in degree " + std::to_string(g));
    }
  }

  for (auto g : degs)
    for (auto h : degs) {
      if (!a.has_product(g, h)) continue;
      const Degree gh = *w.sum(g, h);
      for (auto l : degs) {
        if (!a.has_product(h, l) || !a.has_product(gh, l)) continue;
        const Degree hl = *w.sum(h, l);
        if (!a.has_product(g, hl)) continue;
        const auto& tgh = a.tensor(g, h);
        const auto& mgh = a.mult(g, h);
        const auto& thl = a.tensor(h, l);
        const auto& mhl = a.mult(h, l);
        for (std::size_t i = 0; i < a.dim(g); ++i)
          for (std::size_t j = 0; j < a.dim(h); ++j) {
            const auto cij = tgh.index(i, j);
            if (cij == TensorBasis::npos) continue;
            const auto bij = mgh.column(cij);
            for (std::size_t kk = 0; kk < a.dim(l); ++kk) {
              const auto cjk = thl.index(j, kk);
              if (cjk == TensorBasis::npos) continue;
              const auto lhs = detail::right_basis_times(a, gh, bij, l, kk);
              const auto rhs = detail::left_basis_times(a, g, i, hl, mhl.column(cjk));
              if (!detail::vec_eq(f, lhs, rhs))
                return fail(g, h, l, "associativity fails on degrees " + detail::degree_list({g, h, l}));
            }
          }
      }
    }
  return v;
}

/// Structural hypotheses recorded on an algebra.
struct AlgebraFlags {
  bool positively_graded = false;
  bool generated_in_01 = false;
  bool degree0_semisimple = false;
};

/// Z-graded with nothing in negative degrees.
template <ScalarField F>
bool is_positively_graded(const GradedAlgebra<F>& a) {
  if (a.window().is_cyclic()) return false;
  for (Degree d = a.window().lo(); d < 0; ++d)
    if (a.dim(d) != 0) return false;
  return true;
}

/// A_0 is exactly the split semisimple K^k.
template <ScalarField F>
bool is_degree0_semisimple(const GradedAlgebra<F>& a) {
  return a.dim(0) == static_cast<std::size_t>(a.idempotents());
}

/// mult(1, i-1) is onto A_i for 2 <= i <= top of the window.
template <ScalarField F>
bool is_generated_in_01(const GradedAlgebra<F>& a) {
  if (!is_positively_graded(a)) return false;
  for (Degree i = 2; i <= a.window().hi(); ++i)
    if (rank(a.mult(1, i - 1)) != a.dim(i)) return false;
  return true;
}

template <ScalarField F>
AlgebraFlags algebra_flags(const GradedAlgebra<F>& a) {
  return {is_positively_graded(a), is_generated_in_01(a), is_degree0_semisimple(a)};
}

/// Degrees u > 0 where A_u is not spanned by products of lower positive
/// degrees. Equations in these degrees (plus degree 0) determine A-linearity.
template <ScalarField F>
std::vector<Degree> generator_degrees(const GradedAlgebra<F>& a) {
  std::vector<Degree> out;
  if (!is_positively_graded(a)) {
    for (auto d : a.window().degrees())
      if (d != 0) out.push_back(d);
    return out;
  }
  const auto& f = a.field();
  for (Degree u = 1; u <= a.window().hi(); ++u) {
    if (a.dim(u) == 0) continue;
    std::vector<Vector<F>> products;
    for (Degree u1 = 1; u1 < u; ++u1) {
      const auto& m = a.mult(u1, u - u1);
      for (std::size_t c = 0; c < m.cols(); ++c) products.push_back(m.column(c));
    }
    if (Subspace<F>::span(f, a.dim(u), products).dim() != a.dim(u)) out.push_back(u);
  }
  return out;
}

/// A_U: components outside U removed, mult(u, v) kept when u+v ∈ U and
/// zero otherwise. U need not be ring-supporting.
template <ScalarField F>
GradedAlgebra<F> kill_support_algebra(const GradedAlgebra<F>& a, const DegreeSet& u) {
  const auto& w = a.window();
  if (!support_contains(u, w, 0)) throw PreconditionError("killing needs 0 ∈ U, got " + u.to_string());
  std::vector<LabeledSpace> comps;
  std::vector<bool> keep;
  for (auto d : w.degrees()) {
    keep.push_back(support_contains(u, w, d));
    if (keep.back()) {
      comps.push_back(a.component(d));
    } else {
      LabeledSpace empty;
      empty.idempotents = a.idempotents();
      comps.push_back(empty);
    }
  }
  GradedAlgebra<F> out(a.field(), w, std::move(comps));
  for (auto g : w.degrees())
    for (auto h : w.degrees()) {
      if (!a.has_product(g, h)) continue;
      const Degree t = *w.sum(g, h);
      if (keep[w.index(g)] && keep[w.index(h)] && keep[w.index(t)]) out.set_mult(g, h, a.mult(g, h));
    }
  return out;
}

/// A_U together with the algebra and support it came from.
template <ScalarField F>
struct KilledAlgebra {
  AlgebraPtr<F> base;
  DegreeSet support;
  AlgebraPtr<F> algebra;
};

template <ScalarField F>
KilledAlgebra<F> kill_support(AlgebraPtr<F> a, const DegreeSet& u) {
  auto killed = share(kill_support_algebra(*a, u));
  return {std::move(a), u, std::move(killed)};
}

}  // namespace gka
