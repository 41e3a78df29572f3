#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gka/graded_algebra.hpp"
#include "gka/subsets.hpp"

namespace gka {

/// A graded right module over a GradedAlgebra, stored on its own window.
/// Components carry right tags only; action(s, u) maps the matched tensor
/// M_s ⊗ A_u to M_{s+u} whenever s, s+u lie in the module window.
template <ScalarField F>
class GradedModule {
 public:
  GradedModule() = default;

  GradedModule(AlgebraPtr<F> algebra, DegreeWindow window, std::vector<LabeledSpace> components)
      : algebra_(std::move(algebra)), window_(std::move(window)), components_(std::move(components)) {
    if (!algebra_) throw PreconditionError("module needs an algebra");
    if (window_.group() != algebra_->group())
      throw PreconditionError("module window " + window_.to_string() + " is not graded like the algebra");
    if (components_.size() != window_.size())
      throw ShapeError("module needs one component per window degree (" + std::to_string(window_.size()) +
                       "), got " + std::to_string(components_.size()));
    const int k = algebra_->idempotents();
    for (std::size_t i = 0; i < components_.size(); ++i) {
      auto& c = components_[i];
      c.left_tags.clear();
      if (c.idempotents != k) throw LabelError("module component idempotent count differs from the algebra's");
      for (auto t : c.right_tags)
        if (t < 0 || t >= k) throw LabelError("tag out of range in module degree " + std::to_string(window_.at(i)));
    }
    const std::size_t mw = window_.size(), aw = algebra_->window().size();
    tensors_.resize(mw * aw);
    actions_.resize(mw * aw);
    for (std::size_t i = 0; i < mw; ++i)
      for (std::size_t j = 0; j < aw; ++j) {
        const auto target = window_.sum(window_.at(i), algebra_->window().at(j));
        if (!target) continue;
        tensors_[i * aw + j] = TensorBasis(components_[i], algebra_->components()[j]);
        actions_[i * aw + j] = Matrix<F>(field(), components_[window_.index(*target)].dim(), tensors_[i * aw + j].size());
      }
    // x · e_{tag(x)} = x.
    for (std::size_t i = 0; i < mw; ++i) {
      const auto& tb = tensors_[i * aw + algebra_->window().index(0)];
      auto& m = *actions_[i * aw + algebra_->window().index(0)];
      for (std::size_t x = 0; x < components_[i].dim(); ++x)
        m(x, tb.index(x, static_cast<std::size_t>(components_[i].right_tags[x]))) = field().one();
    }
  }

  const AlgebraPtr<F>& algebra_ptr() const { return algebra_; }
  const GradedAlgebra<F>& algebra() const { return *algebra_; }
  const F& field() const { return algebra_->field(); }
  const DegreeWindow& window() const { return window_; }
  const std::vector<LabeledSpace>& components() const { return components_; }
  const LabeledSpace& component(Degree d) const { return components_[window_.index(d)]; }
  std::size_t dim(Degree d) const { return window_.contains(d) ? component(d).dim() : 0; }
  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> out;
    for (const auto& c : components_) out.push_back(c.dim());
    return out;
  }
  std::size_t total_dim() const {
    std::size_t n = 0;
    for (const auto& c : components_) n += c.dim();
    return n;
  }

  bool has_action(Degree s, Degree u) const {
    return window_.contains(s) && algebra_->window().contains(u) && window_.sum(s, u).has_value();
  }
  Degree target(Degree s, Degree u) const { return *window_.sum(s, u); }
  const TensorBasis& tensor(Degree s, Degree u) const { return tensors_[checked_pair(s, u)]; }
  const Matrix<F>& action(Degree s, Degree u) const { return *actions_[checked_pair(s, u)]; }

  void set_action(Degree s, Degree u, Matrix<F> m) {
    auto& slot = actions_[checked_pair(s, u)];
    if (m.rows() != slot->rows() || m.cols() != slot->cols())
      throw ShapeError("action(" + std::to_string(s) + "," + std::to_string(u) + ") must be " +
                       std::to_string(slot->rows()) + "x" + std::to_string(slot->cols()));
    slot = std::move(m);
  }

  /// x · b_c for x ∈ M_s and basis vector c of A_u.
  Vector<F> act(Degree s, const Vector<F>& x, Degree u, std::size_t c) const {
    const auto& f = field();
    const auto& tb = tensor(s, u);
    const auto& m = action(s, u);
    Vector<F> out(m.rows(), f.zero());
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (f.is_zero(x[i])) continue;
      const auto col = tb.index(i, c);
      if (col == TensorBasis::npos) continue;
      for (std::size_t p = 0; p < m.rows(); ++p)
        if (!f.is_zero(m(p, col))) out[p] = f.add(out[p], f.mul(x[i], m(p, col)));
    }
    return out;
  }

  /// The linear map M_s -> M_{s+u}, x ↦ x · b_c.
  Matrix<F> right_mult(Degree s, Degree u, std::size_t c) const {
    const auto& tb = tensor(s, u);
    const auto& m = action(s, u);
    Matrix<F> r(field(), m.rows(), dim(s));
    for (std::size_t i = 0; i < dim(s); ++i) {
      const auto col = tb.index(i, c);
      if (col == TensorBasis::npos) continue;
      for (std::size_t p = 0; p < m.rows(); ++p) r(p, i) = m(p, col);
    }
    return r;
  }

  friend bool operator==(const GradedModule& a, const GradedModule& b) {
    if (a.window_ != b.window_ || a.components_ != b.components_) return false;
    if (a.algebra_ != b.algebra_ && !(*a.algebra_ == *b.algebra_)) return false;
    for (std::size_t i = 0; i < a.actions_.size(); ++i)
      if (a.actions_[i].has_value() && !(*a.actions_[i] == *b.actions_[i])) return false;
    return true;
  }

 private:
  std::size_t checked_pair(Degree s, Degree u) const {
    if (!has_action(s, u))
      throw WindowViolation("action of degree " + std::to_string(u) + " on module degree " + std::to_string(s) +
                            " is not represented");
    return window_.index(s) * algebra_->window().size() + algebra_->window().index(u);
  }

  AlgebraPtr<F> algebra_;
  DegreeWindow window_;
  std::vector<LabeledSpace> components_;
  std::vector<TensorBasis> tensors_;
  std::vector<std::optional<Matrix<F>>> actions_;
};

/// Iterates over (s, u) pairs with a represented action.
template <ScalarField F, typename Fn>
void for_each_action(const GradedModule<F>& m, Fn&& fn) {
  for (auto s : m.window().degrees())
    for (auto u : m.algebra().window().degrees())
      if (m.has_action(s, u)) fn(s, u);
}

/// Module associativity, unit law and tag compatibility. Witness (s, u, v).
template <ScalarField F>
Verdict validate_module(const GradedModule<F>& m) {
  const auto& f = m.field();
  const auto& a = m.algebra();
  Verdict v;
  v.window_certified = !m.window().is_cyclic();
  auto fail = [&](Degree x, Degree y, Degree z, std::string why) {
    v.holds = false;
    v.witness = {x, y, z};
    v.detail = std::move(why);
    return v;
  };
  bool bad = false;
  for_each_action(m, [&](Degree s, Degree u) {
    if (bad) return;
    const auto& tb = m.tensor(s, u);
    const auto& act = m.action(s, u);
    const auto& ct = m.component(m.target(s, u));
    const auto& cu = a.component(u);
    for (std::size_t c = 0; c < tb.size() && !bad; ++c)
      for (std::size_t p = 0; p < act.rows(); ++p)
        if (!f.is_zero(act(p, c)) && ct.right_tags[p] != cu.right_tags[tb.pairs()[c].second]) {
          fail(s, u, 0, "action " + detail::degree_list({s, u}) + " does not respect idempotent tags");
          bad = true;
          break;
        }
  });
  if (bad) return v;

  for (auto s : m.window().degrees()) {
    const auto& cs = m.component(s);
    for (std::size_t x = 0; x < cs.dim(); ++x) {
      Vector<F> e(cs.dim(), f.zero());
      e[x] = f.one();
      if (!detail::vec_eq(f, m.act(s, e, 0, static_cast<std::size_t>(cs.right_tags[x])), e))
        return fail(s, 0, 0, "unit does not act as the identity in degree " + std::to_string(s));
    }
  }

  for (auto s : m.window().degrees())
    for (auto u : a.window().degrees()) {
      if (!m.has_action(s, u)) continue;
      const Degree su = m.target(s, u);
      for (auto w : a.window().degrees()) {
        if (!m.has_action(su, w) || !a.has_product(u, w)) continue;
        const Degree uw = *a.window().sum(u, w);
        if (!m.has_action(s, uw)) continue;
        const auto& tuw = a.tensor(u, w);
        const auto& muw = a.mult(u, w);
        for (std::size_t x = 0; x < m.dim(s); ++x) {
          Vector<F> ex(m.dim(s), f.zero());
          ex[x] = f.one();
          for (std::size_t b = 0; b < a.dim(u); ++b) {
            const auto xb = m.act(s, ex, u, b);
            for (std::size_t c = 0; c < a.dim(w); ++c) {
              const auto lhs = m.act(su, xb, w, c);
              const auto col = tuw.index(b, c);
              Vector<F> rhs(m.dim(m.target(su, w)), f.zero());
              if (col != TensorBasis::npos) {
                const auto bc = muw.column(col);
                for (std::size_t q = 0; q < bc.size(); ++q) {
                  if (f.is_zero(bc[q])) continue;
                  const auto t = m.act(s, ex, uw, q);
                  for (std::size_t p = 0; p < t.size(); ++p) rhs[p] = f.add(rhs[p], f.mul(bc[q], t[p]));
                }
              }
              if (!detail::vec_eq(f, lhs, rhs))
                return fail(s, u, w, "module associativity fails on degrees " + detail::degree_list({s, u, w}));
            }
          }
        }
      }
    }
  return v;
}

/// A as a right module over itself, on the algebra's window.
template <ScalarField F>
GradedModule<F> regular_module(const AlgebraPtr<F>& a) {
  GradedModule<F> m(a, a->window(), a->components());
  for_each_action(m, [&](Degree s, Degree u) { m.set_action(s, u, a->mult(s, u)); });
  return m;
}

/// The zero module on a window.
template <ScalarField F>
GradedModule<F> zero_module(const AlgebraPtr<F>& a, const DegreeWindow& w) {
  LabeledSpace empty;
  empty.idempotents = a->idempotents();
  return GradedModule<F>(a, w, std::vector<LabeledSpace>(w.size(), empty));
}

/// A free module ⊕_i e_{tag_i} A[-m_i] on generators (m_i, tag_i).
/// `origin[d][p]` names the generator and algebra basis index of basis
/// vector p in degree d. Degrees below the algebra window count as zero,
/// which presumes a positively graded algebra.
template <ScalarField F>
struct FreeModule {
  GradedModule<F> module;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> origin;
};

template <ScalarField F>
FreeModule<F> free_module(const AlgebraPtr<F>& a, const std::vector<std::pair<Degree, int>>& generators,
                          const DegreeWindow& w) {
  const auto& aw = a->window();
  auto algebra_degree = [&](Degree t, Degree m) -> std::optional<Degree> {
    const Degree d = aw.normalize(t - m);
    if (aw.contains(d)) return d;
    if (d < aw.lo()) return std::nullopt;
    throw PreconditionError("free module generator in degree " + std::to_string(m) + " reaches degree " +
                            std::to_string(t) + ", beyond the algebra window " + aw.to_string());
  };
  std::vector<LabeledSpace> comps;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> origin;
  // position[d][g][b] = basis index in degree d of generator g times b.
  std::vector<std::vector<std::vector<std::size_t>>> position;
  for (auto t : w.degrees()) {
    LabeledSpace c;
    c.idempotents = a->idempotents();
    std::vector<std::pair<std::size_t, std::size_t>> orig;
    std::vector<std::vector<std::size_t>> pos(generators.size());
    for (std::size_t g = 0; g < generators.size(); ++g) {
      const auto [m, tag] = generators[g];
      if (tag < 0 || tag >= a->idempotents()) throw LabelError("generator tag out of range");
      const auto d = algebra_degree(t, m);
      if (!d) continue;
      const auto& ad = a->component(*d);
      pos[g].assign(ad.dim(), TensorBasis::npos);
      for (std::size_t b = 0; b < ad.dim(); ++b) {
        if (ad.left_tags[b] != tag) continue;
        pos[g][b] = orig.size();
        orig.emplace_back(g, b);
        c.right_tags.push_back(ad.right_tags[b]);
      }
    }
    comps.push_back(std::move(c));
    origin.push_back(std::move(orig));
    position.push_back(std::move(pos));
  }
  GradedModule<F> mod(a, w, std::move(comps));
  const auto& f = a->field();
  for_each_action(mod, [&](Degree s, Degree u) {
    const Degree t = mod.target(s, u);
    const auto& tb = mod.tensor(s, u);
    Matrix<F> act(f, mod.dim(t), tb.size());
    const auto si = w.index(s), ti = w.index(t);
    for (std::size_t col = 0; col < tb.size(); ++col) {
      const auto [p, c] = tb.pairs()[col];
      const auto [g, b] = origin[si][p];
      const Degree ds = aw.normalize(s - generators[g].first);
      const auto prod = a->basis_product(ds, b, u, c);
      for (std::size_t q = 0; q < prod.size(); ++q) {
        if (f.is_zero(prod[q])) continue;
        act(position[ti][g][q], col) = prod[q];
      }
    }
    mod.set_action(s, u, std::move(act));
  });
  return {std::move(mod), std::move(origin)};
}

/// A graded subspace of a module: one subspace per window degree.
template <ScalarField F>
using GradedSubspace = std::vector<Subspace<F>>;

template <ScalarField F>
GradedSubspace<F> zero_subspace(const GradedModule<F>& m) {
  GradedSubspace<F> w;
  for (auto d : m.window().degrees()) w.push_back(Subspace<F>::zero(m.field(), m.dim(d)));
  return w;
}

template <ScalarField F>
std::vector<std::size_t> subspace_dims(const GradedSubspace<F>& w) {
  std::vector<std::size_t> out;
  for (const auto& s : w) out.push_back(s.dim());
  return out;
}

/// All right-multiplication maps, indexed like the module's action pairs.
template <ScalarField F>
class RightMultTable {
 public:
  struct Entry {
    Degree s;
    Degree u;
    std::vector<Matrix<F>> maps;
  };
  explicit RightMultTable(const GradedModule<F>& m, const std::vector<Degree>* only_degrees = nullptr) {
    for_each_action(m, [&](Degree s, Degree u) {
      if (only_degrees && u != 0 && std::find(only_degrees->begin(), only_degrees->end(), u) == only_degrees->end())
        return;
      Entry e{s, u, {}};
      for (std::size_t c = 0; c < m.algebra().dim(u); ++c) e.maps.push_back(m.right_mult(s, u, c));
      entries_.push_back(std::move(e));
    });
  }
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::vector<Entry> entries_;
};

/// Least submodule containing `seed`.
template <ScalarField F>
GradedSubspace<F> generate(const GradedModule<F>& m, GradedSubspace<F> seed) {
  const RightMultTable<F> table(m);
  const auto& w = m.window();
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& e : table.entries()) {
      const auto si = w.index(e.s), ti = w.index(m.target(e.s, e.u));
      if (seed[si].is_zero()) continue;
      for (const auto& r : e.maps) {
        auto grown = sum(seed[ti], apply(r, seed[si]));
        if (grown.dim() != seed[ti].dim()) {
          seed[ti] = std::move(grown);
          changed = true;
        }
      }
    }
  }
  return seed;
}

/// Submodule generated by the components in degrees D.
template <ScalarField F>
GradedSubspace<F> generated_subspace(const GradedModule<F>& m, const DegreeSet& d) {
  auto seed = zero_subspace(m);
  for (auto g : m.window().degrees())
    if (support_contains(d, m.window(), g)) seed[m.window().index(g)] = Subspace<F>::full(m.field(), m.dim(g));
  return generate(m, std::move(seed));
}

template <ScalarField F>
bool is_generated_in(const GradedModule<F>& m, const DegreeSet& d) {
  return subspace_dims(generated_subspace(m, d)) == m.dims();
}

/// {x : R x ∈ W}.
template <ScalarField F>
Subspace<F> preimage(const Matrix<F>& r, const Subspace<F>& w) {
  if (w.dim() == w.ambient_dim()) return Subspace<F>::full(r.field(), r.cols());
  return kernel(quotient_map(w) * r);
}

/// t(N): the largest submodule supported outside S (greatest fixed point).
template <ScalarField F>
GradedSubspace<F> torsion_subspace(const GradedModule<F>& n, const DegreeSet& s) {
  const RightMultTable<F> table(n);
  const auto& w = n.window();
  GradedSubspace<F> t;
  for (auto g : w.degrees())
    t.push_back(support_contains(s, w, g) ? Subspace<F>::zero(n.field(), n.dim(g))
                                          : Subspace<F>::full(n.field(), n.dim(g)));
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& e : table.entries()) {
      const auto si = w.index(e.s), ti = w.index(n.target(e.s, e.u));
      if (t[si].is_zero()) continue;
      for (const auto& r : e.maps) {
        auto shrunk = intersect(t[si], preimage(r, t[ti]));
        if (shrunk.dim() != t[si].dim()) {
          t[si] = std::move(shrunk);
          changed = true;
        }
      }
    }
  }
  return t;
}

/// Whether every nonzero submodule meets S, i.e. t(N) = 0.
template <ScalarField F>
Verdict is_cogenerated_in(const GradedModule<F>& n, const DegreeSet& s) {
  Verdict v;
  v.window_certified = !n.window().is_cyclic();
  const auto t = torsion_subspace(n, s);
  for (std::size_t i = 0; i < t.size(); ++i)
    if (!t[i].is_zero()) {
      v.holds = false;
      const Degree d = n.window().at(i);
      v.witness = std::array<Degree, 3>{d, 0, 0};
      v.detail = "torsion in degree " + std::to_string(d);
      break;
    }
  return v;
}

/// Whether W is closed under the action.
template <ScalarField F>
bool is_submodule(const GradedModule<F>& m, const GradedSubspace<F>& w) {
  const RightMultTable<F> table(m);
  for (const auto& e : table.entries()) {
    const auto si = m.window().index(e.s), ti = m.window().index(m.target(e.s, e.u));
    for (const auto& r : e.maps)
      if (!contains(w[ti], apply(r, w[si]))) return false;
  }
  return true;
}

namespace detail {

/// Split of an A_0-stable subspace of a component into its tag blocks,
/// each stored in block coordinates.
template <ScalarField F>
struct TagSplit {
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<Subspace<F>> parts;
};

template <ScalarField F>
TagSplit<F> split_by_tags(const Subspace<F>& w, const LabeledSpace& comp) {
  TagSplit<F> out;
  std::size_t total = 0;
  for (int t = 0; t < comp.idempotents; ++t) {
    auto block = comp.right_block(t);
    std::vector<Vector<F>> rows;
    for (std::size_t i = 0; i < w.dim(); ++i) {
      Vector<F> r;
      for (auto b : block) r.push_back(w.basis()(i, b));
      rows.push_back(std::move(r));
    }
    auto part = Subspace<F>::span(w.field(), block.size(), rows);
    total += part.dim();
    out.blocks.push_back(std::move(block));
    out.parts.push_back(std::move(part));
  }
  if (total != w.dim()) throw PreconditionError("graded subspace is not stable under the idempotents");
  return out;
}

}  // namespace detail

/// A submodule W ⊆ M as a module, with inclusions W_d -> M_d.
template <ScalarField F>
struct SubmoduleResult {
  GradedModule<F> module;
  std::vector<Matrix<F>> inclusion;
};

template <ScalarField F>
SubmoduleResult<F> submodule(const GradedModule<F>& m, const GradedSubspace<F>& w) {
  const auto& f = m.field();
  const auto& win = m.window();
  std::vector<LabeledSpace> comps;
  std::vector<Matrix<F>> incl;
  std::vector<detail::TagSplit<F>> splits;
  for (auto d : win.degrees()) {
    const auto& comp = m.component(d);
    auto split = detail::split_by_tags(w[win.index(d)], comp);
    LabeledSpace c;
    c.idempotents = comp.idempotents;
    Matrix<F> inc(f, comp.dim(), w[win.index(d)].dim());
    std::size_t col = 0;
    for (int t = 0; t < comp.idempotents; ++t) {
      const auto& part = split.parts[t];
      for (std::size_t r = 0; r < part.dim(); ++r, ++col) {
        for (std::size_t b = 0; b < split.blocks[t].size(); ++b) inc(split.blocks[t][b], col) = part.basis()(r, b);
        c.right_tags.push_back(t);
      }
    }
    comps.push_back(std::move(c));
    incl.push_back(std::move(inc));
    splits.push_back(std::move(split));
  }
  GradedModule<F> sub(m.algebra_ptr(), win, std::move(comps));
  for_each_action(sub, [&](Degree s, Degree u) {
    const Degree t = sub.target(s, u);
    const auto& tb = sub.tensor(s, u);
    const auto& split = splits[win.index(t)];
    Matrix<F> act(f, sub.dim(t), tb.size());
    for (std::size_t col = 0; col < tb.size(); ++col) {
      const auto [x, c] = tb.pairs()[col];
      const auto image = m.act(s, incl[win.index(s)].column(x), u, c);
      std::size_t row = 0;
      for (int tag = 0; tag < sub.component(t).idempotents; ++tag) {
        Vector<F> proj;
        for (auto b : split.blocks[tag]) proj.push_back(image[b]);
        const auto coords = split.parts[tag].coordinates(proj);
        if (!coords) throw PreconditionError("graded subspace is not a submodule");
        for (const auto& v : *coords) act(row++, col) = v;
      }
    }
    sub.set_action(s, u, std::move(act));
  });
  return {std::move(sub), std::move(incl)};
}

/// M / W with projections M_d -> (M/W)_d and sections back.
template <ScalarField F>
struct QuotientResult {
  GradedModule<F> module;
  std::vector<Matrix<F>> projection;
  std::vector<Matrix<F>> section;
};

template <ScalarField F>
QuotientResult<F> quotient(const GradedModule<F>& m, const GradedSubspace<F>& w) {
  const auto& f = m.field();
  const auto& win = m.window();
  std::vector<LabeledSpace> comps;
  std::vector<Matrix<F>> proj, sect;
  for (auto d : win.degrees()) {
    const auto& comp = m.component(d);
    const auto split = detail::split_by_tags(w[win.index(d)], comp);
    LabeledSpace c;
    c.idempotents = comp.idempotents;
    const std::size_t qdim = comp.dim() - w[win.index(d)].dim();
    Matrix<F> p(f, qdim, comp.dim()), s(f, comp.dim(), qdim);
    std::size_t row = 0;
    for (int t = 0; t < comp.idempotents; ++t) {
      const auto q = quotient_map(split.parts[t]);
      const auto sq = quotient_section(split.parts[t]);
      const auto& block = split.blocks[t];
      for (std::size_t r = 0; r < q.rows(); ++r, ++row) {
        for (std::size_t b = 0; b < block.size(); ++b) {
          p(row, block[b]) = q(r, b);
          s(block[b], row) = sq(b, r);
        }
        c.right_tags.push_back(t);
      }
    }
    comps.push_back(std::move(c));
    proj.push_back(std::move(p));
    sect.push_back(std::move(s));
  }
  GradedModule<F> quo(m.algebra_ptr(), win, std::move(comps));
  for_each_action(quo, [&](Degree s, Degree u) {
    const Degree t = quo.target(s, u);
    const auto& tb = quo.tensor(s, u);
    Matrix<F> act(f, quo.dim(t), tb.size());
    for (std::size_t col = 0; col < tb.size(); ++col) {
      const auto [x, c] = tb.pairs()[col];
      const auto image = proj[win.index(t)].apply(m.act(s, sect[win.index(s)].column(x), u, c));
      act.set_column(col, image);
    }
    quo.set_action(s, u, std::move(act));
  });
  return {std::move(quo), std::move(proj), std::move(sect)};
}

template <ScalarField F>
GradedModule<F> generated_submodule(const GradedModule<F>& m, const DegreeSet& d) {
  return submodule(m, generated_subspace(m, d)).module;
}

template <ScalarField F>
GradedModule<F> torsion_submodule(const GradedModule<F>& n, const DegreeSet& s) {
  return submodule(n, torsion_subspace(n, s)).module;
}

/// N / t(N).
template <ScalarField F>
GradedModule<F> torsion_free_quotient(const GradedModule<F>& n, const DegreeSet& s) {
  return quotient(n, torsion_subspace(n, s)).module;
}

/// M_S over A_U. Requires (S, U) right modular; `killed` must be
/// kill_support(M.algebra, U).
template <ScalarField F>
GradedModule<F> kill_support_module(const GradedModule<F>& m, const DegreeSet& s, const KilledAlgebra<F>& killed) {
  const Verdict modular = is_right_modular(s, killed.support);
  if (!modular.holds)
    throw PreconditionError("(S,U) = (" + s.to_string() + "," + killed.support.to_string() +
                            ") is not right modular");
  if (killed.base != m.algebra_ptr() && !(*killed.base == m.algebra()))
    throw PreconditionError("killed algebra does not come from the module's algebra");
  const auto& win = m.window();
  const auto& u = killed.support;
  std::vector<LabeledSpace> comps;
  std::vector<bool> keep;
  for (auto d : win.degrees()) {
    keep.push_back(support_contains(s, win, d));
    if (keep.back()) {
      comps.push_back(m.component(d));
    } else {
      LabeledSpace empty;
      empty.idempotents = m.algebra().idempotents();
      comps.push_back(empty);
    }
  }
  GradedModule<F> out(killed.algebra, win, std::move(comps));
  for_each_action(out, [&](Degree x, Degree a) {
    const Degree t = out.target(x, a);
    if (keep[win.index(x)] && keep[win.index(t)] && support_contains(u, killed.algebra->window(), a))
      out.set_action(x, a, m.action(x, a));
  });
  return out;
}

template <ScalarField F>
GradedModule<F> kill_support_module(const GradedModule<F>& m, const DegreeSet& s, const DegreeSet& u) {
  return kill_support_module(m, s, kill_support(m.algebra_ptr(), u));
}

/// shift(M, g)_h = M_{h-g}; the window moves by g.
template <ScalarField F>
GradedModule<F> shift_module(const GradedModule<F>& m, Degree g) {
  const auto& win = m.window();
  const auto nw = win.shifted(g);
  std::vector<LabeledSpace> comps;
  for (auto d : nw.degrees()) comps.push_back(m.component(win.normalize(d - g)));
  GradedModule<F> out(m.algebra_ptr(), nw, std::move(comps));
  for_each_action(out, [&](Degree s, Degree u) { out.set_action(s, u, m.action(win.normalize(s - g), u)); });
  return out;
}

namespace detail {

/// Incremental echelon form: keeps each stored row reduced against the
/// pivots of earlier rows, so new rows reduce in one pass.
template <ScalarField F>
class EchelonBuilder {
 public:
  EchelonBuilder(F field, std::size_t cols) : f_(std::move(field)), cols_(cols) {}

  void add(Vector<F> row) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const auto c = row[pivots_[k]];
      if (f_.is_zero(c)) continue;
      const auto& r = rows_[k];
      for (std::size_t j = pivots_[k]; j < cols_; ++j)
        if (!f_.is_zero(r[j])) row[j] = f_.sub(row[j], f_.mul(c, r[j]));
    }
    std::size_t p = 0;
    while (p < cols_ && f_.is_zero(row[p])) ++p;
    if (p == cols_) return;
    const auto inv = f_.div(f_.one(), row[p]);
    for (std::size_t j = p; j < cols_; ++j) row[j] = f_.mul(row[j], inv);
    rows_.push_back(std::move(row));
    pivots_.push_back(p);
  }

  std::size_t rank() const { return rows_.size(); }
  bool full() const { return rows_.size() == cols_; }
  Matrix<F> matrix() const { return Matrix<F>::from_rows(f_, cols_, rows_); }

 private:
  F f_;
  std::size_t cols_;
  std::vector<Vector<F>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace detail

/// Degree-0 module maps M -> N on a common window, as a solution space.
/// offsets[i] locates f_{d_i} (row-major dim N_d x dim M_d) in a solution.
template <ScalarField F>
struct HomSpace {
  std::vector<std::size_t> offsets;
  std::size_t unknowns = 0;
  Subspace<F> solutions;

  std::size_t dim() const { return solutions.dim(); }
};

template <ScalarField F>
HomSpace<F> hom_space(const GradedModule<F>& m, const GradedModule<F>& n) {
  if (m.window() != n.window()) throw PreconditionError("hom_space needs modules on the same window");
  if (m.algebra_ptr() != n.algebra_ptr() && !(m.algebra() == n.algebra()))
    throw PreconditionError("hom_space needs modules over the same algebra");
  const auto& f = m.field();
  const auto& win = m.window();
  HomSpace<F> h;
  for (auto d : win.degrees()) {
    h.offsets.push_back(h.unknowns);
    h.unknowns += n.dim(d) * m.dim(d);
  }
  detail::EchelonBuilder<F> eqs(f, h.unknowns);
  const auto gens = generator_degrees(m.algebra());
  const RightMultTable<F> tm(m, &gens), tn(n, &gens);
  for (std::size_t e = 0; e < tm.entries().size() && !eqs.full(); ++e) {
    const auto& em = tm.entries()[e];
    const auto& en = tn.entries()[e];
    const Degree s = em.s, t = m.target(em.s, em.u);
    const std::size_t os = h.offsets[win.index(s)], ot = h.offsets[win.index(t)];
    const std::size_t ms = m.dim(s), mt = m.dim(t), ns = n.dim(s), nt = n.dim(t);
    // F_t R^M - R^N F_s = 0, entry (p, i).
    for (std::size_t c = 0; c < em.maps.size(); ++c) {
      const auto& rm = em.maps[c];
      const auto& rn = en.maps[c];
      for (std::size_t p = 0; p < nt; ++p)
        for (std::size_t i = 0; i < ms; ++i) {
          Vector<F> row(h.unknowns, f.zero());
          bool any = false;
          for (std::size_t q = 0; q < mt; ++q)
            if (!f.is_zero(rm(q, i))) {
              auto& x = row[ot + p * mt + q];
              x = f.add(x, rm(q, i));
              any = true;
            }
          for (std::size_t r = 0; r < ns; ++r)
            if (!f.is_zero(rn(p, r))) {
              auto& x = row[os + r * ms + i];
              x = f.sub(x, rn(p, r));
              any = true;
            }
          if (any) eqs.add(std::move(row));
        }
    }
  }
  h.solutions = kernel(eqs.matrix());
  return h;
}

template <ScalarField F>
std::size_t hom_space_dim(const GradedModule<F>& m, const GradedModule<F>& n) {
  return hom_space(m, n).dim();
}

/// Degreewise maps f_d : M_d -> N_d.
template <ScalarField F>
using GradedMap = std::vector<Matrix<F>>;

template <ScalarField F>
GradedMap<F> unpack_hom(const HomSpace<F>& h, const GradedModule<F>& m, const GradedModule<F>& n,
                        const Vector<F>& x) {
  GradedMap<F> out;
  const auto& win = m.window();
  for (auto d : win.degrees()) {
    const auto o = h.offsets[win.index(d)];
    Matrix<F> fd(m.field(), n.dim(d), m.dim(d));
    for (std::size_t p = 0; p < fd.rows(); ++p)
      for (std::size_t q = 0; q < fd.cols(); ++q) fd(p, q) = x[o + p * fd.cols() + q];
    out.push_back(std::move(fd));
  }
  return out;
}

/// f commutes with every represented action map.
template <ScalarField F>
bool is_module_map(const GradedModule<F>& m, const GradedModule<F>& n, const GradedMap<F>& maps) {
  if (m.window() != n.window() || maps.size() != m.window().size()) return false;
  const auto& win = m.window();
  for (auto d : win.degrees()) {
    const auto& fd = maps[win.index(d)];
    if (fd.rows() != n.dim(d) || fd.cols() != m.dim(d)) return false;
  }
  bool ok = true;
  for_each_action(m, [&](Degree s, Degree u) {
    if (!ok) return;
    const Degree t = m.target(s, u);
    for (std::size_t c = 0; c < m.algebra().dim(u) && ok; ++c)
      ok = maps[win.index(t)] * m.right_mult(s, u, c) == n.right_mult(s, u, c) * maps[win.index(s)];
  });
  return ok;
}

/// Searches for an isomorphism among random combinations of a hom basis.
/// Sound: any returned map is verified to be a degreewise invertible module map.
template <ScalarField F>
std::optional<GradedMap<F>> find_isomorphism(const GradedModule<F>& m, const GradedModule<F>& n, std::mt19937_64& rng,
                                             int attempts = 8) {
  if (m.window() != n.window() || m.dims() != n.dims()) return std::nullopt;
  const auto h = hom_space(m, n);
  const auto& f = m.field();
  std::uniform_int_distribution<int> coef(-50, 50);
  for (int a = 0; a < attempts; ++a) {
    Vector<F> x(h.unknowns, f.zero());
    for (std::size_t b = 0; b < h.dim(); ++b) {
      const auto c = f.from_int(coef(rng));
      for (std::size_t j = 0; j < h.unknowns; ++j) x[j] = f.add(x[j], f.mul(c, h.solutions.basis()(b, j)));
    }
    auto maps = unpack_hom(h, m, n, x);
    bool invertible = true;
    for (const auto& fd : maps)
      if (!is_invertible(fd)) {
        invertible = false;
        break;
      }
    if (invertible && is_module_map(m, n, maps)) return maps;
  }
  return std::nullopt;
}

}  // namespace gka
