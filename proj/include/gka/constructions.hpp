#pragma once

#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gka/graded_algebra.hpp"

namespace gka {

namespace detail {

/// One basis vector of an algebra given by a global basis.
struct BasisElement {
  Degree degree = 0;
  int left = 0;
  int right = 0;
};

/// Builds an algebra from a global basis (idempotents first) and a product
/// rule returning sparse coordinates in that same global basis. Products
/// landing outside the window are dropped.
template <ScalarField F, typename Product>
GradedAlgebra<F> algebra_from_basis(const F& field, const DegreeWindow& window, int idempotents,
                                    const std::vector<BasisElement>& basis, Product&& product) {
  std::vector<LabeledSpace> comps(window.size());
  for (auto& c : comps) c.idempotents = idempotents;
  std::vector<std::size_t> local(basis.size());
  std::vector<std::vector<std::size_t>> members(window.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& b = basis[i];
    const auto w = window.index(b.degree);
    local[i] = comps[w].dim();
    comps[w].left_tags.push_back(b.left);
    comps[w].right_tags.push_back(b.right);
    members[w].push_back(i);
  }
  GradedAlgebra<F> a(field, window, std::move(comps));
  for (auto g : window.degrees())
    for (auto h : window.degrees()) {
      if (!a.has_product(g, h)) continue;
      const auto& tb = a.tensor(g, h);
      Matrix<F> m(field, a.dim(*window.sum(g, h)), tb.size());
      for (std::size_t c = 0; c < tb.size(); ++c) {
        const auto [i, j] = tb.pairs()[c];
        const auto gi = members[window.index(g)][i];
        const auto gj = members[window.index(h)][j];
        for (const auto& [k, value] : product(gi, gj)) m(local[k], c) = field.add(m(local[k], c), value);
      }
      a.set_mult(g, h, std::move(m));
    }
  return a;
}

}  // namespace detail

/// K[Z_n], Z_n-graded with one-dimensional components.
template <ScalarField F>
GradedAlgebra<F> group_algebra(Degree n, const F& field = F()) {
  const auto w = DegreeWindow::cyclic(n);
  std::vector<detail::BasisElement> basis;
  for (Degree d = 0; d < n; ++d) basis.push_back({d, 0, 0});
  return detail::algebra_from_basis(field, w, 1, basis, [&](std::size_t i, std::size_t j) {
    return std::vector<std::pair<std::size_t, typename F::value_type>>{
        {static_cast<std::size_t>(mod_floor(static_cast<Degree>(i + j), n)), field.one()}};
  });
}

/// K[x]/(x^k) with deg x = g, on a Z window containing 0, g, ..., (k-1)g.
template <ScalarField F>
GradedAlgebra<F> truncated_poly(int k, Degree g, const DegreeWindow& window, const F& field = F()) {
  if (k < 1) throw PreconditionError("truncated polynomial ring needs k >= 1");
  if (window.is_cyclic()) throw PreconditionError("truncated_poly builds a Z-graded algebra");
  std::vector<detail::BasisElement> basis;
  for (int j = 0; j < k; ++j) {
    if (!window.contains(j * g))
      throw WindowViolation("x^" + std::to_string(j) + " has degree " + std::to_string(j * g) + " outside window " +
                            window.to_string());
    basis.push_back({j * g, 0, 0});
  }
  return detail::algebra_from_basis(field, window, 1, basis, [&](std::size_t i, std::size_t j) {
    std::vector<std::pair<std::size_t, typename F::value_type>> out;
    if (i + j < static_cast<std::size_t>(k)) out.emplace_back(i + j, field.one());
    return out;
  });
}

enum class WitnessCase { iii, iv };

/// K<x,y>/(x², y², yx) with deg x = g, deg y = h; basis 1, x, y, xy.
/// Case iii needs g + h = 0 (so xy sits in degree 0); case iv needs
/// 0, g, h, g+h pairwise distinct.
template <ScalarField F>
GradedAlgebra<F> two_var_witness(WitnessCase which, Degree g, Degree h, const DegreeWindow& window,
                                 const F& field = F()) {
  if (which == WitnessCase::iii && (g + h != 0 || g == 0))
    throw PreconditionError("case iii needs deg x = -deg y ≠ 0");
  if (which == WitnessCase::iv && (g == 0 || h == 0 || g == h || g + h == 0))
    throw PreconditionError("case iv needs 0, g, h, g+h pairwise distinct");
  const std::vector<Degree> degs{0, g, h, g + h};
  std::vector<detail::BasisElement> basis;
  for (auto d : degs) {
    if (!window.contains(d)) throw WindowViolation("degree " + std::to_string(d) + " outside window " + window.to_string());
    basis.push_back({d, 0, 0});
  }
  return detail::algebra_from_basis(field, window, 1, basis, [&](std::size_t i, std::size_t j) {
    std::vector<std::pair<std::size_t, typename F::value_type>> out;
    if (i == 0) out.emplace_back(j, field.one());
    else if (j == 0) out.emplace_back(i, field.one());
    else if (i == 1 && j == 2) out.emplace_back(3, field.one());
    return out;
  });
}

struct Arrow {
  std::string name;
  int source = 0;
  int target = 0;
};

/// A linear combination of paths; a path is a sequence of arrow indices
/// composed left to right.
template <ScalarField F>
struct PathCombination {
  std::vector<std::pair<std::vector<std::size_t>, typename F::value_type>> terms;
};

/// Parses "x*y - 2*y*x + z*z" into a path combination over the named arrows.
template <ScalarField F>
PathCombination<F> parse_relation(const std::string& text, const std::vector<Arrow>& arrows, const F& field = F()) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < arrows.size(); ++i) index[arrows[i].name] = i;
  PathCombination<F> out;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& why) {
    return SchemaError("relation \"" + text + "\": " + why + " at position " + std::to_string(pos));
  };
  skip();
  if (pos == text.size()) throw fail("empty relation");
  bool first = true;
  while (pos < text.size()) {
    int sign = 1;
    skip();
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      throw fail("expected + or -");
    }
    first = false;
    long long coef = 1;
    std::vector<std::size_t> path;
    bool expect_factor = true;
    while (expect_factor) {
      skip();
      const std::size_t start = pos;
      if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (!path.empty()) throw fail("coefficient after an arrow");
        coef *= std::stoll(text.substr(start, pos - start));
      } else {
        while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
        if (start == pos) throw fail("expected an arrow name");
        const auto name = text.substr(start, pos - start);
        const auto it = index.find(name);
        if (it == index.end()) throw fail("unknown arrow '" + name + "'");
        path.push_back(it->second);
      }
      skip();
      expect_factor = pos < text.size() && text[pos] == '*';
      if (expect_factor) ++pos;
    }
    if (path.empty()) throw fail("a term needs at least one arrow");
    out.terms.emplace_back(std::move(path), field.from_int(sign * coef));
  }
  return out;
}

namespace detail {

inline std::vector<std::vector<std::size_t>> paths_of_length(int vertices, const std::vector<Arrow>& arrows, int len) {
  std::vector<std::vector<std::size_t>> out;
  if (len == 0) {
    for (int v = 0; v < vertices; ++v) out.push_back({});
    return out;
  }
  std::vector<std::vector<std::size_t>> prev;
  for (std::size_t a = 0; a < arrows.size(); ++a) prev.push_back({a});
  for (int l = 1; l < len; ++l) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& p : prev)
      for (std::size_t a = 0; a < arrows.size(); ++a)
        if (arrows[p.back()].target == arrows[a].source) {
          auto q = p;
          q.push_back(a);
          next.push_back(std::move(q));
        }
    prev = std::move(next);
  }
  return prev;
}

}  // namespace detail

/// Path algebra K Q / I on the window [0, D], graded by path length, with
/// A_0 = K^{vertices}. A path p from s to t carries tags (s, t). I is the
/// ideal generated by the given homogeneous relations, computed degreewise.
template <ScalarField F>
GradedAlgebra<F> quiver_algebra(int vertices, const std::vector<Arrow>& arrows,
                                const std::vector<PathCombination<F>>& relations, Degree top, const F& field = F()) {
  if (vertices < 1) throw PreconditionError("a quiver needs at least one vertex");
  if (top < 0) throw PreconditionError("quiver window top must be >= 0");
  for (const auto& a : arrows)
    if (a.source < 0 || a.source >= vertices || a.target < 0 || a.target >= vertices)
      throw LabelError("arrow " + a.name + " has an endpoint outside the vertex set");
  auto source = [&](const std::vector<std::size_t>& p, std::size_t vertex_if_trivial) {
    return p.empty() ? static_cast<int>(vertex_if_trivial) : arrows[p.front()].source;
  };
  auto target = [&](const std::vector<std::size_t>& p, std::size_t vertex_if_trivial) {
    return p.empty() ? static_cast<int>(vertex_if_trivial) : arrows[p.back()].target;
  };
  for (const auto& r : relations) {
    if (r.terms.empty()) throw PreconditionError("empty relation");
    for (const auto& [p, c] : r.terms)
      if (p.size() != r.terms.front().first.size()) throw PreconditionError("relations must be homogeneous");
  }

  struct Level {
    std::vector<std::vector<std::size_t>> paths;
    std::map<std::vector<std::size_t>, std::size_t> index;
    Subspace<F> ideal;
    std::vector<std::size_t> basis_paths;  // indices of paths kept as basis
  };
  std::vector<Level> levels(static_cast<std::size_t>(top) + 1);
  for (Degree l = 0; l <= top; ++l) {
    auto& lv = levels[l];
    lv.paths = detail::paths_of_length(vertices, arrows, static_cast<int>(l));
    for (std::size_t i = 0; i < lv.paths.size(); ++i)
      if (l > 0) lv.index[lv.paths[i]] = i;
    std::vector<Vector<F>> gens;
    for (const auto& r : relations) {
      const std::size_t rl = r.terms.front().first.size();
      if (rl > static_cast<std::size_t>(l) || rl == 0) continue;
      // Tag-homogeneous pieces e_s r e_t.
      std::map<std::pair<int, int>, std::vector<std::pair<std::vector<std::size_t>, typename F::value_type>>> pieces;
      for (const auto& term : r.terms)
        pieces[{arrows[term.first.front()].source, arrows[term.first.back()].target}].push_back(term);
      for (std::size_t i = 0; i + rl <= static_cast<std::size_t>(l); ++i) {
        const auto lefts = detail::paths_of_length(vertices, arrows, static_cast<int>(i));
        const auto rights = detail::paths_of_length(vertices, arrows, static_cast<int>(l - i - rl));
        for (const auto& [ends, terms] : pieces)
          for (std::size_t li = 0; li < lefts.size(); ++li) {
            if (target(lefts[li], li) != ends.first) continue;
            for (std::size_t ri = 0; ri < rights.size(); ++ri) {
              if (source(rights[ri], ri) != ends.second) continue;
              Vector<F> v(lv.paths.size(), field.zero());
              for (const auto& [p, c] : terms) {
                auto full = lefts[li];
                full.insert(full.end(), p.begin(), p.end());
                full.insert(full.end(), rights[ri].begin(), rights[ri].end());
                auto& slot = v[lv.index.at(full)];
                slot = field.add(slot, c);
              }
              gens.push_back(std::move(v));
            }
          }
      }
    }
    lv.ideal = Subspace<F>::span(field, lv.paths.size(), gens);
    std::vector<bool> pivot(lv.paths.size(), false);
    for (auto p : lv.ideal.pivots()) pivot[p] = true;
    for (std::size_t i = 0; i < lv.paths.size(); ++i)
      if (!pivot[i]) lv.basis_paths.push_back(i);
  }

  std::vector<detail::BasisElement> basis;
  std::vector<std::pair<std::size_t, std::size_t>> where;  // (level, path index)
  std::vector<std::vector<std::size_t>> global(levels.size());
  for (std::size_t l = 0; l < levels.size(); ++l) {
    global[l].assign(levels[l].paths.size(), static_cast<std::size_t>(-1));
    for (auto pi : levels[l].basis_paths) {
      const auto& p = levels[l].paths[pi];
      global[l][pi] = basis.size();
      basis.push_back({static_cast<Degree>(l), source(p, pi), target(p, pi)});
      where.emplace_back(l, pi);
    }
  }
  return detail::algebra_from_basis(
      field, DegreeWindow::integers(0, top), vertices, basis, [&](std::size_t i, std::size_t j) {
        std::vector<std::pair<std::size_t, typename F::value_type>> out;
        const auto [li, pi] = where[i];
        const auto [lj, pj] = where[j];
        const auto& p = levels[li].paths[pi];
        const auto& q = levels[lj].paths[pj];
        if (target(p, pi) != source(q, pj)) return out;
        const std::size_t l = li + lj;
        if (l >= levels.size()) return out;
        if (li == 0) return std::vector<std::pair<std::size_t, typename F::value_type>>{{j, field.one()}};
        if (lj == 0) return std::vector<std::pair<std::size_t, typename F::value_type>>{{i, field.one()}};
        auto pq = p;
        pq.insert(pq.end(), q.begin(), q.end());
        Vector<F> v(levels[l].paths.size(), field.zero());
        v[levels[l].index.at(pq)] = field.one();
        const auto r = levels[l].ideal.reduce(std::move(v));
        for (std::size_t k = 0; k < r.size(); ++k)
          if (!field.is_zero(r[k])) out.emplace_back(global[l][k], r[k]);
        return out;
      });
}

/// Quiver algebra with relations given as strings over the arrow names.
template <ScalarField F>
GradedAlgebra<F> quiver_algebra(int vertices, const std::vector<Arrow>& arrows, const std::vector<std::string>& relations,
                                Degree top, const F& field = F()) {
  std::vector<PathCombination<F>> rels;
  for (const auto& r : relations) rels.push_back(parse_relation(r, arrows, field));
  return quiver_algebra(vertices, arrows, rels, top, field);
}

/// Variable names for a one-vertex quiver: x, y, z, w, then x0, x1, ...
inline std::vector<std::string> variable_names(std::size_t n) {
  static const char* small[] = {"x", "y", "z", "w"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(n <= 4 ? small[i] : "x" + std::to_string(i));
  return out;
}

inline std::vector<Arrow> loops(std::size_t n) {
  std::vector<Arrow> out;
  for (const auto& name : variable_names(n)) out.push_back({name, 0, 0});
  return out;
}

/// Free algebra K<vars> modulo relations, one vertex, truncated at `top`.
template <ScalarField F>
GradedAlgebra<F> free_algebra_quotient(std::size_t vars, const std::vector<std::string>& relations, Degree top,
                                       const F& field = F()) {
  return quiver_algebra(1, loops(vars), relations, top, field);
}

/// Index of a word (i_1, ..., i_n) in V^{⊗n}: base-`vdim` digits, i_1 most significant.
inline std::size_t word_index(const std::vector<std::size_t>& word, std::size_t vdim) {
  std::size_t k = 0;
  for (auto i : word) k = k * vdim + i;
  return k;
}

/// A relation string over variables x, y, ... as a vector of V^{⊗n}.
template <ScalarField F>
Vector<F> relation_tensor(const std::string& text, std::size_t vdim, std::size_t n, const F& field = F()) {
  const auto rel = parse_relation(text, loops(vdim), field);
  std::size_t size = 1;
  for (std::size_t i = 0; i < n; ++i) size *= vdim;
  Vector<F> v(size, field.zero());
  for (const auto& [word, c] : rel.terms) {
    if (word.size() != n) throw PreconditionError("relation \"" + text + "\" is not of tensor degree " + std::to_string(n));
    auto& slot = v[word_index(word, vdim)];
    slot = field.add(slot, c);
  }
  return v;
}

/// Λ^! = T(V*) / (R^⊥) for Λ = T(V)/(R), R ⊆ V^{⊗n}, on the window [0, top].
/// R^⊥ is taken for the dual-basis pairing, so it is the kernel of R's basis.
template <ScalarField F>
GradedAlgebra<F> n_homogeneous_dual(std::size_t vdim, const Subspace<F>& r, std::size_t n, Degree top) {
  if (vdim < 1) throw PreconditionError("V must be nonzero");
  if (n < 1) throw PreconditionError("homogeneity degree must be >= 1");
  if (top < static_cast<Degree>(n))
    throw PreconditionError("window top " + std::to_string(top) + " is below the relation degree " + std::to_string(n));
  std::size_t size = 1;
  for (std::size_t i = 0; i < n; ++i) size *= vdim;
  if (r.ambient_dim() != size) throw ShapeError("R must live in V^{⊗n}");
  const auto& f = r.field();
  const auto perp = kernel(r.basis());
  std::vector<PathCombination<F>> rels;
  for (std::size_t i = 0; i < perp.dim(); ++i) {
    PathCombination<F> pc;
    for (std::size_t k = 0; k < size; ++k) {
      const auto& c = perp.basis()(i, k);
      if (f.is_zero(c)) continue;
      std::vector<std::size_t> word(n);
      std::size_t rest = k;
      for (std::size_t j = n; j-- > 0;) {
        word[j] = rest % vdim;
        rest /= vdim;
      }
      pc.terms.emplace_back(std::move(word), c);
    }
    rels.push_back(std::move(pc));
  }
  return quiver_algebra(1, loops(vdim), rels, top, f);
}

}  // namespace gka
