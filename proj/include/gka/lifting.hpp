#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gka/graded_module.hpp"
#include "gka/regrade.hpp"

namespace gka {

/// One failed containment Ker(μ_{m,u}) A_{v-u} ⊆ Ker(μ_{m,v}); `witness` is
/// an element of X_m ⊗ A_v on the left side that μ_{m,v} does not kill.
template <ScalarField F>
struct LiftViolation {
  Degree m = 0;
  Degree u = 0;
  Degree v = 0;
  Vector<F> witness;
};

template <ScalarField F>
struct LiftReport {
  bool liftable = true;
  bool window_certified = true;
  std::vector<LiftViolation<F>> violations;
  std::optional<GradedModule<F>> lift;
  /// Degreewise isomorphism M_S -> X, one map per window degree (empty
  /// matrices off S).
  std::optional<GradedMap<F>> isomorphism;
  bool isomorphism_certified = false;
};

/// (S:U) as an exact set; throws when it is empty.
inline DegreeSet transporter(const DegreeSet& s, const DegreeSet& u) {
  const auto q = quotient_set(s, u);
  if (!q) throw PreconditionError("(S:U) is empty for S = " + s.to_string() + ", U = " + u.to_string());
  return *q;
}

/// Hypotheses shared by the liftability criteria; throws naming the first
/// unmet flag.
template <ScalarField F>
void check_lift_hypotheses(const GradedModule<F>& x, const DegreeSet& s, const DegreeSet& u,
                           const GradedAlgebra<F>& a) {
  const auto flags = algebra_flags(a);
  if (!flags.positively_graded) throw PreconditionError("hypothesis 'positively_graded' fails for A");
  if (!flags.generated_in_01) throw PreconditionError("hypothesis 'generated_in_01' fails for A");
  if (!flags.degree0_semisimple) throw PreconditionError("hypothesis 'degree0_semisimple' fails for A");
  if (!is_right_modular(s, u).holds) throw PreconditionError("hypothesis 'right_modular' fails for (S,U)");
  if (!(x.algebra() == kill_support_algebra(a, u)))
    throw PreconditionError("hypothesis 'module over A_U' fails: X is not a module over the killed algebra");
  if (!is_generated_in(x, transporter(s, u))) throw PreconditionError("hypothesis 'generated_in_(S:U)' fails for X");
}

namespace detail {

/// Checks Ker(μ_{m,u}) A_{v-u} ⊆ Ker(μ_{m,v}) for X over A_U, where μ is
/// the action of X. Returns a witness on failure.
template <ScalarField F>
std::optional<Vector<F>> containment_failure(const GradedModule<F>& x, const GradedAlgebra<F>& a, Degree m, Degree u,
                                             Degree v) {
  const auto& f = x.field();
  const auto& tu = x.tensor(m, u);
  const auto& tv = x.tensor(m, v);
  const auto ker = kernel(x.action(m, u));
  if (ker.is_zero()) return std::nullopt;
  const auto& mv = x.action(m, v);
  const auto& prod = a.mult(u, v - u);
  const auto& tp = a.tensor(u, v - u);
  for (std::size_t k = 0; k < ker.dim(); ++k) {
    const auto kappa = ker.basis_vector(k);
    for (std::size_t c = 0; c < a.dim(v - u); ++c) {
      Vector<F> pushed(tv.size(), f.zero());
      for (std::size_t col = 0; col < tu.size(); ++col) {
        if (f.is_zero(kappa[col])) continue;
        const auto [i, j] = tu.pairs()[col];
        const auto pc = tp.index(j, c);
        if (pc == TensorBasis::npos) continue;
        for (std::size_t q = 0; q < prod.rows(); ++q) {
          if (f.is_zero(prod(q, pc))) continue;
          const auto dst = tv.index(i, q);
          if (dst == TensorBasis::npos) throw InternalConsistencyError("tag mismatch while pushing a kernel element");
          pushed[dst] = f.add(pushed[dst], f.mul(kappa[col], prod(q, pc)));
        }
      }
      for (const auto& e : mv.apply(pushed))
        if (!f.is_zero(e)) return pushed;
    }
  }
  return std::nullopt;
}

template <ScalarField F>
LiftReport<F> scan_conditions(const GradedModule<F>& x, const GradedAlgebra<F>& a, const DegreeSet& su,
                              const std::vector<std::pair<Degree, Degree>>& uv) {
  LiftReport<F> report;
  const auto& w = x.window();
  for (auto m : w.degrees()) {
    if (!su.contains(m)) continue;
    for (const auto& [u, v] : uv) {
      if (!w.contains(m + v) || !a.window().contains(v)) continue;
      if (auto bad = containment_failure(x, a, m, u, v)) {
        report.liftable = false;
        report.violations.push_back({m, u, v, std::move(*bad)});
      }
    }
  }
  return report;
}

}  // namespace detail

/// The general criterion: every in-window (m, u, v) with m ∈ (S:U),
/// u < v in U ∩ [0, D] and v - u ∉ U.
template <ScalarField F>
LiftReport<F> liftability_check(const GradedModule<F>& x, const DegreeSet& s, const DegreeSet& u,
                                const GradedAlgebra<F>& a) {
  check_lift_hypotheses(x, s, u, a);
  std::vector<std::pair<Degree, Degree>> uv;
  const Degree top = a.window().hi();
  for (Degree p = 0; p <= top; ++p)
    for (Degree q = p + 1; q <= top; ++q)
      if (u.contains(p) && u.contains(q) && !u.contains(q - p)) uv.emplace_back(p, q);
  return detail::scan_conditions(x, a, transporter(s, u), uv);
}

/// The reduced criterion for U a translation of an interval: (r, n) for
/// the Right orientation, all n-r <= u < v <= n for the Left one.
template <ScalarField F>
LiftReport<F> liftability_check_interval(const GradedModule<F>& x, const DegreeSet& s, const DegreeSet& u,
                                         const GradedAlgebra<F>& a) {
  check_lift_hypotheses(x, s, u, a);
  const auto it = is_translation_of_interval(u);
  if (!it) throw PreconditionError("U = " + u.to_string() + " is not a translation of an interval");
  std::vector<std::pair<Degree, Degree>> uv;
  if (it->orientation == Orientation::Right) {
    uv.emplace_back(it->r, it->n);
  } else {
    for (Degree p = it->n - it->r; p <= it->n; ++p)
      for (Degree q = p + 1; q <= it->n; ++q) uv.emplace_back(p, q);
  }
  return detail::scan_conditions(x, a, transporter(s, u), uv);
}

/// Builds M = (X_{(S:U)} ⊗ A) / (Ker μ)A, passes to M / t(M), and certifies
/// M_S ≅ X together with M ∈ G(S,U).
template <ScalarField F>
LiftReport<F> lift_module(const GradedModule<F>& x, const DegreeSet& s, const DegreeSet& u, const AlgebraPtr<F>& a) {
  auto report = liftability_check(x, s, u, *a);
  if (!report.liftable) return report;
  const auto su = transporter(s, u);
  const auto& w = x.window();
  const auto& f = x.field();

  std::vector<std::pair<Degree, int>> gens;
  std::vector<std::pair<Degree, std::size_t>> gen_source;
  for (auto m : w.degrees()) {
    if (!su.contains(m)) continue;
    for (std::size_t i = 0; i < x.dim(m); ++i) {
      gens.emplace_back(m, x.component(m).right_tags[i]);
      gen_source.emplace_back(m, i);
    }
  }
  const auto free = free_module(a, gens, w);
  const auto& p = free.module;

  // μ_t : P_t -> X_t for t ∈ S.
  std::vector<std::optional<Matrix<F>>> mu(w.size());
  auto seed = zero_subspace(p);
  for (auto t : w.degrees()) {
    if (!s.contains(t)) continue;
    Matrix<F> mt(f, x.dim(t), p.dim(t));
    const auto& origin = free.origin[w.index(t)];
    for (std::size_t col = 0; col < origin.size(); ++col) {
      const auto [g, b] = origin[col];
      const auto [m, xi] = gen_source[g];
      const auto& act = x.action(m, t - m);
      const auto idx = x.tensor(m, t - m).index(xi, b);
      if (idx == TensorBasis::npos) throw InternalConsistencyError("generator tag does not match its basis vector");
      for (std::size_t r = 0; r < act.rows(); ++r) mt(r, col) = act(r, idx);
    }
    seed[w.index(t)] = kernel(mt);
    mu[w.index(t)] = std::move(mt);
  }
  const auto relations = generate(p, seed);
  for (auto t : w.degrees())
    if (s.contains(t) && !(relations[w.index(t)] == seed[w.index(t)]))
      throw InternalConsistencyError("(Ker μ)A meets S-degree " + std::to_string(t) +
                                     " beyond Ker μ although the criterion passed");
  const auto q1 = quotient(p, relations);
  const auto tors = torsion_subspace(q1.module, s);
  const auto q2 = quotient(q1.module, tors);
  const auto& lifted = q2.module;

  GradedMap<F> iso;
  for (auto t : w.degrees()) {
    if (s.contains(t)) {
      iso.push_back(*mu[w.index(t)] * q1.section[w.index(t)] * q2.section[w.index(t)]);
    } else {
      iso.push_back(Matrix<F>(f, 0, 0));
    }
  }
  const auto killed = kill_support_module(lifted, s, KilledAlgebra<F>{a, u, x.algebra_ptr()});
  bool ok = is_module_map(killed, x, iso);
  for (const auto& m : iso) ok = ok && is_invertible(m);
  if (!ok) throw InternalConsistencyError("lift certification failed: M_S is not isomorphic to X via μ");
  if (!is_generated_in(lifted, su)) throw InternalConsistencyError("lift is not generated in (S:U)");
  if (!is_cogenerated_in(lifted, s).holds) throw InternalConsistencyError("lift is not cogenerated in S");
  report.lift = lifted;
  report.isomorphism = std::move(iso);
  report.isomorphism_certified = true;
  return report;
}

}  // namespace gka
