#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gka/graded_module.hpp"
#include "gka/windowed_map.hpp"

namespace gka {

namespace detail {

inline void require_pseudomorphism(const WindowedMap& phi) {
  const auto v = is_pseudomorphism(phi);
  if (!v.holds)
    throw PreconditionError("map is not a pseudomorphism on its window, witness (" + std::to_string((*v.witness)[0]) +
                            "," + std::to_string((*v.witness)[1]) + ")");
}

inline GradingViolation grading_violation(Degree a, Degree b, const std::string& what) {
  return GradingViolation(what + " at (" + std::to_string(a) + "," + std::to_string(b) + ")");
}

}  // namespace detail

/// B̃ with B̃_σ = B_{φ(σ)} on the window of φ. Products whose degree sum
/// φ(σ)+φ(τ) leaves Im φ must vanish in B; a nonzero one is a grading
/// violation. Products landing beyond B's window are truncated.
template <ScalarField F>
GradedAlgebra<F> regrade_algebra(const GradedAlgebra<F>& b, const WindowedMap& phi) {
  if (b.window().is_cyclic()) throw PreconditionError("regrading is implemented for Z-graded algebras");
  detail::require_pseudomorphism(phi);
  const auto& bw = b.window();
  for (auto d : bw.degrees())
    if (b.dim(d) != 0 && !phi.in_image(d))
      throw PreconditionError("component in degree " + std::to_string(d) + " lies outside Im φ on its window");
  const auto nw = DegreeWindow::integers(phi.lo(), phi.hi());
  std::vector<LabeledSpace> comps;
  for (auto s : nw.degrees()) {
    if (!bw.contains(phi(s)))
      throw WindowViolation("φ(" + std::to_string(s) + ") = " + std::to_string(phi(s)) + " outside window " +
                            bw.to_string());
    comps.push_back(b.component(phi(s)));
  }
  GradedAlgebra<F> out(b.field(), nw, std::move(comps));
  for (auto s : nw.degrees())
    for (auto t : nw.degrees()) {
      if (!out.has_product(s, t)) continue;
      const Degree target = phi(s) + phi(t);
      if (phi(s + t) == target) {
        out.set_mult(s, t, b.mult(phi(s), phi(t)));
      } else if (bw.contains(target) && !b.mult(phi(s), phi(t)).is_zero()) {
        throw detail::grading_violation(s, t, "nonzero product outside the regraded components");
      }
    }
  return out;
}

/// The first (σ, τ) with V_σ B̃_τ ≠ 0 although φ(σ)+φ(τ) ∉ Im φ.
template <ScalarField F>
std::optional<std::pair<Degree, Degree>> sigma_tilde_violation(const GradedModule<F>& v, const WindowedMap& phi) {
  std::optional<std::pair<Degree, Degree>> bad;
  for_each_action(v, [&](Degree s, Degree t) {
    if (bad || !phi.in_window(s) || !phi.in_window(t)) return;
    if (phi.in_image(phi(s) + phi(t))) return;
    if (!v.action(s, t).is_zero()) bad = std::make_pair(s, t);
  });
  return bad;
}

/// X̃_σ = X_{g+φ(σ)} on the window of φ, over `regraded` (the algebra of X
/// regraded along φ). Requires Supp(X) ⊆ g + Im φ.
template <ScalarField F>
GradedModule<F> regrade_module(const GradedModule<F>& x, const WindowedMap& phi, Degree g,
                               const AlgebraPtr<F>& regraded) {
  detail::require_pseudomorphism(phi);
  const auto& xw = x.window();
  for (auto d : xw.degrees())
    if (x.dim(d) != 0 && !phi.in_image(d - g))
      throw PreconditionError("module component in degree " + std::to_string(d) + " lies outside g + Im φ");
  const auto nw = DegreeWindow::integers(phi.lo(), phi.hi());
  std::vector<LabeledSpace> comps;
  for (auto s : nw.degrees()) {
    if (!xw.contains(g + phi(s)))
      throw WindowViolation("g + φ(" + std::to_string(s) + ") outside module window " + xw.to_string());
    comps.push_back(x.component(g + phi(s)));
  }
  GradedModule<F> out(regraded, nw, std::move(comps));
  for_each_action(out, [&](Degree s, Degree t) {
    if (!phi.in_window(t)) throw WindowViolation("regraded algebra window exceeds the window of φ");
    if (phi(s + t) == phi(s) + phi(t)) {
      out.set_action(s, t, x.action(g + phi(s), phi(t)));
    } else if (x.has_action(g + phi(s), phi(t)) && !x.action(g + phi(s), phi(t)).is_zero()) {
      throw detail::grading_violation(s, t, "nonzero action outside the regraded components");
    }
  });
  return out;
}

/// Inverse of regrade_module: X_{g+φ(σ)} = V_σ, zero elsewhere on `window`,
/// over the original algebra `base`. V must satisfy the vanishing condition
/// V_σ B̃_τ = 0 whenever φ(σ)+φ(τ) ∉ Im φ.
template <ScalarField F>
GradedModule<F> un_regrade_module(const GradedModule<F>& v, const WindowedMap& phi, Degree g,
                                  const AlgebraPtr<F>& base, const DegreeWindow& window) {
  detail::require_pseudomorphism(phi);
  if (const auto bad = sigma_tilde_violation(v, phi))
    throw detail::grading_violation(bad->first, bad->second, "module violates the regraded vanishing condition");
  auto source = [&](Degree d) -> std::optional<Degree> {
    const auto s = phi.preimage(d - g);
    if (!s || !v.window().contains(*s)) return std::nullopt;
    return s;
  };
  std::vector<LabeledSpace> comps;
  for (auto d : window.degrees()) {
    if (const auto s = source(d)) {
      comps.push_back(v.component(*s));
    } else {
      LabeledSpace empty;
      empty.idempotents = base->idempotents();
      comps.push_back(empty);
    }
  }
  GradedModule<F> out(base, window, std::move(comps));
  for_each_action(out, [&](Degree d, Degree u) {
    const auto s = source(d);
    const auto r = source(out.target(d, u));
    const auto t = phi.preimage(u);
    if (!s || !r || base->dim(u) == 0) return;
    if (!t) throw PreconditionError("algebra component in degree " + std::to_string(u) + " lies outside Im φ");
    if (*r != *s + *t) throw InternalConsistencyError("pseudomorphism degree bookkeeping broke");
    out.set_action(d, u, v.action(*s, *t));
  });
  return out;
}

}  // namespace gka
