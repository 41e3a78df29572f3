#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gka/lifting.hpp"

namespace gka {

/// Shape of a random presentation.
struct PresentationShape {
  int min_generators = 1;
  int max_generators = 2;
  int max_relations = 2;
  /// Degrees allowed for relations; empty means anywhere in the window.
  std::vector<Degree> relation_degrees;
};

/// F / R with F free on random generators in `generator_degrees` and R
/// generated by random tag-homogeneous elements. Deterministic in `rng`.
template <ScalarField F>
GradedModule<F> random_presented_module(const AlgebraPtr<F>& a, const DegreeWindow& window,
                                        const std::vector<Degree>& generator_degrees, const PresentationShape& shape,
                                        std::mt19937_64& rng) {
  if (generator_degrees.empty()) throw PreconditionError("no admissible generator degrees in the window");
  const auto& f = a->field();
  std::uniform_int_distribution<int> ngen(shape.min_generators, shape.max_generators);
  std::uniform_int_distribution<std::size_t> pick_deg(0, generator_degrees.size() - 1);
  std::uniform_int_distribution<int> pick_tag(0, a->idempotents() - 1);
  std::vector<std::pair<Degree, int>> gens;
  const int g = ngen(rng);
  for (int i = 0; i < g; ++i) gens.emplace_back(generator_degrees[pick_deg(rng)], pick_tag(rng));
  std::sort(gens.begin(), gens.end());
  const auto free = free_module(a, gens, window);
  const auto& p = free.module;

  std::vector<Degree> rel_degrees;
  const auto& allowed = shape.relation_degrees.empty() ? window.degrees() : shape.relation_degrees;
  for (auto d : allowed)
    if (window.contains(d) && p.dim(d) > 0) rel_degrees.push_back(d);
  auto seed = zero_subspace(p);
  if (!rel_degrees.empty()) {
    std::uniform_int_distribution<int> nrel(0, shape.max_relations);
    std::uniform_int_distribution<std::size_t> pick_rel(0, rel_degrees.size() - 1);
    std::uniform_int_distribution<int> coef(0, 6);
    const int r = nrel(rng);
    for (int i = 0; i < r; ++i) {
      const Degree d = rel_degrees[pick_rel(rng)];
      const auto& comp = p.component(d);
      const int tag = comp.right_tags[std::uniform_int_distribution<std::size_t>(0, comp.dim() - 1)(rng)];
      Vector<F> v(comp.dim(), f.zero());
      for (auto b : comp.right_block(tag)) v[b] = f.from_int(coef(rng) - 3);
      const auto idx = window.index(d);
      seed[idx] = sum(seed[idx], Subspace<F>::span(f, comp.dim(), {v}));
    }
  }
  return quotient(p, generate(p, std::move(seed))).module;
}

/// A random module in G(S,U): presented in (S:U) degrees, then made
/// torsion-free.
template <ScalarField F>
GradedModule<F> random_gsu_module(const AlgebraPtr<F>& a, const DegreeWindow& window, const DegreeSet& s,
                                  const DegreeSet& u, const PresentationShape& shape, std::mt19937_64& rng) {
  const auto su = transporter(s, u);
  std::vector<Degree> degs;
  for (auto d : window.degrees())
    if (su.contains(d)) degs.push_back(d);
  return torsion_free_quotient(random_presented_module(a, window, degs, shape, rng), s);
}

/// One sampled pair of the equivalence harness.
struct EquivalenceSample {
  std::size_t index = 0;
  std::vector<std::size_t> dims_m;
  std::vector<std::size_t> dims_n;
  std::size_t hom = 0;
  std::size_t hom_killed = 0;
  bool agree() const { return hom == hom_killed; }
};

struct EquivalenceReport {
  std::vector<EquivalenceSample> samples;
  bool all_agree() const {
    for (const auto& s : samples)
      if (!s.agree()) return false;
    return true;
  }
};

/// Compares Hom(M, N) with Hom(M_S, N_S) on random pairs in G(S,U).
template <ScalarField F>
EquivalenceReport equivalence_harness(const AlgebraPtr<F>& a, const DegreeWindow& window, const DegreeSet& s,
                                      const DegreeSet& u, std::size_t samples, std::uint64_t seed,
                                      const PresentationShape& shape = {}) {
  if (!is_right_modular(s, u).holds) throw PreconditionError("equivalence harness needs a right modular pair");
  if (!validate_algebra(*a).holds) throw PreconditionError("equivalence harness needs a valid algebra");
  const auto killed = kill_support(a, u);
  EquivalenceReport report;
  for (std::size_t i = 0; i < samples; ++i) {
    std::mt19937_64 rng(seed * 1000003ULL + i);
    const auto m = random_gsu_module(a, window, s, u, shape, rng);
    const auto n = random_gsu_module(a, window, s, u, shape, rng);
    EquivalenceSample sample;
    sample.index = i;
    sample.dims_m = m.dims();
    sample.dims_n = n.dims();
    sample.hom = hom_space_dim(m, n);
    sample.hom_killed = hom_space_dim(kill_support_module(m, s, killed), kill_support_module(n, s, killed));
    report.samples.push_back(std::move(sample));
  }
  return report;
}

/// Outcome of the n-Koszul pipeline for U = nZ ∪ (nZ+1).
template <ScalarField F>
struct KoszulReport {
  DegreeSet u;
  WindowedMap delta;
  AlgebraPtr<F> killed;
  AlgebraPtr<F> regraded;
  DegreeSet h_prime;
  bool h_prime_exact = false;
  Verdict regraded_valid;
  bool sigma_vanishing = false;
  /// (k, holds) for Ker(μ̃_{2k,1}) A_{n-1} ⊆ Ker(μ̃_{2k,2}) on the regular module.
  std::vector<std::pair<Degree, bool>> conditions;
  bool conditions_hold() const {
    for (const auto& c : conditions)
      if (!c.second) return false;
    return true;
  }
};

template <ScalarField F>
KoszulReport<F> koszul_pipeline(const AlgebraPtr<F>& a, Degree n) {
  const auto flags = algebra_flags(*a);
  if (!flags.positively_graded) throw PreconditionError("hypothesis 'positively_graded' fails for A");
  if (!flags.generated_in_01) throw PreconditionError("hypothesis 'generated_in_01' fails for A");
  if (!flags.degree0_semisimple) throw PreconditionError("hypothesis 'degree0_semisimple' fails for A");
  if (n < 2) throw PreconditionError("pipeline needs n >= 2");
  const Degree top = a->window().hi();
  if (top < 2 * n) throw PreconditionError("pipeline needs window >= 2n = " + std::to_string(2 * n));

  KoszulReport<F> r;
  r.u = DegreeSet::periodic(n, {0, 1});
  const auto k = kill_support(a, r.u);
  r.killed = k.algebra;
  // Largest σ with δ(σ) inside the window.
  Degree hi = 0;
  while (delta_map(r.u, 0, 0, hi + 1).values().back() <= top) ++hi;
  r.delta = delta_map(r.u, 0, 0, hi);
  r.regraded = share(regrade_algebra(*r.killed, r.delta));
  r.regraded_valid = validate_algebra(*r.regraded);
  r.h_prime = preimage_subgroup(r.delta, DegreeSet::multiples(n));
  if (const auto exact = as_subgroup(r.h_prime)) {
    r.h_prime = *exact;
    r.h_prime_exact = true;
  }

  const auto regular = regular_module(r.killed);
  const auto v = regrade_module(regular, r.delta, 0, r.regraded);
  r.sigma_vanishing = !sigma_tilde_violation(v, r.delta).has_value();
  const auto x = un_regrade_module(v, r.delta, 0, r.killed, a->window());
  for (Degree kk = 0; n * kk + n <= top; ++kk)
    r.conditions.emplace_back(kk, !detail::containment_failure(x, *a, n * kk, 1, n).has_value());
  return r;
}

}  // namespace gka
