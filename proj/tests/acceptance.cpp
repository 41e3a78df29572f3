// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gka/gka.hpp"
#include "oracles.hpp"

using namespace gka;
using PF = PrimeField;

namespace {

struct Outcome {
  bool pass = true;
  std::string note;
};

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.note = why;
  o.pass = false;
}

oracle::Residues to_residues(const std::vector<Degree>& v) { return {v.begin(), v.end()}; }

// 1
Outcome enumeration_golden() {
  const std::map<int, std::vector<std::vector<Degree>>> expected = {
      {1, {{0}}},
      {2, {{0}}},
      {3, {{0}, {0, 1}, {0, 2}}},
      {4, {{0}, {0, 1}, {0, 3}}},
      {5, {{0}, {0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 1, 2}, {0, 1, 3}, {0, 2, 4}, {0, 3, 4}}}};
  Outcome o;
  for (const auto& [n, sets] : expected) {
    const auto got = enumerate_ring_supporting(n);
    if (got != sets) fail(o, "n = " + std::to_string(n) + ": got " + std::to_string(got.size()) + " sets");
  }
  o.note = o.pass ? "counts 1,1,3,3,9 with exact residue sets" : o.note;
  return o;
}

std::vector<std::vector<Degree>> sorted(std::vector<std::vector<Degree>> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// 2
Outcome oracle_equivalence() {
  Outcome o;
  std::size_t total = 0;
  for (int n = 1; n <= 12; ++n) {
    const auto fast = enumerate_ring_supporting(n);
    std::vector<std::vector<Degree>> slow;
    for (const auto& r : oracle::ring_supporting_sets(n)) slow.emplace_back(r.begin(), r.end());
    if (sorted(fast) != sorted(slow)) fail(o, "enumerator differs from triple scan at n = " + std::to_string(n));
    total += fast.size();
  }
  if (o.pass) o.note = "n <= 12, " + std::to_string(total) + " sets";
  return o;
}

// 3
Outcome group_algebra_associativity() {
  Outcome o;
  std::size_t checked = 0;
  const PF f(101);
  for (Degree n = 1; n <= 8; ++n) {
    const auto a = group_algebra<PF>(n, f);
    for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
      std::vector<Degree> res{0};
      for (Degree i = 1; i < n; ++i)
        if (mask >> (i - 1) & 1) res.push_back(i);
      const auto u = DegreeSet::periodic(n, res);
      const bool assoc = validate_algebra(kill_support_algebra(a, u)).holds;
      const bool rs = is_ring_supporting(u).holds;
      const bool brute = oracle::killed_group_algebra_associative(to_residues(res), n);
      if (assoc != rs || rs != brute) fail(o, "mismatch for " + u.to_string());
      ++checked;
    }
  }
  if (o.pass) o.note = std::to_string(checked) + " subsets of Z_n, n <= 8";
  return o;
}

// 4
Outcome stabilizer_identity() {
  Outcome o;
  std::size_t checked = 0;
  for (int n = 1; n <= 12; ++n)
    for (const auto& r : enumerate_ring_supporting(n)) {
      const auto u = DegreeSet::periodic(n, r);
      const auto stab = stabilizer(u);
      const auto sym = oracle::symmetric_part(to_residues(r), n);
      const auto expect = DegreeSet::periodic(n, std::vector<Degree>(sym.begin(), sym.end()));
      if (!same_set(stab, expect) || !same_set(stab, intersection(u, negate(u))))
        fail(o, "stabilizer mismatch for " + u.to_string());
      ++checked;
    }
  if (o.pass) o.note = std::to_string(checked) + " ring-supporting sets, n <= 12";
  return o;
}

// 5: constructor, recognizer and the explicit interval description agree.
Outcome interval_characterization() {
  Outcome o;
  std::size_t checked = 0;
  // n = 1 gives U = Z, outside the recognizer's domain.
  if (!same_set(interval_translation(1, 0, Orientation::Right), DegreeSet::full())) fail(o, "n = 1 is not Z");
  try {
    is_translation_of_interval(DegreeSet::full());
    fail(o, "recognizer accepted U = Z");
  } catch (const PreconditionError&) {
  }
  for (Degree n = 2; n <= 12; ++n) {
    for (Degree r = 0; 2 * r < n; ++r)
      for (bool right : {true, false}) {
        const auto o_ = right ? Orientation::Right : Orientation::Left;
        const auto built = interval_translation(n, r, o_);
        const auto explicit_ = DegreeSet::periodic(n, [&] {
          const auto v = oracle::interval_residues(n, r, right);
          return std::vector<Degree>(v.begin(), v.end());
        }());
        if (!same_set(built, explicit_)) fail(o, "constructor differs at n=" + std::to_string(n));
        const auto rec = is_translation_of_interval(built);
        if (!rec || !same_set(interval_translation(rec->n, rec->r, rec->orientation), built))
          fail(o, "recognizer misses " + built.to_string());
        if (!oracle::ring_supporting(oracle::interval_residues(n, r, right), n))
          fail(o, "interval translation not ring-supporting: " + built.to_string());
        ++checked;
      }
    // Converse over the enumeration: recognized iff it matches some interval.
    for (const auto& res : enumerate_ring_supporting(static_cast<int>(n))) {
      bool brute = false;
      for (Degree r = 0; 2 * r < n; ++r)
        for (bool right : {true, false})
          brute = brute || oracle::interval_residues(n, r, right) == to_residues(res);
      const auto u = DegreeSet::periodic(n, res);
      if (is_translation_of_interval(u).has_value() != brute) fail(o, "recognizer disagrees on " + u.to_string());
      ++checked;
    }
  }
  if (o.pass) o.note = std::to_string(checked) + " three-way checks, n <= 12";
  return o;
}

// 6
Outcome delta_pseudomorphism() {
  Outcome o;
  std::size_t checked = 0;
  for (Degree n = 1; n <= 12; ++n)
    for (Degree r = 0; 2 * r < n; ++r)
      for (bool right : {true, false}) {
        const auto res = oracle::interval_residues(n, r, right);
        const auto u = DegreeSet::periodic(n, std::vector<Degree>(res.begin(), res.end()));
        const auto delta = delta_map(u, 0, -50, 50);
        if (!is_pseudomorphism(delta).holds) fail(o, "delta not a pseudomorphism for " + u.to_string());
        // The canonical stabilizer may be smaller than n; enumerate the set itself.
        const auto elems = oracle::elements(res, n, -50 * n - n, 50 * n + n);
        const auto zero = std::find(elems.begin(), elems.end(), 0) - elems.begin();
        const auto red = reduce_mod_stabilizer(u);
        const Degree t = static_cast<Degree>(red.residues.size());
        for (Degree x = -50; x <= 50; ++x) {
          const Degree j = (x - oracle::mod(x, t)) / t, k = oracle::mod(x, t);
          const Degree formula = red.n * j + red.residues[static_cast<std::size_t>(k)];
          if (delta(x) != formula || delta(x) != elems[static_cast<std::size_t>(zero + x)])
            fail(o, "delta(" + std::to_string(x) + ") mismatch for " + u.to_string());
        }
        ++checked;
      }
  if (o.pass) o.note = std::to_string(checked) + " interval translations on [-50,50]";
  return o;
}

struct NamedAlgebra {
  std::string name;
  AlgebraPtr<PF> algebra;
};

std::vector<NamedAlgebra> criterion_algebras(Degree top, const PF& f) {
  return {{"truncated polynomial", share(truncated_poly<PF>(static_cast<int>(top) + 1, 1, DegreeWindow::integers(0, top), f))},
          {"two-variable witness", share(free_algebra_quotient<PF>(2, {"x*x", "y*y", "y*x"}, top, f))},
          {"Kronecker quiver",
           share(quiver_algebra<PF>(2, {{"a", 0, 1}, {"b", 0, 1}, {"c", 1, 0}}, std::vector<std::string>{"b*c", "c*b"},
                                    top, f))}};
}

std::vector<Degree> degrees_in(const DegreeWindow& w, const DegreeSet& d) {
  std::vector<Degree> out;
  for (auto x : w.degrees())
    if (d.contains(x)) out.push_back(x);
  return out;
}

// 7
Outcome liftability_consistency() {
  Outcome o;
  const PF f(101);
  std::size_t total = 0, liftable = 0;
  std::set<std::string> names;
  for (Degree n = 3; n <= 5; ++n) {
    const auto algs = criterion_algebras(2 * n, f);
    for (const auto& [name, a] : algs) {
      for (Degree r = 0; 2 * r < n; ++r)
        for (auto orient : {Orientation::Right, Orientation::Left}) {
          const auto u = interval_translation(n, r, orient);
          const auto k = kill_support(a, u);
          const auto gens = degrees_in(a->window(), transporter(u, u));
          for (int i = 0; i < 3; ++i) {
            std::mt19937_64 rng(static_cast<std::uint64_t>(n * 1000 + r * 100 + i * 10 + (orient == Orientation::Right)));
            PresentationShape shape;
            const auto x = random_presented_module(k.algebra, a->window(), gens, shape, rng);
            const auto g = liftability_check(x, u, u, *a);
            const auto iv = liftability_check_interval(x, u, u, *a);
            if (g.liftable != iv.liftable)
              fail(o, name + ", U = " + u.to_string() + ", sample " + std::to_string(i) + ": criteria disagree");
            ++total;
            liftable += g.liftable;
            names.insert(name);
          }
        }
    }
  }
  if (total < 100) fail(o, "only " + std::to_string(total) + " modules");
  if (o.pass)
    o.note = std::to_string(total) + " modules over " + std::to_string(names.size()) + " algebras, " +
             std::to_string(liftable) + " liftable";
  return o;
}

// 8
Outcome round_trip() {
  Outcome o;
  const PF f(101);
  std::size_t done = 0;
  for (Degree n = 3; n <= 5; ++n) {
    const auto u = DegreeSet::periodic(n, {0, 1});
    for (const auto& [name, a] : criterion_algebras(2 * n, f)) {
      const auto k = kill_support(a, u);
      for (int i = 0; i < 6; ++i) {
        std::mt19937_64 rng(static_cast<std::uint64_t>(n * 100 + i));
        const auto m = random_gsu_module(a, a->window(), u, u, {}, rng);
        const auto x = kill_support_module(m, u, k);
        const auto lifted = lift_module(x, u, u, a);
        if (!lifted.lift || !lifted.isomorphism_certified) {
          fail(o, name + ": no certified lift for n=" + std::to_string(n));
          continue;
        }
        const auto reference = torsion_free_quotient(m, u);
        std::mt19937_64 iso_rng(static_cast<std::uint64_t>(i));
        if (lifted.lift->dims() != reference.dims() || !find_isomorphism(*lifted.lift, reference, iso_rng))
          fail(o, name + ": lift not isomorphic to M/t(M) for n=" + std::to_string(n));
        ++done;
      }
    }
  }
  if (done < 50) fail(o, "only " + std::to_string(done) + " round trips");
  if (o.pass) o.note = std::to_string(done) + " certified round trips, n in {3,4,5}";
  return o;
}

// 9
Outcome hom_equivalence() {
  Outcome o;
  const PF f(101);
  std::size_t pairs = 0, nonzero = 0;
  for (Degree n = 3; n <= 4; ++n) {
    const auto u = DegreeSet::periodic(n, {0, 1});
    for (const auto& [name, a] : criterion_algebras(2 * n, f)) {
      const auto rep = equivalence_harness(a, a->window(), u, u, 4, static_cast<std::uint64_t>(n));
      for (const auto& s : rep.samples) {
        if (!s.agree())
          fail(o, name + ": Hom " + std::to_string(s.hom) + " vs " + std::to_string(s.hom_killed));
        nonzero += s.hom > 0;
        ++pairs;
      }
    }
  }
  if (pairs < 20) fail(o, "only " + std::to_string(pairs) + " pairs");
  if (o.pass) o.note = std::to_string(pairs) + " pairs, " + std::to_string(nonzero) + " with nonzero Hom";
  return o;
}

// 10
Outcome presented_inclusion() {
  Outcome o;
  const PF f(101);
  std::size_t total = 0;
  for (Degree n = 3; n <= 5; ++n) {
    for (const auto& s_res : std::vector<std::vector<Degree>>{{0, 1}, {0, n - 1}}) {
      const auto u = DegreeSet::periodic(n, s_res);
      for (const auto& [name, a] : criterion_algebras(2 * n, f)) {
        const auto k = kill_support(a, u);
        const auto su = degrees_in(a->window(), transporter(u, u));
        for (int i = 0; i < 2; ++i) {
          std::mt19937_64 rng(static_cast<std::uint64_t>(7 * n + i));
          PresentationShape shape;
          shape.relation_degrees = su;
          const auto x = random_presented_module(k.algebra, a->window(), su, shape, rng);
          if (!liftability_check(x, u, u, *a).liftable) fail(o, name + ": presented module fails for " + u.to_string());
          ++total;
        }
      }
    }
  }
  if (total < 30) fail(o, "only " + std::to_string(total) + " modules");
  if (o.pass) o.note = std::to_string(total) + " presented modules liftable";
  return o;
}

WindowedMap widest_delta(const DegreeSet& u, Degree top) {
  Degree hi = 0;
  while (delta_map(u, 0, 0, hi + 1).values().back() <= top) ++hi;
  return delta_map(u, 0, 0, hi);
}

// 11
Outcome regrade_round_trip() {
  Outcome o;
  const PF f(101);
  std::size_t modules = 0, pipelines = 0;
  for (Degree n = 3; n <= 5; ++n) {
    const auto u = DegreeSet::periodic(n, {0, 1});
    for (const auto& [name, a] : criterion_algebras(2 * n, f)) {
      const auto k = kill_support(a, u);
      const auto delta = widest_delta(u, a->window().hi());
      const auto regraded = share(regrade_algebra(*k.algebra, delta));
      for (int i = 0; i < 4; ++i) {
        std::mt19937_64 rng(static_cast<std::uint64_t>(31 * n + i));
        const auto x = kill_support_module(random_gsu_module(a, a->window(), u, u, {}, rng), u, k);
        const auto v = regrade_module(x, delta, 0, regraded);
        if (!validate_module(v).holds) fail(o, name + ": regraded module invalid");
        if (!(un_regrade_module(v, delta, 0, k.algebra, x.window()) == x)) fail(o, name + ": round trip differs");
        ++modules;
      }
      const auto regular = regrade_module(regular_module(k.algebra), delta, 0, regraded);
      if (sigma_tilde_violation(regular, delta)) fail(o, name + ": vanishing pattern fails on the regular module");
      ++pipelines;
    }
  }
  const auto kp = koszul_pipeline(
      share(n_homogeneous_dual(1, Subspace<PF>::span(f, 1, {relation_tensor<PF>("x*x*x", 1, 3, f)}), 3, 6)), 3);
  if (!kp.sigma_vanishing) fail(o, "vanishing pattern fails in the Koszul pipeline");
  ++pipelines;
  if (o.pass)
    o.note = std::to_string(modules) + " modules round-tripped, vanishing on " + std::to_string(pipelines) + " pipelines";
  return o;
}

// 12
Outcome koszul_smoke() {
  Outcome o;
  const Rationals q;
  const auto rel = Subspace<Rationals>::span(q, 1, {relation_tensor<Rationals>("x*x*x", 1, 3, q)});
  const auto dual = share(n_homogeneous_dual(1, rel, 3, 6));
  const auto kp = koszul_pipeline(dual, 3);
  if (!(kp.regraded->window() == DegreeWindow::integers(0, 4)) ||
      kp.regraded->dims() != std::vector<std::size_t>{1, 1, 1, 1, 1})
    fail(o, "B~ has the wrong dimension vector");
  if (!kp.regraded_valid.holds) fail(o, "B~ is not a valid algebra");
  if (!kp.h_prime_exact || !same_set(kp.h_prime, DegreeSet::multiples(2))) fail(o, "H' = " + kp.h_prime.to_string());
  if (kp.conditions.empty() || !kp.conditions_hold()) fail(o, "kernel containment conditions fail");
  if (o.pass) o.note = "B~ dims (1,1,1,1,1), H' = 2Z, " + std::to_string(kp.conditions.size()) + " conditions hold";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<Outcome()> run;
    double budget_seconds;  // 0: no runtime bound
  };
  const std::vector<Criterion> criteria = {
      {"enumeration golden", enumeration_golden, 1},
      {"enumerator vs triple-scan oracle", oracle_equivalence, 30},
      {"K[Z_n] associativity iff ring-supporting", group_algebra_associativity, 60},
      {"stabilizer equals U and -U intersection", stabilizer_identity, 0},
      {"interval-translation characterization", interval_characterization, 0},
      {"delta pseudomorphism", delta_pseudomorphism, 0},
      {"liftability criteria agree", liftability_consistency, 300},
      {"round-trip lifting", round_trip, 0},
      {"Hom-dimension equivalence", hom_equivalence, 0},
      {"presented modules liftable", presented_inclusion, 0},
      {"regrade round trip and vanishing", regrade_round_trip, 0},
      {"Koszul pipeline smoke", koszul_smoke, 5},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[i].budget_seconds > 0 && secs > criteria[i].budget_seconds) {
      out.pass = false;
      out.note = "over the " + std::to_string(static_cast<int>(criteria[i].budget_seconds)) + "s budget; " + out.note;
    }
    std::printf("criterion %2zu %s  %-42s %6.2fs  %s\n", i + 1, out.pass ? "PASS" : "FAIL", criteria[i].name.c_str(),
                secs, out.note.c_str());
    failures += !out.pass;
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
