#include <gtest/gtest.h>

#include <random>

#include "gka/gka.hpp"

using namespace gka;
using PF = PrimeField;

namespace {

const PF kF(101);

std::vector<Degree> degrees_in(const DegreeWindow& w, const DegreeSet& d) {
  std::vector<Degree> out;
  for (auto x : w.degrees())
    if (d.contains(x)) out.push_back(x);
  return out;
}

template <typename Fn>
std::string precondition_message(Fn&& fn) {
  try {
    fn();
  } catch (const PreconditionError& e) {
    return e.what();
  }
  return "";
}

// Over K[x]/(x^5) killed to U = 3Z ∪ (3Z+1): X_0 = Ke, X_3 = Kf and
// e·x³ = f when `linked`. Then e⊗x lies in Ker μ_{0,1} but e⊗x·x² does not
// lie in Ker μ_{0,3}, so X has no lift.
struct Fixture {
  AlgebraPtr<PF> a = share(truncated_poly<PF>(5, 1, DegreeWindow::integers(0, 4), kF));
  DegreeSet u = DegreeSet::periodic(3, {0, 1});
  KilledAlgebra<PF> killed = kill_support(a, u);

  GradedModule<PF> module(bool linked) const {
    std::vector<LabeledSpace> comps(5, LabeledSpace::uniform(0, 1, false));
    comps[0] = LabeledSpace::uniform(1, 1, false);
    comps[3] = LabeledSpace::uniform(1, 1, false);
    GradedModule<PF> x(killed.algebra, DegreeWindow::integers(0, 4), comps);
    if (linked) {
      Matrix<PF> one(kF, 1, 1);
      one(0, 0) = kF.one();
      x.set_action(0, 3, one);
    }
    return x;
  }
};

TEST(Transporter, FrozenAndEmpty) {
  const auto u = DegreeSet::periodic(5, {0, 1});
  EXPECT_TRUE(same_set(transporter(translate(u, 2), u), DegreeSet::periodic(5, {2})));
  EXPECT_TRUE(same_set(transporter(u, u), DegreeSet::multiples(5)));
  EXPECT_THROW(transporter(DegreeSet::periodic(5, {0, 2}), u), PreconditionError);
}

TEST(Liftability, FrozenLiftableAndNot) {
  const Fixture fx;
  ASSERT_TRUE(validate_module(fx.module(true)).holds);
  const auto bad = liftability_check(fx.module(true), fx.u, fx.u, *fx.a);
  EXPECT_FALSE(bad.liftable);
  ASSERT_FALSE(bad.violations.empty());
  EXPECT_EQ(bad.violations[0].m, 0);
  EXPECT_EQ(bad.violations[0].u, 1);
  EXPECT_EQ(bad.violations[0].v, 3);
  EXPECT_FALSE(liftability_check_interval(fx.module(true), fx.u, fx.u, *fx.a).liftable);
  EXPECT_FALSE(lift_module(fx.module(true), fx.u, fx.u, fx.a).lift.has_value());

  const auto good = liftability_check(fx.module(false), fx.u, fx.u, *fx.a);
  EXPECT_TRUE(good.liftable);
  const auto lifted = lift_module(fx.module(false), fx.u, fx.u, fx.a);
  ASSERT_TRUE(lifted.lift.has_value());
  EXPECT_TRUE(lifted.isomorphism_certified);
  EXPECT_EQ(kill_support_module(*lifted.lift, fx.u, fx.killed).dims(), fx.module(false).dims());
  std::mt19937_64 iso_rng(3);
  EXPECT_TRUE(find_isomorphism(kill_support_module(*lifted.lift, fx.u, fx.killed), fx.module(false), iso_rng));
}

TEST(Liftability, HypothesisErrorsNameTheFlag) {
  const Fixture fx;
  const auto x = fx.module(false);
  // Not positively graded.
  const auto z5 = share(group_algebra<PF>(5, kF));
  const auto u5 = DegreeSet::periodic(5, {0, 1});
  const auto k5 = kill_support(z5, u5);
  const auto reg5 = regular_module(k5.algebra);
  EXPECT_NE(precondition_message([&] { liftability_check(reg5, u5, u5, *z5); }).find("positively_graded"),
            std::string::npos);
  // Generated in degree 2 only.
  const auto even = truncated_poly<PF>(3, 2, DegreeWindow::integers(0, 4), kF);
  EXPECT_NE(precondition_message([&] { liftability_check(x, fx.u, fx.u, even); }).find("generated_in_01"),
            std::string::npos);
  // Not right modular.
  EXPECT_NE(precondition_message([&] {
              liftability_check(x, DegreeSet::periodic(6, {0, 1, 2}), fx.u, *fx.a);
            }).find("right_modular"),
            std::string::npos);
  // Over the wrong algebra.
  EXPECT_NE(precondition_message([&] { liftability_check(regular_module(fx.a), fx.u, fx.u, *fx.a); })
                .find("module over A_U"),
            std::string::npos);
  // Not generated in (S:U) = 3Z.
  std::vector<LabeledSpace> comps(5, LabeledSpace::uniform(0, 1, false));
  comps[1] = LabeledSpace::uniform(1, 1, false);
  const GradedModule<PF> off(fx.killed.algebra, DegreeWindow::integers(0, 4), comps);
  EXPECT_NE(precondition_message([&] { liftability_check(off, fx.u, fx.u, *fx.a); }).find("generated_in_(S:U)"),
            std::string::npos);
  // The interval criterion needs an interval translation.
  const auto w = DegreeSet::periodic(5, {0, 1, 3});
  const auto kw = kill_support(fx.a, w);
  EXPECT_THROW(liftability_check_interval(regular_module(kw.algebra), w, w, *fx.a), PreconditionError);
}

TEST(Liftability, CriteriaAgreeOnRandomModules) {
  std::size_t liftable = 0, total = 0;
  for (const auto& a : {share(free_algebra_quotient<PF>(2, {"y*x"}, 8, kF)),
                        share(truncated_poly<PF>(9, 1, DegreeWindow::integers(0, 8), kF))}) {
    for (Degree n = 3; n <= 4; ++n)
    for (Degree r = 0; 2 * r < n; ++r)
      for (auto o : {Orientation::Right, Orientation::Left}) {
        const auto u = interval_translation(n, r, o);
        const auto k = kill_support(a, u);
        for (int i = 0; i < 3; ++i) {
          std::mt19937_64 rng(static_cast<std::uint64_t>(100 * n + 10 * r + i));
          const auto x = random_presented_module(k.algebra, a->window(), degrees_in(a->window(), transporter(u, u)),
                                                 PresentationShape{}, rng);
          const bool g = liftability_check(x, u, u, *a).liftable;
          EXPECT_EQ(g, liftability_check_interval(x, u, u, *a).liftable) << u.to_string() << " sample " << i;
          const auto lifted = lift_module(x, u, u, a);
          EXPECT_EQ(lifted.lift.has_value(), g);
          if (lifted.lift) {
            EXPECT_TRUE(lifted.isomorphism_certified);
          }
          liftable += g;
          ++total;
        }
      }
  }
  EXPECT_GT(liftable, 0u);
  EXPECT_LT(liftable, total);
}

TEST(Liftability, KilledModulesFromGsuLift) {
  const auto a = share(truncated_poly<PF>(9, 1, DegreeWindow::integers(0, 8), kF));
  const auto u = DegreeSet::periodic(4, {0, 1});
  const auto s = translate(u, 1);
  const auto k = kill_support(a, u);
  for (int i = 0; i < 5; ++i) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(i));
    const auto m = random_gsu_module(a, a->window(), s, u, {}, rng);
    const auto x = kill_support_module(m, s, k);
    const auto report = lift_module(x, s, u, a);
    ASSERT_TRUE(report.lift.has_value());
    EXPECT_TRUE(report.isomorphism_certified);
    std::mt19937_64 iso_rng(7);
    EXPECT_TRUE(find_isomorphism(*report.lift, torsion_free_quotient(m, s), iso_rng).has_value());
  }
}

TEST(Harness, EquivalenceHolds) {
  const auto a = share(free_algebra_quotient<PF>(2, {"y*x"}, 4, kF));
  const auto u = DegreeSet::periodic(3, {0, 1});
  const auto r = equivalence_harness(a, a->window(), u, u, 6, 3);
  EXPECT_EQ(r.samples.size(), 6u);
  EXPECT_TRUE(r.all_agree());
  EXPECT_THROW(equivalence_harness(a, a->window(), DegreeSet::periodic(6, {0, 1, 2}), u, 1, 0), PreconditionError);
}

TEST(Harness, KoszulPipeline) {
  const auto r = koszul_pipeline(share(n_homogeneous_dual<PF>(
                                     1, Subspace<PF>::span(kF, 1, {relation_tensor<PF>("x*x*x", 1, 3, kF)}), 3, 6)),
                                 3);
  EXPECT_TRUE(r.regraded_valid.holds);
  EXPECT_EQ(r.regraded->dims(), (std::vector<std::size_t>{1, 1, 1, 1, 1}));
  EXPECT_TRUE(r.h_prime_exact);
  EXPECT_TRUE(same_set(r.h_prime, DegreeSet::multiples(2)));
  EXPECT_TRUE(r.sigma_vanishing);
  EXPECT_EQ(r.conditions.size(), 2u);
  EXPECT_TRUE(r.conditions_hold());
  EXPECT_THROW(koszul_pipeline(share(group_algebra<PF>(3, kF)), 3), PreconditionError);
  EXPECT_THROW(koszul_pipeline(share(truncated_poly<PF>(3, 1, DegreeWindow::integers(0, 4), kF)), 3),
               PreconditionError);
}

}  // namespace
