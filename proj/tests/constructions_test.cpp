#include <gtest/gtest.h>

#include "gka/gka.hpp"

using namespace gka;
using PF = PrimeField;

namespace {

const PF kF(101);

// Number of paths of each length avoiding the given subwords. For monomial
// relations this is the dimension sequence of the path algebra quotient.
std::vector<std::size_t> count_paths_avoiding(int vertices, const std::vector<Arrow>& arrows,
                                              const std::vector<std::vector<std::size_t>>& forbidden, int top) {
  std::vector<std::size_t> out{static_cast<std::size_t>(vertices)};
  std::vector<std::vector<std::size_t>> layer;
  for (std::size_t i = 0; i < arrows.size(); ++i) layer.push_back({i});
  for (int len = 1; len <= top; ++len) {
    std::vector<std::vector<std::size_t>> keep;
    for (const auto& p : layer) {
      bool bad = false;
      for (const auto& w : forbidden)
        for (std::size_t s = 0; s + w.size() <= p.size() && !bad; ++s)
          bad = std::equal(w.begin(), w.end(), p.begin() + static_cast<std::ptrdiff_t>(s));
      if (!bad) keep.push_back(p);
    }
    out.push_back(keep.size());
    std::vector<std::vector<std::size_t>> next;
    for (const auto& p : keep)
      for (std::size_t i = 0; i < arrows.size(); ++i)
        if (arrows[p.back()].target == arrows[i].source) {
          auto q = p;
          q.push_back(i);
          next.push_back(q);
        }
    layer = std::move(next);
  }
  return out;
}

TEST(Builders, GroupAndTruncatedPolynomial) {
  const auto z6 = group_algebra<PF>(6, kF);
  EXPECT_EQ(z6.dims(), std::vector<std::size_t>(6, 1));
  EXPECT_TRUE(validate_algebra(z6).holds);
  const auto t = truncated_poly<PF>(3, 1, DegreeWindow::integers(0, 3), kF);
  EXPECT_EQ(t.dims(), (std::vector<std::size_t>{1, 1, 1, 0}));
  const auto t2 = truncated_poly<PF>(3, 2, DegreeWindow::integers(-1, 5), kF);
  EXPECT_EQ(t2.dims(), (std::vector<std::size_t>{0, 1, 0, 1, 0, 1, 0}));
  EXPECT_TRUE(validate_algebra(t2).holds);
}

TEST(Builders, MonomialQuotientsMatchPathCount) {
  const auto xy = free_algebra_quotient<PF>(2, {"y*x"}, 5, kF);
  EXPECT_EQ(xy.dims(), (std::vector<std::size_t>{1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(xy.dims(), count_paths_avoiding(1, loops(2), {{1, 0}}, 5));
  const auto w = free_algebra_quotient<PF>(2, {"x*x", "y*y", "y*x"}, 4, kF);
  EXPECT_EQ(w.dims(), (std::vector<std::size_t>{1, 2, 1, 0, 0}));
  const std::vector<Arrow> kron{{"a", 0, 1}, {"b", 0, 1}, {"c", 1, 0}};
  const auto q = quiver_algebra<PF>(2, kron, std::vector<std::string>{"b*c", "c*b"}, 5, kF);
  EXPECT_EQ(q.dims(), count_paths_avoiding(2, kron, {{1, 2}, {2, 1}}, 5));
  EXPECT_EQ(q.dims(), (std::vector<std::size_t>{2, 3, 2, 2, 2, 2}));
  for (const auto* a : {&xy, &w, &q}) EXPECT_TRUE(validate_algebra(*a).holds);
}

TEST(Builders, NonMonomialRelations) {
  // Polynomial ring and a quantum plane both have Hilbert series 1/(1-t)².
  for (const char* rel : {"x*y - y*x", "x*y - 2*y*x"}) {
    const auto a = free_algebra_quotient<PF>(2, {rel}, 5, kF);
    EXPECT_EQ(a.dims(), (std::vector<std::size_t>{1, 2, 3, 4, 5, 6})) << rel;
    EXPECT_TRUE(validate_algebra(a).holds);
  }
  const Rationals q;
  const auto over_q = free_algebra_quotient<Rationals>(3, {"x*y - y*x", "x*z - z*x", "y*z - z*y"}, 3, q);
  EXPECT_EQ(over_q.dims(), (std::vector<std::size_t>{1, 3, 6, 10}));
}

TEST(Builders, RelationParseErrors) {
  const auto vars = loops(2);
  EXPECT_THROW(parse_relation<PF>("", vars, kF), SchemaError);
  EXPECT_THROW(parse_relation<PF>("x*q", vars, kF), SchemaError);
  EXPECT_THROW(parse_relation<PF>("x y", vars, kF), SchemaError);
  EXPECT_THROW(parse_relation<PF>("x*2", vars, kF), SchemaError);
  EXPECT_THROW(parse_relation<PF>("x*", vars, kF), SchemaError);
  const auto ok = parse_relation<PF>("3*x*y - y", vars, kF);
  ASSERT_EQ(ok.terms.size(), 2u);
  EXPECT_EQ(ok.terms[0].second, kF.from_int(3));
  EXPECT_EQ(ok.terms[1].second, kF.from_int(-1));
  EXPECT_THROW(quiver_algebra<PF>(1, {{"a", 0, 2}}, std::vector<std::string>{}, 2, kF), LabelError);
}

TEST(Builders, KoszulDuals) {
  // K[x]/(x³) has R = V^{⊗3}, so the dual is K[x].
  const auto cubic = n_homogeneous_dual<PF>(1, Subspace<PF>::span(kF, 1, {relation_tensor<PF>("x*x*x", 1, 3, kF)}), 3, 7);
  EXPECT_EQ(cubic.dims(), std::vector<std::size_t>(8, 1));
  // K[x,y]/(xy - yx) has the exterior algebra as quadratic dual.
  const auto ext = n_homogeneous_dual<PF>(2, Subspace<PF>::span(kF, 4, {relation_tensor<PF>("x*y - y*x", 2, 2, kF)}), 2, 4);
  EXPECT_EQ(ext.dims(), (std::vector<std::size_t>{1, 2, 1, 0, 0}));
  EXPECT_TRUE(validate_algebra(ext).holds);
  // With no relations the dual kills every word of length n.
  const auto none = n_homogeneous_dual<PF>(2, Subspace<PF>::zero(kF, 4), 2, 3);
  EXPECT_EQ(none.dims(), (std::vector<std::size_t>{1, 2, 0, 0}));
  EXPECT_THROW(relation_tensor<PF>("x*y", 2, 3, kF), PreconditionError);
  EXPECT_THROW(n_homogeneous_dual<PF>(2, Subspace<PF>::zero(kF, 4), 2, 1), PreconditionError);
}

TEST(Builders, TwoVariableWitness) {
  const auto iii = two_var_witness<PF>(WitnessCase::iii, 1, -1, DegreeWindow::integers(-1, 1), kF);
  EXPECT_EQ(iii.dims(), (std::vector<std::size_t>{1, 2, 1}));
  EXPECT_TRUE(validate_algebra(iii).holds);
  const auto iv = two_var_witness<PF>(WitnessCase::iv, 1, 3, DegreeWindow::integers(0, 4), kF);
  EXPECT_EQ(iv.dims(), (std::vector<std::size_t>{1, 1, 0, 1, 1}));
  EXPECT_TRUE(validate_algebra(iv).holds);
  EXPECT_THROW(two_var_witness<PF>(WitnessCase::iii, 1, 2, DegreeWindow::integers(0, 3), kF), PreconditionError);
  EXPECT_THROW(two_var_witness<PF>(WitnessCase::iv, 1, 1, DegreeWindow::integers(0, 3), kF), PreconditionError);
  EXPECT_THROW(two_var_witness<PF>(WitnessCase::iv, 1, 3, DegreeWindow::integers(0, 3), kF), WindowViolation);
}

}  // namespace
