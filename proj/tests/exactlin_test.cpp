#include <gtest/gtest.h>

#include <random>

#include "gka/field.hpp"
#include "gka/matrix.hpp"
#include "gka/subspace.hpp"

using namespace gka;

namespace {

template <ScalarField F>
Matrix<F> random_matrix(const F& f, std::size_t r, std::size_t c, std::mt19937_64& rng, int spread = 3) {
  std::uniform_int_distribution<int> d(-spread, spread);
  Matrix<F> m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = f.from_int(d(rng));
  return m;
}

// Low-rank matrices exercise kernels better than uniform ones.
template <ScalarField F>
Matrix<F> random_low_rank(const F& f, std::size_t r, std::size_t c, std::size_t k, std::mt19937_64& rng) {
  return random_matrix(f, r, k, rng) * random_matrix(f, k, c, rng);
}

template <typename F>
class FieldLaws : public ::testing::Test {
 protected:
  F field = make();
  static F make() {
    if constexpr (std::is_same_v<F, Rationals>) return Rationals{};
    else return PrimeField(101);
  }
};

using Fields = ::testing::Types<Rationals, PrimeField>;
TYPED_TEST_SUITE(FieldLaws, Fields);

TYPED_TEST(FieldLaws, RankNullity) {
  const auto& f = this->field;
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6, k = rng() % 4;
    const auto m = random_low_rank(f, r, c, k, rng);
    const auto ker = kernel(m);
    EXPECT_EQ(rank(m) + ker.dim(), c);
    EXPECT_EQ(image(m).dim(), rank(m));
    for (std::size_t i = 0; i < ker.dim(); ++i) {
      for (const auto& e : m.apply(ker.basis_vector(i))) EXPECT_TRUE(f.is_zero(e));
    }
  }
}

TYPED_TEST(FieldLaws, GrassmannFormula) {
  const auto& f = this->field;
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 5;
    const auto v = Subspace<TypeParam>::row_space(random_low_rank(f, 1 + rng() % 4, n, 1 + rng() % 3, rng));
    const auto w = Subspace<TypeParam>::row_space(random_low_rank(f, 1 + rng() % 4, n, 1 + rng() % 3, rng));
    const auto s = sum(v, w);
    const auto i = intersect(v, w);
    EXPECT_EQ(s.dim() + i.dim(), v.dim() + w.dim());
    EXPECT_TRUE(contains(s, v));
    EXPECT_TRUE(contains(v, i));
    EXPECT_TRUE(contains(w, i));
  }
}

TYPED_TEST(FieldLaws, SolveFindsPreimages) {
  const auto& f = this->field;
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    const auto m = random_low_rank(f, r, c, 1 + rng() % 3, rng);
    const auto x = random_matrix(f, c, 1, rng).column(0);
    const auto b = m.apply(x);
    const auto y = solve(m, b);
    ASSERT_TRUE(y.has_value());
    EXPECT_EQ(m.apply(*y), b);
  }
}

TYPED_TEST(FieldLaws, QuotientSectionSplits) {
  const auto& f = this->field;
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const auto w = Subspace<TypeParam>::row_space(random_low_rank(f, rng() % 4, n, rng() % 3, rng));
    const auto q = quotient_map(w);
    const auto s = quotient_section(w);
    EXPECT_EQ(q.rows(), n - w.dim());
    EXPECT_EQ(q * s, Matrix<TypeParam>::identity(f, n - w.dim()));
    for (std::size_t i = 0; i < w.dim(); ++i) {
      for (const auto& e : q.apply(w.basis_vector(i))) EXPECT_TRUE(f.is_zero(e));
    }
  }
}

TYPED_TEST(FieldLaws, RowReducedBasisIsCanonical) {
  const auto& f = this->field;
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto m = random_low_rank(f, 4, 5, 2, rng);
    const auto v = Subspace<TypeParam>::row_space(m);
    // A different spanning set of the same space gives the same basis.
    const auto mixed = random_matrix(f, 4, 4, rng) * m;
    const auto w = Subspace<TypeParam>::row_space(mixed);
    if (rank(mixed) == rank(m)) {
      EXPECT_EQ(v.basis(), w.basis());
    }
  }
}

TEST(Rationals, FrozenKernelAndInverse) {
  const Rationals q;
  auto m = Matrix<Rationals>::from_rows(q, 3, {{q.parse("1"), q.parse("2"), q.parse("3")},
                                              {q.parse("2"), q.parse("4"), q.parse("6")},
                                              {q.parse("1/2"), q.parse("0"), q.parse("-1")}});
  const auto ker = kernel(m);
  ASSERT_EQ(ker.dim(), 1u);
  // (2, -5/2, 1) up to scale.
  const auto v = ker.basis_vector(0);
  EXPECT_EQ(v[0] / v[2], q.parse("2"));
  EXPECT_EQ(v[1] / v[2], q.parse("-5/2"));
  EXPECT_EQ(q.to_string(q.parse("6/-4")), "-3/2");
  EXPECT_FALSE(is_invertible(m));
  EXPECT_TRUE(is_invertible(Matrix<Rationals>::identity(q, 3)));
}

TEST(Rationals, RejectsMalformed) {
  const Rationals q;
  EXPECT_THROW(q.parse("1/0"), SchemaError);
  EXPECT_THROW(q.parse("abc"), SchemaError);
}

TEST(PrimeField, Arithmetic) {
  const PrimeField f(7);
  EXPECT_EQ(f.mul(3, f.inv(3)), 1u);
  EXPECT_EQ(f.from_int(-1), 6u);
  EXPECT_EQ(f.parse("1/2"), 4u);
  EXPECT_EQ(f.name(), "GF(7)");
  EXPECT_THROW(PrimeField(8), PreconditionError);
  EXPECT_THROW(f.parse("1/7"), SchemaError);
}

// Over GF(3) the kernel can be counted by listing all vectors.
TEST(PrimeField, KernelMatchesExhaustiveCount) {
  const PrimeField f(3);
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 5;
    const auto m = random_matrix(f, r, c, rng, 1);
    std::size_t count = 0, total = 1;
    for (std::size_t i = 0; i < c; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      Vector<PrimeField> x(c);
      for (std::size_t i = 0, k = code; i < c; ++i, k /= 3) x[i] = static_cast<std::uint32_t>(k % 3);
      bool zero = true;
      for (auto e : m.apply(x)) zero = zero && e == 0;
      count += zero;
    }
    std::size_t expect = 1;
    for (std::size_t i = 0; i < kernel(m).dim(); ++i) expect *= 3;
    EXPECT_EQ(count, expect);
  }
}

TEST(Matrix, EmptyShapesCompose) {
  const Rationals q;
  const Matrix<Rationals> a(q, 0, 3), b(q, 3, 0);
  EXPECT_EQ((b * a).rows(), 3u);
  EXPECT_TRUE((b * a).is_zero());
  EXPECT_EQ((a * b).rows(), 0u);
  EXPECT_EQ(kernel(a).dim(), 3u);
}

TEST(Matrix, ShapeMismatchThrows) {
  const Rationals q;
  const Matrix<Rationals> a(q, 2, 3), b(q, 2, 3);
  EXPECT_THROW(a * b, ShapeError);
  EXPECT_THROW(a.apply(Vector<Rationals>(2, q.zero())), ShapeError);
}

}  // namespace
