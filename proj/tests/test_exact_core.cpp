#include <gtest/gtest.h>

#include <random>

#include "torsionlab/linalg.hpp"
#include "torsionlab/spectral.hpp"

using namespace tl;

namespace {

Mat random_mat(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> d(lo, hi);
  Mat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

}  // namespace

TEST(Rational, ParseAndPrintRoundTrip) {
  EXPECT_EQ(to_string(parse_rational("4/6")), "2/3");
  EXPECT_EQ(to_string(parse_rational("-3")), "-3");
  EXPECT_EQ(to_string(parse_rational("0/5")), "0");
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational(" 7 "), Rational(7));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
}

TEST(Rational, MakeRationalCanonicalizes) {
  EXPECT_EQ(to_string(make_rational(4, 2)), "2");
  EXPECT_EQ(to_string(make_rational(3, -6)), "-1/2");
  EXPECT_EQ(make_rational(0, 7), Rational(0));
  EXPECT_THROW(make_rational(1, 0), std::invalid_argument);
}

TEST(Matrix, InverseIsTwoSided) {
  std::mt19937_64 rng(1);
  for (int it = 0; it < 20; ++it) {
    Mat a = random_mat(rng, 4, 4);
    auto inv = inverse(a);
    if (sgn(det(a)) == 0) {
      EXPECT_FALSE(inv.has_value());
      continue;
    }
    ASSERT_TRUE(inv.has_value());
    EXPECT_EQ(a * *inv, Mat::identity(4));
    EXPECT_EQ(*inv * a, Mat::identity(4));
  }
}

TEST(Matrix, DeterminantIsMultiplicative) {
  std::mt19937_64 rng(2);
  for (int it = 0; it < 20; ++it) {
    Mat a = random_mat(rng, 3, 3), b = random_mat(rng, 3, 3);
    EXPECT_EQ(det(a * b), det(a) * det(b));
  }
}

TEST(Matrix, OuterIsRankOne) {
  Mat o = outer({1, 2, 3}, {0, 1, -1});
  EXPECT_EQ(rank(o), 1u);
  EXPECT_EQ((o * Vec{0, 1, 0}), (Vec{1, 2, 3}));
}

TEST(Linalg, RankNullityProperty) {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 30; ++it) {
    Mat a = random_mat(rng, 3, 5, -1, 1);
    Subspace ker = null_space(a);
    EXPECT_EQ(ker.dim() + rank(a), 5u);
    for (const auto& k : ker.basis()) EXPECT_TRUE(is_zero(a * k));
  }
}

TEST(Linalg, SumIntersectionDimensionFormula) {
  std::mt19937_64 rng(4);
  for (int it = 0; it < 30; ++it) {
    Subspace a = Subspace::row_space(random_mat(rng, 3, 6, -1, 1));
    Subspace b = Subspace::row_space(random_mat(rng, 4, 6, -1, 1));
    EXPECT_EQ(sum(a, b).dim() + intersect(a, b).dim(), a.dim() + b.dim());
    EXPECT_TRUE(sum(a, b).contains(a));
    EXPECT_TRUE(a.contains(intersect(a, b)));
  }
}

TEST(Linalg, SubspaceEqualityIgnoresSpanningSet) {
  Subspace a = Subspace::span(3, {{1, 1, 0}, {0, 1, 1}});
  Subspace b = Subspace::span(3, {{1, 2, 1}, {1, 0, -1}, {2, 2, 0}});
  EXPECT_EQ(a, b);
  EXPECT_TRUE(a.contains(Vec{1, 0, -1}));
  EXPECT_FALSE(a.contains(Vec{1, 0, 0}));
}

TEST(Linalg, SolveAndPreimage) {
  Mat m{{1, 2}, {3, 4}};
  auto x = solve(m, {5, 6});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(m * *x, (Vec{5, 6}));
  EXPECT_FALSE(solve(Mat{{1, 1}, {1, 1}}, {1, 2}).has_value());
  LinMap proj(Mat{{1, 0, 0}, {0, 1, 0}});
  EXPECT_EQ(preimage(proj, Subspace::zero(2)).dim(), 1u);
}

TEST(Linalg, DimensionMismatchThrows) {
  EXPECT_THROW(sum(Subspace::full(2), Subspace::full(3)), DimensionMismatch);
}

TEST(Spectral, CharpolyCayleyHamilton) {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 20; ++it) {
    Mat a = random_mat(rng, 4, 4);
    Poly p = charpoly(a);
    EXPECT_EQ(p.degree(), 4);
    EXPECT_EQ(p.eval(0), det(a));  // monic of even degree: p(0) = det(-a) = det(a)
    EXPECT_TRUE(eval(p, a).is_zero());
  }
}

TEST(Spectral, SturmCountsRealRoots) {
  Poly p = Poly::linear_root(1) * Poly::linear_root(2) * Poly::linear_root(-3);
  EXPECT_EQ(real_root_count(p), 3u);
  EXPECT_EQ(real_root_count(p, Rational(0), Rational(5)), 2u);
  Poly q(Vec{1, 0, 1});  // x² + 1
  EXPECT_EQ(real_root_count(q), 0u);
  Poly r(Vec{-2, 0, 1});  // x² - 2
  EXPECT_EQ(real_root_count(r), 2u);
  EXPECT_FALSE(rational_roots(r).has_value() && !rational_roots(r)->empty());
}

TEST(Spectral, SquarefreeDecomposition) {
  Poly p = pow(Poly::linear_root(1), 3) * Poly::linear_root(2);
  auto sf = squarefree_decomposition(p);
  Poly product = Poly::constant(1);
  for (const auto& [f, k] : sf) product = product * pow(f, k);
  EXPECT_EQ(product, p.monic());
}

TEST(Spectral, GcdAndDivmod) {
  Poly a = Poly::linear_root(1) * Poly::linear_root(2);
  Poly b = Poly::linear_root(1) * Poly::linear_root(3);
  EXPECT_EQ(gcd(a, b), Poly::linear_root(1));
  auto [q, r] = divmod(a, Poly::linear_root(2));
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(q, Poly::linear_root(1));
}
