#include <gtest/gtest.h>

#include "torsionlab/catalog.hpp"

using namespace tl;

TEST(Builders, Dimensions) {
  EXPECT_EQ(gl(4).dim(), 16u);
  EXPECT_EQ(sl(3).dim(), 8u);
  EXPECT_EQ(sp(2).dim(), 10u);
  EXPECT_EQ(sp(3).dim(), 21u);
  EXPECT_EQ(gl_C(2).dim(), 8u);
  EXPECT_EQ(sl_C(2).dim(), 6u);
  EXPECT_EQ(sp_C(1).dim(), 6u);
  EXPECT_EQ(u(2, 0).dim(), 4u);
  EXPECT_EQ(u(1, 1).dim(), 4u);
  EXPECT_EQ(su(3).dim(), 8u);
  EXPECT_EQ(so(4, 0).dim(), 6u);
  EXPECT_EQ(so(3, 1).dim(), 6u);
  EXPECT_EQ(gl_H(1).dim(), 4u);
  EXPECT_EQ(sp_H(1).dim(), 3u);
  EXPECT_EQ(delta_gl(2).dim(), 4u);
  EXPECT_EQ(zero_algebra(3).dim(), 0u);
}

TEST(Builders, CatalogIsClosedUnderBracket) {
  for (const auto& e : standard_catalog()) EXPECT_TRUE(is_subalgebra(e.algebra.basis())) << e.label;
}

TEST(Builders, StructuresArePreserved) {
  for (const auto& e : standard_catalog()) {
    const auto& h = e.algebra;
    EXPECT_EQ(check_structures(h.n(), h.basis(), h.structures()), "") << e.label;
  }
}

TEST(Builders, ComplexStructureSquaresToMinusOne) {
  Mat J = complex_structure(3);
  EXPECT_EQ(J * J, -Mat::identity(6));
  Mat T = tangent_structure(2);
  EXPECT_TRUE((T * T).is_zero());
  Mat P = product_structure(5, 2);
  EXPECT_EQ(P * P, Mat::identity(5));
}

TEST(Builders, QuaternionRelations) {
  Mat I = quaternion_right('i'), J = quaternion_right('j');
  EXPECT_EQ(I, complex_structure(2));
  EXPECT_EQ(I * I, -Mat::identity(4));
  EXPECT_EQ(J * J, -Mat::identity(4));
  EXPECT_EQ(I * J, -(J * I));
}

TEST(Builders, ShorthandDispatch) {
  auto spec = parse_shorthand("u:p=1,q=1");
  ASSERT_TRUE(spec.has_value());
  EXPECT_EQ(build(*spec).dim(), 4u);
  EXPECT_FALSE(parse_shorthand("").has_value());
  EXPECT_FALSE(parse_shorthand("gl:n").has_value());
  EXPECT_THROW(build(BuildSpec{"nosuch", {}, std::nullopt}), UnknownBuilder);
}

TEST(Algebra, RejectsNonClosedBasis) {
  std::vector<Mat> basis{Mat::unit(2, 2, 0, 1), Mat::unit(2, 2, 1, 0)};
  EXPECT_THROW(LinearSubalgebra(2, basis), InvalidAlgebra);
}

TEST(Algebra, RejectsBrokenStructure) {
  Structures s;
  s.J = complex_structure(1);
  EXPECT_THROW(LinearSubalgebra(2, {Mat::unit(2, 2, 0, 0)}, "bad", s), InvalidAlgebra);
}

TEST(Algebra, ConjugationPreservesDimensionAndClosure) {
  Mat T{{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 2, 1}, {1, 0, 0, 1}};
  auto h = conjugate(sp(2), T);
  EXPECT_EQ(h.dim(), 10u);
  EXPECT_TRUE(is_subalgebra(h.basis()));
}

TEST(Algebra, CommutantOfComplexStructureIsGlC) {
  EXPECT_EQ(commutant(complex_structure(2)).span(), gl_C(2).span());
}

TEST(Algebra, IntersectionOfGlCAndSoIsU) {
  EXPECT_EQ(algebra_intersection(gl_C(2), so(4, 0)), u(2, 0).span());
}

TEST(Metric, MusicalIsomorphismsAreInverse) {
  MetricContext ctx(Mat::diag({1, -1, 1}));
  Vec u{1, 2, 3};
  EXPECT_EQ(musical_sharp(ctx, musical_flat(ctx, u)), u);
  EXPECT_FALSE(is_degenerate(ctx, standard_hyperplane(3)));
  MetricContext null_ctx(Mat{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
  EXPECT_TRUE(is_degenerate(null_ctx, standard_hyperplane(3)));
}
