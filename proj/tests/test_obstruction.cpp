#include <gtest/gtest.h>

#include <random>

#include "torsionlab/catalog.hpp"
#include "torsionlab/obstruction.hpp"

using namespace tl;

namespace {

Mat random_in(const Subspace& s, std::size_t side, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  Vec flat(s.ambient_dim(), Rational(0));
  for (const auto& b : s.basis()) {
    const Rational c = d(rng);
    for (std::size_t i = 0; i < flat.size(); ++i) flat[i] += c * b[i];
  }
  return Mat::from_flat(side, side, flat);
}

bool holds_valid(const CertificateResult& r) {
  const auto* c = std::get_if<Certificate>(&r);
  return c && c->valid();
}

}  // namespace

TEST(Rref, HandExamples) {
  auto r = rref(Mat{{2, 4}, {1, 2}});
  EXPECT_EQ(r.rank, 1u);
  EXPECT_EQ(r.reduced, (Mat{{1, 2}, {0, 0}}));
  auto id = rref(Mat::identity(3));
  EXPECT_EQ(id.pivots, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(rref(Mat(2, 4)).rank, 0u);
}

TEST(KernelImage, HandExamples) {
  EXPECT_EQ(kernel(LinMap(Mat{{1, 1, 0}})), Subspace::span(3, {{1, -1, 0}, {0, 0, 1}}));
  EXPECT_EQ(image(LinMap(Mat{{1, 2}, {2, 4}})), Subspace::span(2, {{1, 2}}));
  EXPECT_EQ(kernel(LinMap(Mat::identity(3))).dim(), 0u);
  EXPECT_EQ(intersect(Subspace::full(2), Subspace::span(2, {{1, 1}})), Subspace::span(2, {{1, 1}}));
  EXPECT_TRUE(is_direct_sum(Subspace::span(2, {{1, 0}}), Subspace::span(2, {{1, 1}})));
}

TEST(Characteristic, SymplecticBlockForm) {
  // k̃ = {[[A, 0], [w^t, a]] : A ∈ sp(2)}.
  Subspace k = characteristic_subalgebra(sp(2));
  EXPECT_EQ(k.dim(), 6u);
  EXPECT_TRUE(k.contains(Mat{{1, 0, 0}, {0, -1, 0}, {0, 0, 0}}.flat()));
  EXPECT_TRUE(k.contains(Mat{{0, 0, 0}, {0, 0, 0}, {1, 2, 5}}.flat()));
  EXPECT_FALSE(k.contains(Mat{{0, 0, 1}, {0, 0, 0}, {0, 0, 0}}.flat()));
}

TEST(Characteristic, FullGlIsEverything) {
  EXPECT_EQ(characteristic_subalgebra(gl(4)).dim(), 9u);
  EXPECT_EQ(obstruction_space(gl(4)).dim(), 9u);
}

TEST(Prolongation, KnownDimensions) {
  EXPECT_EQ(first_prolongation(so(4, 0)).dim(), 6u);
  EXPECT_EQ(first_prolongation(gl_H(1)).dim(), 0u);
  EXPECT_EQ(first_prolongation(zero_algebra(3)).dim(), 0u);
  EXPECT_EQ(tableau(zero_algebra(3)).dim(), 0u);
}

TEST(Obstruction, KnownSpaces) {
  EXPECT_EQ(obstruction_space(sp(2)), characteristic_subalgebra(sp(2)));
  for (std::size_t n = 3; n <= 5; ++n) EXPECT_EQ(obstruction_space(so(n, 0)), Subspace::full((n - 1) * (n - 1)));
  EXPECT_EQ(obstruction_space(u(2, 0)).dim(), 2u);
  EXPECT_EQ(obstruction_space(gl_C(2)).dim(), 5u);
  EXPECT_EQ(obstruction_space(zero_algebra(3)).dim(), 0u);
}

TEST(Obstruction, ContainsCharacteristicSubalgebraOnCatalog) {
  for (const auto& e : standard_catalog())
    EXPECT_TRUE(obstruction_space(e.algebra).contains(characteristic_subalgebra(e.algebra))) << e.label;
}

TEST(Obstruction, IndependentOfTransversal) {
  for (const char* label : {"sp4", "u2", "glC2", "so22", "lag2"}) {
    for (const auto& e : standard_catalog()) {
      if (e.label != label) continue;
      const std::size_t n = e.algebra.n();
      Vec v = unit_vec(n, n - 1);
      v[0] = 3;
      if (n > 2) v[1] = -1;
      EXPECT_EQ(obstruction_space(e.algebra, v), obstruction_space(e.algebra)) << label;
    }
  }
}

TEST(Obstruction, ReportIsConsistent) {
  auto r = obstruction_report(sp(2));
  EXPECT_EQ(r.F, obstruction_space(sp(2)));
  EXPECT_TRUE(r.F.contains(r.k_tilde));
}

TEST(Obstruction, TransversalInsideHyperplaneThrows) {
  EXPECT_THROW(obstruction_space(sp(2), unit_vec(4, 0)), InvalidTransversal);
}

TEST(Certificate, ZeroEndomorphismAlwaysWorks) {
  for (const auto& e : standard_catalog()) {
    AlmostAbelian g(Mat(e.algebra.n() - 1, e.algebra.n() - 1));
    auto res = check_torsion_free(e.algebra, g);
    ASSERT_TRUE(holds_valid(res)) << e.label;
    EXPECT_TRUE(holds_valid(flat_certificate(e.algebra, g))) << e.label;
  }
}

TEST(Certificate, ComplexBlockFormGetsCertificate) {
  AlmostAbelian g(Mat{{0, -1, 0}, {1, 0, 0}, {0, 0, 0}});
  EXPECT_TRUE(holds_valid(check_torsion_free(gl_C(2), g)));
}

TEST(Certificate, OffPatternIsRefused) {
  AlmostAbelian g(Mat{{0, 0, 1}, {0, 0, 0}, {0, 0, 0}});
  auto res = check_torsion_free(sp(2), g);
  ASSERT_TRUE(std::holds_alternative<Refusal>(res));
  EXPECT_FALSE(std::get<Refusal>(res).residual.is_zero());
}

TEST(Certificate, FlatExamples) {
  // Any k̃ element of sp(4) and a rotation in so(4).
  EXPECT_TRUE(holds_valid(flat_certificate(sp(2), AlmostAbelian(Mat{{0, 1, 0}, {0, 0, 0}, {1, 2, 3}}))));
  EXPECT_TRUE(holds_valid(flat_certificate(so(4, 0), AlmostAbelian(Mat{{0, -1, 0}, {1, 0, 0}, {0, 0, 0}}))));
}

TEST(Certificate, RandomObstructionElementsRevalidate) {
  std::mt19937_64 rng(11);
  for (const auto& e : standard_catalog()) {
    const std::size_t m = e.algebra.n() - 1;
    const Subspace F = obstruction_space(e.algebra);
    for (int it = 0; it < 3; ++it) {
      AlmostAbelian g(random_in(F, m, rng));
      auto res = check_torsion_free(e.algebra, g);
      ASSERT_TRUE(holds_valid(res)) << e.label;
      auto again = revalidate(std::get<Certificate>(res), g);
      EXPECT_TRUE(again.valid()) << e.label;
      EXPECT_TRUE(is_zero(torsion_tensor(again.nabla, g))) << e.label;
    }
  }
}

TEST(Certificate, OutsideObstructionIsRefused) {
  std::mt19937_64 rng(12);
  for (const auto& e : standard_catalog()) {
    const std::size_t m = e.algebra.n() - 1;
    const Subspace F = obstruction_space(e.algebra);
    if (F.dim() == m * m) continue;
    Vec flat(m * m, Rational(0));
    for (std::size_t i = 0; i < m * m; ++i)
      if (!F.contains(unit_vec(m * m, i))) {
        flat[i] = 1;
        break;
      }
    EXPECT_TRUE(std::holds_alternative<Refusal>(
        check_torsion_free(e.algebra, AlmostAbelian(Mat::from_flat(m, m, flat)))))
        << e.label;
  }
}

TEST(Tensors, ZeroConnectionOnAbelian) {
  AlmostAbelian g(Mat(3, 3));
  ConnectionTensor nabla(4);
  EXPECT_TRUE(is_zero(torsion_tensor(nabla, g)));
  EXPECT_TRUE(is_zero(curvature_tensor(nabla, g)));
}

TEST(Tensors, RandomConnectionHasTorsionOnNonAbelian) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> d(-2, 2);
  AlmostAbelian g(Mat{{1, 0, 0}, {0, 2, 0}, {0, 0, 3}});
  Vec gamma(64);
  for (auto& x : gamma) x = d(rng);
  EXPECT_FALSE(is_zero(torsion_tensor(ConnectionTensor(4, gamma), g)));
}

TEST(Tensors, TorsionSkewSymmetric) {
  AlmostAbelian g(Mat{{1, 2, 0}, {0, 1, 0}, {3, 0, 1}});
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<int> d(-2, 2);
  Vec gamma(64);
  for (auto& x : gamma) x = d(rng);
  const Vec T = torsion_tensor(ConnectionTensor(4, gamma), g);
  // T is laid out as T[(i*n + j)*n + k] = (T(e_i, e_j))_k.
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(T[(i * 4 + j) * 4 + k], -T[(j * 4 + i) * 4 + k]);
}

TEST(Nijenhuis, ComplexExamples) {
  const Mat J = complex_structure(2);
  EXPECT_TRUE(is_zero(nijenhuis(J, AlmostAbelian(Mat(3, 3)))));
  // f = [[A, v], [0, a]] with A complex-linear extends to an integrable J.
  EXPECT_TRUE(is_zero(nijenhuis(J, AlmostAbelian(Mat{{1, -2, 3}, {2, 1, 4}, {0, 0, 7}}))));
  EXPECT_FALSE(is_zero(nijenhuis(J, AlmostAbelian(Mat{{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}))));
}

TEST(Bracket, AlmostAbelianBracket) {
  AlmostAbelian g(Mat{{1, 2}, {3, 4}});
  EXPECT_EQ(g.bracket(unit_vec(3, 2), unit_vec(3, 0)), (Vec{1, 3, 0}));
  EXPECT_EQ(g.bracket(unit_vec(3, 0), unit_vec(3, 1)), zeros(3));
}
