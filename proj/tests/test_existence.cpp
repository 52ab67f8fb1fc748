#include <gtest/gtest.h>

#include <random>

#include "torsionlab/catalog.hpp"
#include "torsionlab/existence.hpp"

using namespace tl;

namespace {

Mat random_mat(std::mt19937_64& rng, std::size_t n, int lo = -2, int hi = 2) {
  std::uniform_int_distribution<int> d(lo, hi);
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
  return m;
}

Mat random_in(const Subspace& s, std::size_t side, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-2, 2);
  Vec flat(s.ambient_dim(), Rational(0));
  for (const auto& b : s.basis()) {
    const Rational c = d(rng);
    for (std::size_t i = 0; i < flat.size(); ++i) flat[i] += c * b[i];
  }
  return Mat::from_flat(side, side, flat);
}

Mat random_invertible(std::mt19937_64& rng, std::size_t n) {
  for (;;) {
    Mat t = random_mat(rng, n);
    if (sgn(det(t)) != 0) return t;
  }
}

// Re-derives the certificate from the adapted basis the decider returned.
bool certificate_from(const TypeVerdict& t, const OrbitCatalog& cat, const Mat& f) {
  if (!t.basis) return false;
  const OrbitRep* rep = nullptr;
  for (const auto& r : cat.reps)
    if (t.type.ends_with(r.label)) rep = &r;
  if (!rep) return false;
  const Mat fp = *inverse(*t.basis) * f * *t.basis;
  auto res = check_torsion_free(cat.h, AlmostAbelian(fp), rep->T);
  const auto* c = std::get_if<Certificate>(&res);
  return c && c->valid();
}

}  // namespace

TEST(Orbits, RepresentativeCounts) {
  EXPECT_EQ(orbit_catalog("GL(P0)", 4, 2).reps.size(), 3u);
  EXPECT_EQ(orbit_catalog("GL(T0)", 4).reps.size(), 2u);
  EXPECT_EQ(orbit_catalog("GL(m,C)", 4).reps.size(), 1u);
  EXPECT_THROW(orbit_catalog("GL(T0)", 5), InvalidSignature);
  EXPECT_THROW(orbit_catalog("nope", 4), UnsupportedGroup);
}

TEST(Orbits, TransformsMapRepresentativeToStandardHyperplane) {
  for (const auto& [group, n, p] : std::vector<std::tuple<std::string, std::size_t, std::size_t>>{
           {"GL(P0)", 4, 2}, {"GL(P0)", 5, 2}, {"GL(P0)", 5, 3}, {"GL(T0)", 4, 0}, {"GL(T0)", 6, 0}}) {
    for (const auto& r : orbit_catalog(group, n, p).reps) {
      std::vector<Vec> imgs;
      for (const auto& u : r.U.basis()) imgs.push_back(r.T * u);
      EXPECT_EQ(Subspace::span(n, imgs), standard_hyperplane(n)) << group << " " << r.label;
    }
  }
}

TEST(Patterns, MatchEngineOnConjugatedAlgebras) {
  for (const auto& [n, p] : std::vector<std::pair<std::size_t, std::size_t>>{{4, 2}, {5, 2}, {5, 3}, {4, 1}}) {
    const auto cat = orbit_catalog("GL(P0)", n, p);
    for (int type = 1; type <= 3; ++type)
      EXPECT_EQ(product_obstruction(n, p, type), obstruction_space(conjugate(cat.h, cat.reps[type - 1].T)))
          << n << "," << p << " type " << type;
  }
  for (std::size_t n : {4u, 6u}) {
    const auto cat = orbit_catalog("GL(T0)", n);
    for (int type = 1; type <= 2; ++type)
      EXPECT_EQ(tangent_obstruction(n, type), obstruction_space(conjugate(cat.h, cat.reps[type - 1].T)))
          << n << " type " << type;
  }
}

TEST(Patterns, Dimensions) {
  EXPECT_EQ(product_obstruction(4, 2, 1).dim(), 7u);
  EXPECT_EQ(product_obstruction(4, 2, 3).dim(), 5u);
  EXPECT_EQ(tangent_obstruction(4, 2).dim(), 8u);
  EXPECT_EQ(hyperparacomplex_pattern(2, 'A').dim(), 4u);
  EXPECT_EQ(hyperparacomplex_pattern(3, 'A').dim(), 9u);
  EXPECT_THROW(hyperparacomplex_pattern(1, 'B'), InvalidSignature);
}

TEST(Patterns, HyperparacomplexNormalFormMatchesEngine) {
  EXPECT_EQ(hyperparacomplex_pattern(2, 'A'), obstruction_space(delta_gl(2, HpcFrame::e_invariant)));
  EXPECT_EQ(hyperparacomplex_pattern(3, 'A'), obstruction_space(delta_gl(3, HpcFrame::e_invariant)));
  EXPECT_EQ(hyperparacomplex_pattern(3, 'B'), obstruction_space(delta_gl(3, HpcFrame::case_b)));
}

TEST(Decide, ProductAlwaysYesWithCertificates) {
  std::mt19937_64 rng(21);
  for (std::size_t n : {3u, 4u, 5u})
    for (std::size_t p = 1; p < n; ++p)
      for (int it = 0; it < 8; ++it) {
        const Mat f = random_mat(rng, n - 1);
        const auto d = decide_product(AlmostAbelian(f), p);
        ASSERT_NE(d.verdict, Verdict::no);
        ASSERT_NE(d.verdict, Verdict::unknown);
        if (d.verdict == Verdict::yes) {
          ASSERT_TRUE(d.detail.has_value());
          EXPECT_TRUE(certificate_from(*d.detail, orbit_catalog("GL(P0)", n, p), f));
        }
      }
}

TEST(Decide, TangentAlwaysYesWithCertificates) {
  std::mt19937_64 rng(22);
  for (std::size_t n : {4u, 6u})
    for (int it = 0; it < 10; ++it) {
      const Mat f = random_mat(rng, n - 1);
      const auto d = decide_tangent(AlmostAbelian(f));
      ASSERT_NE(d.verdict, Verdict::no);
      if (d.verdict == Verdict::yes) EXPECT_TRUE(certificate_from(*d.detail, orbit_catalog("GL(T0)", n), f));
    }
  EXPECT_THROW(decide_tangent(AlmostAbelian(Mat(4, 4))), InvalidSignature);
}

TEST(Decide, NilpotentAndRotationExamples) {
  const auto zero = decide_product(AlmostAbelian(Mat(3, 3)), 2);
  EXPECT_EQ(zero.verdict, Verdict::yes);
  const Mat rot{{0, -1, 0}, {1, 0, 0}, {0, 0, 1}};
  const auto r = decide_product(AlmostAbelian(rot), 2);
  EXPECT_EQ(r.verdict, Verdict::yes);
  EXPECT_TRUE(certificate_from(*r.detail, orbit_catalog("GL(P0)", 4, 2), rot));
}

TEST(Decide, IrreducibleQuarticIsExistenceOnly) {
  // Companion matrix of x⁴ - 2 (irreducible over Q).
  const Mat f{{0, 0, 0, 2}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}};
  EXPECT_EQ(decide_product(AlmostAbelian(f), 2).verdict, Verdict::yes_existence_only);
}

TEST(Hyperparacomplex, Examples) {
  auto v = [](const Mat& f) { return classify_hyperparacomplex(AlmostAbelian(f)).verdict; };
  EXPECT_EQ(v(Mat::diag({1, 2, 3})), HpcVerdict::no);
  EXPECT_EQ(v(Mat(3, 3)), HpcVerdict::yes_caseA);
  EXPECT_EQ(v(Mat::diag({1, 1, 5})), HpcVerdict::yes_caseA);
  EXPECT_EQ(v(Mat{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}), HpcVerdict::yes_caseA);
  EXPECT_EQ(v(Mat{{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}), HpcVerdict::no);
  EXPECT_EQ(v(Mat{{0, -1, 0}, {1, 0, 0}, {0, 0, 3}}), HpcVerdict::no);
}

TEST(Hyperparacomplex, CaseADataCertifies) {
  const Mat f{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}};
  const auto c = classify_hyperparacomplex(AlmostAbelian(f));
  ASSERT_TRUE(c.basis.has_value());
  const Mat fp = *inverse(*c.basis) * f * *c.basis;
  EXPECT_TRUE(hyperparacomplex_pattern(2, 'A').contains(fp.flat()));
  ASSERT_TRUE(c.structure.has_value());
  EXPECT_EQ(c.structure->A.rows(), 1u);
}

TEST(Hyperparacomplex, ConjugatedNormalFormsAreRecognised) {
  std::mt19937_64 rng(23);
  for (std::size_t m : {2u, 3u})
    for (char which : {'A', 'B'})
      for (int it = 0; it < 10; ++it) {
        const std::size_t N = 2 * m - 1;
        const Mat f = random_in(hyperparacomplex_pattern(m, which), N, rng);
        const Mat T = random_invertible(rng, N);
        const auto c = classify_hyperparacomplex(AlmostAbelian(*inverse(T) * f * T));
        EXPECT_NE(c.verdict, HpcVerdict::no) << which << " " << to_string(f);
      }
}

TEST(Hyperparacomplex, Flatness) {
  HpcStructureData d;
  d.A = Mat{{-1}};
  d.a = 1;
  d.w1 = {Rational(-2)};
  d.w2 = {Rational(0)};
  d.lambda = 0;
  d.mu = 1;
  const auto r = hpc_flatness(d);
  EXPECT_FALSE(r.flat);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ((*r.witness)[0], Rational(-2));

  d.w1 = {Rational(0)};
  EXPECT_TRUE(hpc_flatness(d).flat);

  // w in the 2a-eigenspace of A.
  d.A = Mat{{2}};
  d.w1 = {Rational(5)};
  EXPECT_TRUE(hpc_flatness(d).flat);

  d.lambda = 0;
  d.mu = 0;
  EXPECT_THROW(hpc_flatness(d), InvalidStructureData);
}

TEST(Families, UnitaryAndComplex) {
  auto verdict = [](const char* fam, const Mat& f) { return admits_torsion_free(fam, AlmostAbelian(f)).verdict; };
  EXPECT_EQ(verdict("u", Mat::diag({1, 2, 3})), Verdict::no);
  EXPECT_EQ(verdict("u", Mat{{0, -2, 0}, {2, 0, 0}, {0, 0, 5}}), Verdict::yes);
  EXPECT_EQ(verdict("u", Mat{{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}), Verdict::no);
  EXPECT_EQ(verdict("gl_C", Mat::diag({1, 2, 3})), Verdict::no);
  EXPECT_EQ(verdict("gl_C", Mat{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}), Verdict::yes);
  EXPECT_THROW(admits_torsion_free("u", AlmostAbelian(Mat(4, 4))), InvalidSignature);
  EXPECT_THROW(admits_torsion_free("nope", AlmostAbelian(Mat(3, 3))), UnsupportedGroup);
}

TEST(Families, UnitaryYesCarriesValidCertificate) {
  const Mat f{{0, -2, 0}, {2, 0, 0}, {0, 0, 5}};
  const auto rep = admits_torsion_free("u", AlmostAbelian(f));
  ASSERT_EQ(rep.verdict, Verdict::yes);
  const auto& t = rep.per_type.front();
  ASSERT_TRUE(t.basis.has_value());
  const Mat fp = *inverse(*t.basis) * f * *t.basis;
  EXPECT_TRUE(obstruction_space(u(2, 0)).contains(fp.flat()));
}

TEST(Families, ProductNeedsSignature) {
  EXPECT_THROW(admits_torsion_free("product", AlmostAbelian(Mat(3, 3))), InvalidSignature);
  EXPECT_EQ(admits_torsion_free("product", AlmostAbelian(Mat(3, 3)), {{"p", 1}}).per_type.size(), 3u);
}

TEST(Families, LiteralMembership) {
  EXPECT_EQ(admits_torsion_free(sp(2), AlmostAbelian(Mat{{0, 0, 0}, {0, 0, 0}, {1, 0, 0}})).verdict, Verdict::yes);
  EXPECT_EQ(admits_torsion_free(sp(2), AlmostAbelian(Mat{{0, 0, 1}, {0, 0, 0}, {0, 0, 0}})).verdict,
            Verdict::unknown);
}

TEST(Spectral, JordanDataAndCyclicBasis) {
  const Mat f{{2, 1, 0, 0}, {0, 2, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}};
  auto jd = jordan_data(f);
  ASSERT_TRUE(jd.has_value());
  std::size_t total = 0;
  for (const auto& p : jd->pieces)
    for (auto s : p.sizes) total += s * static_cast<std::size_t>(p.factor.degree());
  EXPECT_EQ(total, 4u);
  auto cd = cyclic_decomposition(f);
  ASSERT_TRUE(cd.has_value());
  std::vector<Vec> all;
  for (const auto& b : cd->blocks)
    for (auto& v : block_basis(f, b)) all.push_back(v);
  EXPECT_EQ(Subspace::span(4, all).dim(), 4u);
}

TEST(Spectral, RationalInvariantSubspace) {
  std::mt19937_64 rng(24);
  const Mat f{{1, 0, 0}, {0, 2, 0}, {0, 0, 3}};
  const Mat T = random_invertible(rng, 3);
  const Mat g = *inverse(T) * f * T;
  for (std::size_t d = 0; d <= 3; ++d) {
    auto s = rational_invariant_subspace(g, d);
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(s->dim(), d);
    for (const auto& v : s->basis()) EXPECT_TRUE(s->contains(g * v));
  }
}
