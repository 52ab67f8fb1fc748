#include <gtest/gtest.h>

#include "torsionlab/catalog.hpp"
#include "torsionlab/classifiers.hpp"

using namespace tl;

namespace {

LinearSubalgebra entry(const std::string& label) {
  for (auto& e : standard_catalog())
    if (e.label == label) return e.algebra;
  throw std::runtime_error("no catalog entry " + label);
}

const RuleResult* find_rule(const std::vector<RuleResult>& rs, const std::string& name) {
  for (const auto& r : rs)
    if (r.rule == name) return &r;
  return nullptr;
}

}  // namespace

TEST(Crosscheck, EveryFiredRuleMatchesEngine) {
  std::size_t fired = 0;
  for (const auto& e : standard_catalog()) {
    auto rep = crosscheck(e.algebra);
    for (const auto& c : rep.entries) {
      EXPECT_TRUE(c.equal) << e.label << " " << c.rule;
      ++fired;
    }
  }
  EXPECT_GT(fired, 20u);
}

TEST(ClosedForm, ComplexRule) {
  auto cf = closed_form_F(gl_C(2));
  ASSERT_TRUE(cf.has_value());
  EXPECT_EQ(cf->rule, "complex");
  EXPECT_EQ(cf->F.dim(), 5u);
}

TEST(ClosedForm, NondegenerateMetricRule) {
  auto rules = evaluate_rules(so(2, 2));
  const auto* r = find_rule(rules, "nondeg-metric");
  ASSERT_NE(r, nullptr);
  ASSERT_TRUE(r->applies);
  EXPECT_EQ(*r->F, obstruction_space(so(2, 2)));
}

TEST(ClosedForm, LagrangianSymplecticRule) {
  const auto h = lagrangian_symplectic(2);
  auto rules = evaluate_rules(h);
  const auto* r = find_rule(rules, "S2Uv");
  ASSERT_NE(r, nullptr);
  ASSERT_TRUE(r->applies);
  EXPECT_EQ(r->F->dim(), 4u);
  EXPECT_EQ(*r->F, end_L(2));
  EXPECT_EQ(obstruction_space(h), end_L(2));
}

TEST(ClosedForm, UnitaryRule) {
  auto rules = evaluate_rules(u(2, 0));
  const auto* r = find_rule(rules, "unitary-nondegenerate");
  ASSERT_NE(r, nullptr);
  ASSERT_TRUE(r->applies);
  EXPECT_EQ(r->F->dim(), 2u);
}

TEST(ClosedForm, K1ZeroWithRotationOutsideInvariantPart) {
  // n = 3, h = span{J₀ ⊕ 0, E₃₃}.
  Mat rot = Mat::block_diag({complex_structure(1), Mat(1, 1)});
  LinearSubalgebra h(3, {rot, Mat::unit(3, 3, 2, 2)}, "rot+E33");
  EXPECT_EQ(first_prolongation(h).dim(), 0u);
  auto rules = evaluate_rules(h);
  const auto* b = find_rule(rules, "K1-zero-b");
  ASSERT_NE(b, nullptr);
  ASSERT_TRUE(b->applies) << b->note;
  EXPECT_EQ(*b->F, obstruction_space(h));
  const auto* a = find_rule(rules, "K1-zero-a");
  ASSERT_NE(a, nullptr);
  EXPECT_FALSE(a->applies);
}

TEST(ClosedForm, MissingStructureRulesAreSkippedWithNote) {
  for (const auto& r : evaluate_rules(sp(2))) {
    if (r.rule == "complex") {
      EXPECT_FALSE(r.applies);
      EXPECT_FALSE(r.note.empty());
    }
  }
}

TEST(Profile, MetricExamples) {
  auto p = profile(so(4, 0));
  EXPECT_EQ(p.h1.dim(), 0u);
  EXPECT_EQ(p.W.dim(), 0u);
  auto q = profile(u(2, 0));
  ASSERT_TRUE(q.h2.has_value());
  EXPECT_EQ(q.h2->dim(), 1u);
}

TEST(TotallyReal, Types) {
  const Mat J = complex_structure(2);
  EXPECT_TRUE(is_totally_real(gl_H(1), J));
  EXPECT_EQ(totally_real_type(gl_H(1), J).tag, TotallyRealTag::I);
  EXPECT_EQ(totally_real_type(gl_H(1), J).h2.dim(), 0u);
  EXPECT_EQ(totally_real_type(u(2, 0), J).tag, TotallyRealTag::III);
  const auto dgl = entry("Dgl2");
  ASSERT_TRUE(dgl.structures().J.has_value());
  EXPECT_EQ(totally_real_type(dgl, *dgl.structures().J).tag, TotallyRealTag::II);
  EXPECT_THROW(totally_real_type(gl_C(2), J), NotTotallyReal);
}

TEST(LowRank, Quaternions) {
  EXPECT_EQ(generic_rank(gl_H(1), 1), 4u);
  EXPECT_EQ(low_rank_witness(gl_H(1), 2).verdict, LowRankVerdict::certified);
  EXPECT_EQ(low_rank_witness(sp_H(1), 2).verdict, LowRankVerdict::certified);
  EXPECT_EQ(generic_rank(su(2), 1), 4u);
}

TEST(LowRank, RankOneWitness) {
  LinearSubalgebra h(3, {Mat::unit(3, 3, 0, 0)}, "E11");
  auto r = low_rank_witness(h, 1);
  EXPECT_EQ(r.verdict, LowRankVerdict::refuted);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(rank(*r.witness), 1u);
}

TEST(SymSquare, Dimension) {
  Subspace U = Subspace::span(3, {{1, 0, 0}, {0, 1, 0}});
  EXPECT_EQ(sym_square_tensor(U, {0, 0, 1}).dim(), 3u);
}
