#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "torsionlab/obstruction.hpp"

namespace tl {

// Structure data the closed-form rules read. Defaults come from the
// structures attached to h (J falls back to the J of a hyperparacomplex
// triple).
struct RuleContext {
  std::optional<Mat> J;
  std::optional<Mat> g;
  std::optional<Vec> v;  // transversal for the h_v family

  static RuleContext from(const LinearSubalgebra& h);
};

class MissingStructure : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Subspaces of gl(n) live in R^{n²}; W and U_tilde in R^{n-1}, RJ in R^n,
// U_cal in (R^{n-1})* ≅ R^{n-1}.
struct StructuralProfile {
  Subspace h1, h1_inv, W;

  // Present when J is known.
  std::optional<Subspace> RJ, h2, h2_inv, h2_J;

  // Present when a transversal v is known (from the context, from K^(1)
  // being of the form S²𝒰⊗v, or from a non-degenerate metric).
  std::optional<Vec> v;
  std::optional<Subspace> hv, hv_inv, U_cal;
  // ν: 𝒰 → R^{n-1}, a (n-1) × dim 𝒰 matrix in the canonical basis of 𝒰.
  // Only defined when h_v = h_v^R and F(v) is determined by F|.
  std::optional<LinMap> nu;

  // Present when g is known and R^{n-1} is degenerate.
  std::optional<Subspace> h_perp, h_perp_inv, U_tilde;
};

StructuralProfile profile(const LinearSubalgebra& h, const RuleContext& ctx);
StructuralProfile profile(const LinearSubalgebra& h);

bool is_totally_real(const LinearSubalgebra& h, const Mat& J);

enum class TotallyRealTag { I, II, III, IV };
std::string to_string(TotallyRealTag t);

struct TotallyRealType {
  TotallyRealTag tag;
  Subspace RJ, h2, h2_inv, h2_J;
  Vec v;                         // element of R^{n-1} \ R_J
  std::optional<Mat> F;          // type III: F ∈ h₂ \ h₂^R
  std::optional<Rational> lambda;
  std::optional<Mat> F1, F2;     // type IV, after the normalisations
  std::optional<Rational> mu;
};

class NotTotallyReal : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

TotallyRealType totally_real_type(const LinearSubalgebra& h, const Mat& J);

struct RuleResult {
  std::string rule;
  bool applies = false;
  std::string note;      // why the guard failed, or extra detail
  std::optional<Subspace> F;
};

// Every rule in guard order: complex, commuting-endomorphism,
// totally-real-{I..IV}, unitary-{nondegenerate,degenerate}, K1-zero-{a,b},
// nondeg-metric, S2Uv, degenerate-metric.
std::vector<RuleResult> evaluate_rules(const LinearSubalgebra& h, const RuleContext& ctx);
std::vector<RuleResult> evaluate_rules(const LinearSubalgebra& h);

struct ClosedForm {
  Subspace F;
  std::string rule;
};
// First applicable rule, or nullopt when none fires.
std::optional<ClosedForm> closed_form_F(const LinearSubalgebra& h, const RuleContext& ctx);
std::optional<ClosedForm> closed_form_F(const LinearSubalgebra& h);

struct CrosscheckEntry {
  std::string rule;
  std::size_t dim = 0;
  bool equal = false;
};

struct CrosscheckReport {
  std::string algebra;
  std::size_t engine_dim = 0;
  Subspace engine_F;
  std::vector<CrosscheckEntry> entries;  // only rules that fired
  std::vector<Subspace> rule_F;          // parallel to entries
  bool ok() const;                       // at least one rule, all equal
};

CrosscheckReport crosscheck(const LinearSubalgebra& h, const RuleContext& ctx);
CrosscheckReport crosscheck(const LinearSubalgebra& h);

// S²U ⊗ w inside the K^(1) layout, U ⊆ (R^{n-1})* and w ∈ R^n.
Subspace sym_square_tensor(const Subspace& U, const Vec& w);

// Max rank over a few seeded random rational combinations.
std::size_t generic_rank(const LinearSubalgebra& h, std::uint64_t seed);

enum class LowRankVerdict { refuted, certified, unknown };
std::string to_string(LowRankVerdict v);

struct LowRankResult {
  // refuted: a nonzero element of rank ≤ r exists; certified: none exists.
  LowRankVerdict verdict = LowRankVerdict::unknown;
  std::optional<Mat> witness;  // exact rank checked
  std::string method;
};

// Searches for a nonzero element of rank ≤ r. Exact in the regimes
// dim h ≤ 2, or when the basis satisfies B_iᵀB_j + B_jᵀB_i = 2G_ij·I with G
// positive definite (then every nonzero element is a multiple of an
// orthogonal matrix). Otherwise a grid search of at most `budget` points.
LowRankResult low_rank_witness(const LinearSubalgebra& h, std::size_t r, std::size_t budget = 20000);

}  // namespace tl
