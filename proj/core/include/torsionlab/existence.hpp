#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "torsionlab/obstruction.hpp"
#include "torsionlab/spectral.hpp"

namespace tl {

class UnsupportedGroup : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidSignature : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct OrbitRep {
  std::string label;  // "[U1]", ...
  Subspace U;
  Mat T;  // invertible with T(U) = R^{n-1}
  // dim(U ∩ R^n_+), dim(U ∩ R^n_-) for product structures, dim(U ∩ ker T₀)
  // for tangent structures; empty otherwise.
  std::vector<std::size_t> invariants;
};

struct OrbitCatalog {
  std::string group;
  std::size_t n = 0;
  LinearSubalgebra h;  // the Lie algebra of the group, standard form
  std::vector<OrbitRep> reps;
};

// Groups: "GL(P0)" (needs p), "GL(T0)", "GL(m,C)", "SL(m,C)", "Sp(2k,C)",
// "U(m)", "SU(m)", "GL(k,H)". The transitive groups have the single
// representative R^{n-1}.
OrbitCatalog orbit_catalog(const std::string& group, std::size_t n, std::size_t p = 0);
std::vector<std::string> orbit_groups();

// Block patterns in End(R^{n-1}), expressed in the basis T_α(U_α) = R^{n-1}
// of orbit_catalog.
Subspace product_obstruction(std::size_t n, std::size_t p, int type);
Subspace tangent_obstruction(std::size_t n, int type);
// Normal forms (a) and (b) of the hyperparacomplex classification on R^{2m-1}.
Subspace hyperparacomplex_pattern(std::size_t m, char which);

// Real Jordan data of f in the restricted regime where the characteristic
// polynomial splits over Q into factors of degree ≤ 2.
struct JordanPiece {
  Poly factor;                  // monic irreducible over Q, degree 1 or 2
  bool real_roots = false;      // degree 2 with two real (irrational) roots
  std::vector<std::size_t> sizes;  // block sizes (as powers of factor), decreasing
};

struct JordanData {
  std::vector<JordanPiece> pieces;
};

std::optional<JordanData> jordan_data(const Mat& f);

// Q-rational cyclic decomposition matching jordan_data: one generator per
// block; the block basis is (w, fw, …, f^{dk-1} w) with d = deg factor.
struct CyclicBlock {
  std::size_t piece = 0;
  std::size_t degree = 1;
  std::size_t size = 0;  // power of the factor
  Vec generator;
  std::size_t dim() const { return degree * size; }
};

struct CyclicDecomposition {
  JordanData data;
  std::vector<CyclicBlock> blocks;
};

std::optional<CyclicDecomposition> cyclic_decomposition(const Mat& f);
std::vector<Vec> block_basis(const Mat& f, const CyclicBlock& b);

// f-invariant subspace of dimension d with a Q-rational basis, if the
// greedy construction over linear and quadratic pieces reaches d.
std::optional<Subspace> rational_invariant_subspace(const Mat& f, std::size_t d);

enum class Verdict { yes, yes_existence_only, no, unknown };
std::string to_string(Verdict v);

struct TypeVerdict {
  std::string type;
  Verdict verdict = Verdict::unknown;
  std::optional<Mat> basis;  // columns: basis of u in which f has the pattern
  std::optional<Mat> frame;  // adapted frame (v ∘ T_α) of the H-structure
  std::string rule;
};

struct DecisionResult {
  Verdict verdict = Verdict::unknown;
  std::optional<TypeVerdict> detail;
};

// Never "no": product structures of every signature always exist.
DecisionResult decide_product(const AlmostAbelian& g, std::size_t p);
// Never "no" on even n: tangent structures always exist.
DecisionResult decide_tangent(const AlmostAbelian& g);

enum class HpcVerdict { yes_caseA, yes_caseB, no, unknown };
std::string to_string(HpcVerdict v);

// A torsion-free hyperparacomplex structure in normal form: in the basis
// (X_1..X_{m-1}, Y_1..Y_{m-1}, V) of u with Y_i = J X_i,
//   (a) f = [[A, 0, w1], [0, A, w2], [0, 0, a]],
// and λV + μJV is a +1 eigenvector of E. Case (b) needs no extra data.
struct HpcStructureData {
  char which = 'A';
  Mat A;
  Rational a;
  Vec w1, w2;
  Rational lambda = 1, mu = 0;
};

class InvalidStructureData : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct HpcClassification {
  HpcVerdict verdict = HpcVerdict::unknown;
  std::optional<Mat> basis;        // columns: basis of u realising the normal form
  std::optional<Mat> basis_caseB;  // normal form (b) with zero coupling, when available
  std::optional<HpcStructureData> structure;  // case (a) data read off basis, λ = 1, μ = 0
  std::string rule;
};

HpcClassification classify_hyperparacomplex(const AlmostAbelian& g);

struct FlatnessResult {
  bool flat = false;
  std::optional<Vec> witness;  // μw₁ + λw₂ when it fails the criterion
  std::string reason;
};

FlatnessResult hpc_flatness(const HpcStructureData& data);

struct ExistenceReport {
  std::string family;
  Verdict verdict = Verdict::unknown;
  std::vector<TypeVerdict> per_type;
};

// Families: "product" (param p), "tangent", "gl_C", "u", "hpc". All
// decisions are up to the choice of frame, i.e. f up to conjugation and
// nonzero scaling.
ExistenceReport admits_torsion_free(const std::string& family, const AlmostAbelian& g,
                                    const std::map<std::string, long>& params = {});
// Any algebra: literal membership f ∈ F_h for the standard identification.
// Answers yes or unknown.
ExistenceReport admits_torsion_free(const LinearSubalgebra& h, const AlmostAbelian& g);

}  // namespace tl
