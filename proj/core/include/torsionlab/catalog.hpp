#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "torsionlab/algebra.hpp"

namespace tl {

// Standard structures.
Mat complex_structure(std::size_t m);               // J₀ = diag(M, …, M), M = [[0,-1],[1,0]]
Mat product_structure(std::size_t n, std::size_t p);  // P₀ = diag(I_p, -I_{n-p})
Mat tangent_structure(std::size_t m);               // T₀ = [[0,0],[I_m,0]]
Mat symplectic_form(std::size_t m);                 // ω₀ = e^{12} + … + e^{2m-1,2m}
// (J, E, K) with J e_i = e_{m+i}, E = diag(I_m, -I_m), K = JE.
HyperParaComplex hyperparacomplex_structure(std::size_t m);

// Quaternions act on R^4 in the basis ordering (1, i, k, j). With this
// ordering right multiplication by i is exactly J₀. The hypercomplex triple
// used throughout is I = R_i, J = R_j, K = IJ = -R_k, so IJ = -JI = K.
Mat quaternion_right(char unit);  // unit ∈ {'1','i','j','k'}
Mat quaternion_left(char unit);

// Sum of ±1 over complex pairs: diag(1,1, …, -1,-1) with p positive pairs.
Mat hermitian_gram(std::size_t p, std::size_t q);

LinearSubalgebra gl(std::size_t n);
LinearSubalgebra sl(std::size_t n);
LinearSubalgebra zero_algebra(std::size_t n);
LinearSubalgebra sp(std::size_t m);
LinearSubalgebra gl_C(std::size_t m);
LinearSubalgebra sl_C(std::size_t m);
LinearSubalgebra sp_C(std::size_t k);
LinearSubalgebra u(std::size_t p, std::size_t q);
// gl(J₀) ∩ so(g) for a user Gram g making J₀ orthogonal.
LinearSubalgebra u_gram(const Mat& g);
LinearSubalgebra su(std::size_t m);
LinearSubalgebra so(std::size_t p, std::size_t q);
LinearSubalgebra so_gram(const Mat& g);
LinearSubalgebra gl_H(std::size_t k);
LinearSubalgebra sp_H(std::size_t k);

// Diagonal gl(m,R) commuting with a hyperparacomplex triple on R^{2m}.
enum class HpcFrame {
  standard,     // the triple of hyperparacomplex_structure
  e_invariant,  // reordered so R^{2m-1} ∩ J R^{2m-1} is E-invariant
  case_b,       // basis (X, JX, v, Jv, Ev, Kv); needs m ≥ 2
};
LinearSubalgebra delta_gl(std::size_t m, HpcFrame frame = HpcFrame::standard);

// n = 2m+1: {[[F, u],[u^b, 0]] : F ∈ Sym_L(ω₀), u ∈ L}, L = span(e1, e3, …).
LinearSubalgebra lagrangian_symplectic(std::size_t m);
Subspace lagrangian_subspace(std::size_t m);
Subspace end_L(std::size_t m);  // {F : im F ⊆ L ⊆ ker F} in End(R^{2m})

LinearSubalgebra gl_P(std::size_t n, std::size_t p);
LinearSubalgebra gl_T(std::size_t m);

struct BuildSpec {
  std::string name;
  std::map<std::string, long> params;
  std::optional<Mat> gram;
};

class UnknownBuilder : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Dispatcher. Names: gl sl zero sp gl_C sl_C sp_C u u_g su so so_g gl_H sp_H
// delta_gl lagrangian gl_P gl_T. Size parameters: n, m, k, p, q, frame.
LinearSubalgebra build(const BuildSpec& spec);
std::vector<std::string> builder_names();

// Parses "name" or "name:key=value,key=value", e.g. "sp:m=2", "u:p=1,q=1".
// Gram-based builders cannot be expressed this way.
std::optional<BuildSpec> parse_shorthand(const std::string& s);

struct CatalogEntry {
  std::string label;
  LinearSubalgebra algebra;
};

// Fixed list of algebras the verification suite sweeps over (n ≤ 6).
std::vector<CatalogEntry> standard_catalog();

}  // namespace tl
