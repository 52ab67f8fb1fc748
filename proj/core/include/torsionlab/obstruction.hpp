#pragma once

#include <optional>
#include <string>
#include <variant>

#include "torsionlab/algebra.hpp"

namespace tl {

// g_f = R^{n-1} ⋊_f R: [e_n, u] = f(u), [u, w] = 0 on R^{n-1}.
struct AlmostAbelian {
  Mat f;

  explicit AlmostAbelian(Mat endo);
  std::size_t n() const { return f.rows() + 1; }
  Vec bracket(const Vec& x, const Vec& y) const;
};

// gamma[(i*n + j)*n + k] = k-th component of ∇_{e_i} e_j.
struct ConnectionTensor {
  std::size_t n = 0;
  Vec gamma;

  ConnectionTensor() = default;
  explicit ConnectionTensor(std::size_t dim) : n(dim), gamma(dim * dim * dim, Rational(0)) {}
  ConnectionTensor(std::size_t dim, Vec values);

  Rational& at(std::size_t i, std::size_t j, std::size_t k) { return gamma[(i * n + j) * n + k]; }
  const Rational& at(std::size_t i, std::size_t j, std::size_t k) const { return gamma[(i * n + j) * n + k]; }
  Mat along(std::size_t i) const;  // the endomorphism ∇_{e_i}
  Vec apply(const Vec& x, const Vec& y) const;  // ∇_x y
};

// Flattened multilinear arrays; torsion is n³ with T[(a*n+b)*n+k], curvature
// n⁴ with R[((a*n+b)*n+c)*n+d] = (R(e_a, e_b) e_c)_d.
Vec torsion_tensor(const ConnectionTensor& nabla, const AlmostAbelian& g);
Vec curvature_tensor(const ConnectionTensor& nabla, const AlmostAbelian& g);

// N_A(X,Y) = [AX,AY] - A[AX,Y] - A[X,AY] + s·A²[X,Y] with s = a2_sign.
// The default +1 makes N_J = 0 equivalent to integrability of J.
Vec nijenhuis(const Mat& A, const AlmostAbelian& g, int a2_sign = +1);

Subspace characteristic_subalgebra(const LinearSubalgebra& h);  // k̃ ⊆ End(R^{n-1})
// Same construction for any linear subspace of gl(n) given in R^{n²}.
Subspace characteristic_space(std::size_t n, const Subspace& span);
// K_h ⊆ Hom(R^{n-1}, R^n), a restriction flattened as an n×(n-1) matrix.
Subspace tableau(const LinearSubalgebra& h);
// K^(1) ⊆ (R^{n-1})* ⊗ (R^{n-1})* ⊗ R^n, index (i*(n-1) + j)*n + k for
// (t_{e_i} e_j)_k. The symmetric part takes values in all of R^n.
Subspace first_prolongation(const LinearSubalgebra& h);
Subspace connection_space(const LinearSubalgebra& h);  // D_h ⊆ R^{n³}

// ∇ restricted to R^{n-1} × R^{n-1}, in the K^(1) layout.
Vec restrict_to_hyperplane(const ConnectionTensor& nabla);

// T(∇) = (∇_v - ∇v)|_{R^{n-1}} split along R^{n-1} ⊕ span(v). Both maps are
// defined on all of R^{n³}; restrict to D_h for the obstruction theory.
struct TorsionMaps {
  LinMap T1;  // R^{n³} -> End(R^{n-1})
  LinMap T2;  // R^{n³} -> Hom(R^{n-1}, span v) ≅ (R^{n-1})*
};
TorsionMaps torsion_maps(std::size_t n, const Vec& v);

class InvalidTransversal : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Vec default_transversal(std::size_t n);  // e_n

Subspace obstruction_space(const LinearSubalgebra& h, const std::optional<Vec>& v = std::nullopt);

struct ObstructionReport {
  Subspace k_tilde, tableau, K1, D, F;
};
ObstructionReport obstruction_report(const LinearSubalgebra& h, const std::optional<Vec>& v = std::nullopt);

enum class CertificateKind { torsion_free, flat };

struct Certificate {
  CertificateKind kind;
  ConnectionTensor nabla;
  std::size_t torsion_nonzero = 0;    // nonzero entries of T^∇
  std::size_t curvature_nonzero = 0;  // nonzero entries of R^∇, flat only
  bool valid() const { return torsion_nonzero == 0 && curvature_nonzero == 0; }
};

struct Refusal {
  std::string reason;
  Mat residual;  // f reduced against the echelon basis of the target space
};

using CertificateResult = std::variant<Certificate, Refusal>;

// Torsion-free certificate for the H-structure of type [T^{-1} R^{n-1}]:
// works with h' = T h T^{-1} when T is given.
CertificateResult check_torsion_free(const LinearSubalgebra& h, const AlmostAbelian& g,
                                     const std::optional<Mat>& hyperplane_map = std::nullopt,
                                     const std::optional<Vec>& v = std::nullopt);

// ∇_u = 0 on R^{n-1}, ∇_{e_n} = F for some F ∈ h preserving R^{n-1} with
// F| = f.
CertificateResult flat_certificate(const LinearSubalgebra& h, const AlmostAbelian& g,
                                   const std::optional<Mat>& hyperplane_map = std::nullopt);

// Re-evaluates torsion (and curvature for flat certificates) exactly.
Certificate revalidate(Certificate c, const AlmostAbelian& g);

// Embedding helpers shared by the classifiers: restriction of an n×n
// endomorphism to R^{n-1}, and the top-left block.
Mat restrict_to_hyperplane(const Mat& F);  // n × (n-1)
Mat top_left(const Mat& F);                // (n-1) × (n-1)

}  // namespace tl
