#include "torsionlab/obstruction.hpp"

namespace tl {

AlmostAbelian::AlmostAbelian(Mat endo) : f(std::move(endo)) {
  if (!f.square()) throw DimensionMismatch("almost Abelian: f must be square");
}

Vec AlmostAbelian::bracket(const Vec& x, const Vec& y) const {
  const std::size_t m = f.rows();
  if (x.size() != m + 1 || y.size() != m + 1) throw DimensionMismatch("bracket: vector size");
  // [x, y] = x_n f(y') - y_n f(x').
  Vec out = zeros(m + 1);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t j = 0; j < m; ++j) {
      if (sgn(f(k, j)) == 0) continue;
      out[k] += f(k, j) * (x[m] * y[j] - y[m] * x[j]);
    }
  return out;
}

ConnectionTensor::ConnectionTensor(std::size_t dim, Vec values) : n(dim), gamma(std::move(values)) {
  if (gamma.size() != n * n * n) throw DimensionMismatch("connection tensor: expected n³ entries");
}

Mat ConnectionTensor::along(std::size_t i) const {
  Mat m(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) m(k, j) = at(i, j, k);
  return m;
}

Vec ConnectionTensor::apply(const Vec& x, const Vec& y) const {
  Vec out = zeros(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(y[j]) == 0) continue;
      const Rational c = x[i] * y[j];
      for (std::size_t k = 0; k < n; ++k) out[k] += c * at(i, j, k);
    }
  }
  return out;
}

namespace {

void require_n(std::size_t n) {
  if (n < 2) throw DimensionMismatch("the hyperplane R^{n-1} needs n >= 2");
}

void require_shape(const ConnectionTensor& nabla, const AlmostAbelian& g) {
  if (nabla.n != g.n()) throw DimensionMismatch("connection and Lie algebra dimensions differ");
}

// Connections ∇ ∈ (R^n)* ⊗ h in coordinates c_{i,a}: ∇_{e_i} = Σ_a c_{i,a} B_a.
// Column index i*d + a.
Mat embedding(const LinearSubalgebra& h) {
  const std::size_t n = h.n(), d = h.dim();
  Mat G(n * n * n, n * d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < d; ++a) {
      const Mat& B = h.basis()[a];
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) G((i * n + j) * n + k, i * d + a) = B(k, j);
    }
  return G;
}

// ∇_{e_i} e_j = ∇_{e_j} e_i for i, j < n-1.
Mat symmetry_constraints(const LinearSubalgebra& h) {
  const std::size_t n = h.n(), d = h.dim(), m = n - 1;
  const std::size_t pairs = m * (m - 1) / 2;
  Mat S(pairs * n, n * d);
  std::size_t r = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = 0; k < n; ++k, ++r)
        for (std::size_t a = 0; a < d; ++a) {
          const Mat& B = h.basis()[a];
          S(r, i * d + a) += B(k, j);
          S(r, j * d + a) -= B(k, i);
        }
  return S;
}

// x_j = ∇_v e_j - ∇_{e_j} v for j < n-1, row (j*n + k) holds x_{j,k}.
Mat torsion_raw(const LinearSubalgebra& h, const Vec& v) {
  const std::size_t n = h.n(), d = h.dim(), m = n - 1;
  Mat X(m * n, n * d);
  for (std::size_t a = 0; a < d; ++a) {
    const Mat& B = h.basis()[a];
    const Vec Bv = B * v;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t col = i * d + a;
      if (sgn(v[i]) != 0)
        for (std::size_t j = 0; j < m; ++j)
          for (std::size_t k = 0; k < n; ++k) X(j * n + k, col) += v[i] * B(k, j);
      if (i < m)
        for (std::size_t k = 0; k < n; ++k) X(i * n + k, col) -= Bv[k];
    }
  }
  return X;
}

// Splits raw torsion rows into T1 ((k, j) ↦ x'_{j,k}) and T2 (j ↦ t_j) along
// R^{n-1} ⊕ span(v).
std::pair<Mat, Mat> split_torsion(const Mat& X, const Vec& v) {
  const std::size_t n = v.size(), m = n - 1, C = X.cols();
  const Rational vn = v[m];
  Mat T1(m * m, C), T2(m, C);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t c = 0; c < C; ++c) {
      const Rational t = X(j * n + m, c) / vn;
      T2(j, c) = t;
      for (std::size_t k = 0; k < m; ++k) T1(k * m + j, c) = X(j * n + k, c) - t * v[k];
    }
  return {T1, T2};
}

Vec checked_transversal(std::size_t n, const std::optional<Vec>& v) {
  Vec w = v ? *v : default_transversal(n);
  if (w.size() != n) throw DimensionMismatch("transversal has the wrong length");
  if (sgn(w[n - 1]) == 0) throw InvalidTransversal("transversal lies in R^{n-1}");
  return w;
}

Mat stack(const std::vector<const Mat*>& parts, std::size_t cols) {
  std::size_t rows = 0;
  for (auto* p : parts) rows += p->rows();
  Mat m(rows, cols);
  rows = 0;
  for (auto* p : parts) {
    m.set_block(rows, 0, *p);
    rows += p->rows();
  }
  return m;
}

LinearSubalgebra apply_hyperplane_map(const LinearSubalgebra& h, const std::optional<Mat>& T) {
  if (!T) return h;
  if (T->rows() != h.n() || T->cols() != h.n()) throw DimensionMismatch("hyperplane map has the wrong shape");
  return conjugate(h, *T);
}

std::size_t count_nonzero(const Vec& v) {
  std::size_t c = 0;
  for (const auto& x : v)
    if (sgn(x) != 0) ++c;
  return c;
}

Vec basis_vec(std::size_t n, std::size_t i) { return unit_vec(n, i); }

}  // namespace

Mat restrict_to_hyperplane(const Mat& F) { return F.block(0, 0, F.rows(), F.cols() - 1); }

Mat top_left(const Mat& F) { return F.block(0, 0, F.rows() - 1, F.cols() - 1); }

Vec torsion_tensor(const ConnectionTensor& nabla, const AlmostAbelian& g) {
  require_shape(nabla, g);
  const std::size_t n = nabla.n;
  Vec T(n * n * n, Rational(0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const Vec br = g.bracket(basis_vec(n, a), basis_vec(n, b));
      for (std::size_t k = 0; k < n; ++k) T[(a * n + b) * n + k] = nabla.at(a, b, k) - nabla.at(b, a, k) - br[k];
    }
  return T;
}

Vec curvature_tensor(const ConnectionTensor& nabla, const AlmostAbelian& g) {
  require_shape(nabla, g);
  const std::size_t n = nabla.n;
  std::vector<Mat> N;
  for (std::size_t i = 0; i < n; ++i) N.push_back(nabla.along(i));
  Vec R(n * n * n * n, Rational(0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Mat Rab = commutator(N[a], N[b]);
      const Vec br = g.bracket(basis_vec(n, a), basis_vec(n, b));
      for (std::size_t k = 0; k < n; ++k)
        if (sgn(br[k]) != 0) Rab = Rab - br[k] * N[k];
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) R[((a * n + b) * n + c) * n + d] = Rab(d, c);
    }
  return R;
}

Vec nijenhuis(const Mat& A, const AlmostAbelian& g, int a2_sign) {
  const std::size_t n = g.n();
  if (A.rows() != n || A.cols() != n) throw DimensionMismatch("nijenhuis: A must be n×n");
  const Mat A2 = A * A;
  const Rational s = a2_sign >= 0 ? 1 : -1;
  Vec N(n * n * n, Rational(0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const Vec X = basis_vec(n, a), Y = basis_vec(n, b);
      const Vec AX = A * X, AY = A * Y;
      Vec val = g.bracket(AX, AY) - A * g.bracket(AX, Y) - A * g.bracket(X, AY) + s * (A2 * g.bracket(X, Y));
      for (std::size_t k = 0; k < n; ++k) N[(a * n + b) * n + k] = val[k];
    }
  return N;
}

Subspace characteristic_subalgebra(const LinearSubalgebra& h) { return characteristic_space(h.n(), h.span()); }

Subspace characteristic_space(std::size_t n, const Subspace& span) {
  require_n(n);
  if (span.ambient_dim() != n * n) throw DimensionMismatch("characteristic_space: ambient mismatch");
  const std::size_t m = n - 1, d = span.dim();
  if (d == 0) return Subspace(m * m);
  const Mat& B = span.basis_matrix();
  // Last row on the first n-1 columns must vanish.
  Mat C(m, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t j = 0; j < m; ++j) C(j, a) = B(a, m * n + j);
  std::vector<Vec> out;
  for (const auto& coeffs : null_space(C).basis()) {
    Vec blk(m * m);
    for (std::size_t a = 0; a < d; ++a) {
      if (sgn(coeffs[a]) == 0) continue;
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t j = 0; j < m; ++j) blk[k * m + j] += coeffs[a] * B(a, k * n + j);
    }
    out.push_back(std::move(blk));
  }
  return Subspace::span(m * m, out);
}

Subspace tableau(const LinearSubalgebra& h) {
  const std::size_t n = h.n();
  require_n(n);
  std::vector<Vec> rows;
  for (const auto& B : h.basis()) rows.push_back(restrict_to_hyperplane(B).flat());
  return Subspace::span(n * (n - 1), rows);
}

Subspace first_prolongation(const LinearSubalgebra& h) {
  const std::size_t n = h.n();
  require_n(n);
  const std::size_t m = n - 1;
  const Subspace K = tableau(h);
  const std::size_t dk = K.dim();
  const std::size_t ambient = m * m * n;
  if (dk == 0) return Subspace(ambient);
  std::vector<Mat> Kb;
  for (const auto& row : K.basis()) Kb.push_back(Mat::from_flat(n, m, row));
  // t_{e_i} = Σ_b y_{i,b} K_b, column index i*dk + b.
  Mat emb(ambient, m * dk);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t b = 0; b < dk; ++b)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < n; ++k) emb((i * m + j) * n + k, i * dk + b) = Kb[b](k, j);
  const std::size_t pairs = m * (m - 1) / 2;
  Mat S(pairs * n, m * dk);
  std::size_t r = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = 0; k < n; ++k, ++r)
        for (std::size_t b = 0; b < dk; ++b) {
          S(r, i * dk + b) += Kb[b](k, j);
          S(r, j * dk + b) -= Kb[b](k, i);
        }
  return image(LinMap(emb), null_space(S));
}

Subspace connection_space(const LinearSubalgebra& h) {
  const std::size_t n = h.n();
  require_n(n);
  if (h.dim() == 0) return Subspace(n * n * n);
  return image(LinMap(embedding(h)), null_space(symmetry_constraints(h)));
}

Vec restrict_to_hyperplane(const ConnectionTensor& nabla) {
  const std::size_t n = nabla.n, m = n - 1;
  Vec out(m * m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < n; ++k) out[(i * m + j) * n + k] = nabla.at(i, j, k);
  return out;
}

Vec default_transversal(std::size_t n) { return unit_vec(n, n - 1); }

TorsionMaps torsion_maps(std::size_t n, const Vec& v) {
  require_n(n);
  const Vec w = checked_transversal(n, v);
  const std::size_t m = n - 1;
  // Raw torsion rows over R^{n³}: x_{j,k} = Σ_i v_i (Γ[i][j][k] - Γ[j][i][k]).
  Mat X(m * n, n * n * n);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn(w[i]) == 0) continue;
      for (std::size_t k = 0; k < n; ++k) {
        X(j * n + k, (i * n + j) * n + k) += w[i];
        X(j * n + k, (j * n + i) * n + k) -= w[i];
      }
    }
  auto [T1, T2] = split_torsion(X, w);
  return {LinMap(std::move(T1)), LinMap(std::move(T2))};
}

Subspace obstruction_space(const LinearSubalgebra& h, const std::optional<Vec>& v) {
  const std::size_t n = h.n();
  require_n(n);
  const std::size_t m = n - 1;
  const Vec w = checked_transversal(n, v);
  if (h.dim() == 0) return Subspace(m * m);
  const Mat S = symmetry_constraints(h);
  auto [T1, T2] = split_torsion(torsion_raw(h, w), w);
  const Mat M = stack({&S, &T2}, S.cols());
  return image(LinMap(T1), null_space(M));
}

ObstructionReport obstruction_report(const LinearSubalgebra& h, const std::optional<Vec>& v) {
  return {characteristic_subalgebra(h), tableau(h), first_prolongation(h), connection_space(h),
          obstruction_space(h, v)};
}

Certificate revalidate(Certificate c, const AlmostAbelian& g) {
  c.torsion_nonzero = count_nonzero(torsion_tensor(c.nabla, g));
  c.curvature_nonzero = c.kind == CertificateKind::flat ? count_nonzero(curvature_tensor(c.nabla, g)) : 0;
  return c;
}

CertificateResult check_torsion_free(const LinearSubalgebra& h0, const AlmostAbelian& g,
                                     const std::optional<Mat>& hyperplane_map, const std::optional<Vec>& v) {
  if (g.n() != h0.n()) throw DimensionMismatch("algebra and g_f dimensions differ");
  const LinearSubalgebra h = apply_hyperplane_map(h0, hyperplane_map);
  const std::size_t n = h.n(), m = n - 1, d = h.dim();
  // [v, u] = f(u) needs v_n = 1.
  Vec w = checked_transversal(n, v);
  w = (1 / Rational(w[m])) * w;
  if (g.f.is_zero()) return revalidate({CertificateKind::torsion_free, ConnectionTensor(n)}, g);
  if (d == 0) return Refusal{"f is nonzero and the algebra is trivial", g.f};

  const Mat S = symmetry_constraints(h);
  auto [T1, T2] = split_torsion(torsion_raw(h, w), w);
  const Mat M = stack({&S, &T2, &T1}, S.cols());
  Vec rhs = zeros(M.rows());
  for (std::size_t i = 0; i < m * m; ++i) rhs[S.rows() + T2.rows() + i] = g.f.flat()[i];
  auto c = solve(M, rhs);
  if (!c) {
    const Subspace F = image(LinMap(T1), null_space(stack({&S, &T2}, S.cols())));
    return Refusal{"f is not in the obstruction space", Mat::from_flat(m, m, F.residual(g.f.flat()))};
  }
  ConnectionTensor nabla(n, embedding(h) * *c);
  return revalidate({CertificateKind::torsion_free, std::move(nabla)}, g);
}

CertificateResult flat_certificate(const LinearSubalgebra& h0, const AlmostAbelian& g,
                                   const std::optional<Mat>& hyperplane_map) {
  if (g.n() != h0.n()) throw DimensionMismatch("algebra and g_f dimensions differ");
  const LinearSubalgebra h = apply_hyperplane_map(h0, hyperplane_map);
  const std::size_t n = h.n(), m = n - 1, d = h.dim();
  if (g.f.is_zero()) return revalidate({CertificateKind::flat, ConnectionTensor(n)}, g);
  // F ∈ h with zero last row on R^{n-1} and top-left block f.
  Mat C(m + m * m, d);
  Vec rhs = zeros(m + m * m);
  for (std::size_t a = 0; a < d; ++a) {
    const Mat& B = h.basis()[a];
    for (std::size_t j = 0; j < m; ++j) C(j, a) = B(m, j);
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t j = 0; j < m; ++j) C(m + k * m + j, a) = B(k, j);
  }
  for (std::size_t i = 0; i < m * m; ++i) rhs[m + i] = g.f.flat()[i];
  auto coeffs = d ? solve(C, rhs) : std::nullopt;
  if (!coeffs) {
    const Subspace kt = characteristic_subalgebra(h);
    return Refusal{"f is not in the characteristic subalgebra", Mat::from_flat(m, m, kt.residual(g.f.flat()))};
  }
  const Mat F = h.element(*coeffs);
  ConnectionTensor nabla(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) nabla.at(m, j, k) = F(k, j);
  return revalidate({CertificateKind::flat, std::move(nabla)}, g);
}

}  // namespace tl
