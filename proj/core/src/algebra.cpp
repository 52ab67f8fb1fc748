#include "torsionlab/algebra.hpp"

namespace tl {

namespace {

Subspace flat_span(std::size_t n, const std::vector<Mat>& mats) {
  std::vector<Vec> rows;
  rows.reserve(mats.size());
  for (const auto& m : mats) {
    if (m.rows() != n || m.cols() != n) throw InvalidAlgebra("basis element has wrong shape");
    rows.push_back(m.flat());
  }
  return Subspace::span(n * n, rows);
}

bool is_identity_multiple(const Mat& m) {
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && sgn(m(i, j)) != 0) return false;
      if (m(i, j) != m(0, 0) && i == j) return false;
    }
  return true;
}

}  // namespace

LinearSubalgebra::LinearSubalgebra(std::size_t n, const std::vector<Mat>& basis, std::string name,
                                   Structures structures, bool validate) {
  Subspace s = flat_span(n, basis);
  if (validate && s.dim() != basis.size()) throw InvalidAlgebra("basis is linearly dependent");
  *this = from_span(n, std::move(s), std::move(name), std::move(structures), validate);
}

LinearSubalgebra LinearSubalgebra::from_span(std::size_t n, Subspace span, std::string name,
                                             Structures structures, bool validate) {
  if (span.ambient_dim() != n * n) throw InvalidAlgebra("span lives in the wrong ambient space");
  LinearSubalgebra h;
  h.n_ = n;
  h.name_ = std::move(name);
  h.structures_ = std::move(structures);
  for (const auto& row : span.basis()) h.basis_.push_back(Mat::from_flat(n, n, row));
  h.span_ = std::move(span);
  if (validate) {
    for (std::size_t i = 0; i < h.basis_.size(); ++i)
      for (std::size_t j = i + 1; j < h.basis_.size(); ++j)
        if (!h.span_.contains(bracket(h.basis_[i], h.basis_[j]).flat()))
          throw InvalidAlgebra("basis is not closed under the bracket");
    if (auto err = check_structures(n, h.basis_, h.structures_); !err.empty()) throw InvalidAlgebra(err);
  }
  return h;
}

Mat LinearSubalgebra::element(const Vec& coords) const {
  if (coords.size() != basis_.size()) throw DimensionMismatch("element: coordinate count");
  Mat m(n_, n_);
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (sgn(coords[i]) != 0) m = m + coords[i] * basis_[i];
  return m;
}

LinearSubalgebra LinearSubalgebra::renamed(std::string name) const {
  LinearSubalgebra h = *this;
  h.name_ = std::move(name);
  return h;
}

LinearSubalgebra LinearSubalgebra::with_structures(Structures s) const {
  if (auto err = check_structures(n_, basis_, s); !err.empty()) throw InvalidAlgebra(err);
  LinearSubalgebra h = *this;
  h.structures_ = std::move(s);
  return h;
}

Mat bracket(const Mat& a, const Mat& b) { return commutator(a, b); }

bool is_subalgebra(const std::vector<Mat>& basis) {
  if (basis.empty()) return true;
  const std::size_t n = basis.front().rows();
  for (const auto& b : basis)
    if (b.rows() != n || b.cols() != n) return false;
  Subspace s = flat_span(n, basis);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!s.contains(bracket(basis[i], basis[j]).flat())) return false;
  return true;
}

std::string check_structures(std::size_t n, const std::vector<Mat>& basis, const Structures& s) {
  const Mat I = Mat::identity(n);
  auto shape_ok = [n](const Mat& m) { return m.rows() == n && m.cols() == n; };
  if (s.J) {
    if (!shape_ok(*s.J) || *s.J * *s.J != -I) return "J is not a complex structure";
    for (const auto& b : basis)
      if (!commutator(*s.J, b).is_zero()) return "basis element does not commute with J";
  }
  if (s.g) {
    const Mat& g = *s.g;
    if (!shape_ok(g) || g.transpose() != g || sgn(det(g)) == 0) return "g is not a symmetric invertible Gram matrix";
    for (const auto& b : basis)
      if (!(g * b + b.transpose() * g).is_zero()) return "basis element is not g-skew";
  }
  if (s.omega) {
    const Mat& w = *s.omega;
    if (!shape_ok(w) || w.transpose() != -w || sgn(det(w)) == 0) return "omega is not a symplectic form";
    for (const auto& b : basis)
      if (!(w * b + b.transpose() * w).is_zero()) return "basis element is not omega-skew";
  }
  if (s.product) {
    const Mat& P = *s.product;
    if (!shape_ok(P) || P * P != I || is_identity_multiple(P)) return "P is not a product structure";
    for (const auto& b : basis)
      if (!commutator(P, b).is_zero()) return "basis element does not commute with P";
  }
  if (s.tangent) {
    const Mat& T = *s.tangent;
    if (!shape_ok(T) || !(T * T).is_zero() || 2 * rank(T) != n) return "T is not a tangent structure";
    for (const auto& b : basis)
      if (!commutator(T, b).is_zero()) return "basis element does not commute with T";
  }
  if (s.hpc) {
    const auto& [J, E, K] = *s.hpc;
    if (!shape_ok(J) || !shape_ok(E) || !shape_ok(K)) return "hyperparacomplex triple has wrong shape";
    if (J * J != -I || E * E != I || J * E != K || E * J != -K)
      return "(J, E, K) is not a hyperparacomplex structure";
    for (const auto& b : basis)
      if (!commutator(J, b).is_zero() || !commutator(E, b).is_zero())
        return "basis element does not commute with (J, E, K)";
  }
  return {};
}

LinearSubalgebra conjugate(const LinearSubalgebra& h, const Mat& T) {
  auto Tinv = inverse(T);
  if (!Tinv) throw InvalidAlgebra("conjugate: T is singular");
  auto conj = [&](const Mat& m) { return T * m * *Tinv; };
  auto pull = [&](const Mat& g) { return Tinv->transpose() * g * *Tinv; };
  std::vector<Mat> b;
  b.reserve(h.dim());
  for (const auto& m : h.basis()) b.push_back(conj(m));
  Structures s;
  const Structures& o = h.structures();
  if (o.J) s.J = conj(*o.J);
  if (o.g) s.g = pull(*o.g);
  if (o.omega) s.omega = pull(*o.omega);
  if (o.product) s.product = conj(*o.product);
  if (o.tangent) s.tangent = conj(*o.tangent);
  if (o.hpc) s.hpc = HyperParaComplex{conj(o.hpc->J), conj(o.hpc->E), conj(o.hpc->K)};
  return LinearSubalgebra(h.n(), b, h.name(), std::move(s), false);
}

Subspace solve_constraints(std::size_t n, const std::vector<MatConstraint>& constraints) {
  // Column (i,j) of the constraint matrix is the image of E_ij.
  std::vector<Vec> cols;
  cols.reserve(n * n);
  std::size_t rows = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Mat e = Mat::unit(n, n, i, j);
      Vec col;
      for (const auto& c : constraints) {
        Vec part = c(e);
        col.insert(col.end(), part.begin(), part.end());
      }
      rows = col.size();
      cols.push_back(std::move(col));
    }
  if (rows == 0) return Subspace::full(n * n);
  return null_space(Mat::from_cols(cols, rows));
}

LinearSubalgebra commutant(const Mat& a) {
  if (!a.square()) throw InvalidAlgebra("commutant needs a square matrix");
  Subspace s = solve_constraints(a.rows(), {[&a](const Mat& F) { return commutator(a, F).flat(); }});
  return LinearSubalgebra::from_span(a.rows(), std::move(s), "gl(A)", {}, false);
}

Subspace algebra_intersection(const LinearSubalgebra& a, const LinearSubalgebra& b) {
  return intersect(a.span(), b.span());
}

MetricContext::MetricContext(Mat gram, std::optional<Subspace> hyper) : g(std::move(gram)) {
  if (!g.square() || g.transpose() != g || sgn(det(g)) == 0)
    throw InvalidAlgebra("metric must be symmetric and invertible");
  hyperplane = hyper ? *hyper : standard_hyperplane(g.rows());
}

Vec musical_flat(const MetricContext& ctx, const Vec& u) { return ctx.g * u; }

Vec musical_sharp(const MetricContext& ctx, const Vec& alpha) {
  auto x = solve(ctx.g, alpha);
  if (!x) throw InvalidAlgebra("metric is singular");
  return *x;
}

Subspace orthogonal_complement(const MetricContext& ctx, const Subspace& s) {
  if (s.dim() == 0) return Subspace::full(ctx.n());
  return null_space(s.basis_matrix() * ctx.g);
}

bool is_degenerate(const MetricContext& ctx, const Subspace& s) {
  return intersect(s, orthogonal_complement(ctx, s)).dim() > 0;
}

Subspace standard_hyperplane(std::size_t n) {
  std::vector<Vec> v;
  for (std::size_t i = 0; i + 1 < n; ++i) v.push_back(unit_vec(n, i));
  return Subspace::span(n, v);
}

}  // namespace tl
