#include "torsionlab/linalg.hpp"

#include <algorithm>

namespace tl {

RrefResult rref(const Mat& m) {
  RrefResult out;
  Mat a = m;
  const std::size_t R = a.rows(), C = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t p = r;
    while (p < R && sgn(a(p, c)) == 0) ++p;
    if (p == R) continue;
    if (p != r)
      for (std::size_t j = c; j < C; ++j) std::swap(a(p, j), a(r, j));
    if (a(r, c) != 1) {
      Rational inv = 1 / a(r, c);
      for (std::size_t j = c; j < C; ++j)
        if (sgn(a(r, j)) != 0) a(r, j) *= inv;
    }
    // Only the tail of the pivot row is nonzero past column c.
    std::vector<std::size_t> nz;
    for (std::size_t j = c + 1; j < C; ++j)
      if (sgn(a(r, j)) != 0) nz.push_back(j);
    for (std::size_t i = 0; i < R; ++i) {
      if (i == r || sgn(a(i, c)) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j : nz) a(i, j) -= f * a(r, j);
      a(i, c) = 0;
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  out.reduced = std::move(a);
  return out;
}

LinMap LinMap::compose(const LinMap& inner) const {
  if (inner.codomain_dim != domain_dim) throw DimensionMismatch("LinMap compose: shape mismatch");
  return LinMap(matrix * inner.matrix);
}

Subspace::Subspace(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}

Subspace Subspace::full(std::size_t ambient) { return row_space(Mat::identity(ambient)); }

Subspace Subspace::span(std::size_t ambient, const std::vector<Vec>& vectors) {
  if (vectors.empty()) return Subspace(ambient);
  return row_space(Mat::from_rows(vectors, ambient));
}

Subspace Subspace::row_space(const Mat& m) {
  auto r = rref(m);
  Subspace s(m.cols());
  s.basis_ = r.reduced.block(0, 0, r.rank, m.cols());
  s.pivots_ = std::move(r.pivots);
  return s;
}

std::vector<Vec> Subspace::basis() const {
  std::vector<Vec> b;
  b.reserve(dim());
  for (std::size_t i = 0; i < dim(); ++i) b.push_back(basis_.row(i));
  return b;
}

Vec Subspace::coordinates(const Vec& v) const {
  if (v.size() != ambient_) throw DimensionMismatch("coordinates: ambient mismatch");
  Vec c(dim());
  for (std::size_t i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
  return c;
}

bool Subspace::contains(const Vec& v) const { return tl::is_zero(residual(v)); }

Vec Subspace::residual(const Vec& v) const {
  if (v.size() != ambient_) throw DimensionMismatch("residual: ambient mismatch");
  // In echelon form, v lies in the span iff v minus its pivot-coordinate
  // combination vanishes.
  Vec r = v;
  for (std::size_t i = 0; i < dim(); ++i) {
    const Rational c = r[pivots_[i]];
    if (sgn(c) == 0) continue;
    for (std::size_t j = pivots_[i]; j < ambient_; ++j)
      if (sgn(basis_(i, j)) != 0) r[j] -= c * basis_(i, j);
  }
  return r;
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw DimensionMismatch("contains: ambient mismatch");
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!contains(other.basis_.row(i))) return false;
  return true;
}

Mat Subspace::annihilator() const {
  // Kernel of the basis matrix, as rows.
  return null_space(basis_).basis_matrix();
}

bool Subspace::operator==(const Subspace& o) const {
  return ambient_ == o.ambient_ && basis_ == o.basis_;
}

Subspace null_space(const Mat& m) {
  auto r = rref(m);
  const std::size_t C = m.cols();
  std::vector<bool> is_pivot(C, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<Vec> vecs;
  for (std::size_t f = 0; f < C; ++f) {
    if (is_pivot[f]) continue;
    Vec v = zeros(C);
    v[f] = 1;
    for (std::size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = -r.reduced(i, f);
    vecs.push_back(std::move(v));
  }
  return Subspace::span(C, vecs);
}

Subspace kernel(const LinMap& f) { return null_space(f.matrix); }

Subspace image(const LinMap& f) { return Subspace::row_space(f.matrix.transpose()); }

Subspace image(const LinMap& f, const Subspace& s) {
  if (s.ambient_dim() != f.domain_dim) throw DimensionMismatch("image: domain mismatch");
  if (s.dim() == 0) return Subspace(f.codomain_dim);
  // Rows of (f · Bᵀ)ᵀ = B · fᵀ are the images of the basis vectors.
  return Subspace::row_space(s.basis_matrix() * f.matrix.transpose());
}

Subspace preimage(const LinMap& f, const Subspace& s) {
  if (s.ambient_dim() != f.codomain_dim) throw DimensionMismatch("preimage: codomain mismatch");
  Mat ann = s.annihilator();
  if (ann.rows() == 0) return Subspace::full(f.domain_dim);
  return null_space(ann * f.matrix);
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("sum: ambient mismatch");
  Mat m(a.dim() + b.dim(), a.ambient_dim());
  m.set_block(0, 0, a.basis_matrix());
  m.set_block(a.dim(), 0, b.basis_matrix());
  return Subspace::row_space(m);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("intersect: ambient mismatch");
  // a ∩ b is cut out by the stacked equations of both subspaces.
  Mat aa = a.annihilator(), bb = b.annihilator();
  Mat m(aa.rows() + bb.rows(), a.ambient_dim());
  m.set_block(0, 0, aa);
  m.set_block(aa.rows(), 0, bb);
  return null_space(m);
}

bool contains(const Subspace& a, const Vec& v) { return a.contains(v); }

bool equal(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("equal: ambient mismatch");
  return a == b;
}

bool is_direct_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("is_direct_sum: ambient mismatch");
  return sum(a, b).dim() == a.dim() + b.dim();
}

std::optional<Vec> solve(const Mat& m, const Vec& b) {
  if (b.size() != m.rows()) throw DimensionMismatch("solve: rhs size mismatch");
  const std::size_t C = m.cols();
  Mat aug(m.rows(), C + 1);
  aug.set_block(0, 0, m);
  for (std::size_t i = 0; i < m.rows(); ++i) aug(i, C) = b[i];
  auto r = rref(aug);
  if (!r.pivots.empty() && r.pivots.back() == C) return std::nullopt;
  Vec x = zeros(C);
  for (std::size_t i = 0; i < r.rank; ++i) x[r.pivots[i]] = r.reduced(i, C);
  return x;
}

std::vector<Vec> complement_basis(const Subspace& s) {
  std::vector<bool> is_pivot(s.ambient_dim(), false);
  for (auto p : s.pivots()) is_pivot[p] = true;
  std::vector<Vec> out;
  for (std::size_t j = 0; j < s.ambient_dim(); ++j)
    if (!is_pivot[j]) out.push_back(unit_vec(s.ambient_dim(), j));
  return out;
}

}  // namespace tl
