#include "torsionlab/matrix.hpp"

#include <sstream>
#include <stdexcept>

#include "torsionlab/linalg.hpp"

namespace tl {

Mat::Mat(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, Rational(0)) {}

Mat::Mat(std::initializer_list<std::initializer_list<Rational>> rows) {
  r_ = rows.size();
  c_ = r_ ? rows.begin()->size() : 0;
  a_.reserve(r_ * c_);
  for (const auto& row : rows) {
    if (row.size() != c_) throw std::invalid_argument("ragged matrix literal");
    for (const auto& x : row) a_.push_back(x);
  }
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j) {
  Mat m(rows, cols);
  m(i, j) = 1;
  return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
  Mat m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Mat Mat::from_cols(const std::vector<Vec>& cols, std::size_t rows) {
  Mat m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw std::invalid_argument("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

Mat Mat::from_flat(std::size_t rows, std::size_t cols, Vec flat) {
  if (flat.size() != rows * cols) throw std::invalid_argument("flat size mismatch");
  Mat m;
  m.r_ = rows;
  m.c_ = cols;
  m.a_ = std::move(flat);
  return m;
}

Mat Mat::diag(const Vec& d) {
  Mat m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Mat Mat::block_diag(const std::vector<Mat>& blocks) {
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  Mat m(r, c);
  r = c = 0;
  for (const auto& b : blocks) {
    m.set_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return m;
}

Vec Mat::row(std::size_t i) const { return Vec(a_.begin() + i * c_, a_.begin() + (i + 1) * c_); }

Vec Mat::col(std::size_t j) const {
  Vec v(r_);
  for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > r_ || c0 + nc > c_) throw std::out_of_range("block out of range");
  Mat b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void Mat::set_block(std::size_t r0, std::size_t c0, const Mat& b) {
  if (r0 + b.rows() > r_ || c0 + b.cols() > c_) throw std::out_of_range("block out of range");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

Mat Mat::transpose() const {
  Mat t(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Rational Mat::trace() const {
  if (!square()) throw std::invalid_argument("trace of non-square matrix");
  Rational s = 0;
  for (std::size_t i = 0; i < r_; ++i) s += (*this)(i, i);
  return s;
}

bool Mat::is_zero() const { return tl::is_zero(a_); }

Mat Mat::operator+(const Mat& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("shape mismatch in +");
  Mat m(r_, c_);
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
  return m;
}

Mat Mat::operator-(const Mat& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("shape mismatch in -");
  Mat m(r_, c_);
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
  return m;
}

Mat Mat::operator-() const {
  Mat m(r_, c_);
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = -a_[i];
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  if (c_ != o.r_) throw std::invalid_argument("shape mismatch in *");
  Mat m(r_, o.c_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < c_; ++k) {
      const Rational& x = (*this)(i, k);
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < o.c_; ++j) m(i, j) += x * o(k, j);
    }
  return m;
}

Vec Mat::operator*(const Vec& v) const {
  if (c_ != v.size()) throw std::invalid_argument("shape mismatch in matrix-vector product");
  Vec r = zeros(r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j)
      if (sgn(v[j]) != 0) r[i] += (*this)(i, j) * v[j];
  return r;
}

Mat operator*(const Rational& s, const Mat& m) {
  Mat r(m.r_, m.c_);
  for (std::size_t i = 0; i < m.a_.size(); ++i) r.a_[i] = s * m.a_[i];
  return r;
}

Rational det(const Mat& m) {
  if (!m.square()) throw std::invalid_argument("det of non-square matrix");
  Mat a = m;
  const std::size_t n = a.rows();
  Rational d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      d = -d;
    }
    d *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(a(i, c)) == 0) continue;
      Rational f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return d;
}

std::optional<Mat> inverse(const Mat& m) {
  if (!m.square()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = m.rows();
  Mat aug(n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, Mat::identity(n));
  auto r = rref(aug);
  for (std::size_t i = 0; i < n; ++i)
    if (i >= r.pivots.size() || r.pivots[i] != i) return std::nullopt;
  return r.reduced.block(0, n, n, n);
}

std::size_t rank(const Mat& m) { return rref(m).rank; }

Mat commutator(const Mat& a, const Mat& b) {
  if (!a.square() || a.rows() != b.rows() || !b.square())
    throw std::invalid_argument("commutator needs square matrices of equal size");
  return a * b - b * a;
}

Mat outer(const Vec& u, const Vec& alpha) {
  Mat m(u.size(), alpha.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < alpha.size(); ++j) m(i, j) = u[i] * alpha[j];
  return m;
}

std::string to_string(const Mat& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << ", ";
    os << '[';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ", ";
      os << to_string(m(i, j));
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace tl
