#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "torsionlab/rational.hpp"

namespace tl {

// Dense row-major rational matrix. Flattening of End(R^a) or Hom(R^a, R^b)
// everywhere in the library is this row-major order: entry (i, j) sits at
// index i * cols + j.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols);
  Mat(std::initializer_list<std::initializer_list<Rational>> rows);

  static Mat zero(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }
  static Mat identity(std::size_t n);
  // E_ij: single 1 in row i, column j.
  static Mat unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j);
  static Mat from_rows(const std::vector<Vec>& rows, std::size_t cols);
  static Mat from_cols(const std::vector<Vec>& cols, std::size_t rows);
  static Mat from_flat(std::size_t rows, std::size_t cols, Vec flat);
  static Mat diag(const Vec& d);
  static Mat block_diag(const std::vector<Mat>& blocks);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  bool square() const { return r_ == c_; }

  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  const Vec& flat() const { return a_; }
  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;
  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Mat& b);

  Mat transpose() const;
  Rational trace() const;
  bool is_zero() const;

  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator-() const;
  Mat operator*(const Mat& o) const;
  Vec operator*(const Vec& v) const;
  friend Mat operator*(const Rational& s, const Mat& m);

  bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }

 private:
  std::size_t r_ = 0, c_ = 0;
  Vec a_;
};

Rational det(const Mat& m);
std::optional<Mat> inverse(const Mat& m);
std::size_t rank(const Mat& m);

// AB - BA.
Mat commutator(const Mat& a, const Mat& b);

// u ⊗ α as the endomorphism x ↦ α(x) u (column u times row α).
Mat outer(const Vec& u, const Vec& alpha);

std::string to_string(const Mat& m);

}  // namespace tl
