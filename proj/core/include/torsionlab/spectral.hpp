#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "torsionlab/matrix.hpp"

namespace tl {

// Dense univariate polynomial over Q, c[i] is the coefficient of x^i.
// Trailing zeros are trimmed; the zero polynomial has no coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(Vec coeffs);
  static Poly constant(const Rational& c);
  static Poly x();
  static Poly linear_root(const Rational& r);  // x - r

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const Vec& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational eval(const Rational& t) const;
  int sign_at(const Rational& t) const { return sgn(eval(t)); }
  Poly derivative() const;
  Poly monic() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  friend Poly operator*(const Rational& s, const Poly& p);
  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

 private:
  void trim();
  Vec c_;
};

std::string to_string(const Poly& p);

// Euclidean division; throws std::domain_error when b is zero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly gcd(const Poly& a, const Poly& b);  // monic, gcd(0, 0) = 0
Poly pow(const Poly& p, unsigned k);

// Yun's algorithm: p = lead · Π f_k^k with f_k monic, squarefree, pairwise
// coprime. Only factors of positive degree are listed.
std::vector<std::pair<Poly, unsigned>> squarefree_decomposition(const Poly& p);

std::vector<Poly> sturm_chain(const Poly& p);
// Distinct real roots of p over all of R.
std::size_t real_root_count(const Poly& p);
// Distinct real roots in (a, b); neither endpoint may be a root.
std::size_t real_root_count(const Poly& p, const Rational& a, const Rational& b);

// Distinct rational roots in increasing order; nullopt when the candidate
// enumeration could not be completed (integer factoring beyond the
// trial-division bound with a composite cofactor).
std::optional<std::vector<Rational>> rational_roots(const Poly& p);

// det(x·I - A), monic of degree n (Faddeev-LeVerrier).
Poly charpoly(const Mat& a);
// det(A + t·B) by exact interpolation.
Poly det_pencil(const Mat& a, const Mat& b);

// Evaluate a polynomial at a matrix argument.
Mat eval(const Poly& p, const Mat& a);

struct SpectralFactor {
  Poly factor;  // monic, squarefree
  unsigned multiplicity = 0;
  std::size_t real_roots = 0;  // Sturm count
};

struct SpectralSummary {
  Poly charpoly;
  std::vector<SpectralFactor> squarefree;
  // Irreducible-over-Q pieces of degree ≤ 2 with multiplicities, populated
  // when `split` is true.
  std::vector<std::pair<Poly, unsigned>> pieces;
  bool split = false;
};

SpectralSummary spectral_summary(const Mat& f);

}  // namespace tl
