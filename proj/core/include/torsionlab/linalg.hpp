#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "torsionlab/matrix.hpp"

namespace tl {

struct RrefResult {
  Mat reduced;                      // same shape as the input, zero rows at the bottom
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
  std::size_t rank = 0;
};

RrefResult rref(const Mat& m);

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Linear map R^domain -> R^codomain given by a codomain x domain matrix.
struct LinMap {
  std::size_t domain_dim = 0;
  std::size_t codomain_dim = 0;
  Mat matrix;

  LinMap() = default;
  explicit LinMap(Mat m) : domain_dim(m.cols()), codomain_dim(m.rows()), matrix(std::move(m)) {}
  static LinMap zero(std::size_t domain, std::size_t codomain) { return LinMap(Mat(codomain, domain)); }

  Vec operator()(const Vec& v) const { return matrix * v; }
  LinMap compose(const LinMap& inner) const;  // this ∘ inner
};

// Linear subspace of R^ambient stored by its reduced row-echelon basis.
// Two subspaces are equal iff their canonical bases agree entry-wise.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient);  // the zero subspace

  static Subspace zero(std::size_t ambient) { return Subspace(ambient); }
  static Subspace full(std::size_t ambient);
  static Subspace span(std::size_t ambient, const std::vector<Vec>& vectors);
  static Subspace row_space(const Mat& m);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const Mat& basis_matrix() const { return basis_; }
  std::vector<Vec> basis() const;
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const Vec& v) const;
  // v minus its echelon reduction against the basis; zero iff v ∈ span.
  Vec residual(const Vec& v) const;
  bool contains(const Subspace& other) const;
  // Coordinates of v in the canonical basis; v must lie in the subspace.
  Vec coordinates(const Vec& v) const;
  // Rows spanning the annihilator {α : α(s) = 0 for all s}.
  Mat annihilator() const;

  bool operator==(const Subspace& o) const;
  bool operator!=(const Subspace& o) const { return !(*this == o); }

 private:
  std::size_t ambient_ = 0;
  Mat basis_;
  std::vector<std::size_t> pivots_;
};

Subspace kernel(const LinMap& f);
Subspace image(const LinMap& f);
Subspace image(const LinMap& f, const Subspace& s);     // f(s)
Subspace preimage(const LinMap& f, const Subspace& s);  // f^{-1}(s)

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
bool contains(const Subspace& a, const Vec& v);
bool equal(const Subspace& a, const Subspace& b);
bool is_direct_sum(const Subspace& a, const Subspace& b);

// Kernel of a matrix as a subspace of R^cols.
Subspace null_space(const Mat& m);

// Solves m x = b. Free variables are set to zero, so the answer is the
// first solution of the echelon solve and is deterministic.
std::optional<Vec> solve(const Mat& m, const Vec& b);

// Returns an ordered list of vectors completing the basis of s to R^ambient,
// using standard unit vectors in increasing index order.
std::vector<Vec> complement_basis(const Subspace& s);

}  // namespace tl
