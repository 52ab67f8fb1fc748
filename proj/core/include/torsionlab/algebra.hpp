#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "torsionlab/linalg.hpp"

namespace tl {

struct HyperParaComplex {
  Mat J, E, K;
};

// Geometric structures an algebra may carry. Each one is checked against its
// defining identity and against every basis element at construction.
struct Structures {
  std::optional<Mat> J;        // J² = -I, basis commutes with J
  std::optional<Mat> g;        // symmetric invertible Gram, basis is g-skew
  std::optional<Mat> omega;    // skew invertible Gram, basis is omega-skew
  std::optional<Mat> product;  // P² = I, P ≠ ±I, basis commutes with P
  std::optional<Mat> tangent;  // T² = 0, ker T = im T, basis commutes with T
  std::optional<HyperParaComplex> hpc;
};

class InvalidAlgebra : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Matrix Lie subalgebra of gl(n). The basis is stored in canonical form:
// the reduced echelon basis of the flattened span in R^{n²}.
class LinearSubalgebra {
 public:
  LinearSubalgebra() = default;
  LinearSubalgebra(std::size_t n, const std::vector<Mat>& basis, std::string name = "",
                   Structures structures = {}, bool validate = true);
  static LinearSubalgebra from_span(std::size_t n, Subspace span, std::string name = "",
                                    Structures structures = {}, bool validate = true);

  std::size_t n() const { return n_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Mat>& basis() const { return basis_; }
  const Subspace& span() const { return span_; }
  const Structures& structures() const { return structures_; }
  const std::string& name() const { return name_; }

  bool contains(const Mat& a) const { return span_.contains(a.flat()); }
  Mat element(const Vec& coords) const;

  LinearSubalgebra renamed(std::string name) const;
  LinearSubalgebra with_structures(Structures s) const;

 private:
  std::size_t n_ = 0;
  std::vector<Mat> basis_;
  Subspace span_;
  Structures structures_;
  std::string name_;
};

Mat bracket(const Mat& a, const Mat& b);
bool is_subalgebra(const std::vector<Mat>& basis);

// T h T^{-1}; attached structures are conjugated the same way
// (endomorphisms by T·S·T^{-1}, bilinear forms by T^{-t}·G·T^{-1}).
LinearSubalgebra conjugate(const LinearSubalgebra& h, const Mat& T);

LinearSubalgebra commutant(const Mat& a);

// {F ∈ gl(n) : c(F) = 0 for all constraints}, each constraint linear in F.
using MatConstraint = std::function<Vec(const Mat&)>;
Subspace solve_constraints(std::size_t n, const std::vector<MatConstraint>& constraints);

Subspace algebra_intersection(const LinearSubalgebra& a, const LinearSubalgebra& b);

// Checks the identities listed in Structures against h's basis; returns an
// error message or an empty string.
std::string check_structures(std::size_t n, const std::vector<Mat>& basis, const Structures& s);

struct MetricContext {
  Mat g;
  Subspace hyperplane;

  MetricContext(Mat gram, std::optional<Subspace> hyper = std::nullopt);
  std::size_t n() const { return g.rows(); }
};

Vec musical_flat(const MetricContext& ctx, const Vec& u);
Vec musical_sharp(const MetricContext& ctx, const Vec& alpha);
Subspace orthogonal_complement(const MetricContext& ctx, const Subspace& s);
bool is_degenerate(const MetricContext& ctx, const Subspace& s);

// The hyperplane R^{n-1} = span(e_1..e_{n-1}) inside R^n.
Subspace standard_hyperplane(std::size_t n);

}  // namespace tl
