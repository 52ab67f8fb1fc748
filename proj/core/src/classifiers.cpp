#include "torsionlab/classifiers.hpp"

#include <functional>
#include <random>
#include <stdexcept>

#include "torsionlab/spectral.hpp"

namespace tl {

namespace {

using Cond = std::function<Vec(const Mat&)>;

// {F ∈ S : cond(F) = 0} for a subspace S ⊆ gl(n) given in R^{n²}.
Subspace cut(const Subspace& s, std::size_t n, const Cond& cond) {
  if (s.dim() == 0) return s;
  const auto basis = s.basis();
  std::vector<Vec> cols;
  for (const auto& b : basis) cols.push_back(cond(Mat::from_flat(n, n, b)));
  const std::size_t rows = cols.front().size();
  if (rows == 0) return s;
  std::vector<Vec> out;
  for (const auto& x : null_space(Mat::from_cols(cols, rows)).basis()) {
    Vec f = zeros(n * n);
    for (std::size_t a = 0; a < basis.size(); ++a)
      if (sgn(x[a]) != 0) f = f + x[a] * basis[a];
    out.push_back(std::move(f));
  }
  return Subspace::span(n * n, out);
}

Cond vanish_on(const Subspace& S) {
  return [basis = S.basis()](const Mat& F) {
    Vec out;
    for (const auto& s : basis) {
      Vec y = F * s;
      out.insert(out.end(), y.begin(), y.end());
    }
    return out;
  };
}

Cond maps_into(const Subspace& S, const Subspace& T) {
  return [basis = S.basis(), ann = T.annihilator()](const Mat& F) {
    Vec out;
    for (const auto& s : basis) {
      Vec y = ann * (F * s);
      out.insert(out.end(), y.begin(), y.end());
    }
    return out;
  };
}

Cond value_in(const Vec& x, const Subspace& T) {
  return [x, ann = T.annihilator()](const Mat& F) { return ann * (F * x); };
}

std::vector<Mat> mats(const Subspace& s, std::size_t n) {
  std::vector<Mat> out;
  for (const auto& b : s.basis()) out.push_back(Mat::from_flat(n, n, b));
  return out;
}

Vec head(const Vec& x) { return Vec(x.begin(), x.end() - 1); }

Subspace flat_span(std::size_t m, const std::vector<Mat>& ms) {
  std::vector<Vec> rows;
  for (const auto& x : ms) rows.push_back(x.flat());
  return Subspace::span(m * m, rows);
}

bool preserves_hyperplane(const Mat& F) {
  const std::size_t m = F.rows() - 1;
  for (std::size_t j = 0; j < m; ++j)
    if (sgn(F(m, j)) != 0) return false;
  return true;
}

// Restriction of F to R^{n-1}; F must preserve R^{n-1}.
Mat hyper_block(const Mat& F) {
  if (!preserves_hyperplane(F)) throw std::logic_error("closed form produced an element not preserving R^{n-1}");
  return top_left(F);
}

Subspace left_multiply(const Mat& A, const Subspace& s, std::size_t n) {
  std::vector<Vec> rows;
  for (const auto& F : mats(s, n)) rows.push_back((A * F).flat());
  return Subspace::span(n * n, rows);
}

Subspace image_of(const Mat& A, const Subspace& S) {
  std::vector<Vec> rows;
  for (const auto& s : S.basis()) rows.push_back(A * s);
  return Subspace::span(A.rows(), rows);
}

Vec first_outside(const Subspace& big, const Subspace& small) {
  for (const auto& b : big.basis())
    if (!small.contains(b)) return b;
  throw std::logic_error("first_outside: no element outside the subspace");
}

Vec normalize_last(Vec v) {
  const Rational vn = v.back();
  for (auto& x : v) x /= vn;
  return v;
}

// Span of {x ↦ g(u, x) u : u ∈ U} restricted to R^{n-1}, via polarization.
std::vector<Mat> quadratic_span(const std::vector<Vec>& U, const Mat& g) {
  std::vector<Mat> out;
  for (std::size_t i = 0; i < U.size(); ++i)
    for (std::size_t j = i; j < U.size(); ++j)
      out.push_back(hyper_block(outer(U[i], g * U[j]) + outer(U[j], g * U[i])));
  return out;
}

// The single direction of all values of K^(1), when it is one-dimensional.
std::optional<Vec> k1_direction(const Subspace& K1, std::size_t n) {
  if (K1.dim() == 0) return std::nullopt;
  const std::size_t m = n - 1;
  std::vector<Vec> vals;
  for (const auto& t : K1.basis())
    for (std::size_t ij = 0; ij < m * m; ++ij) vals.emplace_back(t.begin() + ij * n, t.begin() + (ij + 1) * n);
  Subspace V = Subspace::span(n, vals);
  if (V.dim() != 1) return std::nullopt;
  Vec v = V.basis().front();
  if (sgn(v.back()) == 0) return std::nullopt;
  return normalize_last(v);
}

struct MetricData {
  Mat g;
  bool degenerate = false;
  Vec perp;  // spans R^⊥
};

std::optional<MetricData> metric_data(const RuleContext& ctx, std::size_t n) {
  if (!ctx.g) return std::nullopt;
  MetricContext mc(*ctx.g);
  Subspace perp = orthogonal_complement(mc, mc.hyperplane);
  MetricData d{*ctx.g, is_degenerate(mc, mc.hyperplane), perp.basis().front()};
  if (!d.degenerate) d.perp = normalize_last(d.perp);
  (void)n;
  return d;
}

}  // namespace

RuleContext RuleContext::from(const LinearSubalgebra& h) {
  RuleContext c;
  const auto& s = h.structures();
  if (s.J) c.J = s.J;
  else if (s.hpc) c.J = s.hpc->J;
  c.g = s.g;
  return c;
}

StructuralProfile profile(const LinearSubalgebra& h) { return profile(h, RuleContext::from(h)); }

StructuralProfile profile(const LinearSubalgebra& h, const RuleContext& ctx) {
  const std::size_t n = h.n(), m = n - 1;
  const Subspace R = standard_hyperplane(n), full = Subspace::full(n);
  StructuralProfile p;
  p.h1 = cut(h.span(), n, vanish_on(R));
  p.h1_inv = cut(p.h1, n, maps_into(full, R));
  {
    std::vector<Vec> w;
    for (const auto& F : mats(p.h1_inv, n)) w.push_back(head(F.col(m)));
    p.W = Subspace::span(m, w);
  }
  if (ctx.J) {
    const Mat& J = *ctx.J;
    p.RJ = intersect(R, image_of(J, R));
    p.h2 = cut(h.span(), n, vanish_on(*p.RJ));
    p.h2_inv = cut(*p.h2, n, maps_into(R, R));
    p.h2_J = cut(*p.h2_inv, n, maps_into(R, *p.RJ));
  }
  auto metric = metric_data(ctx, n);
  std::optional<Vec> v = ctx.v;
  if (!v) v = k1_direction(first_prolongation(h), n);
  if (!v && metric && !metric->degenerate) v = metric->perp;
  if (v) {
    if (v->size() != n || sgn(v->back()) == 0) throw InvalidTransversal("profile: v must lie outside R^{n-1}");
    p.v = v;
    const Subspace span_v = Subspace::span(n, {*v});
    p.hv = cut(h.span(), n, maps_into(R, span_v));
    p.hv_inv = cut(*p.hv, n, value_in(*v, R));
    const auto Fs = mats(*p.hv, n);
    // α_j = (F e_j)_n / v_n.
    Mat Phi(m, Fs.size());
    for (std::size_t a = 0; a < Fs.size(); ++a)
      for (std::size_t j = 0; j < m; ++j) Phi(j, a) = Fs[a](m, j) / v->back();
    p.U_cal = image(LinMap(Phi));
    bool defined = *p.hv == *p.hv_inv;
    for (const auto& F : mats(p.h1, n))
      if (!is_zero(F * *v)) defined = false;
    if (defined) {
      const auto U = p.U_cal->basis();
      Mat nu(m, U.size());
      for (std::size_t i = 0; i < U.size(); ++i) {
        auto x = solve(Phi, U[i]);
        if (!x) throw std::logic_error("profile: U basis vector not in the image");
        Mat F(n, n);
        for (std::size_t a = 0; a < Fs.size(); ++a)
          if (sgn((*x)[a]) != 0) F = F + (*x)[a] * Fs[a];
        // F = α⊗v - β⊗ν(α) with α(v) = 0 and β(v) = 1 gives F(v) = -ν(α).
        const Vec Fv = F * *v;
        for (std::size_t k = 0; k < m; ++k) nu(k, i) = -Fv[k];
      }
      p.nu = LinMap(nu);
    }
  }
  if (metric && metric->degenerate) {
    const Subspace perp = Subspace::span(n, {metric->perp});
    p.h_perp = cut(h.span(), n, maps_into(R, perp));
    p.h_perp_inv = cut(*p.h_perp, n, maps_into(full, R));
    std::vector<Vec> imgs;
    for (const auto& F : mats(*p.h_perp_inv, n))
      for (std::size_t j = 0; j < n; ++j) imgs.push_back(head(F.col(j)));
    p.U_tilde = Subspace::span(m, imgs);
  }
  return p;
}

bool is_totally_real(const LinearSubalgebra& h, const Mat& J) {
  return intersect(h.span(), left_multiply(J, h.span(), h.n())).dim() == 0;
}

std::string to_string(TotallyRealTag t) {
  switch (t) {
    case TotallyRealTag::I: return "I";
    case TotallyRealTag::II: return "II";
    case TotallyRealTag::III: return "III";
    case TotallyRealTag::IV: return "IV";
  }
  return "?";
}

TotallyRealType totally_real_type(const LinearSubalgebra& h, const Mat& J) {
  const std::size_t n = h.n(), m = n - 1;
  if (!is_totally_real(h, J)) throw NotTotallyReal("h ∩ Jh ≠ {0}");
  RuleContext ctx;
  ctx.J = J;
  const Subspace R = standard_hyperplane(n);
  TotallyRealType t{};
  t.RJ = intersect(R, image_of(J, R));
  t.h2 = cut(h.span(), n, vanish_on(t.RJ));
  t.h2_inv = cut(t.h2, n, maps_into(R, R));
  t.h2_J = cut(t.h2_inv, n, maps_into(R, t.RJ));
  t.v = first_outside(R, t.RJ);
  const std::size_t a = t.h2_J.dim(), b = t.h2_inv.dim(), c = t.h2.dim();
  if (a == c) t.tag = TotallyRealTag::I;
  else if (a < b && b == c) t.tag = TotallyRealTag::II;
  else if (a == b && b < c) t.tag = TotallyRealTag::III;
  else t.tag = TotallyRealTag::IV;

  auto nth = [m](const Vec& x) { return x[m]; };
  if (t.tag == TotallyRealTag::III) {
    Mat F = Mat::from_flat(n, n, first_outside(t.h2, t.h2_inv));
    const Rational den = nth(F * t.v);
    if (sgn(den) == 0) throw std::logic_error("type III: (Fv)_n vanishes");
    t.lambda = nth(J * F * t.v) / den;
    t.F = F;
  } else if (t.tag == TotallyRealTag::IV) {
    Mat F1 = Mat::from_flat(n, n, first_outside(t.h2_inv, t.h2_J));
    Mat F2t = Mat::from_flat(n, n, first_outside(t.h2, t.h2_inv));
    const Rational den = nth(J * F1 * t.v);
    if (sgn(den) == 0) throw std::logic_error("type IV: (JF₁v)_n vanishes");
    t.lambda = nth(J * F2t * t.v) / den;
    Mat F2 = F2t - *t.lambda * F1;
    t.mu = nth(F2 * t.v) / den;
    if (sgn(*t.mu) == 0) throw std::logic_error("type IV: μ vanishes");
    t.F1 = *t.mu * F1;
    t.F2 = F2;
  }
  return t;
}

Subspace sym_square_tensor(const Subspace& U, const Vec& w) {
  const std::size_t m = U.ambient_dim(), n = w.size();
  const auto B = U.basis();
  std::vector<Vec> out;
  for (std::size_t a = 0; a < B.size(); ++a)
    for (std::size_t b = a; b < B.size(); ++b) {
      Vec t = zeros(m * m * n);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
          const Rational s = B[a][i] * B[b][j] + B[b][i] * B[a][j];
          if (sgn(s) == 0) continue;
          for (std::size_t k = 0; k < n; ++k) t[(i * m + j) * n + k] = s * w[k];
        }
      out.push_back(std::move(t));
    }
  return Subspace::span(m * m * n, out);
}

namespace {

RuleResult skip(std::string rule, std::string note) { return {std::move(rule), false, std::move(note), std::nullopt}; }

RuleResult fire(std::string rule, Subspace F, std::string note = {}) {
  return {std::move(rule), true, std::move(note), std::move(F)};
}

struct RuleInputs {
  const LinearSubalgebra& h;
  const RuleContext& ctx;
  std::size_t n, m;
  Subspace R, k_tilde, K1;
};

Subspace extend(const RuleInputs& in, const std::vector<Mat>& extra) {
  if (extra.empty()) return in.k_tilde;
  return sum(in.k_tilde, flat_span(in.m, extra));
}

RuleResult rule_complex(const RuleInputs& in) {
  const std::string name = "complex";
  if (!in.ctx.J) return skip(name, "no complex structure");
  if (left_multiply(*in.ctx.J, in.h.span(), in.n) != in.h.span()) return skip(name, "Jh ≠ h");
  return fire(name, in.k_tilde);
}

RuleResult rule_commuting(const RuleInputs& in) {
  const std::string name = "commuting-endomorphism";
  const auto& s = in.h.structures();
  std::vector<std::pair<std::string, Mat>> cands;
  if (s.product) cands.emplace_back("P", *s.product);
  if (s.tangent) cands.emplace_back("T", *s.tangent);
  if (s.hpc) {
    cands.emplace_back("E", s.hpc->E);
    cands.emplace_back("K", s.hpc->K);
  }
  for (const auto& [label, A] : cands) {
    if (image_of(A, in.R) == in.R) continue;
    bool commutes = true;
    for (const auto& B : in.h.basis())
      if (!commutator(A, B).is_zero()) commutes = false;
    if (!commutes) continue;
    if (left_multiply(A, in.h.span(), in.n) != in.h.span()) continue;
    return fire(name, in.k_tilde, "A = " + label);
  }
  return skip(name, "no attached endomorphism A with Ah = h and R^{n-1} not A-invariant");
}

void rules_totally_real(const RuleInputs& in, std::vector<RuleResult>& out) {
  const char* labels[] = {"totally-real-I", "totally-real-II", "totally-real-III", "totally-real-IV"};
  if (!in.ctx.J || !is_totally_real(in.h, *in.ctx.J)) {
    for (auto* l : labels) out.push_back(skip(l, in.ctx.J ? "h ∩ Jh ≠ {0}" : "no complex structure"));
    return;
  }
  const Mat& J = *in.ctx.J;
  const auto t = totally_real_type(in.h, J);
  std::vector<Mat> extra;
  for (const auto& F : mats(t.h2_J, in.n)) extra.push_back(hyper_block(J * F));
  std::optional<RuleResult> res;
  const std::string label = labels[static_cast<int>(t.tag)];
  switch (t.tag) {
    case TotallyRealTag::I: res = fire(label, extend(in, extra)); break;
    case TotallyRealTag::II: {
      // Every F ∈ h with F(R_J) ⊆ R^{n-1} must preserve R^{n-1}.
      Subspace A = cut(in.h.span(), in.n, maps_into(t.RJ, in.R));
      Subspace B = cut(in.h.span(), in.n, maps_into(in.R, in.R));
      if (A != B) res = skip(label, "extra type II hypothesis fails");
      else res = fire(label, extend(in, extra));
      break;
    }
    case TotallyRealTag::III:
      extra.push_back(hyper_block(J * *t.F - *t.lambda * *t.F));
      res = fire(label, extend(in, extra), "λ = " + to_string(*t.lambda));
      break;
    case TotallyRealTag::IV:
      extra.push_back(hyper_block(*t.F2 - J * *t.F1));
      extra.push_back(hyper_block(J * *t.F2));
      res = fire(label, extend(in, extra), "λ = " + to_string(*t.lambda) + ", μ = " + to_string(*t.mu));
      break;
  }
  for (auto* l : labels)
    out.push_back(l == label ? *res : skip(l, "type is " + to_string(t.tag)));
}

void rules_unitary(const RuleInputs& in, const std::optional<MetricData>& md, std::vector<RuleResult>& out) {
  const std::string a = "unitary-nondegenerate", b = "unitary-degenerate";
  if (!in.ctx.J || !md) {
    out.push_back(skip(a, "needs J and g"));
    out.push_back(skip(b, "needs J and g"));
    return;
  }
  const Mat& J = *in.ctx.J;
  const Mat& g = md->g;
  if (J.transpose() * g * J != g || !is_totally_real(in.h, J)) {
    out.push_back(skip(a, "J is not g-orthogonal or h is not totally real"));
    out.push_back(skip(b, "J is not g-orthogonal or h is not totally real"));
    return;
  }
  if (!md->degenerate) {
    const Subspace RJ = intersect(in.R, image_of(J, in.R));
    MetricContext mc(g);
    const Subspace line = intersect(in.R, orthogonal_complement(mc, RJ));
    if (line.dim() != 1) throw std::logic_error("unitary: R ∩ R_J^⊥ is not a line");
    const Vec v = line.basis().front();
    const Mat X = outer(v, g * (J * v)) - outer(J * v, g * v);
    if (in.h.contains(X)) out.push_back(fire(a, extend(in, {hyper_block(outer(v, g * v))}), "type III case"));
    else out.push_back(fire(a, in.k_tilde, "type I case"));
    out.push_back(skip(b, "R^{n-1} is non-degenerate"));
    return;
  }
  out.push_back(skip(a, "R^{n-1} is degenerate"));
  const Vec& v = md->perp;
  const Vec Jv = J * v;
  const Mat Y = outer(Jv, g * v) - outer(v, g * Jv);
  if (!in.h.contains(Y)) {
    out.push_back(fire(b, in.k_tilde, "element v^b⊗Jv - (Jv)^b⊗v not in h"));
    return;
  }
  const Mat add = outer(Jv, g * Jv);
  if (!preserves_hyperplane(add)) {
    out.push_back(skip(b, "Jv ∉ R^{n-1}"));
    return;
  }
  out.push_back(fire(b, extend(in, {top_left(add)})));
}

void rules_k1_zero(const RuleInputs& in, const StructuralProfile& p, std::vector<RuleResult>& out) {
  const std::string a = "K1-zero-a", b = "K1-zero-b";
  if (in.K1.dim() != 0) {
    out.push_back(skip(a, "K^(1) ≠ {0}"));
    out.push_back(skip(b, "K^(1) ≠ {0}"));
    return;
  }
  std::vector<Mat> hom;  // (R^{n-1})* ⊗ W
  for (const auto& w : p.W.basis())
    for (std::size_t j = 0; j < in.m; ++j) hom.push_back(outer(w, unit_vec(in.m, j)));
  if (p.h1 == p.h1_inv) {
    out.push_back(fire(a, extend(in, hom)));
    out.push_back(skip(b, "h₁ = h₁^R"));
    return;
  }
  out.push_back(skip(a, "h₁ ≠ h₁^R"));
  const Mat F = Mat::from_flat(in.n, in.n, first_outside(p.h1, p.h1_inv));
  const Vec v = F.col(in.m);
  // π: R^n → R^{n-1} along v.
  std::vector<Mat> gens = hom;
  for (const auto& k : tableau(in.h).basis()) {
    const Mat K = Mat::from_flat(in.n, in.m, k);
    Mat P(in.m, in.m);
    for (std::size_t j = 0; j < in.m; ++j) {
      const Rational s = K(in.m, j) / v[in.m];
      for (std::size_t i = 0; i < in.m; ++i) P(i, j) = K(i, j) - s * v[i];
    }
    gens.push_back(P);
  }
  out.push_back(fire(b, flat_span(in.m, gens)));
}

RuleResult rule_nondeg_metric(const RuleInputs& in, const std::optional<MetricData>& md) {
  const std::string name = "nondeg-metric";
  if (!md) return skip(name, "no metric");
  if (md->degenerate) return skip(name, "R^{n-1} is degenerate");
  const Vec& v = md->perp;
  const Subspace hv = cut(in.h.span(), in.n, maps_into(in.R, Subspace::span(in.n, {v})));
  if (cut(hv, in.n, value_in(v, in.R)) != hv) return skip(name, "h_v ≠ h_v^R");
  std::vector<Vec> U;
  for (const auto& F : mats(hv, in.n)) U.push_back(F * v);
  const auto Ub = Subspace::span(in.n, U).basis();
  return fire(name, extend(in, quadratic_span(Ub, md->g)));
}

RuleResult rule_s2uv(const RuleInputs& in) {
  const std::string name = "S2Uv";
  auto v = k1_direction(in.K1, in.n);
  if (!v) return skip(name, "K^(1) is not of the form S²𝒰⊗v");
  RuleContext c = in.ctx;
  c.v = v;
  const StructuralProfile p = profile(in.h, c);
  if (p.U_cal->dim() == 0) return skip(name, "𝒰 = {0}");
  if (*p.hv != *p.hv_inv) return skip(name, "h_v ≠ h_v^R");
  if (sym_square_tensor(*p.U_cal, *v) != in.K1) return skip(name, "K^(1) ≠ S²𝒰⊗v");
  if (!p.nu) return skip(name, "ν is not well defined");
  const auto U = p.U_cal->basis();
  const Mat& nu = p.nu->matrix;
  std::vector<Mat> extra;
  for (std::size_t i = 0; i < U.size(); ++i)
    for (std::size_t j = i; j < U.size(); ++j)
      extra.push_back(outer(nu.col(j), U[i]) + outer(nu.col(i), U[j]));
  return fire(name, extend(in, extra));
}

RuleResult rule_degenerate_metric(const RuleInputs& in, const std::optional<MetricData>& md) {
  const std::string name = "degenerate-metric";
  if (!md) return skip(name, "no metric");
  if (!md->degenerate) return skip(name, "R^{n-1} is non-degenerate");
  const Subspace full = Subspace::full(in.n);
  const Subspace hp = cut(in.h.span(), in.n, maps_into(in.R, Subspace::span(in.n, {md->perp})));
  const Subspace hpi = cut(hp, in.n, maps_into(full, in.R));
  if (hp != hpi) return skip(name, "h_⊥ ≠ h_⊥^R");
  std::vector<Vec> imgs;
  for (const auto& F : mats(hpi, in.n))
    for (std::size_t j = 0; j < in.n; ++j) imgs.push_back(F.col(j));
  return fire(name, extend(in, quadratic_span(Subspace::span(in.n, imgs).basis(), md->g)));
}

}  // namespace

std::vector<RuleResult> evaluate_rules(const LinearSubalgebra& h) { return evaluate_rules(h, RuleContext::from(h)); }

std::vector<RuleResult> evaluate_rules(const LinearSubalgebra& h, const RuleContext& ctx) {
  const std::size_t n = h.n();
  if (n < 2) throw DimensionMismatch("closed forms need n >= 2");
  RuleInputs in{h, ctx, n, n - 1, standard_hyperplane(n), characteristic_subalgebra(h), first_prolongation(h)};
  const auto md = metric_data(ctx, n);
  RuleContext plain = ctx;
  plain.v.reset();
  const StructuralProfile p = profile(h, plain);
  std::vector<RuleResult> out;
  out.push_back(rule_complex(in));
  out.push_back(rule_commuting(in));
  rules_totally_real(in, out);
  rules_unitary(in, md, out);
  rules_k1_zero(in, p, out);
  out.push_back(rule_nondeg_metric(in, md));
  out.push_back(rule_s2uv(in));
  out.push_back(rule_degenerate_metric(in, md));
  return out;
}

std::optional<ClosedForm> closed_form_F(const LinearSubalgebra& h) { return closed_form_F(h, RuleContext::from(h)); }

std::optional<ClosedForm> closed_form_F(const LinearSubalgebra& h, const RuleContext& ctx) {
  for (auto& r : evaluate_rules(h, ctx))
    if (r.applies) return ClosedForm{std::move(*r.F), r.rule};
  return std::nullopt;
}

bool CrosscheckReport::ok() const {
  if (entries.empty()) return false;
  for (const auto& e : entries)
    if (!e.equal) return false;
  return true;
}

CrosscheckReport crosscheck(const LinearSubalgebra& h) { return crosscheck(h, RuleContext::from(h)); }

CrosscheckReport crosscheck(const LinearSubalgebra& h, const RuleContext& ctx) {
  CrosscheckReport rep;
  rep.algebra = h.name();
  rep.engine_F = obstruction_space(h);
  rep.engine_dim = rep.engine_F.dim();
  for (auto& r : evaluate_rules(h, ctx)) {
    if (!r.applies) continue;
    rep.entries.push_back({r.rule, r.F->dim(), *r.F == rep.engine_F});
    rep.rule_F.push_back(std::move(*r.F));
  }
  return rep;
}

std::size_t generic_rank(const LinearSubalgebra& h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 7);
  std::size_t best = 0;
  for (int trial = 0; trial < 3; ++trial) {
    Vec x(h.dim());
    for (auto& c : x) c = make_rational(num(rng), den(rng));
    best = std::max(best, rank(h.element(x)));
  }
  return best;
}

std::string to_string(LowRankVerdict v) {
  switch (v) {
    case LowRankVerdict::refuted: return "refuted";
    case LowRankVerdict::certified: return "certified";
    case LowRankVerdict::unknown: return "unknown";
  }
  return "?";
}

namespace {

bool positive_definite(const Mat& G) {
  for (std::size_t k = 1; k <= G.rows(); ++k)
    if (sgn(det(G.block(0, 0, k, k))) <= 0) return false;
  return true;
}

// B_iᵀB_j + B_jᵀB_i = 2 G_ij I with G positive definite.
bool clifford_certificate(const std::vector<Mat>& B) {
  const std::size_t d = B.size();
  if (d == 0) return false;
  const std::size_t n = B.front().rows();
  const Mat I = Mat::identity(n);
  Mat G(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      const Mat S = B[i].transpose() * B[j] + B[j].transpose() * B[i];
      const Rational c = S(0, 0) / 2;
      if (S != (2 * c) * I) return false;
      G(i, j) = G(j, i) = c;
    }
  return positive_definite(G);
}

void combinations(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                  std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    combinations(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

Mat submatrix(const Mat& A, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  Mat s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = A(rows[i], cols[j]);
  return s;
}

}  // namespace

LowRankResult low_rank_witness(const LinearSubalgebra& h, std::size_t r, std::size_t budget) {
  const std::size_t n = h.n(), d = h.dim();
  const auto& B = h.basis();
  if (d == 0) return {LowRankVerdict::certified, std::nullopt, "zero algebra"};
  for (const auto& b : B)
    if (rank(b) <= r) return {LowRankVerdict::refuted, b, "basis element"};
  if (clifford_certificate(B)) return {LowRankVerdict::certified, std::nullopt, "structural: multiples of orthogonal maps"};
  if (d == 1) return {LowRankVerdict::certified, std::nullopt, "exact: one-dimensional"};
  if (d == 2) {
    // Elements B0 + t·B1 (B1 alone was checked above): all (r+1)-minors vanish.
    std::vector<std::vector<std::size_t>> idx;
    std::vector<std::size_t> cur;
    combinations(n, r + 1, 0, cur, idx);
    Poly g;
    for (const auto& rows : idx) {
      for (const auto& cols : idx) {
        g = gcd(g, det_pencil(submatrix(B[0], rows, cols), submatrix(B[1], rows, cols)));
        if (g.degree() == 0) break;
      }
      if (g.degree() == 0) break;
    }
    if (g.is_zero()) return {LowRankVerdict::refuted, B[0], "exact: minors vanish identically"};
    if (g.degree() == 0) return {LowRankVerdict::certified, std::nullopt, "exact: minors have no common root"};
    if (auto roots = rational_roots(g); roots && !roots->empty()) {
      Mat w = B[0] + roots->front() * B[1];
      if (rank(w) > r) throw std::logic_error("low_rank_witness: common minor root is not a witness");
      return {LowRankVerdict::refuted, w, "exact: rational common root"};
    }
    if (real_root_count(g) > 0) return {LowRankVerdict::refuted, std::nullopt, "exact: irrational common root"};
    return {LowRankVerdict::certified, std::nullopt, "exact: common minor roots are non-real"};
  }
  // Grid search over coefficient boxes of growing radius.
  std::size_t visited = 0;
  for (long c = 1; c <= 4 && visited < budget; ++c) {
    std::vector<long> x(d, -c);
    while (visited < budget) {
      long mx = 0;
      for (long xi : x) mx = std::max(mx, std::labs(xi));
      if (mx == c) {
        ++visited;
        Vec coords(d);
        for (std::size_t i = 0; i < d; ++i) coords[i] = x[i];
        Mat e = h.element(coords);
        if (rank(e) <= r) return {LowRankVerdict::refuted, e, "grid search"};
      }
      std::size_t i = 0;
      while (i < d && x[i] == c) x[i++] = -c;
      if (i == d) break;
      ++x[i];
    }
  }
  return {LowRankVerdict::unknown, std::nullopt, "no witness within budget"};
}

}  // namespace tl
