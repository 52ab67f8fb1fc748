#include "torsionlab/catalog.hpp"

#include <array>
#include <charconv>
#include <sstream>

namespace tl {

namespace {

MatConstraint commutes_with(const Mat& a) {
  return [a](const Mat& F) { return commutator(a, F).flat(); };
}

// g F + Fᵗ g = 0, i.e. F is skew for the bilinear form g.
MatConstraint skew_for(const Mat& g) {
  return [g](const Mat& F) { return (g * F + F.transpose() * g).flat(); };
}

LinearSubalgebra make(std::size_t n, const std::vector<MatConstraint>& cs, std::string name,
                      Structures s = {}) {
  // Algebras cut out by commuting/skewness conditions are closed under the
  // bracket by construction; the structure checks still run.
  auto h = LinearSubalgebra::from_span(n, solve_constraints(n, cs), std::move(name), {}, false);
  return h.with_structures(std::move(s));
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidAlgebra(what);
}

using Quat = std::array<Rational, 4>;  // a0 + a1 i + a2 j + a3 k

Quat qmul(const Quat& a, const Quat& b) {
  return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
          a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
          a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
          a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

// Position p of the R^4 basis (1, i, k, j) holds Hamilton component kSlot[p].
constexpr std::array<std::size_t, 4> kSlot = {0, 1, 3, 2};

Quat basis_quat(std::size_t p) {
  Quat q{0, 0, 0, 0};
  q[kSlot[p]] = 1;
  return q;
}

Quat unit_quat(char unit) {
  Quat q{0, 0, 0, 0};
  switch (unit) {
    case '1': q[0] = 1; break;
    case 'i': q[1] = 1; break;
    case 'j': q[2] = 1; break;
    case 'k': q[3] = 1; break;
    default: throw InvalidAlgebra(std::string("unknown quaternion unit ") + unit);
  }
  return q;
}

Mat quaternion_mult(char unit, bool right) {
  const Quat x = unit_quat(unit);
  Mat m(4, 4);
  for (std::size_t c = 0; c < 4; ++c) {
    Quat r = right ? qmul(basis_quat(c), x) : qmul(x, basis_quat(c));
    for (std::size_t p = 0; p < 4; ++p) m(p, c) = r[kSlot[p]];
  }
  return m;
}

Mat block_repeat(const Mat& b, std::size_t k) { return Mat::block_diag(std::vector<Mat>(k, b)); }

}  // namespace

Mat complex_structure(std::size_t m) {
  return block_repeat(Mat{{0, -1}, {1, 0}}, m);
}

Mat product_structure(std::size_t n, std::size_t p) {
  require(p >= 1 && p < n, "product structure needs 1 <= p <= n-1");
  Vec d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = i < p ? 1 : -1;
  return Mat::diag(d);
}

Mat tangent_structure(std::size_t m) {
  Mat t(2 * m, 2 * m);
  t.set_block(m, 0, Mat::identity(m));
  return t;
}

Mat symplectic_form(std::size_t m) {
  return block_repeat(Mat{{0, 1}, {-1, 0}}, m);
}

HyperParaComplex hyperparacomplex_structure(std::size_t m) {
  const std::size_t n = 2 * m;
  Mat J(n, n);
  for (std::size_t i = 0; i < m; ++i) {
    J(m + i, i) = 1;
    J(i, m + i) = -1;
  }
  Vec d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = i < m ? 1 : -1;
  Mat E = Mat::diag(d);
  return {J, E, J * E};
}

Mat quaternion_right(char unit) { return quaternion_mult(unit, true); }
Mat quaternion_left(char unit) { return quaternion_mult(unit, false); }

Mat hermitian_gram(std::size_t p, std::size_t q) {
  Vec d;
  for (std::size_t i = 0; i < p + q; ++i) {
    d.push_back(i < p ? 1 : -1);
    d.push_back(i < p ? 1 : -1);
  }
  return Mat::diag(d);
}

LinearSubalgebra gl(std::size_t n) {
  return LinearSubalgebra::from_span(n, Subspace::full(n * n), "gl(" + std::to_string(n) + ")", {}, false);
}

LinearSubalgebra sl(std::size_t n) {
  return make(n, {[](const Mat& F) { return Vec{F.trace()}; }}, "sl(" + std::to_string(n) + ")");
}

LinearSubalgebra zero_algebra(std::size_t n) {
  return LinearSubalgebra::from_span(n, Subspace(n * n), "0(" + std::to_string(n) + ")", {}, false);
}

LinearSubalgebra sp(std::size_t m) {
  require(m >= 1, "sp needs m >= 1");
  Mat w = symplectic_form(m);
  Structures s;
  s.omega = w;
  return make(2 * m, {skew_for(w)}, "sp(" + std::to_string(2 * m) + ",R)", s);
}

LinearSubalgebra gl_C(std::size_t m) {
  require(m >= 1, "gl_C needs m >= 1");
  Mat J = complex_structure(m);
  Structures s;
  s.J = J;
  return make(2 * m, {commutes_with(J)}, "gl(" + std::to_string(m) + ",C)", s);
}

namespace {
// Complex trace of F ∈ gl(J₀): Σ F(2i,2i) + i Σ F(2i+1,2i).
MatConstraint complex_trace(bool real_part, bool imag_part) {
  return [=](const Mat& F) {
    Rational re = 0, im = 0;
    for (std::size_t i = 0; 2 * i < F.rows(); ++i) {
      re += F(2 * i, 2 * i);
      im += F(2 * i + 1, 2 * i);
    }
    Vec out;
    if (real_part) out.push_back(re);
    if (imag_part) out.push_back(im);
    return out;
  };
}
}  // namespace

LinearSubalgebra sl_C(std::size_t m) {
  require(m >= 1, "sl_C needs m >= 1");
  Mat J = complex_structure(m);
  Structures s;
  s.J = J;
  return make(2 * m, {commutes_with(J), complex_trace(true, true)}, "sl(" + std::to_string(m) + ",C)", s);
}

LinearSubalgebra sp_C(std::size_t k) {
  require(k >= 1, "sp_C needs k >= 1");
  const std::size_t n = 4 * k;
  Mat J = complex_structure(2 * k);
  // ω = Σ e^{4i-3,4i} + e^{4i-2,4i-1}: the imaginary part of the standard
  // complex symplectic form, so gl(J) ∩ sp(ω) = sp(2k,C).
  Mat w(n, n);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t b = 4 * i;
    w(b, b + 3) = 1;
    w(b + 3, b) = -1;
    w(b + 1, b + 2) = 1;
    w(b + 2, b + 1) = -1;
  }
  Structures s;
  s.J = J;
  s.omega = w;
  return make(n, {commutes_with(J), skew_for(w)}, "sp(" + std::to_string(2 * k) + ",C)", s);
}

LinearSubalgebra u(std::size_t p, std::size_t q) {
  require(p + q >= 1, "u needs p+q >= 1");
  auto h = u_gram(hermitian_gram(p, q));
  return h.renamed(q == 0 ? "u(" + std::to_string(p) + ")"
                          : "u(" + std::to_string(p) + "," + std::to_string(q) + ")");
}

LinearSubalgebra u_gram(const Mat& g) {
  require(g.square() && g.rows() % 2 == 0 && g.rows() > 0, "u_g needs an even-dimensional Gram matrix");
  const std::size_t m = g.rows() / 2;
  Mat J = complex_structure(m);
  require((g * J + J.transpose() * g).is_zero(), "J₀ is not g-orthogonal");
  Structures s;
  s.J = J;
  s.g = g;
  return make(2 * m, {commutes_with(J), skew_for(g)}, "u(g)", s);
}

LinearSubalgebra su(std::size_t m) {
  require(m >= 1, "su needs m >= 1");
  Mat J = complex_structure(m);
  Mat g = Mat::identity(2 * m);
  Structures s;
  s.J = J;
  s.g = g;
  return make(2 * m, {commutes_with(J), skew_for(g), complex_trace(false, true)},
              "su(" + std::to_string(m) + ")", s);
}

LinearSubalgebra so(std::size_t p, std::size_t q) {
  require(p + q >= 1, "so needs p+q >= 1");
  Vec d(p + q);
  for (std::size_t i = 0; i < p + q; ++i) d[i] = i < p ? 1 : -1;
  auto h = so_gram(Mat::diag(d));
  return h.renamed(q == 0 ? "so(" + std::to_string(p) + ")"
                          : "so(" + std::to_string(p) + "," + std::to_string(q) + ")");
}

LinearSubalgebra so_gram(const Mat& g) {
  require(g.square() && g.rows() > 0, "so_g needs a square Gram matrix");
  Structures s;
  s.g = g;
  return make(g.rows(), {skew_for(g)}, "so(g)", s);
}

LinearSubalgebra gl_H(std::size_t k) {
  require(k >= 1, "gl_H needs k >= 1");
  Mat I = block_repeat(quaternion_right('i'), k);
  Mat J = block_repeat(quaternion_right('j'), k);
  Structures s;
  s.J = I;
  return make(4 * k, {commutes_with(I), commutes_with(J)}, "gl(" + std::to_string(k) + ",H)", s);
}

LinearSubalgebra sp_H(std::size_t k) {
  require(k >= 1, "sp_H needs k >= 1");
  Mat I = block_repeat(quaternion_right('i'), k);
  Mat J = block_repeat(quaternion_right('j'), k);
  Mat g = Mat::identity(4 * k);
  Structures s;
  s.J = I;
  s.g = g;
  return make(4 * k, {commutes_with(I), commutes_with(J), skew_for(g)}, "sp(" + std::to_string(k) + ")", s);
}

LinearSubalgebra delta_gl(std::size_t m, HpcFrame frame) {
  require(m >= 1, "delta_gl needs m >= 1");
  const std::size_t n = 2 * m;
  HyperParaComplex t;
  std::string tag;
  switch (frame) {
    case HpcFrame::standard:
      t = hyperparacomplex_structure(m);
      break;
    case HpcFrame::e_invariant: {
      // New basis: e_1..e_{m-1}, e_{m+1}..e_{2m-1}, e_m, e_{2m}.
      auto std_t = hyperparacomplex_structure(m);
      std::vector<std::size_t> sigma;
      for (std::size_t i = 0; i + 1 < m; ++i) sigma.push_back(i);
      for (std::size_t i = m; i + 1 < n; ++i) sigma.push_back(i);
      sigma.push_back(m - 1);
      sigma.push_back(n - 1);
      Mat B(n, n);
      for (std::size_t c = 0; c < n; ++c) B(sigma[c], c) = 1;
      Mat Bi = B.transpose();
      t = {Bi * std_t.J * B, Bi * std_t.E * B, Bi * std_t.K * B};
      tag = ",E";
      break;
    }
    case HpcFrame::case_b: {
      require(m >= 2, "the case-b frame needs m >= 2");
      // Basis (X_1..X_{m-2}, Y_1..Y_{m-2}, v, Jv, Ev, Kv) with Y = JX.
      const std::size_t r = m - 2, v = 2 * r, Jv = v + 1, Ev = v + 2, Kv = v + 3;
      Mat J(n, n), E(n, n);
      for (std::size_t i = 0; i < r; ++i) {
        J(r + i, i) = 1;
        J(i, r + i) = -1;
        E(i, i) = 1;
        E(r + i, r + i) = -1;
      }
      J(Jv, v) = 1;
      J(v, Jv) = -1;
      J(Kv, Ev) = 1;
      J(Ev, Kv) = -1;
      E(Ev, v) = 1;
      E(v, Ev) = 1;
      E(Kv, Jv) = -1;
      E(Jv, Kv) = -1;
      t = {J, E, J * E};
      tag = ",B";
      break;
    }
  }
  Structures s;
  s.J = t.J;
  s.hpc = t;
  return make(n, {commutes_with(t.J), commutes_with(t.E)}, "Dgl(" + std::to_string(m) + tag + ")", s);
}

Subspace lagrangian_subspace(std::size_t m) {
  std::vector<Vec> v;
  for (std::size_t i = 0; i < m; ++i) v.push_back(unit_vec(2 * m, 2 * i));
  return Subspace::span(2 * m, v);
}

namespace {
// im F ⊆ L and L ⊆ ker F for L = span(e1, e3, …): odd rows and even columns
// (0-based) vanish.
MatConstraint maps_into_L_killing_L() {
  return [](const Mat& F) {
    Vec out;
    for (std::size_t i = 0; i < F.rows(); ++i)
      for (std::size_t j = 0; j < F.cols(); ++j)
        if (i % 2 == 1 || j % 2 == 0) out.push_back(F(i, j));
    return out;
  };
}
}  // namespace

Subspace end_L(std::size_t m) { return solve_constraints(2 * m, {maps_into_L_killing_L()}); }

LinearSubalgebra lagrangian_symplectic(std::size_t m) {
  require(m >= 1, "lagrangian needs m >= 1");
  const std::size_t k = 2 * m, n = k + 1;
  Mat w = symplectic_form(m);
  // Sym(ω): ω(F·,·) = ω(·,F·), i.e. Fᵗ Ω = Ω F.
  MatConstraint sym = [w](const Mat& F) { return (F.transpose() * w - w * F).flat(); };
  Subspace sym_L = solve_constraints(k, {sym, maps_into_L_killing_L()});
  std::vector<Mat> basis;
  for (const auto& row : sym_L.basis()) {
    Mat F(n, n);
    F.set_block(0, 0, Mat::from_flat(k, k, row));
    basis.push_back(F);
  }
  for (const auto& u : lagrangian_subspace(m).basis()) {
    Mat F(n, n);
    Vec ub = w.transpose() * u;  // u^b = ω(u, ·)
    for (std::size_t i = 0; i < k; ++i) {
      F(i, k) = u[i];
      F(k, i) = ub[i];
    }
    basis.push_back(F);
  }
  return LinearSubalgebra(n, basis, "lag(" + std::to_string(m) + ")");
}

LinearSubalgebra gl_P(std::size_t n, std::size_t p) {
  Mat P = product_structure(n, p);
  Structures s;
  s.product = P;
  return make(n, {commutes_with(P)}, "gl(P," + std::to_string(n) + "," + std::to_string(p) + ")", s);
}

LinearSubalgebra gl_T(std::size_t m) {
  require(m >= 1, "gl_T needs m >= 1");
  Mat T = tangent_structure(m);
  Structures s;
  s.tangent = T;
  return make(2 * m, {commutes_with(T)}, "gl(T," + std::to_string(2 * m) + ")", s);
}

std::vector<std::string> builder_names() {
  return {"gl", "sl", "zero", "sp", "gl_C", "sl_C", "sp_C", "u", "u_g", "su", "so",
          "so_g", "gl_H", "sp_H", "delta_gl", "lagrangian", "gl_P", "gl_T"};
}

LinearSubalgebra build(const BuildSpec& spec) {
  auto get = [&](const char* key) -> std::size_t {
    auto it = spec.params.find(key);
    if (it == spec.params.end()) throw InvalidAlgebra(spec.name + ": missing parameter " + key);
    if (it->second < 0) throw InvalidAlgebra(spec.name + ": parameter " + key + " must be non-negative");
    return static_cast<std::size_t>(it->second);
  };
  auto get_or = [&](const char* key, long fallback) -> std::size_t {
    return spec.params.count(key) ? get(key) : static_cast<std::size_t>(fallback);
  };
  auto gram = [&]() -> const Mat& {
    if (!spec.gram) throw InvalidAlgebra(spec.name + ": needs a Gram matrix");
    return *spec.gram;
  };
  const std::string& b = spec.name;
  if (b == "gl") return gl(get("n"));
  if (b == "sl") return sl(get("n"));
  if (b == "zero") return zero_algebra(get("n"));
  if (b == "sp") return sp(get("m"));
  if (b == "gl_C") return gl_C(get("m"));
  if (b == "sl_C") return sl_C(get("m"));
  if (b == "sp_C") return sp_C(get("k"));
  if (b == "u") return u(get("p"), get_or("q", 0));
  if (b == "u_g") return u_gram(gram());
  if (b == "su") return su(get("m"));
  if (b == "so") return so(get("p"), get_or("q", 0));
  if (b == "so_g") return so_gram(gram());
  if (b == "gl_H") return gl_H(get("k"));
  if (b == "sp_H") return sp_H(get("k"));
  if (b == "delta_gl") {
    const std::size_t f = get_or("frame", 0);
    if (f > 2) throw InvalidAlgebra("delta_gl: frame must be 0, 1 or 2");
    return delta_gl(get("m"), static_cast<HpcFrame>(f));
  }
  if (b == "lagrangian") return lagrangian_symplectic(get("m"));
  if (b == "gl_P") return gl_P(get("n"), get("p"));
  if (b == "gl_T") return gl_T(get("m"));
  throw UnknownBuilder("unknown builder: " + b);
}

std::optional<BuildSpec> parse_shorthand(const std::string& s) {
  // name or name:key=value,key=value
  BuildSpec spec;
  auto colon = s.find(':');
  spec.name = s.substr(0, colon);
  if (spec.name.empty()) return std::nullopt;
  if (colon == std::string::npos) return spec;
  std::stringstream rest(s.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) return std::nullopt;
    long value = 0;
    const char* first = item.data() + eq + 1;
    const char* last = item.data() + item.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    spec.params[item.substr(0, eq)] = value;
  }
  return spec;
}

std::vector<CatalogEntry> standard_catalog() {
  // Degenerate hyperplane for u(1,1): g(e1,e4) = 1, g(e2,e3) = -1.
  Mat g_deg{{0, 0, 0, 1}, {0, 0, -1, 0}, {0, -1, 0, 0}, {1, 0, 0, 0}};
  std::vector<CatalogEntry> c;
  auto add = [&](std::string label, LinearSubalgebra h) { c.push_back({std::move(label), std::move(h)}); };
  add("gl3", gl(3));
  add("gl4", gl(4));
  add("sl3", sl(3));
  add("sp4", sp(2));
  add("sp6", sp(3));
  add("glC2", gl_C(2));
  add("glC3", gl_C(3));
  add("slC2", sl_C(2));
  add("spC2", sp_C(1));
  add("u2", u(2, 0));
  add("u3", u(3, 0));
  add("u11", u(1, 1));
  add("u11deg", u_gram(g_deg).renamed("u(1,1),deg"));
  add("su2", su(2));
  add("su3", su(3));
  add("so3", so(3, 0));
  add("so4", so(4, 0));
  add("so5", so(5, 0));
  add("so22", so(2, 2));
  add("so31", so(3, 1));
  add("glH1", gl_H(1));
  add("spH1", sp_H(1));
  add("Dgl2", delta_gl(2, HpcFrame::e_invariant));
  add("Dgl3", delta_gl(3, HpcFrame::e_invariant));
  add("Dgl3b", delta_gl(3, HpcFrame::case_b));
  add("lag2", lagrangian_symplectic(2));
  add("glP42", gl_P(4, 2));
  add("glT4", gl_T(2));
  add("zero4", zero_algebra(4));
  return c;
}

}  // namespace tl
