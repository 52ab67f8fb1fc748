#include "torsionlab/existence.hpp"

#include <algorithm>
#include <functional>

#include "torsionlab/catalog.hpp"

namespace tl {

namespace {

// T e_j = e_{image[j]}.
Mat permutation(const std::vector<std::size_t>& image) {
  Mat T(image.size(), image.size());
  for (std::size_t j = 0; j < image.size(); ++j) T(image[j], j) = 1;
  return T;
}

Subspace unit_span(std::size_t N, const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& gens,
                   const std::vector<std::vector<int>>& signs = {}) {
  std::vector<Vec> vs;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    Vec v(N * N, Rational(0));
    for (std::size_t t = 0; t < gens[g].size(); ++t) {
      const int s = signs.empty() ? 1 : signs[g][t];
      v[gens[g][t].first * N + gens[g][t].second] += s;
    }
    vs.push_back(std::move(v));
  }
  return Subspace::span(N * N, vs);
}

Subspace free_pattern(std::size_t N, const std::function<bool(std::size_t, std::size_t)>& free) {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> gens;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c)
      if (free(r, c)) gens.push_back({{r, c}});
  return unit_span(N, gens);
}

std::size_t checked_half(std::size_t n, const char* what) {
  if (n < 2 || n % 2) throw InvalidSignature(std::string(what) + " needs even n >= 2");
  return n / 2;
}

void check_signature(std::size_t n, std::size_t p) {
  if (n < 2 || p < 1 || p >= n)
    throw InvalidSignature("product structure needs 1 <= p <= n-1, got p = " + std::to_string(p) +
                           ", n = " + std::to_string(n));
}

Mat columns(const std::vector<Vec>& vs, std::size_t rows) { return Mat::from_cols(vs, rows); }

Mat frame_for(const Mat& B, const Mat& T) {
  const std::size_t n = B.rows() + 1;
  Mat V(n, n);
  V.set_block(0, 0, B);
  V(n - 1, n - 1) = 1;
  return V * T;
}

bool in_pattern(const Subspace& pattern, const Mat& f, const Mat& B) {
  auto Bi = inverse(B);
  if (!Bi) return false;
  return pattern.contains((*Bi * f * B).flat());
}

// Reachable sums of the items, each contributing any value in its list.
std::optional<std::vector<std::size_t>> choose_sum(const std::vector<std::vector<std::size_t>>& options,
                                                   std::size_t target) {
  const std::size_t k = options.size();
  std::vector<std::vector<char>> reach(k + 1, std::vector<char>(target + 1, 0));
  reach[0][0] = 1;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t s = 0; s <= target; ++s)
      if (reach[i][s])
        for (std::size_t o : options[i])
          if (s + o <= target) reach[i + 1][s + o] = 1;
  if (!reach[k][target]) return std::nullopt;
  std::vector<std::size_t> pick(k);
  std::size_t s = target;
  for (std::size_t i = k; i-- > 0;)
    for (std::size_t idx = 0; idx < options[i].size(); ++idx) {
      const std::size_t o = options[i][idx];
      if (o <= s && reach[i][s - o]) {
        pick[i] = idx;
        s -= o;
        break;
      }
    }
  return pick;
}

std::vector<std::size_t> range_options(std::size_t k, std::size_t step) {
  std::vector<std::size_t> o;
  for (std::size_t j = 0; j <= k; ++j) o.push_back(j * step);
  return o;
}

// Real Jordan blocks: `unit` 1 for a real eigenvalue, 2 for a complex pair.
struct RealBlock {
  std::size_t piece, unit, size;
  bool rational_eigenvalue;
};

std::vector<RealBlock> real_blocks(const JordanData& d) {
  std::vector<RealBlock> out;
  for (std::size_t i = 0; i < d.pieces.size(); ++i) {
    const auto& pc = d.pieces[i];
    for (std::size_t k : pc.sizes) {
      if (pc.factor.degree() == 1) out.push_back({i, 1, k, true});
      else if (pc.real_roots) {
        out.push_back({i, 1, k, false});
        out.push_back({i, 1, k, false});
      } else out.push_back({i, 2, k, false});
    }
  }
  return out;
}

bool real_invariant_dim(const JordanData& d, std::size_t target) {
  std::vector<std::vector<std::size_t>> opts;
  for (const auto& b : real_blocks(d)) opts.push_back(range_options(b.size, b.unit));
  return choose_sum(opts, target).has_value();
}

// Span of φ(f)^{k-j} Z(w): the invariant sub-block of size j.
std::vector<Vec> sub_block(const Mat& f, const CyclicDecomposition& cd, const CyclicBlock& b, std::size_t j) {
  const Mat phi = eval(cd.data.pieces[b.piece].factor, f);
  Vec w = b.generator;
  for (std::size_t t = j; t < b.size; ++t) w = phi * w;
  std::vector<Vec> out;
  for (std::size_t t = 0; t < b.degree * j; ++t) {
    out.push_back(w);
    w = f * w;
  }
  return out;
}

void append(std::vector<Vec>& a, const std::vector<Vec>& b) { a.insert(a.end(), b.begin(), b.end()); }

// Trims the top vector off the linear block `b`: returns (V, remainder block).
std::pair<Vec, std::optional<CyclicBlock>> trim(const Mat& f, const CyclicDecomposition& cd, const CyclicBlock& b) {
  const Rational a = -cd.data.pieces[b.piece].factor.coeff(0);
  const Vec V = b.generator;
  if (b.size == 1) return {V, std::nullopt};
  Vec w = f * V;
  for (std::size_t i = 0; i < w.size(); ++i) w[i] -= a * V[i];
  CyclicBlock rest = b;
  rest.size = b.size - 1;
  rest.generator = w;
  return {V, rest};
}

using BlockKey = std::pair<std::size_t, std::size_t>;  // (piece, size)

// Splits blocks into identical halves when every (piece, size) occurs an even
// number of times; `free_piece` pieces are returned separately unpaired.
struct Pairing {
  std::vector<CyclicBlock> left, right, loose;
};

std::optional<Pairing> pair_up(const std::vector<CyclicBlock>& blocks,
                               const std::function<bool(std::size_t)>& free_piece) {
  std::map<BlockKey, std::vector<CyclicBlock>> groups;
  Pairing out;
  for (const auto& b : blocks) {
    if (free_piece(b.piece)) out.loose.push_back(b);
    else groups[{b.piece, b.size}].push_back(b);
  }
  for (auto& [key, bs] : groups) {
    if (bs.size() % 2) return std::nullopt;
    for (std::size_t i = 0; i < bs.size(); i += 2) {
      out.left.push_back(bs[i]);
      out.right.push_back(bs[i + 1]);
    }
  }
  return out;
}

std::vector<Vec> flatten(const Mat& f, const std::vector<CyclicBlock>& bs) {
  std::vector<Vec> out;
  for (const auto& b : bs) append(out, block_basis(f, b));
  return out;
}

bool is_complex_piece(const JordanData& d, std::size_t i) {
  return d.pieces[i].factor.degree() == 2 && !d.pieces[i].real_roots;
}

}  // namespace

// ---- orbits and patterns ----------------------------------------------------

std::vector<std::string> orbit_groups() {
  return {"GL(P0)", "GL(T0)", "GL(m,C)", "SL(m,C)", "Sp(2k,C)", "U(m)", "SU(m)", "GL(k,H)"};
}

OrbitCatalog orbit_catalog(const std::string& group, std::size_t n, std::size_t p) {
  OrbitCatalog c;
  c.group = group;
  c.n = n;
  auto single = [&](LinearSubalgebra h) {
    c.h = std::move(h);
    c.reps.push_back({"[R^{n-1}]", standard_hyperplane(n), Mat::identity(n), {}});
    return c;
  };
  if (group == "GL(P0)") {
    check_signature(n, p);
    const std::size_t q = n - p;
    c.h = gl_P(n, p);
    c.reps.push_back({"[U1]", standard_hyperplane(n), Mat::identity(n), {p, q - 1}});

    std::vector<Vec> u2;
    for (std::size_t i = 0; i < n; ++i)
      if (i != p - 1) u2.push_back(Mat::identity(n).col(i));
    std::vector<std::size_t> im2(n);
    for (std::size_t j = 0; j < n; ++j) im2[j] = j < p - 1 ? j : (j == p - 1 ? n - 1 : j - 1);
    c.reps.push_back({"[U2]", Subspace::span(n, u2), permutation(im2), {p - 1, q}});

    std::vector<Vec> u3;
    for (std::size_t i = 0; i + 1 < n; ++i)
      if (i != p - 1) u3.push_back(Mat::identity(n).col(i));
    Vec x(n, Rational(0));
    x[p - 1] = 1;
    x[n - 1] = 1;
    u3.push_back(x);
    // e_p + e_n ↦ e_p, then e_p moves to slot n-1.
    Mat T3 = Mat::identity(n);
    T3(n - 1, p - 1) = -1;
    std::vector<std::size_t> im3(n);
    for (std::size_t j = 0; j < n; ++j)
      im3[j] = j < p - 1 ? j : (j == p - 1 ? n - 2 : (j == n - 1 ? n - 1 : j - 1));
    c.reps.push_back({"[U3]", Subspace::span(n, u3), permutation(im3) * T3, {p - 1, q - 1}});
    return c;
  }
  if (group == "GL(T0)") {
    const std::size_t m = checked_half(n, "GL(T0)");
    c.h = gl_T(m);
    c.reps.push_back({"[U1]", standard_hyperplane(n), Mat::identity(n), {m - 1}});
    std::vector<Vec> u2;
    for (std::size_t i = 0; i < n; ++i)
      if (i != m - 1) u2.push_back(Mat::identity(n).col(i));
    std::vector<std::size_t> im2(n);
    for (std::size_t j = 0; j < n; ++j) im2[j] = j < m - 1 ? j : (j == m - 1 ? n - 1 : j - 1);
    c.reps.push_back({"[U2]", Subspace::span(n, u2), permutation(im2), {m}});
    return c;
  }
  if (group == "GL(m,C)") return single(gl_C(checked_half(n, group.c_str())));
  if (group == "SL(m,C)") return single(sl_C(checked_half(n, group.c_str())));
  if (group == "U(m)") return single(u(checked_half(n, group.c_str()), 0));
  if (group == "SU(m)") return single(su(checked_half(n, group.c_str())));
  if (group == "Sp(2k,C)") {
    if (n < 4 || n % 4) throw InvalidSignature("Sp(2k,C) needs n = 4k");
    return single(sp_C(n / 4));
  }
  if (group == "GL(k,H)") {
    if (n < 4 || n % 4) throw InvalidSignature("GL(k,H) needs n = 4k");
    return single(gl_H(n / 4));
  }
  throw UnsupportedGroup("unknown group " + group);
}

Subspace product_obstruction(std::size_t n, std::size_t p, int type) {
  check_signature(n, p);
  const std::size_t N = n - 1;
  switch (type) {
    case 1:
      return free_pattern(N, [&](std::size_t r, std::size_t c) { return !(r < p && c >= p); });
    case 2:
      return free_pattern(N, [&](std::size_t r, std::size_t c) { return !(r >= p - 1 && c < p - 1); });
    case 3: {
      auto blk = [&](std::size_t i) { return i < p - 1 ? 0 : (i + 1 < N ? 1 : 2); };
      return free_pattern(N, [&](std::size_t r, std::size_t c) {
        const auto br = blk(r), bc = blk(c);
        return bc == 2 ? true : br == bc;
      });
    }
  }
  throw std::invalid_argument("product type must be 1, 2 or 3");
}

Subspace tangent_obstruction(std::size_t n, int type) {
  const std::size_t m = checked_half(n, "tangent structure");
  const std::size_t N = n - 1;
  if (type == 1) {
    // Blocks (m-1, 1, m-1): [[A, v, 0], [0, a, 0], [B, w, A]].
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> gens;
    const std::size_t mid = m - 1, low = m;
    for (std::size_t i = 0; i < m - 1; ++i)
      for (std::size_t j = 0; j < m - 1; ++j) {
        gens.push_back({{i, j}, {low + i, low + j}});
        gens.push_back({{low + i, j}});
      }
    for (std::size_t i = 0; i < m - 1; ++i) {
      gens.push_back({{i, mid}});
      gens.push_back({{low + i, mid}});
    }
    gens.push_back({{mid, mid}});
    return unit_span(N, gens);
  }
  if (type == 2)
    return free_pattern(N, [&](std::size_t r, std::size_t c) { return !(r < m - 1 && c >= m - 1 && c < N - 1); });
  throw std::invalid_argument("tangent type must be 1 or 2");
}

Subspace hyperparacomplex_pattern(std::size_t m, char which) {
  if (m < 1) throw InvalidSignature("hyperparacomplex pattern needs m >= 1");
  const std::size_t N = 2 * m - 1;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> gens;
  std::vector<std::vector<int>> signs;
  auto add = [&](std::vector<std::pair<std::size_t, std::size_t>> g, std::vector<int> s) {
    gens.push_back(std::move(g));
    signs.push_back(std::move(s));
  };
  if (which == 'A') {
    const std::size_t r = m - 1, V = 2 * r;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) add({{i, j}, {r + i, r + j}}, {1, 1});
    for (std::size_t i = 0; i < r; ++i) {
      add({{i, V}}, {1});
      add({{r + i, V}}, {1});
    }
    add({{V, V}}, {1});
    return unit_span(N, gens, signs);
  }
  if (which == 'B') {
    if (m < 2) throw InvalidSignature("normal form (b) needs m >= 2");
    const std::size_t r = m - 2, V1 = 2 * r, V2 = V1 + 1, V3 = V1 + 2;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) add({{i, j}, {r + i, r + j}}, {1, 1});
    for (std::size_t i = 0; i < r; ++i) {
      add({{i, V1}, {r + i, V2}, {i, V3}}, {1, 1, 1});       // u1
      add({{r + i, V1}, {i, V2}, {r + i, V3}}, {1, -1, -1});  // u2
    }
    add({{V1, V1}, {V2, V2}, {V3, V3}}, {1, 1, 1});
    return unit_span(N, gens, signs);
  }
  throw std::invalid_argument("normal form must be 'A' or 'B'");
}

// ---- Jordan data and cyclic decomposition ------------------------------------

std::optional<JordanData> jordan_data(const Mat& f) {
  if (!f.square()) throw std::invalid_argument("jordan_data: square matrix required");
  const auto s = spectral_summary(f);
  if (!s.split) return std::nullopt;
  JordanData d;
  for (const auto& [phi, mult] : s.pieces) {
    JordanPiece pc;
    pc.factor = phi;
    pc.real_roots = phi.degree() == 2 && real_root_count(phi) == 2;
    const std::size_t deg = phi.degree();
    const Mat N = eval(phi, f);
    std::vector<std::size_t> r{f.rows()};
    Mat P = Mat::identity(f.rows());
    for (unsigned k = 1; k <= mult; ++k) {
      P = P * N;
      r.push_back(rank(P));
    }
    // blocks of size >= k: (r_{k-1} - r_k) / deg
    std::vector<std::size_t> at_least(mult + 2, 0);
    for (unsigned k = 1; k <= mult; ++k) at_least[k] = (r[k - 1] - r[k]) / deg;
    for (unsigned k = mult; k >= 1; --k)
      for (std::size_t c = at_least[k] - at_least[k + 1]; c > 0; --c) pc.sizes.push_back(k);
    d.pieces.push_back(std::move(pc));
  }
  return d;
}

std::vector<Vec> block_basis(const Mat& f, const CyclicBlock& b) {
  std::vector<Vec> out;
  Vec w = b.generator;
  for (std::size_t t = 0; t < b.dim(); ++t) {
    out.push_back(w);
    w = f * w;
  }
  return out;
}

std::optional<CyclicDecomposition> cyclic_decomposition(const Mat& f) {
  auto data = jordan_data(f);
  if (!data) return std::nullopt;
  CyclicDecomposition cd;
  cd.data = *data;
  const std::size_t N = f.rows();
  for (std::size_t pi = 0; pi < data->pieces.size(); ++pi) {
    const auto& pc = data->pieces[pi];
    const std::size_t deg = pc.factor.degree();
    const Mat phi = eval(pc.factor, f);
    std::map<std::size_t, std::size_t> wanted;
    for (auto k : pc.sizes) ++wanted[k];
    Subspace socle(N);
    for (auto it = wanted.rbegin(); it != wanted.rend(); ++it) {
      const std::size_t k = it->first;
      std::size_t need = it->second;
      Mat Pk = Mat::identity(N), Pk1 = Mat::identity(N);
      for (std::size_t t = 0; t < k; ++t) Pk = Pk * phi;
      for (std::size_t t = 0; t + 1 < k; ++t) Pk1 = Pk1 * phi;
      for (const auto& w : null_space(Pk).basis()) {
        if (need == 0) break;
        Vec s = Pk1 * w;
        std::vector<Vec> line;
        for (std::size_t t = 0; t < deg; ++t) {
          line.push_back(s);
          s = f * s;
        }
        Subspace grown = sum(socle, Subspace::span(N, line));
        if (grown.dim() != socle.dim() + deg) continue;
        socle = grown;
        cd.blocks.push_back({pi, deg, k, w});
        --need;
      }
      if (need) throw std::logic_error("cyclic decomposition: ran out of generators");
    }
  }
  std::vector<Vec> all;
  for (const auto& b : cd.blocks) append(all, block_basis(f, b));
  if (all.size() != N || rank(columns(all, N)) != N)
    throw std::logic_error("cyclic decomposition: blocks are not independent");
  return cd;
}

namespace {

// Outside the split regime: grow S one rational eigenvector (or one rational
// quadratic factor) of the quotient map at a time.
std::optional<Subspace> greedy_invariant(const Mat& f, std::size_t d) {
  const std::size_t N = f.rows();
  Subspace S(N);
  while (S.dim() < d) {
    auto C = complement_basis(S);
    auto cols = S.basis();
    append(cols, C);
    const Mat M = columns(cols, N);
    const Mat Q = (*inverse(M) * f * M).block(S.dim(), S.dim(), C.size(), C.size());
    const Mat Cm = columns(C, N);
    const Poly chi = charpoly(Q);
    const std::size_t left = d - S.dim();
    std::optional<std::vector<Vec>> step;
    auto roots = rational_roots(chi);
    auto linear_step = [&]() -> std::optional<std::vector<Vec>> {
      if (!roots || roots->empty()) return std::nullopt;
      const Vec y = null_space(Q - roots->front() * Mat::identity(Q.rows())).basis().front();
      return std::vector<Vec>{Cm * y};
    };
    auto quadratic_step = [&]() -> std::optional<std::vector<Vec>> {
      for (const auto& [q, k] : squarefree_decomposition(chi)) {
        Poly rest = q;
        if (roots)
          for (const auto& r : *roots)
            if (sgn(rest.eval(r)) == 0) rest = divmod(rest, Poly::linear_root(r)).first;
        if (rest.degree() != 2) continue;
        const Vec y = null_space(eval(rest, Q)).basis().front();
        return std::vector<Vec>{Cm * y, Cm * (Q * y)};
      }
      return std::nullopt;
    };
    if (left % 2 == 1) step = linear_step();
    if (!step && left >= 2) step = quadratic_step();
    if (!step) step = linear_step();
    if (!step) return std::nullopt;
    auto vs = S.basis();
    append(vs, *step);
    S = Subspace::span(N, vs);
  }
  return S;
}

}  // namespace

std::optional<Subspace> rational_invariant_subspace(const Mat& f, std::size_t d) {
  const std::size_t N = f.rows();
  if (d > N) return std::nullopt;
  auto cd = cyclic_decomposition(f);
  if (!cd) return greedy_invariant(f, d);
  std::vector<std::vector<std::size_t>> opts;
  for (const auto& b : cd->blocks) opts.push_back(range_options(b.size, b.degree));
  auto pick = choose_sum(opts, d);
  if (!pick) return std::nullopt;
  std::vector<Vec> vs;
  for (std::size_t i = 0; i < cd->blocks.size(); ++i)
    append(vs, sub_block(f, *cd, cd->blocks[i], (*pick)[i]));
  return Subspace::span(N, vs);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::yes_existence_only: return "yes (existence only)";
    case Verdict::no: return "no";
    case Verdict::unknown: return "unknown";
  }
  return "?";
}

std::string to_string(HpcVerdict v) {
  switch (v) {
    case HpcVerdict::yes_caseA: return "yes_caseA";
    case HpcVerdict::yes_caseB: return "yes_caseB";
    case HpcVerdict::no: return "no";
    case HpcVerdict::unknown: return "unknown";
  }
  return "?";
}

// ---- product and tangent -----------------------------------------------------

namespace {

// Basis [complement, S] so that S (dim d) sits last, or [S, complement].
Mat adapted(const Subspace& S, bool invariant_last) {
  std::vector<Vec> cols;
  auto comp = complement_basis(S);
  if (invariant_last) {
    cols = comp;
    append(cols, S.basis());
  } else {
    cols = S.basis();
    append(cols, comp);
  }
  return columns(cols, S.ambient_dim());
}

TypeVerdict finish(TypeVerdict t, const Mat& f, const Subspace& pattern, const Mat& B, const Mat& T) {
  if (!in_pattern(pattern, f, B)) throw std::logic_error(t.type + ": constructed basis misses the pattern");
  t.verdict = Verdict::yes;
  t.basis = B;
  t.frame = frame_for(B, T);
  return t;
}

TypeVerdict product_type(const Mat& f, std::size_t p, int type, const std::optional<CyclicDecomposition>& cd) {
  const std::size_t n = f.rows() + 1, q = n - p, N = n - 1;
  const auto cat = orbit_catalog("GL(P0)", n, p);
  const Mat& T = cat.reps[type - 1].T;
  const Subspace pattern = product_obstruction(n, p, type);
  TypeVerdict t;
  t.type = "product[U" + std::to_string(type) + "]";
  if (pattern.contains(f.flat())) {
    t.rule = "f already has the block pattern";
    return finish(t, f, pattern, Mat::identity(N), T);
  }
  if (type == 1 || type == 2) {
    const std::size_t d = type == 1 ? q - 1 : p - 1;
    t.rule = "invariant subspace of dimension " + std::to_string(d);
    if (auto S = rational_invariant_subspace(f, d)) return finish(t, f, pattern, adapted(*S, type == 1), T);
    if (!cd) {
      t.verdict = Verdict::unknown;
      t.rule += " (spectrum outside the split regime)";
    } else {
      t.verdict = real_invariant_dim(cd->data, d) ? Verdict::yes_existence_only : Verdict::no;
    }
    return t;
  }
  // Type 3: invariant hyperplane W = W1 ⊕ W2 with dims p-1, q-1.
  t.rule = "invariant hyperplane splitting as (p-1) + (q-1)";
  if (!cd) {
    t.verdict = Verdict::unknown;
    t.rule += " (spectrum outside the split regime)";
    return t;
  }
  for (const auto& b : cd->blocks) {
    if (b.degree != 1) continue;
    auto [V, rest] = trim(f, *cd, b);
    std::vector<CyclicBlock> others;
    for (const auto& o : cd->blocks)
      if (&o != &b) others.push_back(o);
    if (rest) others.push_back(*rest);
    std::vector<std::vector<std::size_t>> opts;
    for (const auto& o : others) opts.push_back({0, o.dim()});
    auto pick = choose_sum(opts, p - 1);
    if (!pick) continue;
    std::vector<Vec> w1, w2;
    for (std::size_t i = 0; i < others.size(); ++i) append((*pick)[i] ? w1 : w2, block_basis(f, others[i]));
    append(w1, w2);
    w1.push_back(V);
    return finish(t, f, pattern, columns(w1, N), T);
  }
  // Real existence over real Jordan blocks, the box may come off any real eigenvalue.
  const auto rb = real_blocks(cd->data);
  for (std::size_t i = 0; i < rb.size(); ++i) {
    if (rb[i].unit != 1) continue;
    std::vector<std::vector<std::size_t>> opts;
    for (std::size_t j = 0; j < rb.size(); ++j) {
      const std::size_t dim = rb[j].unit * (j == i ? rb[j].size - 1 : rb[j].size);
      opts.push_back({0, dim});
    }
    if (choose_sum(opts, p - 1)) {
      t.verdict = Verdict::yes_existence_only;
      return t;
    }
  }
  t.verdict = Verdict::no;
  return t;
}

TypeVerdict tangent_type(const Mat& f, int type, const std::optional<CyclicDecomposition>& cd) {
  const std::size_t n = f.rows() + 1, m = n / 2, N = n - 1;
  const auto cat = orbit_catalog("GL(T0)", n);
  const Mat& T = cat.reps[type - 1].T;
  const Subspace pattern = tangent_obstruction(n, type);
  TypeVerdict t;
  t.type = "tangent[U" + std::to_string(type) + "]";
  if (pattern.contains(f.flat())) {
    t.rule = "f already has the block pattern";
    return finish(t, f, pattern, Mat::identity(N), T);
  }
  if (type == 1) {
    t.rule = "no decision procedure beyond literal membership";
    t.verdict = Verdict::unknown;
    return t;
  }
  // Basis [C (m-1), S' (m-1), x] with f(S') ⊆ S' + Rx.
  t.rule = "invariant subspace of dimension m-1 or m";
  for (std::size_t d : {m, m - 1}) {
    auto S = rational_invariant_subspace(f, d);
    if (!S) continue;
    auto sb = S->basis();
    std::vector<Vec> cols = complement_basis(*S);
    if (d == m) {
      // S' = first m-1 basis vectors of S, x the last one.
      std::vector<Vec> c2(cols.begin(), cols.end());
      append(c2, sb);
      return finish(t, f, pattern, columns(c2, N), T);
    }
    // S' = S, x = last complement vector.
    Vec x = cols.back();
    cols.pop_back();
    append(cols, sb);
    cols.push_back(x);
    return finish(t, f, pattern, columns(cols, N), T);
  }
  if (!cd) {
    t.verdict = Verdict::unknown;
    t.rule += " (spectrum outside the split regime)";
    return t;
  }
  t.verdict = real_invariant_dim(cd->data, m) || real_invariant_dim(cd->data, m - 1) ? Verdict::yes_existence_only
                                                                                     : Verdict::no;
  return t;
}

DecisionResult best_of(const std::vector<TypeVerdict>& types) {
  DecisionResult r;
  for (const auto& t : types)
    if (t.verdict == Verdict::yes) {
      r.verdict = Verdict::yes;
      r.detail = t;
      return r;
    }
  // Existence of a structure of this family is unconditional.
  r.verdict = Verdict::yes_existence_only;
  for (const auto& t : types)
    if (t.verdict == Verdict::yes_existence_only) {
      r.detail = t;
      break;
    }
  return r;
}

std::optional<CyclicDecomposition> decomposition(const Mat& f) { return cyclic_decomposition(f); }

std::vector<TypeVerdict> product_types(const AlmostAbelian& g, std::size_t p) {
  check_signature(g.n(), p);
  const auto cd = decomposition(g.f);
  // Parity order: even p tries [U1] first, odd p tries [U2] first.
  std::vector<int> order = p % 2 == 0 ? std::vector<int>{1, 2, 3} : std::vector<int>{2, 1, 3};
  std::vector<TypeVerdict> out;
  for (int type : order) out.push_back(product_type(g.f, p, type, cd));
  return out;
}

std::vector<TypeVerdict> tangent_types(const AlmostAbelian& g) {
  checked_half(g.n(), "tangent structure");
  const auto cd = decomposition(g.f);
  return {tangent_type(g.f, 2, cd), tangent_type(g.f, 1, cd)};
}

}  // namespace

DecisionResult decide_product(const AlmostAbelian& g, std::size_t p) { return best_of(product_types(g, p)); }

DecisionResult decide_tangent(const AlmostAbelian& g) { return best_of(tangent_types(g)); }

// ---- hyperparacomplex --------------------------------------------------------

namespace {

HpcStructureData read_caseA(const Mat& fp, std::size_t m) {
  const std::size_t r = m - 1, V = 2 * r;
  HpcStructureData d;
  d.which = 'A';
  d.A = fp.block(0, 0, r, r);
  d.a = fp(V, V);
  d.w1 = fp.block(0, V, r, 1).col(0);
  d.w2 = fp.block(r, V, r, 1).col(0);
  if (r == 0) d.w1 = d.w2 = Vec{};
  return d;
}

}  // namespace

HpcClassification classify_hyperparacomplex(const AlmostAbelian& g) {
  const std::size_t m = checked_half(g.n(), "hyperparacomplex structure");
  const std::size_t N = g.n() - 1;
  const Mat& f = g.f;
  const Subspace A = hyperparacomplex_pattern(m, 'A');
  HpcClassification out;
  auto accept_A = [&](const Mat& B, std::string rule) {
    if (!in_pattern(A, f, B)) throw std::logic_error("hyperparacomplex: basis misses normal form (a)");
    out.verdict = HpcVerdict::yes_caseA;
    out.basis = B;
    out.structure = read_caseA(*inverse(B) * f * B, m);
    out.rule = std::move(rule);
  };
  if (A.contains(f.flat())) accept_A(Mat::identity(N), "f is in normal form (a)");

  const auto cd = cyclic_decomposition(f);
  if (cd && m >= 2) {
    // Zero-coupling normal form (b): three 1-blocks of one rational eigenvalue, the rest paired.
    const Subspace Bp = hyperparacomplex_pattern(m, 'B');
    for (std::size_t pi = 0; pi < cd->data.pieces.size() && !out.basis_caseB; ++pi) {
      if (cd->data.pieces[pi].factor.degree() != 1) continue;
      std::vector<CyclicBlock> ones, rest;
      for (const auto& b : cd->blocks) (b.piece == pi && b.size == 1 && ones.size() < 3 ? ones : rest).push_back(b);
      if (ones.size() < 3) continue;
      auto pr = pair_up(rest, [](std::size_t) { return false; });
      if (!pr) continue;
      auto cols = flatten(f, pr->left);
      append(cols, flatten(f, pr->right));
      append(cols, flatten(f, ones));
      const Mat B = columns(cols, N);
      if (!in_pattern(Bp, f, B)) throw std::logic_error("hyperparacomplex: basis misses normal form (b)");
      out.basis_caseB = B;
    }
  }
  if (out.verdict == HpcVerdict::yes_caseA) return out;
  if (m >= 2 && hyperparacomplex_pattern(m, 'B').contains(f.flat())) {
    out.verdict = HpcVerdict::yes_caseB;
    out.basis = Mat::identity(N);
    out.rule = "f is in normal form (b)";
    return out;
  }
  if (!cd) {
    out.verdict = HpcVerdict::unknown;
    out.rule = "spectrum outside the split regime";
    return out;
  }
  for (const auto& b : cd->blocks) {
    if (b.degree != 1) continue;
    auto [V, rest] = trim(f, *cd, b);
    std::vector<CyclicBlock> others;
    for (const auto& o : cd->blocks)
      if (&o != &b) others.push_back(o);
    if (rest) others.push_back(*rest);
    auto pr = pair_up(others, [](std::size_t) { return false; });
    if (!pr) continue;
    auto cols = flatten(f, pr->left);
    append(cols, flatten(f, pr->right));
    cols.push_back(V);
    accept_A(columns(cols, N), "invariant hyperplane carrying A ⊕ A");
    return out;
  }
  // Normal form (b) has the same real Jordan types as (a), and an irrational
  // quotient eigenvalue cannot leave every block paired.
  out.verdict = HpcVerdict::no;
  out.rule = "no invariant hyperplane on which f is A ⊕ A";
  return out;
}

FlatnessResult hpc_flatness(const HpcStructureData& d) {
  FlatnessResult r;
  if (d.which == 'B') {
    r.flat = true;
    r.reason = "normal form (b) is always flat";
    return r;
  }
  if (d.which != 'A') throw InvalidStructureData("structure case must be 'A' or 'B'");
  const std::size_t k = d.A.rows();
  if (!d.A.square() || d.w1.size() != k || d.w2.size() != k)
    throw InvalidStructureData("A must be square and w1, w2 of matching size");
  if (sgn(d.lambda) == 0 && sgn(d.mu) == 0) throw InvalidStructureData("(lambda, mu) must be nonzero");
  Vec x(k);
  for (std::size_t i = 0; i < k; ++i) x[i] = d.mu * d.w1[i] + d.lambda * d.w2[i];
  const bool zero = std::all_of(x.begin(), x.end(), [](const Rational& t) { return sgn(t) == 0; });
  if (zero) {
    r.flat = true;
    r.reason = "mu*w1 + lambda*w2 = 0";
    return r;
  }
  const Vec Ax = d.A * x;
  bool eigen = true;
  for (std::size_t i = 0; i < k; ++i) eigen = eigen && Ax[i] == 2 * d.a * x[i];
  if (eigen) {
    r.flat = true;
    r.reason = "mu*w1 + lambda*w2 is an eigenvector of A with eigenvalue 2a";
    return r;
  }
  r.flat = false;
  r.witness = x;
  r.reason = "mu*w1 + lambda*w2 is neither zero nor an eigenvector of A with eigenvalue 2a = " + to_string(Rational(2 * d.a));
  return r;
}

// ---- transitive families -----------------------------------------------------

namespace {

TypeVerdict gl_c_type(const Mat& f, std::size_t m) {
  const std::size_t N = f.rows();
  TypeVerdict t;
  t.type = "GL(m,C)[R^{n-1}]";
  const Subspace F = characteristic_subalgebra(gl_C(m));
  auto accept = [&](const Mat& B, std::string rule) {
    if (!in_pattern(F, f, B)) throw std::logic_error("gl_C: basis misses the obstruction space");
    t.verdict = Verdict::yes;
    t.basis = B;
    t.frame = frame_for(B, Mat::identity(N + 1));
    t.rule = std::move(rule);
    return t;
  };
  if (F.contains(f.flat())) return accept(Mat::identity(N), "f already complex linear on R^{n-2}");
  const auto cd = cyclic_decomposition(f);
  if (!cd) {
    t.rule = "spectrum outside the split regime";
    return t;
  }
  auto complex_piece = [&](std::size_t i) { return is_complex_piece(cd->data, i); };
  bool existence = false;
  for (const auto& b : cd->blocks) {
    if (b.degree != 1) continue;
    auto [V, rest] = trim(f, *cd, b);
    std::vector<CyclicBlock> others;
    for (const auto& o : cd->blocks)
      if (&o != &b) others.push_back(o);
    if (rest) others.push_back(*rest);
    auto pr = pair_up(others, complex_piece);
    if (!pr) continue;
    if (!pr->loose.empty()) {
      existence = true;
      continue;
    }
    // Interleave X_t, JX_t = Y_t to match J₀ = diag(M, …, M).
    std::vector<Vec> cols;
    for (std::size_t i = 0; i < pr->left.size(); ++i) {
      const auto x = block_basis(f, pr->left[i]), y = block_basis(f, pr->right[i]);
      for (std::size_t s = 0; s < x.size(); ++s) {
        cols.push_back(x[s]);
        cols.push_back(y[s]);
      }
    }
    cols.push_back(V);
    return accept(columns(cols, N), "invariant hyperplane with real blocks paired");
  }
  t.verdict = existence ? Verdict::yes_existence_only : Verdict::no;
  t.rule = existence ? "complex-pair blocks need an irrational complex structure"
                     : "no invariant hyperplane with paired real blocks";
  return t;
}

TypeVerdict u_type(const Mat& f, std::size_t m) {
  const std::size_t N = f.rows();
  TypeVerdict t;
  t.type = "U(m)[R^{n-1}]";
  // F_{u(m)} = u(m-1) ⊕ R, so f must be semisimple with characteristic
  // polynomial (x - b)·q(x²), q having only real roots ≤ 0.
  const Poly p = charpoly(f);
  Vec odd(p.coeffs().size(), Rational(0)), even(p.coeffs().size(), Rational(0));
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) (i % 2 ? odd : even)[i] = p.coeffs()[i];
  // p = (x - b) q(x²): odd part x·q(x²), even part -b·q(x²).
  Vec qc;
  for (std::size_t i = 1; i < odd.size(); i += 2) qc.push_back(odd[i]);
  const Poly q(qc);
  Vec qx2(2 * qc.size(), Rational(0));
  for (std::size_t i = 0; i < qc.size(); ++i) qx2[2 * i] = qc[i];
  const Poly qsq(qx2);
  // q is monic, so the x^{N-1} coefficient of p is -b.
  const Rational b = -p.coeff(p.degree() - 1);
  const bool shape = Poly::linear_root(b) * qsq == p;
  t.rule = "spectral test on (x - b) q(x^2)";
  if (!shape) {
    t.verdict = Verdict::no;
    t.rule += ": characteristic polynomial has the wrong shape";
    return t;
  }
  Poly rad = Poly::constant(1);
  for (const auto& [fac, k] : squarefree_decomposition(p)) rad = rad * fac;
  if (!eval(rad, f).is_zero()) {
    t.verdict = Verdict::no;
    t.rule += ": f is not semisimple";
    return t;
  }
  Poly qs = Poly::constant(1);
  for (const auto& [fac, k] : squarefree_decomposition(q)) qs = qs * fac;
  std::size_t zero_roots = 0;
  while (qs.degree() >= 1 && sgn(qs.coeff(0)) == 0) {
    qs = divmod(qs, Poly::x()).first;
    ++zero_roots;
  }
  Rational bound = 1;
  for (const auto& c : qs.coeffs()) bound += abs(c / qs.lead());
  const bool real = real_root_count(qs) == static_cast<std::size_t>(std::max(qs.degree(), 0));
  const bool nonpositive = qs.degree() < 1 || real_root_count(qs, Rational(0), bound) == 0;
  if (!real || !nonpositive) {
    t.verdict = Verdict::no;
    t.rule += ": some eigenvalue pair is not ±iθ";
    return t;
  }
  // Rational frame when every θ is rational: pairs (w, f w / θ), kernel pairs, then b.
  auto roots = rational_roots(q);
  std::vector<Vec> cols;
  bool rational = roots.has_value();
  if (rational) {
    for (const auto& y : *roots) {
      mpq_class th2 = -y;
      mpz_class nn = th2.get_num(), dd = th2.get_den();
      if (!mpz_perfect_square_p(nn.get_mpz_t()) || !mpz_perfect_square_p(dd.get_mpz_t())) rational = false;
    }
  }
  if (rational) {
    const Mat I = Mat::identity(N);
    Subspace used(N);
    for (const auto& y : *roots) {
      mpz_class nn = Rational(-y).get_num(), dd = Rational(-y).get_den();
      mpz_sqrt(nn.get_mpz_t(), nn.get_mpz_t());
      mpz_sqrt(dd.get_mpz_t(), dd.get_mpz_t());
      Rational th(nn, dd);
      th.canonicalize();
      if (sgn(th) == 0) continue;
      // ker(f² + θ²) splits into planes span(w, f w / θ).
      Subspace K = null_space(f * f + (th * th) * I);
      Subspace local(N);
      for (const auto& w : K.basis()) {
        if (local.contains(w)) continue;
        Vec fw = f * w;
        for (auto& c : fw) c /= th;
        local = sum(local, Subspace::span(N, {w, fw}));
        cols.push_back(w);
        cols.push_back(fw);
      }
    }
    // Eigenvalue 0 and b: the kernel minus one vector for b when b = 0.
    Subspace ker = null_space(f);
    auto kb = ker.basis();
    Vec vb;
    if (sgn(b) == 0) {
      vb = kb.back();
      kb.pop_back();
    } else {
      vb = null_space(f - b * I).basis().front();
    }
    append(cols, kb);
    cols.push_back(vb);
    const Mat B = columns(cols, N);
    Subspace F = characteristic_subalgebra(u(m, 0));
    F = sum(F, Subspace::span(N * N, {Mat::unit(N, N, N - 1, N - 1).flat()}));
    if (in_pattern(F, f, B)) {
      t.verdict = Verdict::yes;
      t.basis = B;
      t.frame = frame_for(B, Mat::identity(N + 1));
      return t;
    }
    throw std::logic_error("u(m): constructed basis misses the obstruction space");
  }
  t.verdict = Verdict::yes_existence_only;
  t.rule += ": rotation angles are irrational";
  return t;
}

}  // namespace

ExistenceReport admits_torsion_free(const std::string& family, const AlmostAbelian& g,
                                    const std::map<std::string, long>& params) {
  ExistenceReport r;
  r.family = family;
  if (family == "product") {
    auto it = params.find("p");
    if (it == params.end() || it->second < 0) throw InvalidSignature("product family needs p");
    r.per_type = product_types(g, static_cast<std::size_t>(it->second));
    r.verdict = best_of(r.per_type).verdict;
    return r;
  }
  if (family == "tangent") {
    r.per_type = tangent_types(g);
    r.verdict = best_of(r.per_type).verdict;
    return r;
  }
  if (family == "gl_C" || family == "u") {
    const std::size_t m = checked_half(g.n(), family.c_str());
    r.per_type.push_back(family == "gl_C" ? gl_c_type(g.f, m) : u_type(g.f, m));
    r.verdict = r.per_type.front().verdict;
    return r;
  }
  if (family == "hpc") {
    const auto c = classify_hyperparacomplex(g);
    TypeVerdict t;
    t.type = "Dgl(m)";
    t.rule = c.rule;
    switch (c.verdict) {
      case HpcVerdict::yes_caseA:
      case HpcVerdict::yes_caseB:
        t.verdict = Verdict::yes;
        t.basis = c.basis;
        break;
      case HpcVerdict::no: t.verdict = Verdict::no; break;
      case HpcVerdict::unknown: t.verdict = Verdict::unknown; break;
    }
    r.per_type.push_back(t);
    r.verdict = t.verdict;
    return r;
  }
  throw UnsupportedGroup("unknown family " + family);
}

ExistenceReport admits_torsion_free(const LinearSubalgebra& h, const AlmostAbelian& g) {
  if (h.n() != g.n()) throw DimensionMismatch("algebra and almost abelian algebra differ in dimension");
  ExistenceReport r;
  r.family = h.name();
  TypeVerdict t;
  t.type = h.name() + "[R^{n-1}]";
  if (obstruction_space(h).contains(g.f.flat())) {
    t.verdict = Verdict::yes;
    t.basis = Mat::identity(g.n() - 1);
    t.frame = Mat::identity(g.n());
    t.rule = "f ∈ F_h";
  } else {
    t.verdict = Verdict::unknown;
    t.rule = "f ∉ F_h for the standard identification";
  }
  r.per_type.push_back(t);
  r.verdict = t.verdict;
  return r;
}

}  // namespace tl
