#include "torsionlab/verification.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "torsionlab/catalog.hpp"
#include "torsionlab/classifiers.hpp"
#include "torsionlab/existence.hpp"

namespace tl {

namespace {

struct Tally {
  bool ok = true;
  std::ostringstream out;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) out << "; ";
      out << "FAILED " << what;
      ok = false;
    }
  }
  void note(const std::string& s) {
    if (ok) out << (out.tellp() > 0 ? "; " : "") << s;
  }
};

Subspace spanned(std::size_t N, const std::vector<Mat>& ms) {
  std::vector<Vec> vs;
  for (const auto& m : ms) vs.push_back(m.flat());
  return Subspace::span(N * N, vs);
}

// B ↦ B ⊕ 0 from End(R^k) into End(R^N).
std::vector<Mat> embed(const LinearSubalgebra& h, std::size_t N) {
  std::vector<Mat> out;
  for (const auto& b : h.basis()) {
    Mat m(N, N);
    m.set_block(0, 0, b);
    out.push_back(m);
  }
  return out;
}

std::optional<Subspace> rule_F(const LinearSubalgebra& h, const std::string& name) {
  for (const auto& r : evaluate_rules(h))
    if (r.rule == name && r.applies) return r.F;
  return std::nullopt;
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
  const long d = den(rng);
  return make_rational(num(rng), d);
}

Mat random_matrix(std::mt19937_64& rng, std::size_t N) {
  Mat m(N, N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) m(i, j) = random_rational(rng);
  return m;
}

Mat random_element(std::mt19937_64& rng, const Subspace& s, std::size_t N) {
  Vec flat(N * N, Rational(0));
  for (const auto& b : s.basis()) {
    const Rational c = random_rational(rng);
    for (std::size_t k = 0; k < flat.size(); ++k) flat[k] += c * b[k];
  }
  return Mat::from_flat(N, N, flat);
}

std::string dims(const std::vector<std::size_t>& d) {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s;
}

bool certified(const CertificateResult& r, const AlmostAbelian& g) {
  if (!std::holds_alternative<Certificate>(r)) return false;
  return revalidate(std::get<Certificate>(r), g).valid();
}

// ---- criteria ---------------------------------------------------------------

void symplectic(Tally& t) {
  std::vector<std::size_t> ds;
  for (std::size_t m : {2, 3}) {
    const auto h = sp(m);
    const std::size_t N = 2 * m - 1;
    const auto F = obstruction_space(h);
    const auto k = characteristic_subalgebra(h);
    auto gens = embed(sp(m - 1), N);
    for (std::size_t j = 0; j < N; ++j) gens.push_back(Mat::unit(N, N, N - 1, j));
    const auto pattern = spanned(N, gens);
    t.expect(F == k, "F = k̃ for sp(" + std::to_string(2 * m) + ")");
    t.expect(F == pattern, "block form [[A,0],[w^t,a]] for sp(" + std::to_string(2 * m) + ")");
    ds.push_back(F.dim());
  }
  t.expect(ds == std::vector<std::size_t>{6, 15}, "dims 6, 15");
  t.note("dims " + dims(ds));
}

void complex_case(Tally& t) {
  std::vector<std::size_t> ds;
  for (std::size_t m : {2, 3}) {
    const auto h = gl_C(m);
    const std::size_t N = 2 * m - 1;
    const auto F = obstruction_space(h);
    auto gens = embed(gl_C(m - 1), N);
    for (std::size_t i = 0; i < N; ++i) gens.push_back(Mat::unit(N, N, i, N - 1));
    t.expect(F == characteristic_subalgebra(h), "F = k̃ for gl(" + std::to_string(m) + ",C)");
    t.expect(F == spanned(N, gens), "block form [[A,v],[0,a]] for gl(" + std::to_string(m) + ",C)");
    ds.push_back(F.dim());
  }
  t.expect(ds == std::vector<std::size_t>{5, 13}, "dims 5, 13");
  const auto spc = sp_C(1);
  t.expect(obstruction_space(spc) == characteristic_subalgebra(spc), "F = k̃ for sp(2,C)");
  t.note("dims " + dims(ds) + ", sp(2,C) F = k̃");
}

void unitary(Tally& t) {
  std::vector<std::size_t> ds;
  for (std::size_t m : {2, 3}) {
    const auto h = u(m, 0);
    const std::size_t N = 2 * m - 1;
    const auto F = obstruction_space(h);
    const auto expected = sum(characteristic_subalgebra(h), spanned(N, {Mat::unit(N, N, N - 1, N - 1)}));
    t.expect(F == expected, "engine F = k̃ ⊕ span(e^{2m-1}⊗e_{2m-1}) for u(" + std::to_string(m) + ")");
    const auto rf = rule_F(h, "unitary-nondegenerate");
    t.expect(rf && *rf == expected, "unitary rule for u(" + std::to_string(m) + ")");
    ds.push_back(F.dim());
  }
  // u(1,1): displayed forms diag(A, a), A ∈ u(1), and [[a,0,b],[0,a,c],[0,0,-a]].
  const auto u11 = u(1, 1);
  const auto nondeg = spanned(3, {Mat{{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}, Mat::unit(3, 3, 2, 2)});
  t.expect(obstruction_space(u11) == nondeg, "u(1,1) non-degenerate form");
  Mat g_deg{{0, 0, 0, 1}, {0, 0, -1, 0}, {0, -1, 0, 0}, {1, 0, 0, 0}};
  const auto u11d = u_gram(g_deg);
  const auto deg = spanned(3, {Mat::diag({1, 1, -1}), Mat::unit(3, 3, 0, 2), Mat::unit(3, 3, 1, 2)});
  t.expect(obstruction_space(u11d) == deg, "u(1,1) degenerate form");
  t.note("dims " + dims(ds) + ", u(1,1) forms match");
}

void metric(Tally& t) {
  for (std::size_t n : {3, 4, 5})
    t.expect(obstruction_space(so(n, 0)).dim() == (n - 1) * (n - 1), "F = End for so(" + std::to_string(n) + ")");
  std::vector<std::size_t> ds;
  for (auto [p, q] : std::vector<std::pair<std::size_t, std::size_t>>{{4, 0}, {2, 2}, {3, 1}}) {
    const auto h = so(p, q);
    const std::size_t n = p + q;
    MetricContext ctx(*h.structures().g);
    t.expect(!is_degenerate(ctx, standard_hyperplane(n)), "non-degenerate hyperplane");
    const auto d = first_prolongation(h).dim();
    t.expect(d == n * (n - 1) / 2, "K^(1) dim for so(" + std::to_string(p) + "," + std::to_string(q) + ")");
    ds.push_back(d);
  }
  t.note("so(3..5) F = End; K^(1) dims " + dims(ds));
}

void hypercomplex(Tally& t) {
  for (const auto& h : {gl_H(1), sp_H(1)}) {
    const auto lr = low_rank_witness(h, 2);
    t.expect(lr.verdict == LowRankVerdict::certified, "no rank ≤ 2 element in " + h.name());
    t.expect(first_prolongation(h).dim() == 0, "K^(1) = 0 for " + h.name());
    t.expect(obstruction_space(h) == characteristic_subalgebra(h), "F = k̃ for " + h.name());
  }
  t.note("gl(1,H), sp(1): rank-2 search certified, K^(1) = 0, F = k̃");
}

void hyperparacomplex(Tally& t) {
  std::vector<std::size_t> ds;
  for (std::size_t m : {2, 3}) {
    const auto F = obstruction_space(delta_gl(m, HpcFrame::e_invariant));
    t.expect(F == hyperparacomplex_pattern(m, 'A'), "normal form (a) for m = " + std::to_string(m));
    ds.push_back(F.dim());
  }
  HpcStructureData d;
  d.A = Mat{{-1}};
  d.a = 1;
  d.w1 = {Rational(-2)};
  d.w2 = {Rational(0)};
  d.lambda = 0;
  d.mu = 1;
  const auto fr = hpc_flatness(d);
  t.expect(!fr.flat && fr.witness && (*fr.witness)[0] == -2, "non-flat example with witness -2");
  t.note("dims " + dims(ds) + "; non-flat example: witness -2 is not an eigenvector of (-1) with eigenvalue 2");
}

void product_tangent(Tally& t, std::uint64_t seed, std::size_t per_size) {
  for (auto [n, p] : std::vector<std::pair<std::size_t, std::size_t>>{{4, 2}, {5, 2}, {5, 3}}) {
    const auto cat = orbit_catalog("GL(P0)", n, p);
    for (int type = 1; type <= 3; ++type)
      t.expect(product_obstruction(n, p, type) == obstruction_space(conjugate(cat.h, cat.reps[type - 1].T)),
               "product pattern (" + std::to_string(n) + "," + std::to_string(p) + ") type " + std::to_string(type));
  }
  for (std::size_t n : {4, 6}) {
    const auto cat = orbit_catalog("GL(T0)", n);
    for (int type = 1; type <= 2; ++type)
      t.expect(tangent_obstruction(n, type) == obstruction_space(conjugate(cat.h, cat.reps[type - 1].T)),
               "tangent pattern n=" + std::to_string(n) + " type " + std::to_string(type));
  }
  std::mt19937_64 rng(seed);
  std::size_t runs = 0, with_basis = 0;
  auto check = [&](const DecisionResult& r, const AlmostAbelian& g, const LinearSubalgebra& h, const Mat& T,
                   const std::string& what) {
    ++runs;
    t.expect(r.verdict == Verdict::yes || r.verdict == Verdict::yes_existence_only, what + " verdict");
    if (r.verdict == Verdict::yes) {
      ++with_basis;
      const Mat fp = *inverse(*r.detail->basis) * g.f * *r.detail->basis;
      t.expect(certified(check_torsion_free(h, AlmostAbelian(fp), T), AlmostAbelian(fp)), what + " certificate");
    }
  };
  for (auto [n, p] : std::vector<std::pair<std::size_t, std::size_t>>{{4, 2}, {5, 2}, {5, 3}}) {
    const auto cat = orbit_catalog("GL(P0)", n, p);
    for (std::size_t i = 0; i < per_size; ++i) {
      AlmostAbelian g(random_matrix(rng, n - 1));
      const auto r = decide_product(g, p);
      const int type = r.detail ? r.detail->type[9] - '0' : 1;
      check(r, g, cat.h, cat.reps[type - 1].T, "decide_product");
    }
  }
  for (std::size_t n : {4, 6}) {
    const auto cat = orbit_catalog("GL(T0)", n);
    for (std::size_t i = 0; i < per_size; ++i) {
      AlmostAbelian g(random_matrix(rng, n - 1));
      const auto r = decide_tangent(g);
      const int type = r.detail ? r.detail->type[9] - '0' : 2;
      check(r, g, cat.h, cat.reps[type - 1].T, "decide_tangent");
    }
  }
  t.note("patterns match the engine; " + std::to_string(runs) + " random decisions all yes, " +
         std::to_string(with_basis) + " with a certified basis");
}

void lagrangian(Tally& t) {
  const auto h = lagrangian_symplectic(2);
  const auto F = obstruction_space(h);
  const auto EL = end_L(2);
  t.expect(F == EL, "engine F = End_L");
  const auto rf = rule_F(h, "S2Uv");
  t.expect(rf && *rf == EL, "S2Uv rule F = End_L");
  t.expect(F.dim() == 4, "dim 4");
  t.note("dim " + std::to_string(F.dim()));
}

// ---- catalog sweeps -----------------------------------------------------------

void invariants(Tally& t, const std::vector<CatalogEntry>& cat, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::size_t certs = 0, nij = 0;
  for (const auto& e : cat) {
    const auto& h = e.algebra;
    const std::size_t n = h.n(), N = n - 1;
    const auto rep = obstruction_report(h);
    const auto& F = rep.F;
    const std::string tag = e.label + ": ";
    t.expect(F.contains(rep.k_tilde), tag + "k̃ ⊆ F");
    // v-independence over e_n and two seeded transversals.
    for (int k = 0; k < 2; ++k) {
      Vec v(n);
      for (auto& c : v) c = random_rational(rng);
      v[n - 1] = Rational(1 + k);
      t.expect(obstruction_space(h, v) == F, tag + "F independent of v");
    }
    for (const auto& a : rep.k_tilde.basis())
      for (const auto& b : F.basis()) {
        const Mat A = Mat::from_flat(N, N, a), B = Mat::from_flat(N, N, b);
        if (!F.contains(commutator(A, B).flat())) {
          t.expect(false, tag + "[k̃, F] ⊆ F");
          goto bracket_done;
        }
      }
  bracket_done:
    for (const auto& w : profile(h).W.basis())
      for (std::size_t j = 0; j < N; ++j) {
        Vec alpha(N, Rational(0));
        alpha[j] = 1;
        t.expect(F.contains(outer(w, alpha).flat()), tag + "(R^{n-1})*⊗W ⊆ F");
      }
    for (const auto& d : rep.D.basis())
      t.expect(rep.K1.contains(restrict_to_hyperplane(ConnectionTensor(n, d))), tag + "D| ⊆ K^(1)");
    // Certificates: f = 0 (flat), a random element of F (torsion-free), a
    // random element of k̃ (flat).
    std::vector<std::pair<Mat, bool>> samples{{Mat(N, N), true}, {random_element(rng, F, N), false}};
    if (rep.k_tilde.dim() > 0) samples.push_back({random_element(rng, rep.k_tilde, N), true});
    for (const auto& [f, flat] : samples) {
      AlmostAbelian g(f);
      const auto r = flat ? flat_certificate(h, g) : check_torsion_free(h, g);
      t.expect(certified(r, g), tag + (flat ? "flat" : "torsion-free") + " certificate re-validates");
      ++certs;
      if (h.structures().J && std::holds_alternative<Certificate>(r)) {
        const Vec nj = nijenhuis(*h.structures().J, g);
        t.expect(std::all_of(nj.begin(), nj.end(), [](const Rational& x) { return sgn(x) == 0; }),
                 tag + "Nijenhuis vanishes on a certificate");
        ++nij;
      }
    }
  }
  // One seeded non-integrable example per size.
  for (std::size_t m : {2, 3}) {
    const std::size_t N = 2 * m - 1;
    const Mat J = complex_structure(m);
    bool found = false;
    for (int tries = 0; tries < 20 && !found; ++tries) {
      AlmostAbelian g(random_matrix(rng, N));
      const Vec nj = nijenhuis(J, g);
      found = std::any_of(nj.begin(), nj.end(), [](const Rational& x) { return sgn(x) != 0; });
      if (found)
        t.expect(std::holds_alternative<Refusal>(check_torsion_free(gl_C(m), g)),
                 "non-integrable J refused by the engine");
    }
    t.expect(found, "non-integrable example for n = " + std::to_string(2 * m));
  }
  t.note(std::to_string(cat.size()) + " algebras, 3 transversals each, " + std::to_string(certs) +
         " certificates, " + std::to_string(nij) + " Nijenhuis checks");
}

void oracle(Tally& t, const std::vector<CatalogEntry>& cat) {
  std::size_t fired = 0;
  for (const auto& e : cat) {
    const auto rep = crosscheck(e.algebra);
    for (const auto& en : rep.entries) {
      ++fired;
      t.expect(en.equal, e.label + ": rule " + en.rule + " differs from the engine");
    }
  }
  t.note(std::to_string(fired) + " rule firings over " + std::to_string(cat.size()) + " algebras, 0 mismatches");
}

CheckResult run(int id, std::string name, const std::function<void(Tally&)>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  try {
    body(t);
  } catch (const std::exception& ex) {
    t.expect(false, std::string("exception: ") + ex.what());
  }
  CheckResult r;
  r.criterion = id;
  r.name = std::move(name);
  r.pass = t.ok;
  r.detail = t.out.str();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

std::vector<CheckResult> run_verification_suite(const VerificationOptions& opt) {
  auto cat = standard_catalog();
  std::vector<CheckResult> out;
  if (opt.target) {
    std::vector<CatalogEntry> sel;
    for (auto& e : cat)
      if (e.label == *opt.target || e.algebra.name() == *opt.target) sel.push_back(e);
    if (sel.empty()) throw UnknownTarget("no catalog algebra named " + *opt.target);
    cat = std::move(sel);
  } else {
    out.push_back(run(1, "symplectic", symplectic));
    out.push_back(run(2, "complex", complex_case));
    out.push_back(run(3, "unitary", unitary));
    out.push_back(run(4, "metric full group", metric));
    out.push_back(run(5, "hypercomplex", hypercomplex));
    out.push_back(run(6, "hyperparacomplex", hyperparacomplex));
    out.push_back(run(7, "product/tangent",
                      [&](Tally& t) { product_tangent(t, opt.seed, opt.random_per_size); }));
    out.push_back(run(8, "lagrangian-symplectic", lagrangian));
  }
  out.push_back(run(9, "invariant suite", [&](Tally& t) { invariants(t, cat, opt.seed); }));
  out.push_back(run(10, "oracle equivalence", [&](Tally& t) { oracle(t, cat); }));
  return out;
}

std::string format_line(const CheckResult& r) {
  std::ostringstream s;
  s << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.criterion << " (" << r.name << "): " << r.detail;
  s.setf(std::ios::fixed);
  s.precision(2);
  s << "  [" << r.seconds << "s]";
  return s.str();
}

}  // namespace tl
