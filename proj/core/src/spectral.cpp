#include "torsionlab/spectral.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace tl {

Poly::Poly(Vec coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const Rational& c) { return Poly(Vec{c}); }
Poly Poly::x() { return Poly(Vec{Rational(0), Rational(1)}); }
Poly Poly::linear_root(const Rational& r) { return Poly(Vec{Rational(-r), Rational(1)}); }

void Poly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rational Poly::eval(const Rational& t) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return {};
  Vec d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = Rational(static_cast<long>(i)) * c_[i];
  return Poly(std::move(d));
}

Poly Poly::monic() const {
  if (is_zero()) return {};
  const Rational l = lead();
  Vec d(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) d[i] = c_[i] / l;
  return Poly(std::move(d));
}

Poly Poly::operator+(const Poly& o) const {
  Vec d(std::max(c_.size(), o.c_.size()), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) d[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) d[i] += o.c_[i];
  return Poly(std::move(d));
}

Poly Poly::operator-(const Poly& o) const { return *this + Rational(-1) * o; }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return {};
  Vec d(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) d[i + j] += c_[i] * o.c_[j];
  return Poly(std::move(d));
}

Poly operator*(const Rational& s, const Poly& p) {
  Vec d(p.c_.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = s * p.c_[i];
  return Poly(std::move(d));
}

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    const Rational& c = p.coeffs()[i];
    if (sgn(c) == 0) continue;
    Rational a = abs(c);
    if (!out.empty()) out += sgn(c) < 0 ? " - " : " + ";
    else if (sgn(c) < 0) out += "-";
    const bool unit = a == 1 && i > 0;
    if (!unit) out += to_string(a);
    if (i > 0) out += (unit ? "" : "*") + std::string("x") + (i > 1 ? "^" + std::to_string(i) : "");
  }
  return out;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly{}, a};
  Vec r = a.coeffs();
  const std::size_t db = b.degree();
  Vec q(r.size() - db, Rational(0));
  const Rational lb = b.lead();
  for (std::size_t k = q.size(); k-- > 0;) {
    const Rational t = r[k + db] / lb;
    q[k] = t;
    if (sgn(t) == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) r[k + j] -= t * b.coeffs()[j];
  }
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Poly pow(const Poly& p, unsigned k) {
  Poly r = Poly::constant(1);
  for (unsigned i = 0; i < k; ++i) r = r * p;
  return r;
}

std::vector<std::pair<Poly, unsigned>> squarefree_decomposition(const Poly& p) {
  std::vector<std::pair<Poly, unsigned>> out;
  if (p.degree() < 1) return out;
  const Poly f = p.monic();
  const Poly fp = f.derivative();
  Poly a = gcd(f, fp);
  Poly b = divmod(f, a).first;
  Poly c = divmod(fp, a).first;
  Poly d = c - b.derivative();
  unsigned k = 1;
  while (b.degree() >= 1) {
    Poly g = gcd(b, d);
    if (g.degree() >= 1) out.emplace_back(g, k);
    b = divmod(b, g).first;
    c = divmod(d, g).first;
    d = c - b.derivative();
    ++k;
  }
  return out;
}

std::vector<Poly> sturm_chain(const Poly& p) {
  std::vector<Poly> chain;
  if (p.is_zero()) return chain;
  chain.push_back(p);
  Poly d = p.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(d);
  while (true) {
    Poly r = divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(Rational(-1) * r);
  }
  return chain;
}

namespace {

std::size_t variations(const std::vector<int>& signs) {
  std::size_t v = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

std::size_t variations_at(const std::vector<Poly>& chain, const Rational& t) {
  std::vector<int> s;
  for (const auto& q : chain) s.push_back(q.sign_at(t));
  return variations(s);
}

std::size_t variations_at_infinity(const std::vector<Poly>& chain, bool positive) {
  std::vector<int> s;
  for (const auto& q : chain) {
    int sg = sgn(q.lead());
    if (!positive && q.degree() % 2 == 1) sg = -sg;
    s.push_back(sg);
  }
  return variations(s);
}

// Divisors of |n| (n ≠ 0), or nullopt when trial division cannot certify
// the remaining cofactor.
std::optional<std::vector<mpz_class>> divisors(mpz_class n) {
  n = abs(n);
  std::map<mpz_class, unsigned> fac;
  const unsigned long bound = 1000000;
  for (unsigned long p = 2; p <= bound && p * p <= n; ++p)
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++fac[mpz_class(p)];
      n /= p;
    }
  if (n > 1) {
    if (mpz_probab_prime_p(n.get_mpz_t(), 40) == 0) return std::nullopt;
    ++fac[n];
  }
  std::vector<mpz_class> divs{1};
  for (const auto& [p, e] : fac) {
    const std::size_t base = divs.size();
    mpz_class pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

}  // namespace

std::size_t real_root_count(const Poly& p) {
  if (p.degree() < 1) return 0;
  const auto chain = sturm_chain(p);
  return variations_at_infinity(chain, false) - variations_at_infinity(chain, true);
}

std::size_t real_root_count(const Poly& p, const Rational& a, const Rational& b) {
  if (p.degree() < 1 || !(a < b)) return 0;
  const auto chain = sturm_chain(p);
  return variations_at(chain, a) - variations_at(chain, b);
}

std::optional<std::vector<Rational>> rational_roots(const Poly& p) {
  std::vector<Rational> roots;
  if (p.degree() < 1) return roots;
  Poly q = p;
  if (sgn(q.coeff(0)) == 0) {
    roots.push_back(0);
    while (sgn(q.coeff(0)) == 0) q = divmod(q, Poly::x()).first;
  }
  if (q.degree() >= 1) {
    mpz_class l = 1;
    for (const auto& c : q.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    const Rational scale(l);
    const mpz_class a0 = Rational(q.coeff(0) * scale).get_num();
    const mpz_class an = Rational(q.lead() * scale).get_num();
    auto ps = divisors(a0), qs = divisors(an);
    if (!ps || !qs) return std::nullopt;
    for (const auto& num : *ps)
      for (const auto& den : *qs)
        for (int s : {1, -1}) {
          Rational r(mpz_class(s * num), den);
          r.canonicalize();
          if (sgn(q.eval(r)) == 0 && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
        }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

Poly charpoly(const Mat& a) {
  if (!a.square()) throw std::invalid_argument("charpoly: square matrix required");
  const std::size_t n = a.rows();
  Vec c(n + 1, Rational(0));
  c[n] = 1;
  Mat M(n, n);
  const Mat I = Mat::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    M = a * M + c[n - k + 1] * I;
    c[n - k] = -(a * M).trace() / Rational(static_cast<long>(k));
  }
  return Poly(std::move(c));
}

Poly det_pencil(const Mat& a, const Mat& b) {
  if (!a.square() || a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("det_pencil: shape mismatch");
  const std::size_t n = a.rows();
  // Newton interpolation at t = 0..n.
  std::vector<Rational> xs, dd;
  for (std::size_t i = 0; i <= n; ++i) {
    const Rational t(static_cast<long>(i));
    xs.push_back(t);
    dd.push_back(det(a + t * b));
  }
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t i = n; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
  Poly result;
  for (std::size_t k = n + 1; k-- > 0;) result = result * Poly::linear_root(xs[k]) + Poly::constant(dd[k]);
  return result;
}

Mat eval(const Poly& p, const Mat& a) {
  const std::size_t n = a.rows();
  Mat acc(n, n);
  const Mat I = Mat::identity(n);
  for (int i = p.degree(); i >= 0; --i) acc = acc * a + p.coeffs()[i] * I;
  return acc;
}

SpectralSummary spectral_summary(const Mat& f) {
  SpectralSummary s;
  s.charpoly = charpoly(f);
  s.split = true;
  for (auto& [q, k] : squarefree_decomposition(s.charpoly)) {
    s.squarefree.push_back({q, k, real_root_count(q)});
    Poly rest = q;
    auto roots = rational_roots(q);
    if (!roots) {
      s.split = false;
      continue;
    }
    for (const auto& r : *roots) {
      s.pieces.emplace_back(Poly::linear_root(r), k);
      rest = divmod(rest, Poly::linear_root(r)).first;
    }
    if (rest.degree() == 2) s.pieces.emplace_back(rest, k);
    else if (rest.degree() > 2) s.split = false;
  }
  if (!s.split) s.pieces.clear();
  return s;
}

}  // namespace tl
