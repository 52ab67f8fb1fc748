#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace tl {

// mpq_class keeps numerator/denominator coprime with a positive denominator
// as long as every value passes through canonicalize(); gmpxx does that for
// all arithmetic results.
using Rational = mpq_class;
using Vec = std::vector<Rational>;

// p/q in canonical form; q must be nonzero.
Rational make_rational(long p, long q);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

// Accepts "p", "p/q", "-p/q" and plain decimals such as "0.25".
// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view s);

bool is_zero(const Vec& v);

Vec zeros(std::size_t n);
Vec unit_vec(std::size_t n, std::size_t i);

Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Rational& s, const Vec& a);
Rational dot(const Vec& a, const Vec& b);

}  // namespace tl
