#pragma once

// Dense univariate polynomials. Coefficient i multiplies x^i; the zero
// polynomial is the empty vector and no representation has a trailing zero.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "eiscong/arith.hpp"

namespace eiscong {

using ZPoly = std::vector<Integer>;
using QPoly = std::vector<Rational>;
using FpPoly = std::vector<std::uint64_t>;

namespace poly {

template <class T>
void trim(std::vector<T>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

template <class T>
long deg(const std::vector<T>& a) {
  return static_cast<long>(a.size()) - 1;
}

template <class T>
std::vector<T> add(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> r(std::max(a.size(), b.size()), T(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

template <class T>
std::vector<T> sub(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> r(std::max(a.size(), b.size()), T(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

template <class T>
std::vector<T> mul(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<T> r(a.size() + b.size() - 1, T(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

template <class T, class S>
std::vector<T> scale(const std::vector<T>& a, const S& s) {
  std::vector<T> r(a);
  for (auto& c : r) c *= s;
  trim(r);
  return r;
}

template <class T>
std::vector<T> derivative(const std::vector<T>& a) {
  std::vector<T> r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<unsigned long>(i));
  trim(r);
  return r;
}

template <class T, class X>
X eval(const std::vector<T>& a, const X& x) {
  X r = 0;
  for (std::size_t i = a.size(); i-- > 0;) r = r * x + a[i];
  return r;
}

}  // namespace poly

// ---------------------------------------------------------------------------
// Over Q.

namespace qpoly {

QPoly from_z(const ZPoly& a);
// divmod by a nonzero divisor.
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly rem(const QPoly& a, const QPoly& b);
QPoly monic(const QPoly& a);
QPoly gcd(const QPoly& a, const QPoly& b);  // monic, or zero
// Scales by the lcm of denominators and divides by the content.
ZPoly primitive_integral(const QPoly& a);
// Number of distinct real roots in the half-open interval (lo, hi].
long sturm_count(const QPoly& a, const Rational& lo, const Rational& hi);
std::string to_string(const QPoly& a, const std::string& var = "x");

}  // namespace qpoly

// ---------------------------------------------------------------------------
// Over Z.

namespace zpoly {

Integer content(const ZPoly& a);  // nonnegative gcd of coefficients
ZPoly primitive_part(const ZPoly& a);  // with positive leading coefficient
bool is_monic(const ZPoly& a);
// exact division; throws InvalidArgument if b does not divide a over Z.
ZPoly divexact(const ZPoly& a, const ZPoly& b);
bool divides(const ZPoly& b, const ZPoly& a);
Integer resultant(const ZPoly& a, const ZPoly& b);
Integer discriminant(const ZPoly& a);
bool is_squarefree(const ZPoly& a);
// Irreducible factors over Z (primitive, positive leading coefficient) with
// multiplicity, sorted by degree then coefficients; the content is dropped.
std::vector<std::pair<ZPoly, int>> factor(const ZPoly& a);
bool is_irreducible(const ZPoly& a);
// f(x) -> f(x + c)
ZPoly taylor_shift(const ZPoly& a, const Integer& c);
// True when every complex root z of a satisfies z real and z^2 <= bound.
bool roots_real_and_square_bounded(const ZPoly& a, const Integer& bound);
std::string to_string(const ZPoly& a, const std::string& var = "x");
// Landau-Mignotte style bound on coefficients of any factor of a.
Integer factor_coefficient_bound(const ZPoly& a);

}  // namespace zpoly

// ---------------------------------------------------------------------------
// Over F_p, p < 2^63 prime. Coefficients live in [0, p).

namespace fppoly {

FpPoly reduce(const ZPoly& a, std::uint64_t p);
ZPoly lift(const FpPoly& a);  // coefficients in [0, p)
ZPoly lift_symmetric(const FpPoly& a, std::uint64_t p);
void trim(FpPoly& a);
FpPoly add(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly sub(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly mul(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly scale(const FpPoly& a, std::uint64_t s, std::uint64_t p);
std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly rem(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly monic(const FpPoly& a, std::uint64_t p);
FpPoly gcd(const FpPoly& a, const FpPoly& b, std::uint64_t p);
// g an inverse-capable extended gcd: returns (g, s, t) with s*a + t*b = g monic.
struct XGcd {
  FpPoly g, s, t;
};
XGcd xgcd(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly derivative(const FpPoly& a, std::uint64_t p);
FpPoly powmod(const FpPoly& base, const Integer& e, const FpPoly& mod, std::uint64_t p);
// Monic irreducible factors with multiplicity, sorted by (degree, coefficients).
std::vector<std::pair<FpPoly, int>> factor(const FpPoly& a, std::uint64_t p);
bool is_squarefree(const FpPoly& a, std::uint64_t p);

}  // namespace fppoly

}  // namespace eiscong
