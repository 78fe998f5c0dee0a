#include "eiscong/poly.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "eiscong/error.hpp"

namespace eiscong {

namespace {

template <class T>
std::string render(const std::vector<T>& a, const std::string& var) {
  if (a.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] == 0) continue;
    T c = a[i];
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (i == 0 || c != 1) os << c;
    if (i > 0) {
      if (c != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Q[x]

namespace qpoly {

QPoly from_z(const ZPoly& a) {
  QPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  return r;
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.empty()) throw InvalidArgument("polynomial division by zero");
  QPoly r = a;
  poly::trim(r);
  if (r.size() < b.size()) return {{}, r};
  QPoly q(r.size() - b.size() + 1);
  Rational inv = 1 / b.back();
  for (std::size_t i = r.size(); i-- >= b.size();) {
    Rational c = r[i] * inv;
    std::size_t shift = i + 1 - b.size();
    q[shift] = c;
    if (c != 0) {
      for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] -= c * b[j];
    }
    if (i == b.size() - 1) break;
  }
  r.resize(b.size() - 1);
  poly::trim(r);
  poly::trim(q);
  return {q, r};
}

QPoly rem(const QPoly& a, const QPoly& b) { return divmod(a, b).second; }

QPoly monic(const QPoly& a) {
  if (a.empty()) return a;
  return poly::scale(a, Rational(1 / a.back()));
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  poly::trim(x);
  poly::trim(y);
  while (!y.empty()) {
    QPoly r = rem(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

ZPoly primitive_integral(const QPoly& a) {
  Integer den = 1;
  for (const auto& c : a) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  ZPoly z(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) z[i] = Integer(a[i] * den);
  return zpoly::primitive_part(z);
}

namespace {

int sign_at(const QPoly& p, const Rational& x) {
  Rational v = poly::eval(p, x);
  return sgn(v);
}

long variations(const std::vector<QPoly>& seq, const Rational& x) {
  long v = 0;
  int last = 0;
  for (const auto& p : seq) {
    int s = sign_at(p, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

}  // namespace

long sturm_count(const QPoly& a_in, const Rational& lo, const Rational& hi) {
  QPoly a = a_in;
  poly::trim(a);
  if (a.size() <= 1) return 0;
  QPoly g = gcd(a, poly::derivative(a));
  if (g.size() > 1) a = divmod(a, g).first;
  std::vector<QPoly> seq{a, poly::derivative(a)};
  while (seq.back().size() > 1) {
    QPoly r = rem(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    seq.push_back(poly::scale(r, Rational(-1)));
  }
  return variations(seq, lo) - variations(seq, hi);
}

std::string to_string(const QPoly& a, const std::string& var) { return render(a, var); }

}  // namespace qpoly

// ---------------------------------------------------------------------------
// Z[x]

namespace zpoly {

Integer content(const ZPoly& a) {
  Integer g = 0;
  for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

ZPoly primitive_part(const ZPoly& a_in) {
  ZPoly a = a_in;
  poly::trim(a);
  if (a.empty()) return a;
  Integer g = content(a);
  if (a.back() < 0) g = -g;
  for (auto& c : a) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return a;
}

bool is_monic(const ZPoly& a) { return !a.empty() && a.back() == 1; }

namespace {

// Division with remainder when b's leading coefficient divides every step;
// returns false if some step is not exact.
bool try_divide(const ZPoly& a_in, const ZPoly& b, ZPoly& q) {
  if (b.empty()) throw InvalidArgument("polynomial division by zero");
  ZPoly a = a_in;
  poly::trim(a);
  q.clear();
  if (a.empty()) return true;
  if (a.size() < b.size()) return false;
  q.assign(a.size() - b.size() + 1, Integer(0));
  for (std::size_t i = a.size(); i-- >= b.size();) {
    if (a[i] != 0) {
      if (mpz_divisible_p(a[i].get_mpz_t(), b.back().get_mpz_t()) == 0) return false;
      Integer c;
      mpz_divexact(c.get_mpz_t(), a[i].get_mpz_t(), b.back().get_mpz_t());
      std::size_t shift = i + 1 - b.size();
      q[shift] = c;
      for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    }
    if (i == b.size() - 1) break;
  }
  for (std::size_t i = 0; i + 1 < b.size() && i < a.size(); ++i) {
    if (a[i] != 0) return false;
  }
  poly::trim(q);
  return true;
}

}  // namespace

ZPoly divexact(const ZPoly& a, const ZPoly& b) {
  ZPoly q;
  if (!try_divide(a, b, q)) throw InvalidArgument("divexact: not divisible");
  return q;
}

bool divides(const ZPoly& b, const ZPoly& a) {
  ZPoly q;
  return try_divide(a, b, q);
}

Integer resultant(const ZPoly& a_in, const ZPoly& b_in) {
  QPoly a = qpoly::from_z(a_in), b = qpoly::from_z(b_in);
  poly::trim(a);
  poly::trim(b);
  if (a.empty() || b.empty()) return 0;
  Rational res = 1;
  while (true) {
    long m = poly::deg(a), n = poly::deg(b);
    if (n == 0) {
      Rational bn;
      mpz_pow_ui(bn.get_num_mpz_t(), b[0].get_num_mpz_t(), static_cast<unsigned long>(m));
      mpz_pow_ui(bn.get_den_mpz_t(), b[0].get_den_mpz_t(), static_cast<unsigned long>(m));
      res *= bn;
      break;
    }
    QPoly r = qpoly::rem(a, b);
    if (r.empty()) return 0;
    long dr = poly::deg(r);
    if ((m * n) % 2 == 1) res = -res;
    Rational lc = b.back(), pw = 1;
    for (long i = 0; i < m - dr; ++i) pw *= lc;
    res *= pw;
    a = std::move(b);
    b = std::move(r);
  }
  if (res.get_den() != 1) throw Error("resultant: non-integral result");
  return res.get_num();
}

Integer discriminant(const ZPoly& a) {
  long n = poly::deg(a);
  if (n < 1) throw InvalidArgument("discriminant of a constant");
  Integer r = resultant(a, poly::derivative(a));
  Integer d;
  mpz_divexact(d.get_mpz_t(), r.get_mpz_t(), a.back().get_mpz_t());
  if ((n * (n - 1) / 2) % 2 == 1) d = -d;
  return d;
}

bool is_squarefree(const ZPoly& a) {
  QPoly g = qpoly::gcd(qpoly::from_z(a), qpoly::from_z(poly::derivative(a)));
  return g.size() <= 1;
}

ZPoly taylor_shift(const ZPoly& a, const Integer& c) {
  ZPoly r = a;
  long n = poly::deg(r);
  for (long i = 0; i < n; ++i) {
    for (long j = n - 1; j >= i; --j) r[j] += c * r[j + 1];
  }
  return r;
}

Integer factor_coefficient_bound(const ZPoly& a) {
  Integer norm2 = 0;
  for (const auto& c : a) norm2 += c * c;
  Integer root;
  mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
  root += 1;
  long n = poly::deg(a);
  Integer binom;
  mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(n / 2));
  return binom * root;
}

namespace {

// Yun's algorithm over Q; returns primitive squarefree factors with multiplicity.
std::vector<std::pair<ZPoly, int>> squarefree_decomposition(const ZPoly& f) {
  std::vector<std::pair<ZPoly, int>> out;
  QPoly a = qpoly::from_z(f);
  QPoly da = poly::derivative(a);
  QPoly c = qpoly::gcd(a, da);
  QPoly w = qpoly::divmod(a, c).first;
  QPoly y = qpoly::divmod(da, c).first;
  int i = 1;
  while (poly::deg(w) > 0) {
    QPoly z = poly::sub(y, poly::derivative(w));
    QPoly g = qpoly::gcd(w, z);
    if (poly::deg(g) > 0) out.emplace_back(qpoly::primitive_integral(g), i);
    w = qpoly::divmod(w, g).first;
    y = qpoly::divmod(z, g).first;
    ++i;
  }
  return out;
}

Integer mod_sym(const Integer& x, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  if (2 * r > m) r -= m;
  return r;
}

ZPoly reduce_mod(const ZPoly& a, const Integer& m) {
  ZPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) mpz_fdiv_r(r[i].get_mpz_t(), a[i].get_mpz_t(), m.get_mpz_t());
  poly::trim(r);
  return r;
}

ZPoly mul_mod(const ZPoly& a, const ZPoly& b, const Integer& m) { return reduce_mod(poly::mul(a, b), m); }

// Lifts f = lc * a * b (mod p), a monic, to modulus p^k >= target.
void hensel_pair(const ZPoly& f, ZPoly& a, ZPoly& b, std::uint64_t p, const Integer& modulus) {
  const Integer& lc = f.back();
  FpPoly ap = fppoly::reduce(a, p);
  FpPoly lcb = fppoly::reduce(poly::scale(b, lc), p);
  auto xg = fppoly::xgcd(ap, lcb, p);  // s*a + t*(lc b) = 1
  if (xg.g.size() != 1) throw Error("hensel: factors not coprime mod p");
  Integer pk = p;
  Integer P(static_cast<unsigned long>(p));
  while (pk < modulus) {
    ZPoly err = poly::sub(f, poly::scale(poly::mul(a, b), lc));
    for (auto& c : err) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pk.get_mpz_t());
    FpPoly e = fppoly::reduce(err, p);
    FpPoly da = fppoly::rem(fppoly::mul(e, xg.t, p), ap, p);
    FpPoly num = fppoly::sub(e, fppoly::mul(da, lcb, p), p);
    FpPoly db = fppoly::divmod(num, ap, p).first;
    a = poly::add(a, poly::scale(fppoly::lift(da), pk));
    b = poly::add(b, poly::scale(fppoly::lift(db), pk));
    pk *= P;
    a = reduce_mod(a, pk);
    b = reduce_mod(b, pk);
  }
}

// f squarefree primitive, deg >= 2, positive leading coefficient.
std::vector<ZPoly> zassenhaus(const ZPoly& f) {
  const Integer& lc = f.back();
  std::uint64_t best_p = 0;
  std::vector<std::pair<FpPoly, int>> best;
  int good = 0;
  for (std::uint64_t p = 3; good < 8; p += 2) {
    if (!is_prime(p)) continue;
    if (mpz_divisible_ui_p(lc.get_mpz_t(), p) != 0) continue;
    FpPoly fp = fppoly::reduce(f, p);
    if (!fppoly::is_squarefree(fp, p)) continue;
    ++good;
    auto fac = fppoly::factor(fp, p);
    if (best_p == 0 || fac.size() < best.size()) {
      best_p = p;
      best = fac;
    }
    if (best.size() == 1) break;
  }
  if (best.size() == 1) return {f};

  std::uint64_t p = best_p;
  Integer bound = 2 * abs(lc) * factor_coefficient_bound(f) + 1;
  Integer modulus = p;
  while (modulus <= bound) modulus *= static_cast<unsigned long>(p);
  // sequential two-factor lifting: f = lc * F_0 * rest, then rest, ...
  std::vector<ZPoly> lifted;
  ZPoly current = f;  // congruent to lc(current) * prod of remaining factors
  for (std::size_t i = 0; i + 1 < best.size(); ++i) {
    ZPoly ai = fppoly::lift(best[i].first);
    FpPoly rest = {1};
    for (std::size_t j = i + 1; j < best.size(); ++j) rest = fppoly::mul(rest, best[j].first, p);
    ZPoly bi = fppoly::lift(rest);
    hensel_pair(current, ai, bi, p, modulus);
    lifted.push_back(ai);
    // the remaining factors multiply to bi (monic), so continue from lc * bi
    current = reduce_mod(poly::scale(bi, lc), modulus);
    if (i + 2 == best.size()) lifted.push_back(bi);
  }

  std::vector<ZPoly> out;
  ZPoly g = f;
  std::vector<std::size_t> remaining(lifted.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
  std::size_t s = 1;
  while (2 * s <= remaining.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      Integer glc = g.back();
      // constant-term pretest
      Integer c0 = glc;
      for (std::size_t i : idx) c0 = mod_sym(c0 * (lifted[remaining[i]].empty() ? Integer(0) : lifted[remaining[i]][0]), modulus);
      bool pass = (c0 == 0) ? (g[0] == 0) : (mpz_divisible_p(Integer(glc * g[0]).get_mpz_t(), c0.get_mpz_t()) != 0);
      if (pass) {
        ZPoly cand = {glc};
        for (std::size_t i : idx) cand = mul_mod(cand, lifted[remaining[i]], modulus);
        for (auto& c : cand) c = mod_sym(c, modulus);
        poly::trim(cand);
        ZPoly prim = primitive_part(cand);
        ZPoly q;
        if (!prim.empty() && try_divide(g, prim, q)) {
          out.push_back(prim);
          g = primitive_part(q);
          std::vector<std::size_t> next;
          for (std::size_t i = 0; i < remaining.size(); ++i) {
            if (std::find(idx.begin(), idx.end(), i) == idx.end()) next.push_back(remaining[i]);
          }
          remaining = next;
          found = true;
          break;
        }
      }
      // next combination
      std::size_t k = s;
      while (k > 0 && idx[k - 1] == remaining.size() - s + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (poly::deg(g) > 0) out.push_back(g);
  return out;
}

bool poly_less(const ZPoly& a, const ZPoly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

}  // namespace

std::vector<std::pair<ZPoly, int>> factor(const ZPoly& a_in) {
  ZPoly a = primitive_part(a_in);
  if (a.empty()) throw InvalidArgument("factor of the zero polynomial");
  std::vector<std::pair<ZPoly, int>> out;
  if (poly::deg(a) == 0) return out;
  for (auto& [g, mult] : squarefree_decomposition(a)) {
    if (poly::deg(g) == 1) {
      out.emplace_back(g, mult);
      continue;
    }
    for (auto& h : zassenhaus(g)) out.emplace_back(primitive_part(h), mult);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (poly_less(x.first, y.first)) return true;
    if (poly_less(y.first, x.first)) return false;
    return x.second < y.second;
  });
  return out;
}

bool is_irreducible(const ZPoly& a) {
  if (poly::deg(a) < 1) return false;
  if (content(a) != 1 && poly::deg(a) >= 1) {
    // a constant factor is a unit only if it is +-1
    return false;
  }
  auto f = factor(a);
  return f.size() == 1 && f[0].second == 1;
}

bool roots_real_and_square_bounded(const ZPoly& a, const Integer& bound) {
  // a(x) = E(x^2) + x O(x^2); a(x)a(-x) = E(z)^2 - z O(z)^2 has roots x_i^2.
  ZPoly e, o;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ZPoly& t = (i % 2 == 0) ? e : o;
    t.resize(i / 2 + 1, Integer(0));
    t[i / 2] = a[i];
  }
  ZPoly r = poly::sub(poly::mul(e, e), poly::mul(ZPoly{0, 1}, poly::mul(o, o)));
  QPoly rq = qpoly::from_z(r);
  QPoly g = qpoly::gcd(rq, poly::derivative(rq));
  if (g.size() > 1) rq = qpoly::divmod(rq, g).first;
  long distinct = poly::deg(rq);
  long inside = qpoly::sturm_count(rq, Rational(0), Rational(bound));
  if (!rq.empty() && rq[0] == 0) ++inside;
  return inside == distinct;
}

std::string to_string(const ZPoly& a, const std::string& var) { return render(a, var); }

}  // namespace zpoly

// ---------------------------------------------------------------------------
// F_p[x]

namespace fppoly {

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly reduce(const ZPoly& a, std::uint64_t p) {
  FpPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = reduce_mod(a[i], p);
  trim(r);
  return r;
}

ZPoly lift(const FpPoly& a) {
  ZPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = Integer(static_cast<unsigned long>(a[i]));
  return r;
}

ZPoly lift_symmetric(const FpPoly& a, std::uint64_t p) {
  ZPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    r[i] = Integer(static_cast<unsigned long>(a[i]));
    if (2 * a[i] > p) r[i] -= Integer(static_cast<unsigned long>(p));
  }
  return r;
}

FpPoly add(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint64_t x = i < a.size() ? a[i] : 0;
    std::uint64_t y = i < b.size() ? b[i] : 0;
    r[i] = x + y >= p ? x + y - p : x + y;
  }
  trim(r);
  return r;
}

FpPoly sub(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint64_t x = i < a.size() ? a[i] : 0;
    std::uint64_t y = i < b.size() ? b[i] : 0;
    r[i] = x >= y ? x - y : x + p - y;
  }
  trim(r);
  return r;
}

FpPoly mul(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    }
  }
  trim(r);
  return r;
}

FpPoly scale(const FpPoly& a, std::uint64_t s, std::uint64_t p) {
  FpPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mulmod(a[i], s % p, p);
  trim(r);
  return r;
}

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  if (b.empty()) throw InvalidArgument("polynomial division by zero");
  FpPoly r = a;
  trim(r);
  if (r.size() < b.size()) return {{}, r};
  FpPoly q(r.size() - b.size() + 1, 0);
  std::uint64_t inv = invmod(b.back(), p);
  for (std::size_t i = r.size(); i-- >= b.size();) {
    std::uint64_t c = mulmod(r[i], inv, p);
    std::size_t shift = i + 1 - b.size();
    q[shift] = c;
    if (c != 0) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        std::uint64_t t = mulmod(c, b[j], p);
        r[shift + j] = r[shift + j] >= t ? r[shift + j] - t : r[shift + j] + p - t;
      }
    }
    if (i == b.size() - 1) break;
  }
  r.resize(b.size() - 1);
  trim(r);
  trim(q);
  return {q, r};
}

FpPoly rem(const FpPoly& a, const FpPoly& b, std::uint64_t p) { return divmod(a, b, p).second; }

FpPoly monic(const FpPoly& a, std::uint64_t p) {
  if (a.empty()) return a;
  return scale(a, invmod(a.back(), p), p);
}

FpPoly gcd(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  FpPoly x = a, y = b;
  trim(x);
  trim(y);
  while (!y.empty()) {
    FpPoly r = rem(x, y, p);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x, p);
}

XGcd xgcd(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  FpPoly r0 = a, r1 = b, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
  trim(r0);
  trim(r1);
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1, p);
    FpPoly s2 = sub(s0, mul(q, s1, p), p);
    FpPoly t2 = sub(t0, mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) return {r0, s0, t0};
  std::uint64_t inv = invmod(r0.back(), p);
  return {scale(r0, inv, p), scale(s0, inv, p), scale(t0, inv, p)};
}

FpPoly derivative(const FpPoly& a, std::uint64_t p) {
  FpPoly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(mulmod(a[i], i % p, p));
  trim(r);
  return r;
}

FpPoly powmod(const FpPoly& base, const Integer& e, const FpPoly& mod, std::uint64_t p) {
  FpPoly result = {1};
  result = rem(result, mod, p);
  FpPoly b = rem(base, mod, p);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = rem(mul(result, result, p), mod, p);
    if (mpz_tstbit(e.get_mpz_t(), i) != 0) result = rem(mul(result, b, p), mod, p);
  }
  return result;
}

bool is_squarefree(const FpPoly& a, std::uint64_t p) {
  if (a.size() <= 1) return true;
  FpPoly d = derivative(a, p);
  if (d.empty()) return false;
  return gcd(a, d, p).size() == 1;
}

namespace {

FpPoly pth_root(const FpPoly& a, std::uint64_t p) {
  FpPoly r;
  for (std::size_t i = 0; i < a.size(); i += p) r.push_back(a[i]);
  trim(r);
  return r;
}

void squarefree_rec(const FpPoly& f, std::uint64_t p, int mult, std::vector<std::pair<FpPoly, int>>& out) {
  if (f.size() <= 1) return;
  FpPoly c = gcd(f, derivative(f, p), p);
  FpPoly w = divmod(f, c, p).first;
  int i = 1;
  while (w.size() > 1) {
    FpPoly y = gcd(w, c, p);
    FpPoly fac = divmod(w, y, p).first;
    if (fac.size() > 1) out.emplace_back(monic(fac, p), i * mult);
    w = y;
    c = divmod(c, y, p).first;
    ++i;
  }
  if (c.size() > 1) squarefree_rec(pth_root(c, p), p, mult * static_cast<int>(p), out);
}

void equal_degree(const FpPoly& f, std::size_t d, std::uint64_t p, std::mt19937_64& rng,
                  std::vector<FpPoly>& out) {
  std::size_t n = f.size() - 1;
  if (n == d) {
    out.push_back(f);
    return;
  }
  Integer q = ipow(p, static_cast<unsigned>(d));
  Integer e = (q - 1) / 2;
  while (true) {
    FpPoly a(n);
    for (auto& c : a) c = rng() % p;
    trim(a);
    if (a.size() <= 1) continue;
    FpPoly b;
    if (p == 2) {
      FpPoly t = a, acc = a;
      for (std::size_t i = 1; i < d; ++i) {
        t = rem(mul(t, t, p), f, p);
        acc = add(acc, t, p);
      }
      b = acc;
    } else {
      b = sub(powmod(a, e, f, p), FpPoly{1}, p);
    }
    FpPoly g = gcd(f, b, p);
    if (g.size() > 1 && g.size() < f.size()) {
      equal_degree(g, d, p, rng, out);
      equal_degree(monic(divmod(f, g, p).first, p), d, p, rng, out);
      return;
    }
  }
}

bool fp_less(const FpPoly& a, const FpPoly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

}  // namespace

std::vector<std::pair<FpPoly, int>> factor(const FpPoly& a_in, std::uint64_t p) {
  FpPoly a = monic(a_in, p);
  std::vector<std::pair<FpPoly, int>> sqf;
  squarefree_rec(a, p, 1, sqf);
  std::vector<std::pair<FpPoly, int>> out;
  std::mt19937_64 rng(0x5eed + p);
  for (auto& [g, mult] : sqf) {
    FpPoly f = g;
    FpPoly h = {0, 1};
    const FpPoly x = {0, 1};
    std::size_t d = 0;
    while (f.size() > 1) {
      ++d;
      if (2 * d > f.size() - 1) {
        std::vector<FpPoly> parts;
        equal_degree(f, f.size() - 1, p, rng, parts);
        for (auto& q : parts) out.emplace_back(q, mult);
        break;
      }
      h = powmod(h, Integer(static_cast<unsigned long>(p)), f, p);
      FpPoly g2 = gcd(f, sub(h, x, p), p);
      if (g2.size() > 1) {
        std::vector<FpPoly> parts;
        equal_degree(g2, d, p, rng, parts);
        for (auto& q : parts) out.emplace_back(q, mult);
        f = monic(divmod(f, g2, p).first, p);
        h = rem(h, f, p);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (fp_less(x.first, y.first)) return true;
    if (fp_less(y.first, x.first)) return false;
    return x.second < y.second;
  });
  return out;
}

}  // namespace fppoly

}  // namespace eiscong
