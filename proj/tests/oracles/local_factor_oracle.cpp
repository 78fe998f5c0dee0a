#include "local_factor_oracle.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <stdexcept>

namespace oracle {

namespace {

constexpr unsigned kPrecision = 50;

using SPoly = std::vector<long>;  // mod ell, ascending
using ZP = std::vector<mpz_class>;
using QV = std::vector<mpq_class>;

long md(long a, long p) {
  a %= p;
  return a < 0 ? a + p : a;
}

void strip(SPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

long inv_mod(long a, long p) {
  for (long x = 1; x < p; ++x)
    if (md(a * x, p) == 1) return x;
  throw std::logic_error("no inverse");
}

SPoly s_mul(const SPoly& a, const SPoly& b, long p) {
  if (a.empty() || b.empty()) return {};
  SPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = md(r[i + j] + a[i] * b[j], p);
  strip(r);
  return r;
}

SPoly s_sub(SPoly a, const SPoly& b, long p) {
  a.resize(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = md(a[i] - b[i], p);
  strip(a);
  return a;
}

// quotient and remainder; b nonzero
std::pair<SPoly, SPoly> s_divmod(SPoly a, const SPoly& b, long p) {
  strip(a);
  if (a.size() < b.size()) return {{}, a};
  SPoly q(a.size() - b.size() + 1, 0);
  long li = inv_mod(b.back(), p);
  for (std::size_t i = a.size(); i-- >= b.size();) {
    long c = md(a[i] * li, p);
    q[i - b.size() + 1] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[i - b.size() + 1 + j] = md(a[i - b.size() + 1 + j] - c * b[j], p);
    if (i == b.size() - 1) break;
  }
  strip(a);
  strip(q);
  return {q, a};
}

// s, t with s a + t b = 1 for coprime a, b
std::pair<SPoly, SPoly> s_xgcd(const SPoly& a, const SPoly& b, long p) {
  SPoly r0 = a, r1 = b, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
  while (!r1.empty()) {
    auto [q, r] = s_divmod(r0, r1, p);
    SPoly s2 = s_sub(s0, s_mul(q, s1, p), p), t2 = s_sub(t0, s_mul(q, t1, p), p);
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s2;
    t0 = t1;
    t1 = t2;
  }
  if (r0.size() != 1) throw std::logic_error("not coprime");
  long c = inv_mod(r0[0], p);
  for (auto& x : s0) x = md(x * c, p);
  for (auto& x : t0) x = md(x * c, p);
  return {s0, t0};
}

long s_eval(const SPoly& a, long x, long p) {
  long r = 0;
  for (std::size_t i = a.size(); i-- > 0;) r = md(r * x + a[i], p);
  return r;
}

// Monic irreducible factors with multiplicity by trial division over every
// monic polynomial of degree 1 and 2.
std::vector<std::pair<SPoly, int>> brute_factor(SPoly a, long p) {
  std::vector<std::pair<SPoly, int>> out;
  auto pull = [&](const SPoly& h) {
    int e = 0;
    while (a.size() > 1) {
      auto [q, r] = s_divmod(a, h, p);
      if (!r.empty()) break;
      a = q;
      ++e;
    }
    if (e > 0) out.emplace_back(h, e);
  };
  for (long c = 0; c < p; ++c) pull({c, 1});
  // without roots, a cofactor of degree 2 or 3 is irreducible
  if (a.size() < 5) {
    if (a.size() > 1) out.emplace_back(a, 1);
    return out;
  }
  for (long c0 = 0; c0 < p; ++c0)
    for (long c1 = 0; c1 < p; ++c1) {
      SPoly h = {c0, c1, 1};
      bool root = false;
      for (long x = 0; x < p && !root; ++x) root = s_eval(h, x, p) == 0;
      if (!root) pull(h);
    }
  if (a.size() > 1) out.emplace_back(a, 1);
  return out;
}

ZP z_mul(const ZP& a, const ZP& b) {
  ZP r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

ZP z_from(const SPoly& a) {
  ZP r;
  for (long x : a) r.emplace_back(x);
  return r;
}

// Monic G with G = g (mod ell) dividing m in Z_ell[x] to precision ell^50.
ZP hensel_lift(const std::vector<long>& m, const SPoly& g, const SPoly& h, long p) {
  auto [s, t] = s_xgcd(g, h, p);
  ZP G = z_from(g), H = z_from(h), M;
  for (long c : m) M.emplace_back(c);
  mpz_class pk = p;
  for (unsigned k = 1; k < kPrecision; ++k) {
    ZP gh = z_mul(G, H);
    SPoly E(M.size(), 0);
    for (std::size_t i = 0; i < M.size(); ++i) {
      mpz_class d = M[i] - (i < gh.size() ? gh[i] : mpz_class(0));
      if (d % pk != 0) throw std::logic_error("hensel invariant broken");
      mpz_class q = d / pk;
      E[i] = md(mpz_class(q % p).get_si(), p);
    }
    strip(E);
    SPoly dG = s_divmod(s_mul(t, E, p), g, p).second;
    SPoly dH = s_divmod(s_sub(E, s_mul(dG, h, p), p), g, p).first;
    for (std::size_t i = 0; i < dG.size(); ++i) G[i] += pk * dG[i];
    for (std::size_t i = 0; i < dH.size(); ++i) H[i] += pk * dH[i];
    pk *= p;
  }
  for (auto& c : G) c %= pk;
  return G;
}

// Laplace expansion along the first row, reduced mod M.
mpz_class det(const std::vector<ZP>& a, const mpz_class& M) {
  const std::size_t k = a.size();
  if (k == 1) return a[0][0];
  mpz_class r = 0;
  for (std::size_t j = 0; j < k; ++j) {
    if (a[0][j] == 0) continue;
    std::vector<ZP> minor(k - 1);
    for (std::size_t i = 1; i < k; ++i)
      for (std::size_t c = 0; c < k; ++c)
        if (c != j) minor[i - 1].push_back(a[i][c]);
    mpz_class term = a[0][j] * det(minor, M);
    if (j % 2) {
      r -= term;
    } else {
      r += term;
    }
  }
  return r % M;
}

// ---------------------------------------------------------------------------
// Arithmetic in Q[x]/(G), G monic of degree n.

struct Alg {
  ZP G;
  std::size_t n;
  long p;

  QV mul(const QV& a, const QV& b) const {
    QV r(2 * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) r[i + j] += a[i] * b[j];
    }
    for (std::size_t i = 2 * n; i-- > n;) {
      if (r[i] == 0) continue;
      mpq_class c = r[i];
      for (std::size_t j = 0; j <= n; ++j) r[i - n + j] -= c * G[j];
    }
    r.resize(n);
    return r;
  }

  // y is integral iff, writing y = Y/d with Y in Z[x] and v_ell(d) = t, every
  // coefficient c_k of the characteristic polynomial of Y has v_ell(c_k) >= t k.
  // c_k is a signed sum of k x k principal minors, so it suffices to work
  // modulo ell^(t n + 1).
  bool integral(const QV& y) const {
    mpz_class d = 1;
    for (const auto& c : y) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.get_den().get_mpz_t());
    long t = 0;
    for (mpz_class u = d; u % p == 0; u /= p) ++t;
    mpz_class M = 1;
    for (long i = 0; i < t * static_cast<long>(n) + 1; ++i) M *= p;
    ZP Y;
    for (const auto& c : y) Y.emplace_back(mpz_class(c * d));
    std::vector<ZP> A(n, ZP(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) A[i][j] = Y[j] % M;
      // Y <- x * Y mod G
      mpz_class top = Y[n - 1];
      for (std::size_t j = n - 1; j > 0; --j) Y[j] = Y[j - 1] - top * G[j];
      Y[0] = -top * G[0];
      for (auto& c : Y) c %= M;
    }
    for (std::size_t k = 1; k <= n; ++k) {
      mpz_class ck = 0;
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
          if (mask >> i & 1) idx.push_back(i);
        std::vector<ZP> sub(k, ZP(k));
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = 0; b < k; ++b) sub[a][b] = A[idx[a]][idx[b]];
        ck += det(sub, M);
      }
      ck %= M;
      long v = 0;
      if (ck == 0) continue;
      for (mpz_class u = ck; u % p == 0; u /= p) ++v;
      if (v < t * static_cast<long>(k)) return false;
    }
    return true;
  }
};

std::vector<QV> inverse(std::vector<QV> a) {
  const std::size_t n = a.size();
  std::vector<QV> inv(n, QV(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t r = c;
    while (a[r][c] == 0) ++r;
    std::swap(a[r], a[c]);
    std::swap(inv[r], inv[c]);
    mpq_class piv = a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] /= piv;
      inv[c][j] /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      mpq_class f = a[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

QV vecmat(const QV& v, const std::vector<QV>& m) {
  QV r(m[0].size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < r.size(); ++j) r[j] += v[i] * m[i][j];
  }
  return r;
}

long vp(const mpq_class& x, long p) {
  if (x == 0) return 1 << 20;
  long v = 0;
  mpz_class a = x.get_num(), b = x.get_den();
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  while (b % p == 0) {
    b /= p;
    --v;
  }
  return v;
}

// Z_(ell)-echelon basis of the module spanned by gens (assumed full rank).
std::vector<QV> echelon(std::vector<QV> gens, long p) {
  const std::size_t n = gens[0].size();
  std::vector<QV> out;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = gens.size();
    long bv = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (gens[i][c] == 0) continue;
      long v = vp(gens[i][c], p);
      if (best == gens.size() || v < bv) {
        best = i;
        bv = v;
      }
    }
    if (best == gens.size()) throw std::logic_error("lattice is not full rank");
    QV piv = gens[best];
    gens.erase(gens.begin() + static_cast<long>(best));
    for (auto& g : gens) {
      if (g[c] == 0) continue;
      mpq_class f = g[c] / piv[c];
      for (std::size_t j = 0; j < n; ++j) g[j] -= f * piv[j];
    }
    out.push_back(piv);
  }
  return out;
}

long reduce(const mpq_class& x, long p) {
  if (x.get_den() % p == 0) throw std::logic_error("structure constant not integral");
  long a = md(mpz_class(x.get_num() % p).get_si(), p);
  long b = md(mpz_class(x.get_den() % p).get_si(), p);
  return md(a * inv_mod(b, p), p);
}

struct Residue {
  std::size_t n;
  long p;
  std::vector<std::vector<std::vector<long>>> T;  // T[i][j] = w_i w_j

  std::vector<long> mul(const std::vector<long>& a, const std::vector<long>& b) const {
    std::vector<long> r(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (b[j] == 0) continue;
        long c = a[i] * b[j];
        for (std::size_t k = 0; k < n; ++k) r[k] += c * T[i][j][k];
      }
    }
    for (auto& x : r) x %= p;
    return r;
  }
  bool nilpotent(const std::vector<long>& a) const {
    std::vector<long> x = a;
    for (std::size_t k = 1; k < n; ++k) x = mul(x, a);
    return std::all_of(x.begin(), x.end(), [](long c) { return c == 0; });
  }
};

Residue residue_ring(const Alg& K, const std::vector<QV>& B, bool power_basis) {
  Residue R{K.n, K.p, {}};
  if (power_basis) {
    // x^(i+j) mod (G mod ell)
    std::vector<std::vector<long>> pw;
    std::vector<long> cur(K.n, 0);
    cur[0] = 1;
    for (std::size_t k = 0; k < 2 * K.n - 1; ++k) {
      pw.push_back(cur);
      long top = cur[K.n - 1];
      for (std::size_t j = K.n - 1; j > 0; --j) cur[j] = md(cur[j - 1] - top * mpz_class(K.G[j] % K.p).get_si(), K.p);
      cur[0] = md(-top * mpz_class(K.G[0] % K.p).get_si(), K.p);
    }
    R.T.assign(K.n, std::vector<std::vector<long>>(K.n));
    for (std::size_t i = 0; i < K.n; ++i)
      for (std::size_t j = 0; j < K.n; ++j) R.T[i][j] = pw[i + j];
    return R;
  }
  std::vector<QV> Binv = inverse(B);
  R.T.assign(K.n, std::vector<std::vector<long>>(K.n));
  for (std::size_t i = 0; i < K.n; ++i)
    for (std::size_t j = 0; j < K.n; ++j) {
      QV c = vecmat(K.mul(B[i], B[j]), Binv);
      for (const auto& x : c) R.T[i][j].push_back(reduce(x, K.p));
    }
  return R;
}

// Calls fn on every vector in [0, p)^n.
template <class Fn>
void for_all(std::size_t n, long p, Fn fn) {
  std::vector<long> x(n, 0);
  while (true) {
    fn(x);
    std::size_t i = 0;
    while (i < n && ++x[i] == p) x[i++] = 0;
    if (i == n) return;
  }
}

std::vector<std::pair<int, int>> shape_of_factor(const ZP& G, long p) {
  const std::size_t n = G.size() - 1;
  Alg K{G, n, p};
  std::vector<QV> B(n, QV(n, 0));
  for (std::size_t i = 0; i < n; ++i) B[i][i] = 1;
  bool power_basis = true;
  while (true) {
    Residue R = residue_ring(K, B, power_basis);
    QV found;
    for_all(n, p, [&](const std::vector<long>& x) {
      if (!found.empty()) return;
      auto nz = std::find_if(x.begin(), x.end(), [](long c) { return c != 0; });
      if (nz == x.end() || *nz != 1 || !R.nilpotent(x)) return;
      QV y(n, 0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) y[j] += mpq_class(x[i], p) * B[i][j];
      if (K.integral(y)) found = y;
    });
    if (found.empty()) break;
    std::vector<QV> gens;
    QV ypow(n, 0);
    ypow[0] = 1;
    for (std::size_t k = 0; k < n; ++k) {
      for (const auto& b : B) gens.push_back(K.mul(ypow, b));
      ypow = K.mul(ypow, found);
    }
    B = echelon(gens, p);
    power_basis = false;
  }
  Residue R = residue_ring(K, B, power_basis);
  std::vector<std::vector<long>> idem;
  for_all(n, p, [&](const std::vector<long>& x) {
    if (std::all_of(x.begin(), x.end(), [](long c) { return c == 0; })) return;
    if (R.mul(x, x) == x) idem.push_back(x);
  });
  std::vector<std::pair<int, int>> out;
  for (const auto& e : idem) {
    bool primitive = true;
    for (const auto& e2 : idem) {
      if (e2 == e) continue;
      std::vector<long> pr = R.mul(e, e2);
      if (pr == e2) primitive = false;
    }
    if (!primitive) continue;
    long size = 0, nil = 0;
    for_all(n, p, [&](const std::vector<long>& z) {
      if (R.mul(e, z) != z) return;
      ++size;
      if (R.nilpotent(z)) ++nil;
    });
    int a = 0, b = 0;
    for (long s = size; s > 1; s /= p) ++a;
    for (long s = nil; s > 1; s /= p) ++b;
    int f = a - b;
    out.emplace_back(a / f, f);
  }
  return out;
}

}  // namespace

std::vector<std::pair<int, int>> local_shape(const std::vector<long>& m, unsigned ell) {
  const long p = ell;
  SPoly mbar;
  for (long c : m) mbar.push_back(md(c, p));
  strip(mbar);
  std::vector<std::pair<int, int>> out;
  auto facs = brute_factor(mbar, p);
  for (const auto& [h, a] : facs) {
    const int dh = static_cast<int>(h.size()) - 1;
    if (a == 1) {
      out.emplace_back(1, dh);
      continue;
    }
    SPoly g = {1};
    for (int i = 0; i < a; ++i) g = s_mul(g, h, p);
    SPoly rest = s_divmod(mbar, g, p).first;
    ZP G;
    if (rest.size() == 1) {
      for (long c : m) G.emplace_back(c);
    } else {
      G = hensel_lift(m, g, rest, p);
    }
    for (auto s : shape_of_factor(G, p)) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle
