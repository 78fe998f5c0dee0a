#include "eiscong/linalg.hpp"

#include <algorithm>

#include "eiscong/error.hpp"

namespace eiscong {

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows, std::size_t cols) {
  QMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
  return m;
}

QVector QMatrix::row(std::size_t i) const {
  return QVector(data_.begin() + static_cast<long>(i * cols_), data_.begin() + static_cast<long>((i + 1) * cols_));
}

void QMatrix::set_row(std::size_t i, const QVector& v) {
  if (v.size() != cols_) throw InvalidArgument("set_row: length mismatch");
  std::copy(v.begin(), v.end(), data_.begin() + static_cast<long>(i * cols_));
}

void QMatrix::append_row(const QVector& v) {
  if (rows_ == 0 && cols_ == 0) cols_ = v.size();
  if (v.size() != cols_) throw InvalidArgument("append_row: length mismatch");
  data_.insert(data_.end(), v.begin(), v.end());
  ++rows_;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool QMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return x == 0; });
}

QMatrix QMatrix::select_columns(const std::vector<std::size_t>& cols) const {
  QMatrix m(rows_, cols.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = (*this)(i, cols[j]);
  return m;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.rows_) throw InvalidArgument("matrix product: shape mismatch");
  QMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (b(k, j) != 0) c(i, j) += x * b(k, j);
      }
    }
  }
  return c;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidArgument("matrix sum: shape mismatch");
  QMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidArgument("matrix difference: shape mismatch");
  QMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

QMatrix operator*(const Rational& s, const QMatrix& a) {
  QMatrix c = a;
  for (auto& x : c.data_) x *= s;
  return c;
}

bool operator==(const QMatrix& a, const QMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

QVector vec_mat(const QVector& v, const QMatrix& a) {
  if (v.size() != a.rows()) throw InvalidArgument("vec_mat: shape mismatch");
  QVector out(a.cols());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(k, j) != 0) out[j] += v[k] * a(k, j);
    }
  }
  return out;
}

std::vector<std::size_t> rref(QMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  const std::size_t rows = a.rows(), cols = a.cols();
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (a(i, c) != 0) {
        piv = i;
        break;
      }
    }
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(piv, j), a(r, j));
    }
    Rational inv = 1 / a(r, c);
    for (std::size_t j = c; j < cols; ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = c; j < cols; ++j) {
        if (a(r, j) != 0) a(i, j) -= f * a(r, j);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  QMatrix out(r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = a(i, j);
  a = std::move(out);
  return pivots;
}

std::size_t rank(const QMatrix& a) {
  QMatrix b = a;
  return rref(b).size();
}

QMatrix right_kernel(const QMatrix& a_in) {
  QMatrix a = a_in;
  const std::size_t n = a.cols();
  auto pivots = rref(a);
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  QMatrix k(0, n);
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    QVector v(n);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a(i, free);
    k.append_row(v);
  }
  rref(k);
  return k;
}

QMatrix left_kernel(const QMatrix& a) {
  QMatrix k = right_kernel(a.transpose());
  if (k.rows() == 0) return QMatrix(0, a.rows());
  return k;
}

QMatrix inverse(const QMatrix& a) {
  if (a.rows() != a.cols()) throw InvalidArgument("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) throw InvalidArgument("inverse of a singular matrix");
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

QVector Subspace::coordinates(const QVector& v) const {
  QVector c(pivots.size());
  for (std::size_t i = 0; i < pivots.size(); ++i) c[i] = v[pivots[i]];
  return c;
}

bool Subspace::contains(const QVector& v) const {
  QVector c = coordinates(v);
  QVector back = vec_mat(c, basis);
  return back == v;
}

Subspace Subspace::from_rows(QMatrix rows) {
  Subspace s;
  s.pivots = rref(rows);
  s.basis = std::move(rows);
  return s;
}

QMatrix restrict_to(const QMatrix& a, const Subspace& w) {
  const std::size_t d = w.dimension();
  QMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    QVector img = vec_mat(w.basis.row(i), a);
    m.set_row(i, w.coordinates(img));
  }
  return m;
}

QMatrix evaluate(const QPoly& p, const QMatrix& a) {
  const std::size_t n = a.rows();
  QMatrix r(n, n);
  for (std::size_t i = p.size(); i-- > 0;) {
    r = r * a;
    for (std::size_t j = 0; j < n; ++j) r(j, j) += p[i];
  }
  return r;
}

// ---------------------------------------------------------------------------
// F_p

std::vector<std::size_t> fp_rref(FpMatrix& a, std::uint64_t p) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (a[i][c] % p != 0) {
        piv = i;
        break;
      }
    }
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    std::uint64_t inv = invmod(a[r][c], p);
    for (std::size_t j = 0; j < cols; ++j) a[r][j] = mulmod(a[r][j], inv, p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      std::uint64_t f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) {
        if (a[r][j] == 0) continue;
        std::uint64_t t = mulmod(f, a[r][j], p);
        a[i][j] = a[i][j] >= t ? a[i][j] - t : a[i][j] + p - t;
      }
    }
    pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  return pivots;
}

FpMatrix fp_right_kernel(const FpMatrix& a_in, std::size_t cols, std::uint64_t p) {
  FpMatrix a = a_in;
  auto pivots = fp_rref(a, p);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  FpMatrix k;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint64_t> v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = (p - a[i][free]) % p;
    k.push_back(v);
  }
  return k;
}

FpPoly fp_charpoly(FpMatrix h, std::uint64_t p) {
  const std::size_t n = h.size();
  auto sub = [p](std::uint64_t x, std::uint64_t y) { return x >= y ? x - y : x + p - y; };
  // reduce to upper Hessenberg form by similarity
  for (std::size_t m = 1; m + 1 < n + 1 && m < n; ++m) {
    std::size_t i = m;
    while (i < n && h[i][m - 1] == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      std::swap(h[i], h[m]);
      for (std::size_t r = 0; r < n; ++r) std::swap(h[r][i], h[r][m]);
    }
    std::uint64_t inv = invmod(h[m][m - 1], p);
    for (std::size_t r = m + 1; r < n; ++r) {
      std::uint64_t u = mulmod(h[r][m - 1], inv, p);
      if (u == 0) continue;
      for (std::size_t c = 0; c < n; ++c) h[r][c] = sub(h[r][c], mulmod(u, h[m][c], p));
      for (std::size_t c = 0; c < n; ++c) h[c][m] = (h[c][m] + mulmod(u, h[c][r], p)) % p;
    }
  }
  std::vector<FpPoly> ps(n + 1);
  ps[0] = {1};
  for (std::size_t m = 1; m <= n; ++m) {
    FpPoly lin = {(p - h[m - 1][m - 1]) % p, 1};
    FpPoly cur = fppoly::mul(lin, ps[m - 1], p);
    std::uint64_t t = 1;
    for (std::size_t i = m - 1; i >= 1; --i) {
      t = mulmod(t, h[i][i - 1], p);
      std::uint64_t coef = mulmod(h[i - 1][m - 1], t, p);
      if (coef != 0) cur = fppoly::sub(cur, fppoly::scale(ps[i - 1], coef, p), p);
    }
    ps[m] = cur;
  }
  FpPoly out = ps[n];
  out.resize(n + 1, 0);
  return out;
}

namespace {

std::uint64_t next_prime_below(std::uint64_t x) {
  do {
    --x;
  } while (!is_prime(x));
  return x;
}

}  // namespace

QPoly charpoly(const QMatrix& a) {
  if (a.rows() != a.cols()) throw InvalidArgument("charpoly of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return {Rational(1)};
  Integer den = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), a(i, j).get_den_mpz_t());
  std::vector<Integer> b(n * n);
  Integer maxabs = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      b[i * n + j] = Integer(a(i, j) * den);
      if (abs(b[i * n + j]) > maxabs) maxabs = abs(b[i * n + j]);
    }
  }
  // |coefficient of x^{n-k}| <= C(n,k) (sqrt(k) * max)^k by Hadamard.
  Integer bound = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    Integer binom, sq;
    mpz_bin_uiui(binom.get_mpz_t(), n, k);
    Integer kk(static_cast<unsigned long>(k));
    mpz_sqrt(sq.get_mpz_t(), kk.get_mpz_t());
    if (sq * sq < kk) sq += 1;
    Integer term = binom * ipow(Integer(sq * maxabs), static_cast<unsigned>(k));
    if (term > bound) bound = term;
  }
  Integer target = 2 * bound + 1;

  std::vector<Integer> coeffs(n + 1, Integer(0));
  Integer modulus = 1;
  std::uint64_t p = std::uint64_t{1} << 62;
  while (modulus <= target) {
    p = next_prime_below(p);
    FpMatrix m(n, std::vector<std::uint64_t>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m[i][j] = reduce_mod(b[i * n + j], p);
    FpPoly cp = fp_charpoly(std::move(m), p);
    Integer P(static_cast<unsigned long>(p));
    Integer minv;
    Integer mmod = modulus % P;
    mpz_invert(minv.get_mpz_t(), mmod.get_mpz_t(), P.get_mpz_t());
    for (std::size_t k = 0; k <= n; ++k) {
      // x = x + modulus * ((r - x) * modulus^{-1} mod p)
      Integer r(static_cast<unsigned long>(cp[k]));
      Integer diff = r - coeffs[k];
      Integer t;
      mpz_fdiv_r(t.get_mpz_t(), diff.get_mpz_t(), P.get_mpz_t());
      t = (t * minv) % P;
      coeffs[k] += modulus * t;
    }
    modulus *= P;
  }
  QPoly out(n + 1);
  Integer half = modulus / 2;
  for (std::size_t k = 0; k <= n; ++k) {
    if (coeffs[k] > half) coeffs[k] -= modulus;
    // coefficient of x^k of det(xI - den A) equals den^{n-k} times that of A
    Rational c(coeffs[k]);
    c /= Rational(ipow(den, static_cast<unsigned>(n - k)));
    out[k] = c;
  }
  return out;
}

// ---------------------------------------------------------------------------
// lattices

ZMatrix hnf_prime_power(const ZMatrix& gens, std::uint64_t ell, unsigned c, std::size_t n) {
  const Integer D = ipow(ell, c);
  std::vector<std::vector<Integer>> rows;
  auto reduce_row = [&](std::vector<Integer>& r) {
    bool nz = false;
    for (auto& x : r) {
      mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), D.get_mpz_t());
      if (x != 0) nz = true;
    }
    return nz;
  };
  for (const auto& g : gens) {
    if (g.size() != n) throw InvalidArgument("hnf: generator length mismatch");
    std::vector<Integer> r = g;
    if (reduce_row(r)) rows.push_back(std::move(r));
  }
  ZMatrix h(n, std::vector<Integer>(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = rows.size();
    long best_v = static_cast<long>(c);
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (rows[j][i] == 0) continue;
      long v = v_ell(rows[j][i], ell);
      if (v < best_v) {
        best_v = v;
        best = j;
      }
    }
    if (best == rows.size()) {
      h[i][i] = D;
      continue;
    }
    std::vector<Integer> r = std::move(rows[best]);
    rows.erase(rows.begin() + static_cast<long>(best));
    Integer pa = ipow(ell, static_cast<unsigned>(best_v));
    Integer unit = r[i] / pa, uinv;
    mpz_invert(uinv.get_mpz_t(), unit.get_mpz_t(), D.get_mpz_t());
    for (auto& x : r) x *= uinv;
    reduce_row(r);
    for (auto it = rows.begin(); it != rows.end();) {
      auto& s = *it;
      if (s[i] != 0) {
        Integer f = s[i] / pa;
        for (std::size_t k = 0; k < n; ++k) s[k] -= f * r[k];
      }
      if (!reduce_row(s)) {
        it = rows.erase(it);
      } else {
        ++it;
      }
    }
    if (best_v > 0) {
      std::vector<Integer> z = r;
      Integer mult = ipow(ell, c - static_cast<unsigned>(best_v));
      for (auto& x : z) x *= mult;
      if (reduce_row(z)) rows.push_back(std::move(z));
    }
    h[i] = std::move(r);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h[j][i].get_mpz_t(), h[i][i].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t k = i; k < n; ++k) h[j][k] -= q * h[i][k];
    }
  }
  return h;
}

}  // namespace eiscong
