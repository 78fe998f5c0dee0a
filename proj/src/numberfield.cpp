#include "eiscong/numberfield.hpp"

#include <algorithm>
#include <json.hpp>

#include "eiscong/error.hpp"

namespace eiscong {

bool dedekind_from_factors(const ZPoly& m, std::uint64_t ell, const std::vector<std::pair<FpPoly, int>>& facs);

namespace {

using FpVec = std::vector<std::uint64_t>;

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a >= b ? a - b : a + p - b; }

std::uint64_t reduce_q(const Rational& x, std::uint64_t p) {
  std::uint64_t den = reduce_mod(x.get_den(), p);
  if (den == 0) throw Error("coordinate is not ell-integral");
  return mulmod(reduce_mod(x.get_num(), p), invmod(den, p), p);
}

FpMatrix transpose(const FpMatrix& a, std::size_t cols) {
  FpMatrix t(cols, FpVec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = a[i][j];
  return t;
}

// Basis of {x : x * A = 0} for an r x c matrix A.
FpMatrix fp_left_kernel(const FpMatrix& a, std::size_t rows, std::size_t cols, std::uint64_t p) {
  if (cols == 0) {
    FpMatrix id(rows, FpVec(rows, 0));
    for (std::size_t i = 0; i < rows; ++i) id[i][i] = 1;
    return id;
  }
  return fp_right_kernel(transpose(a, cols), rows, p);
}

FpMatrix fp_matmul(const FpMatrix& a, const FpMatrix& b, std::uint64_t p) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size();
  FpMatrix c(n, FpVec(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] = (c[i][j] + mulmod(a[i][k], b[k][j], p)) % p;
    }
  return c;
}

ZMatrix lift_rows(const FpMatrix& a) {
  ZMatrix z;
  for (const auto& r : a) {
    std::vector<Integer> v;
    for (auto x : r) v.emplace_back(static_cast<unsigned long>(x));
    z.push_back(std::move(v));
  }
  return z;
}

QMatrix to_qmatrix(const ZMatrix& z, std::size_t n) {
  QMatrix q(z.size(), n);
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) q(i, j) = z[i][j];
  return q;
}

// O / ell O with structure constants reduced mod ell.
struct FpAlgebra {
  std::uint64_t p;
  std::size_t n;
  std::vector<FpMatrix> mult;
  FpVec unit;

  FpAlgebra(const LocalOrder& o, std::uint64_t ell) : p(ell), n(o.basis.rows()) {
    for (std::size_t j = 0; j < n; ++j) unit.push_back(reduce_q(o.basis_inverse(0, j), p));
    for (const auto& m : o.mult) {
      FpMatrix r(n, FpVec(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r[i][j] = reduce_q(m(i, j), p);
      mult.push_back(std::move(r));
    }
  }

  FpVec basis_vec(std::size_t i) const {
    FpVec v(n, 0);
    v[i] = 1;
    return v;
  }
  FpVec one() const { return unit; }
  FpVec mul(const FpVec& a, const FpVec& b) const {
    FpVec r(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (b[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (a[j] == 0) continue;
        std::uint64_t c = mulmod(b[i], a[j], p);
        for (std::size_t k = 0; k < n; ++k) r[k] = (r[k] + mulmod(c, mult[i][j][k], p)) % p;
      }
    }
    return r;
  }
  FpVec pow(FpVec a, Integer e) const {
    FpVec r = one();
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) r = mul(r, a);
      a = mul(a, a);
      e /= 2;
    }
    return r;
  }
  FpVec add(const FpVec& a, const FpVec& b) const {
    FpVec r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = (a[i] + b[i]) % p;
    return r;
  }
  FpVec scale(const FpVec& a, std::uint64_t s) const {
    FpVec r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = mulmod(a[i], s, p);
    return r;
  }
  bool is_zero(const FpVec& a) const {
    return std::all_of(a.begin(), a.end(), [](std::uint64_t x) { return x == 0; });
  }
  // Rows: images of the basis under x -> x^ell.
  FpMatrix frobenius() const {
    FpMatrix f;
    for (std::size_t i = 0; i < n; ++i) f.push_back(pow(basis_vec(i), Integer(static_cast<unsigned long>(p))));
    return f;
  }
  FpMatrix radical() const {
    FpMatrix f = frobenius();
    FpMatrix fj = f;
    Integer q = p;
    while (q < static_cast<unsigned long>(n)) {
      fj = fp_matmul(fj, f, p);
      q *= static_cast<unsigned long>(p);
    }
    return fp_left_kernel(fj, n, n, p);
  }
  std::size_t rank_of(FpMatrix rows) const {
    if (rows.empty()) return 0;
    return fp_rref(rows, p).size();
  }
};

QPoly reduce_mod_monic(QPoly a, const ZPoly& m) {
  const std::size_t d = m.size() - 1;
  for (std::size_t i = a.size(); i-- > d;) {
    if (a[i] == 0) continue;
    Rational c = a[i];
    for (std::size_t j = 0; j <= d; ++j) a[i - d + j] -= c * m[j];
  }
  if (a.size() > d) a.resize(d);
  a.resize(d, Rational(0));
  return a;
}

// The equation order gets no tables unless asked for: its multiplication
// matrices come straight from the field.
std::shared_ptr<LocalOrder> build_order(const NumberField& K, std::uint64_t ell, const QMatrix& basis,
                                        bool with_tables = true) {
  auto o = std::make_shared<LocalOrder>();
  o->ell = ell;
  o->basis = basis;
  if (basis == QMatrix::identity(basis.rows())) {
    o->basis_inverse = basis;
    if (!with_tables) return o;
    FieldElement ti = K.one();
    for (std::size_t i = 0; i < basis.rows(); ++i) {
      o->mult.push_back(K.multiplication_matrix(ti));
      ti = K.mul(ti, K.generator());
    }
    return o;
  }
  o->basis_inverse = inverse(basis);
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    QMatrix mw = K.multiplication_matrix(K.from_coords(basis.row(i)));
    o->mult.push_back(basis * mw * o->basis_inverse);
  }
  return o;
}

std::vector<Integer> vec_times_mult(const NumberField& K, const std::vector<Integer>& u, const std::vector<Integer>& v,
                                    const LocalOrder& o) {
  const std::size_t n = u.size();
  std::vector<Rational> acc(n, Rational(0));
  if (o.mult.empty()) {
    QVector a(u.begin(), u.end()), b(v.begin(), v.end());
    acc = K.mul(K.from_coords(a), K.from_coords(b)).coords;
  }
  for (std::size_t i = 0; i < n && !o.mult.empty(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (u[j] == 0) continue;
      Rational c = v[i] * u[j];
      for (std::size_t k = 0; k < n; ++k) acc[k] += c * o.mult[i](j, k);
    }
  }
  std::vector<Integer> r(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (acc[k].get_den() != 1) throw Error("order is not closed under multiplication");
    r[k] = acc[k].get_num();
  }
  return r;
}

bool generator_less(const PrimeIdealData& a, const PrimeIdealData& b) {
  if (a.e != b.e) return a.e < b.e;
  if (a.f != b.f) return a.f < b.f;
  if (!a.generator_poly.empty() && !b.generator_poly.empty()) {
    // compare from the leading coefficient down
    if (a.generator_poly.size() != b.generator_poly.size()) return a.generator_poly.size() < b.generator_poly.size();
    return std::lexicographical_compare(a.generator_poly.rbegin(), a.generator_poly.rend(), b.generator_poly.rbegin(),
                                        b.generator_poly.rend());
  }
  for (std::size_t i = 0; i < a.basis.size(); ++i) {
    if (a.basis[i] != b.basis[i]) return a.basis[i] < b.basis[i];
  }
  return false;
}

std::vector<PrimeIdealData> factor_kummer_dedekind(const NumberField& K, std::uint64_t ell,
                                                   const std::shared_ptr<const LocalOrder>& o) {
  const std::size_t n = static_cast<std::size_t>(K.degree());
  FpPoly mbar = fppoly::reduce(K.min_poly(), ell);
  std::vector<PrimeIdealData> out;
  for (const auto& [g, mult] : o->residue_factors) {
    PrimeIdealData P;
    P.ell = ell;
    P.e = mult;
    P.f = static_cast<int>(g.size()) - 1;
    P.generator_poly = fppoly::lift(g);
    P.order = o;
    ZMatrix gens;
    FpPoly shifted = g;
    for (std::size_t j = 0; j < n; ++j) {
      FpPoly r = fppoly::rem(shifted, mbar, ell);
      r.resize(n, 0);
      gens.push_back(lift_rows({r})[0]);
      shifted.insert(shifted.begin(), 0);
    }
    P.basis = hnf_prime_power(gens, ell, 1, n);
    FpPoly cof = fppoly::divmod(mbar, g, ell).first;
    P.beta = K.from_poly(qpoly::from_z(fppoly::lift(cof)));
    out.push_back(std::move(P));
  }
  return out;
}

std::vector<PrimeIdealData> factor_general(const NumberField& K, std::uint64_t ell,
                                           const std::shared_ptr<const LocalOrder>& o) {
  const std::size_t n = static_cast<std::size_t>(K.degree());
  FpAlgebra A(*o, ell);
  FpMatrix rad = A.radical();

  // Berlekamp subalgebra {x : x^ell = x}, spanned by the primitive idempotents
  FpMatrix fr = A.frobenius();
  for (std::size_t i = 0; i < n; ++i) fr[i][i] = sub_mod(fr[i][i], 1, ell);
  FpMatrix berl = fp_left_kernel(fr, n, n, ell);

  std::vector<FpVec> idem = {A.one()};
  for (const auto& b : berl) {
    if (idem.size() == berl.size()) break;
    // minimal polynomial of b by Krylov iteration
    std::vector<FpVec> pows = {A.one()};
    FpPoly minpoly;
    while (true) {
      FpVec next = A.mul(pows.back(), b);
      FpMatrix sys;
      for (const auto& v : pows) sys.push_back(v);
      sys.push_back(next);
      FpMatrix ker = fp_left_kernel(sys, sys.size(), n, ell);
      if (!ker.empty()) {
        minpoly = fppoly::monic(ker[0], ell);
        fppoly::trim(minpoly);
        break;
      }
      pows.push_back(next);
    }
    if (minpoly.size() <= 2) continue;
    std::vector<std::uint64_t> roots;
    for (const auto& [fac, e] : fppoly::factor(minpoly, ell)) {
      (void)e;
      roots.push_back((ell - fac[0]) % ell);
    }
    std::vector<FpVec> refined;
    for (const auto& eps : idem) {
      for (std::uint64_t c : roots) {
        FpVec lag = eps;
        for (std::uint64_t c2 : roots) {
          if (c2 == c) continue;
          FpVec t = A.add(b, A.scale(A.one(), (ell - c2) % ell));
          lag = A.mul(lag, A.scale(t, invmod(sub_mod(c, c2, ell), ell)));
        }
        if (!A.is_zero(lag)) refined.push_back(lag);
      }
    }
    idem = std::move(refined);
  }
  if (idem.size() != berl.size()) throw Error("idempotent splitting failed");

  std::vector<PrimeIdealData> out;
  for (const auto& eps : idem) {
    FpMatrix lam = rad;
    FpVec one_minus = A.one();
    for (std::size_t i = 0; i < n; ++i) one_minus[i] = sub_mod(one_minus[i], eps[i], ell);
    FpMatrix epsA;
    for (std::size_t i = 0; i < n; ++i) {
      lam.push_back(A.mul(one_minus, A.basis_vec(i)));
      epsA.push_back(A.mul(eps, A.basis_vec(i)));
    }
    fp_rref(lam, ell);
    const std::size_t dim_lam = lam.size();
    const std::size_t dim_eps = A.rank_of(epsA);
    PrimeIdealData P;
    P.ell = ell;
    P.f = static_cast<int>(n - dim_lam);
    if (P.f == 0 || dim_eps % static_cast<std::size_t>(P.f) != 0) throw Error("inconsistent residue data");
    P.e = static_cast<int>(dim_eps) / P.f;
    P.order = o;
    P.basis = hnf_prime_power(lift_rows(lam), ell, 1, n);
    // annihilator of lam in A
    FpMatrix phi(n, FpVec());
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& v : lam) {
        FpVec w = A.mul(A.basis_vec(i), v);
        phi[i].insert(phi[i].end(), w.begin(), w.end());
      }
    }
    FpMatrix ann = fp_left_kernel(phi, n, n * lam.size(), ell);
    if (ann.empty()) throw Error("empty annihilator");
    QVector bc;
    for (auto x : ann[0]) bc.emplace_back(static_cast<unsigned long>(x));
    P.beta = K.from_coords(o->to_power(bc));
    out.push_back(std::move(P));
  }
  return out;
}

Rational pow_ell(std::uint64_t ell, long s) {
  if (s >= 0) return Rational(ipow(ell, static_cast<unsigned>(s)));
  return Rational(Integer(1), ipow(ell, static_cast<unsigned>(-s)));
}

}  // namespace

bool FieldElement::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const Rational& x) { return x == 0; });
}

bool IdealResidue::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const Integer& x) { return x == 0; });
}

NumberField::NumberField(ZPoly min_poly) : min_poly_(std::move(min_poly)), cache_(std::make_shared<Cache>()) {
  poly::trim(min_poly_);
  if (min_poly_.size() < 2 || !zpoly::is_monic(min_poly_)) throw InvalidArgument("minimal polynomial must be monic of degree >= 1");
  if (!zpoly::is_irreducible(min_poly_)) throw InvalidArgument("minimal polynomial must be irreducible");
  degree_ = static_cast<int>(min_poly_.size()) - 1;
  discriminant_ = zpoly::discriminant(min_poly_);
}

FieldElement NumberField::zero() const { return {QVector(static_cast<std::size_t>(degree_), Rational(0))}; }

FieldElement NumberField::one() const { return from_rational(1); }

FieldElement NumberField::generator() const { return from_poly({Rational(0), Rational(1)}); }

FieldElement NumberField::from_rational(const Rational& a) const {
  FieldElement x = zero();
  x.coords[0] = a;
  return x;
}

FieldElement NumberField::from_coords(QVector coords) const {
  if (coords.size() != static_cast<std::size_t>(degree_)) throw InvalidArgument("coordinate vector has the wrong length");
  return {std::move(coords)};
}

FieldElement NumberField::from_poly(const QPoly& p) const { return {reduce_mod_monic(p, min_poly_)}; }

FieldElement NumberField::add(const FieldElement& a, const FieldElement& b) const {
  FieldElement r = a;
  for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += b.coords[i];
  return r;
}

FieldElement NumberField::sub(const FieldElement& a, const FieldElement& b) const {
  FieldElement r = a;
  for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] -= b.coords[i];
  return r;
}

FieldElement NumberField::neg(const FieldElement& a) const { return scale(a, -1); }

FieldElement NumberField::scale(const FieldElement& a, const Rational& s) const {
  FieldElement r = a;
  for (auto& c : r.coords) c *= s;
  return r;
}

FieldElement NumberField::mul(const FieldElement& a, const FieldElement& b) const {
  const std::size_t d = static_cast<std::size_t>(degree_);
  QPoly prod(2 * d - 1, Rational(0));
  for (std::size_t i = 0; i < d; ++i) {
    if (a.coords[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) prod[i + j] += a.coords[i] * b.coords[j];
  }
  return {reduce_mod_monic(std::move(prod), min_poly_)};
}

FieldElement NumberField::inverse(const FieldElement& a) const {
  if (a.is_zero()) throw InvalidArgument("inverse of zero");
  return {eiscong::inverse(multiplication_matrix(a)).row(0)};
}

QMatrix NumberField::multiplication_matrix(const FieldElement& a) const {
  const std::size_t d = static_cast<std::size_t>(degree_);
  QMatrix m(d, d);
  QVector cur = a.coords;
  for (std::size_t i = 0; i < d; ++i) {
    m.set_row(i, cur);
    QPoly shifted(d + 1, Rational(0));
    for (std::size_t j = 0; j < d; ++j) shifted[j + 1] = cur[j];
    cur = reduce_mod_monic(std::move(shifted), min_poly_);
  }
  return m;
}

QPoly NumberField::charpoly(const FieldElement& a) const { return eiscong::charpoly(multiplication_matrix(a)); }

Rational NumberField::norm(const FieldElement& a) const {
  QPoly c = charpoly(a);
  return degree_ % 2 == 0 ? c[0] : Rational(-c[0]);
}

Rational NumberField::trace(const FieldElement& a) const {
  QMatrix m = multiplication_matrix(a);
  Rational t = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

bool NumberField::is_integral(const FieldElement& a) const {
  for (const auto& c : charpoly(a))
    if (c.get_den() != 1) return false;
  return true;
}

std::string NumberField::to_string(const FieldElement& a, const std::string& var) const {
  QPoly p = a.coords;
  poly::trim(p);
  return qpoly::to_string(p, var);
}

std::shared_ptr<const LocalOrder> NumberField::ell_maximal_order(std::uint64_t ell) const {
  if (!is_prime(ell)) throw InvalidArgument("ell must be prime");
  return ell_maximal_order(ell, static_cast<unsigned>(2 * v_ell(discriminant_, ell)));
}

std::shared_ptr<const LocalOrder> NumberField::ell_maximal_order(std::uint64_t ell, unsigned cap) const {
  if (!is_prime(ell)) throw InvalidArgument("ell must be prime");
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->orders.find(ell);
    if (it != cache_->orders.end()) return it->second;
  }
  const std::size_t n = static_cast<std::size_t>(degree_);
  QMatrix basis = QMatrix::identity(n);
  auto facs = fppoly::factor(fppoly::reduce(min_poly_, ell), ell);
  const bool maximal = dedekind_from_factors(min_poly_, ell, facs);
  auto o = build_order(*this, ell, basis, !maximal);
  o->residue_factors = facs;
  if (!maximal) {
    o->equation_order = false;
    unsigned steps = 0;
    while (true) {
      FpAlgebra A(*o, ell);
      ZMatrix I = hnf_prime_power(lift_rows(A.radical()), ell, 1, n);
      QMatrix Iq = to_qmatrix(I, n);
      QMatrix Iinv = eiscong::inverse(Iq);
      // kernel of O/ell O -> End(I / ell I)
      FpMatrix phi(n, FpVec());
      for (std::size_t i = 0; i < n; ++i) {
        QMatrix img = Iq * o->mult[i] * Iinv;
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < n; ++c) phi[i].push_back(reduce_q(img(r, c), ell));
      }
      FpMatrix ker = fp_left_kernel(phi, n, n * n, ell);
      if (ker.empty()) break;
      if (steps >= cap) throw IndexDivisorUnsupported("ell-maximal order not reached within " + std::to_string(cap) + " steps");
      ++steps;
      ZMatrix U = hnf_prime_power(lift_rows(ker), ell, 1, n);
      QMatrix next = Rational(Integer(1), Integer(static_cast<unsigned long>(ell))) * (to_qmatrix(U, n) * o->basis);
      auto o2 = build_order(*this, ell, next);
      o2->equation_order = false;
      o2->enlargements = steps;
      o = o2;
    }
  }
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto [it, inserted] = cache_->orders.emplace(ell, o);
  (void)inserted;
  return it->second;
}

bool dedekind_maximal(const ZPoly& m, std::uint64_t ell) {
  FpPoly mbar = fppoly::reduce(m, ell);
  return dedekind_from_factors(m, ell, fppoly::factor(mbar, ell));
}

bool dedekind_from_factors(const ZPoly& m, std::uint64_t ell, const std::vector<std::pair<FpPoly, int>>& facs) {
  FpPoly mbar = fppoly::reduce(m, ell);
  FpPoly g = {1};
  for (const auto& [h, e] : facs) {
    (void)e;
    g = fppoly::mul(g, h, ell);
  }
  FpPoly hbar = fppoly::divmod(mbar, g, ell).first;
  ZPoly diff = poly::sub(poly::mul(fppoly::lift(g), fppoly::lift(hbar)), m);
  Integer L = static_cast<unsigned long>(ell);
  for (auto& c : diff) c /= L;  // exact: G H = m mod ell
  FpPoly F = fppoly::reduce(diff, ell);
  FpPoly d = fppoly::gcd(fppoly::gcd(F, g, ell), hbar, ell);
  return d.size() == 1;
}

std::vector<PrimeIdealData> factor_prime(const NumberField& K, std::uint64_t ell) {
  if (!is_prime(ell)) throw InvalidArgument("ell must be prime");
  return factor_prime(K, ell, static_cast<unsigned>(2 * v_ell(K.discriminant(), ell)));
}

std::vector<PrimeIdealData> factor_prime(const NumberField& K, std::uint64_t ell, unsigned cap) {
  auto o = K.ell_maximal_order(ell, cap);
  std::vector<PrimeIdealData> out = o->equation_order ? factor_kummer_dedekind(K, ell, o) : factor_general(K, ell, o);
  int total = 0;
  for (const auto& P : out) total += P.e * P.f;
  if (total != K.degree()) throw Error("sum of e*f differs from the degree");
  std::sort(out.begin(), out.end(), generator_less);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].label = static_cast<int>(i) + 1;
  return out;
}

Valuation ord_lambda(const NumberField& K, const FieldElement& x, const PrimeIdealData& lambda) {
  if (x.is_zero()) return Valuation::infinity();
  const std::uint64_t ell = lambda.ell;
  const bool eq = lambda.order->equation_order;
  QVector c = eq ? x.coords : lambda.order->to_order(x.coords);
  long s = 0;
  bool first = true;
  for (const auto& a : c) {
    if (a == 0) continue;
    long v = v_ell(a, ell).value();
    if (first || v < s) s = v;
    first = false;
  }
  FieldElement cur = K.scale(x, pow_ell(ell, -s));
  long v = lambda.e * s;
  const Rational inv_ell(Integer(1), Integer(static_cast<unsigned long>(ell)));
  while (true) {
    FieldElement y = K.mul(cur, lambda.beta);
    QVector yc = eq ? y.coords : lambda.order->to_order(y.coords);
    bool divisible = std::all_of(yc.begin(), yc.end(), [&](const Rational& a) { return v_ell(a, ell) >= Valuation(1); });
    if (!divisible) break;
    cur = K.scale(y, inv_ell);
    ++v;
  }
  return Valuation(v);
}

IdealResidue reduce_mod_ideal_power(const NumberField& K, const FieldElement& x, const PrimeIdealData& lambda,
                                    unsigned r) {
  if (r == 0) throw InvalidArgument("reduce_mod_ideal_power needs r >= 1");
  const std::size_t n = static_cast<std::size_t>(K.degree());
  const std::uint64_t ell = lambda.ell;
  const unsigned c = (r + static_cast<unsigned>(lambda.e) - 1) / static_cast<unsigned>(lambda.e);
  const Integer D = ipow(ell, c);
  ZMatrix P = hnf_prime_power(lambda.basis, ell, c, n);
  for (unsigned j = 2; j <= r; ++j) {
    ZMatrix gens;
    for (const auto& u : P)
      for (const auto& v : lambda.basis) gens.push_back(vec_times_mult(K, u, v, *lambda.order));
    P = hnf_prime_power(gens, ell, c, n);
  }
  QVector q = lambda.order->to_order(x.coords);
  std::vector<Integer> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    Integer den = q[i].get_den(), inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), D.get_mpz_t()) == 0)
      throw InvalidArgument("reduce_mod_ideal_power needs an ell-integral element");
    z[i] = q[i].get_num() * inv;
    mpz_fdiv_r(z[i].get_mpz_t(), z[i].get_mpz_t(), D.get_mpz_t());
  }
  for (std::size_t i = 0; i < n; ++i) {
    Integer t;
    mpz_fdiv_q(t.get_mpz_t(), z[i].get_mpz_t(), P[i][i].get_mpz_t());
    if (t == 0) continue;
    for (std::size_t k = i; k < n; ++k) z[k] -= t * P[i][k];
  }
  return {z};
}

PrimeIdealData prime_ideal_from_json(const NumberField& K, const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("ideal data: ") + e.what());
  }
  if (!j.is_object() || !j.contains("ell") || !j.contains("e") || !j.contains("f") || !j.contains("generator_poly") ||
      !j["ell"].is_number_unsigned() || !j["e"].is_number_integer() || !j["f"].is_number_integer() ||
      !j["generator_poly"].is_array())
    throw SchemaError("ideal data needs ell, e, f and generator_poly");
  PrimeIdealData P;
  P.ell = j["ell"].get<std::uint64_t>();
  P.e = j["e"].get<int>();
  P.f = j["f"].get<int>();
  if (!is_prime(P.ell) || P.e < 1 || P.f < 1) throw SchemaError("ideal data: bad ell, e or f");
  ZPoly g;
  for (const auto& c : j["generator_poly"]) {
    if (c.is_number_integer()) {
      g.emplace_back(c.get<long>());
    } else if (c.is_string()) {
      g.emplace_back(c.get<std::string>());
    } else {
      throw SchemaError("ideal data: generator coefficients must be integers");
    }
  }
  const std::size_t n = static_cast<std::size_t>(K.degree());
  FpPoly mbar = fppoly::reduce(K.min_poly(), P.ell);
  FpPoly gbar = fppoly::monic(fppoly::reduce(g, P.ell), P.ell);
  if (gbar.size() != static_cast<std::size_t>(P.f) + 1 || !fppoly::rem(mbar, gbar, P.ell).empty())
    throw SchemaError("ideal data: generator does not give a residue ring of size ell^f");
  auto fac = fppoly::factor(gbar, P.ell);
  if (fac.size() != 1 || fac[0].second != 1) throw SchemaError("ideal data: generator is not irreducible mod ell");
  QMatrix basis = QMatrix::identity(n);
  auto o = build_order(K, P.ell, basis, false);
  P.order = o;
  P.generator_poly = fppoly::lift(gbar);
  ZMatrix gens;
  FpPoly shifted = gbar;
  for (std::size_t i = 0; i < n; ++i) {
    FpPoly r = fppoly::rem(shifted, mbar, P.ell);
    r.resize(n, 0);
    gens.push_back(lift_rows({r})[0]);
    shifted.insert(shifted.begin(), 0);
  }
  P.basis = hnf_prime_power(gens, P.ell, 1, n);
  FpPoly cof = fppoly::divmod(mbar, gbar, P.ell).first;
  P.beta = K.from_poly(qpoly::from_z(fppoly::lift(cof)));
  P.label = 1;
  return P;
}

}  // namespace eiscong
