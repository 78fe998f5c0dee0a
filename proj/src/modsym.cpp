#include "eiscong/modsym.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <random>

#include "eiscong/error.hpp"

namespace eiscong {

namespace {

std::uint64_t mod_ll(long long x, std::uint64_t m) {
  long long r = x % static_cast<long long>(m);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(m) : r);
}

void add_scaled(QVector& acc, const SparseVec& v) {
  for (const auto& [i, c] : v) acc[i] += c;
}

// s, t with s*a + t*b = gcd(a, b) > 0.
void xgcd(long long a, long long b, long long& g, long long& s, long long& t) {
  long long s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    long long q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  if (a < 0) a = -a, s0 = -s0, t0 = -t0;
  g = a, s = s0, t = t0;
}

}  // namespace

// ---------------------------------------------------------------------------
// P^1(Z/N)

P1List::P1List(std::uint64_t N) : N_(N) {
  if (N == 0 || !is_squarefree(N)) throw InvalidArgument("P1List: level must be square-free");
  primes_ = prime_divisors(N);
  std::size_t total = 1;
  for (auto p : primes_) {
    radix_.push_back(total);
    total *= p + 1;
  }
  reps_.resize(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::uint64_t c = 0, d = 0;
    for (std::size_t k = 0; k < primes_.size(); ++k) {
      std::uint64_t p = primes_[k];
      std::uint64_t x = (idx / radix_[k]) % (p + 1);
      std::uint64_t cp = x == p ? 0 : 1, dp = x == p ? 1 : x;
      std::uint64_t m = N / p;
      std::uint64_t e = mulmod(m, invmod(m % p, p), N);  // 1 mod p, 0 mod N/p
      c = (c + mulmod(e, cp, N)) % N;
      d = (d + mulmod(e, dp, N)) % N;
    }
    if (N == 1) c = 0, d = 0;
    reps_[idx] = {c, d};
  }
}

std::size_t P1List::index(std::uint64_t c, std::uint64_t d) const {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < primes_.size(); ++k) {
    std::uint64_t p = primes_[k];
    std::uint64_t cp = c % p, dp = d % p, x;
    if (cp != 0) {
      x = mulmod(dp, invmod(cp, p), p);
    } else if (dp != 0) {
      x = p;
    } else {
      return npos;
    }
    idx += x * radix_[k];
  }
  return idx;
}

std::size_t P1List::index_signed(long long c, long long d) const {
  if (N_ == 1) return 0;
  return index(mod_ll(c, N_), mod_ll(d, N_));
}

// ---------------------------------------------------------------------------
// Heilbronn-Merel matrices

const std::vector<std::array<long long, 4>>& merel_matrices(std::uint64_t n) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::vector<std::array<long long, 4>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::array<long long, 4>> out;
  const long long N = static_cast<long long>(n);
  for (long long a = 1; a <= N; ++a) {
    long long q = N / a;
    if (q * a == N) {
      for (long long b = 0; b < a; ++b) out.push_back({a, b, 0, q});
      for (long long c = 1; c < q; ++c) out.push_back({a, 0, c, q});
    }
    for (long long d = q + 1; d <= N; ++d) {
      long long bc = a * d - N;
      for (long long c = bc / a + 1; c < d; ++c)
        if (bc % c == 0) out.push_back({a, bc / c, c, d});
    }
  }
  return cache.emplace(n, std::move(out)).first->second;
}

// ---------------------------------------------------------------------------
// Relation quotient

SymbolSpace::SymbolSpace(std::uint64_t N, int sign) : p1_(N), sign_(sign) {
  if (sign < -1 || sign > 1) throw InvalidArgument("SymbolSpace: sign must be -1, 0 or 1");
  build_relations();
  build_cuspidal();
  build_new();
}

void SymbolSpace::build_relations() {
  const std::size_t n = p1_.size();
  std::vector<std::size_t> parent(n);
  std::vector<int> sgn(n, 1);
  std::vector<char> zero(n, 0);
  std::iota(parent.begin(), parent.end(), 0);

  auto find = [&](std::size_t i) {
    int s = 1;
    std::size_t r = i;
    while (parent[r] != r) s *= sgn[r], r = parent[r];
    // path compression
    std::size_t cur = i;
    int cs = s;
    while (parent[cur] != cur) {
      std::size_t next = parent[cur];
      int ns = cs * sgn[cur];
      parent[cur] = r;
      sgn[cur] = cs;
      cur = next;
      cs = ns;
    }
    return std::make_pair(r, s);
  };
  // x_i = s * x_j
  auto merge = [&](std::size_t i, std::size_t j, int s) {
    auto [ri, si] = find(i);
    auto [rj, sj] = find(j);
    int t = si * s * sj;  // x_ri = t * x_rj
    if (ri == rj) {
      if (t == -1) zero[ri] = 1;
      return;
    }
    parent[ri] = rj;
    sgn[ri] = t;
    if (zero[ri]) zero[rj] = 1;
  };

  auto op = [&](std::size_t i, long long a, long long b, long long c, long long d) {
    auto [u, v] = p1_.rep(i);
    long long U = static_cast<long long>(u), V = static_cast<long long>(v);
    return p1_.index_signed(U * a + V * c, U * b + V * d);
  };
  for (std::size_t i = 0; i < n; ++i) {
    merge(i, op(i, 0, -1, 1, 0), -1);  // x + x*sigma = 0
    if (sign_ != 0) merge(i, op(i, -1, 0, 0, 1), sign_);
  }

  // classes -> variables
  std::vector<long> var_of_root(n, -1);
  std::vector<std::pair<long, int>> cls(n);
  std::size_t nvars = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto [r, s] = find(i);
    if (zero[r]) {
      cls[i] = {-1, 0};
      continue;
    }
    if (var_of_root[r] < 0) var_of_root[r] = static_cast<long>(nvars++);
    cls[i] = {var_of_root[r], s};
  }
  std::vector<std::size_t> var_symbol(nvars);
  for (std::size_t i = 0; i < n; ++i) {
    auto [r, s] = find(i);
    if (!zero[r] && r == i) var_symbol[static_cast<std::size_t>(var_of_root[r])] = i;
  }

  // 3-term relations, eliminated from the largest variable down
  std::vector<std::map<std::size_t, Rational>> pivot(nvars);
  std::vector<char> is_pivot(nvars, 0);
  std::vector<char> seen(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::size_t j = op(i, 0, -1, 1, -1), k = op(j, 0, -1, 1, -1);
    seen[i] = seen[j] = seen[k] = 1;
    std::map<std::size_t, Rational> rel;
    for (std::size_t x : {i, j, k}) {
      if (cls[x].first < 0) continue;
      auto v = static_cast<std::size_t>(cls[x].first);
      rel[v] += cls[x].second;
      if (rel[v] == 0) rel.erase(v);
    }
    while (!rel.empty()) {
      auto it = std::prev(rel.end());
      std::size_t v = it->first;
      Rational c = it->second;
      if (is_pivot[v]) {
        rel.erase(it);
        for (const auto& [u, a] : pivot[v]) {
          Rational& slot = rel[u];
          slot += c * a;
          if (slot == 0) rel.erase(u);
        }
        continue;
      }
      rel.erase(it);
      for (auto& [u, a] : rel) a = -a / c;
      pivot[v] = std::move(rel);
      is_pivot[v] = 1;
      break;
    }
  }

  // express every variable in the free ones
  std::vector<long> free_index(nvars, -1);
  for (std::size_t v = 0; v < nvars; ++v)
    if (!is_pivot[v]) {
      free_index[v] = static_cast<long>(free_symbol_.size());
      free_symbol_.push_back(var_symbol[v]);
    }
  std::vector<SparseVec> var_expr(nvars);
  for (std::size_t v = 0; v < nvars; ++v) {
    if (!is_pivot[v]) {
      var_expr[v] = {{static_cast<std::size_t>(free_index[v]), Rational(1)}};
      continue;
    }
    std::map<std::size_t, Rational> acc;
    for (const auto& [u, a] : pivot[v])
      for (const auto& [f, b] : var_expr[u]) acc[f] += a * b;
    for (auto& [f, b] : acc)
      if (b != 0) var_expr[v].emplace_back(f, b);
  }
  expr_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (cls[i].first < 0) continue;
    expr_[i] = var_expr[static_cast<std::size_t>(cls[i].first)];
    if (cls[i].second < 0)
      for (auto& [f, b] : expr_[i]) b = -b;
  }
}

QVector SymbolSpace::symbol_dense(std::size_t i) const {
  QVector v(dimension());
  add_scaled(v, expr_[i]);
  return v;
}

QVector SymbolSpace::zero_to(const Integer& x0, const Integer& y0) const {
  QVector out(dimension());
  const std::uint64_t N = level();
  std::size_t inf = p1_.index_signed(0, 1);
  add_scaled(out, expr_[inf]);
  if (y0 == 0) return out;
  Integer x = x0, y = y0;
  if (y < 0) x = -x, y = -y;
  Integer g = gcd(x, y);
  x /= g, y /= g;
  Integer q_prev2 = 1, q_prev1 = 0;  // q_{j-2}, q_{j-1}
  Integer a = x, b = y;
  bool odd = true;  // (-1)^{j-1} with j = 0 is -1
  while (b != 0) {
    Integer aj;
    mpz_fdiv_q(aj.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Integer r = a - aj * b;
    a = b, b = r;
    Integer qj = aj * q_prev1 + q_prev2;
    std::uint64_t c = reduce_mod(qj, N), d = reduce_mod(q_prev1, N);
    if (odd) c = (N - c) % N;
    std::size_t idx = N == 1 ? 0 : p1_.index(c, d);
    add_scaled(out, expr_[idx]);
    q_prev2 = q_prev1, q_prev1 = qj;
    odd = !odd;
  }
  return out;
}

QVector SymbolSpace::hecke_image(std::size_t basis_index, std::uint64_t n) const {
  QVector out(dimension());
  auto [u, v] = p1_.rep(free_symbol_[basis_index]);
  const std::uint64_t N = level();
  for (const auto& h : merel_matrices(n)) {
    std::uint64_t c = (mulmod(u, static_cast<std::uint64_t>(h[0]) % N, N) +
                       mulmod(v, static_cast<std::uint64_t>(h[2]) % N, N)) % N;
    std::uint64_t d = (mulmod(u, static_cast<std::uint64_t>(h[1]) % N, N) +
                       mulmod(v, static_cast<std::uint64_t>(h[3]) % N, N)) % N;
    std::size_t idx = p1_.index(c, d);
    if (idx == P1List::npos) continue;
    add_scaled(out, expr_[idx]);
  }
  return out;
}

QMatrix SymbolSpace::hecke_ambient(std::uint64_t n) const {
  if (n == 0) throw InvalidArgument("hecke: n must be positive");
  QMatrix t(dimension(), dimension());
  for (std::size_t f = 0; f < dimension(); ++f) t.set_row(f, hecke_image(f, n));
  return t;
}

QMatrix SymbolSpace::boundary_matrix() const {
  const std::uint64_t N = level();
  std::vector<std::uint64_t> divs = divisors(N);
  auto cusp = [&](std::uint64_t c) {
    std::uint64_t g = std::gcd(c, N);
    if (g == 0) g = N;
    return static_cast<std::size_t>(std::lower_bound(divs.begin(), divs.end(), g) - divs.begin());
  };
  QMatrix m(dimension(), divs.size());
  if (sign_ == -1) return m;  // every cusp is fixed by eta up to Gamma_0(N)
  for (std::size_t f = 0; f < dimension(); ++f) {
    auto [c, d] = p1_.rep(free_symbol_[f]);
    m(f, cusp(c)) += 1;
    m(f, cusp(d)) -= 1;
  }
  return m;
}

void SymbolSpace::build_cuspidal() {
  QMatrix k = left_kernel(boundary_matrix());
  if (k.rows() == 0) k = QMatrix(0, dimension());
  cuspidal_ = Subspace::from_rows(std::move(k));
}

void SymbolSpace::build_new() {
  const std::uint64_t N = level();
  const std::size_t D = dimension();
  std::vector<QVector> cols;  // images of basis vectors, concatenated over all maps
  std::vector<QVector> rows(D);
  for (std::uint64_t p : prime_divisors(N)) {
    std::uint64_t M = N / p;
    if (M == 1) continue;  // no weight-2 cusp forms of level 1
    auto target = ambient(M, sign_);
    for (std::size_t f = 0; f < D; ++f) {
      auto [c, d] = p1_.rep(free_symbol_[f]);
      long long C = c == 0 ? static_cast<long long>(N) : static_cast<long long>(c);
      long long Dd = static_cast<long long>(d);
      while (std::gcd(C, Dd) != 1) Dd += static_cast<long long>(N);
      long long g, s, t;
      xgcd(Dd, C, g, s, t);  // s*Dd + t*C = 1, so [s, -t; C, Dd] has determinant 1
      long long A = s, B = -t;
      for (std::uint64_t scale : {std::uint64_t{1}, p}) {
        Integer sc(static_cast<unsigned long>(scale));
        // {B/Dd, A/C} -> {scale*B/Dd, scale*A/C}
        QVector img = target->zero_to(sc * Integer(static_cast<long>(A)), Integer(static_cast<long>(C)));
        QVector lo = target->zero_to(sc * Integer(static_cast<long>(B)), Integer(static_cast<long>(Dd)));
        for (std::size_t i = 0; i < img.size(); ++i) img[i] -= lo[i];
        rows[f].insert(rows[f].end(), img.begin(), img.end());
      }
    }
  }
  if (rows.empty() || rows[0].empty()) {
    new_ = cuspidal_;
    return;
  }
  QMatrix deg = QMatrix::from_rows(rows, rows[0].size());
  if (cuspidal_.dimension() == 0) {
    new_ = cuspidal_;
    return;
  }
  QMatrix k = left_kernel(cuspidal_.basis * deg);
  if (k.rows() == 0) {
    new_ = Subspace::from_rows(QMatrix(0, D));
    return;
  }
  new_ = Subspace::from_rows(k * cuspidal_.basis);
}

std::shared_ptr<const SymbolSpace> SymbolSpace::ambient(std::uint64_t N, int sign) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, int>, std::shared_ptr<const SymbolSpace>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({N, sign});
    if (it != cache.end()) return it->second;
  }
  auto s = std::make_shared<const SymbolSpace>(N, sign);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_pair(N, sign), s).first->second;
}

std::shared_ptr<const SymbolSpace> build_cuspidal_new(std::uint64_t N, int sign) {
  if (N <= 1) throw InvalidArgument("build_cuspidal_new: level must exceed 1");
  if (!is_squarefree(N)) throw InvalidArgument("build_cuspidal_new: level " + std::to_string(N) + " is not square-free");
  return SymbolSpace::ambient(N, sign);
}

QMatrix hecke_matrix(const SymbolSpace& space, std::uint64_t n) {
  if (n == 0) throw InvalidArgument("hecke_matrix: n must be positive");
  return restrict_to(space.hecke_ambient(n), space.new_subspace());
}

// ---------------------------------------------------------------------------
// Newform orbits

namespace {

struct Piece {
  Subspace space;  // in coordinates of the new subspace
  std::map<std::uint64_t, int> up;  // U_p eigenvalues
};

ZPoly integral_monic(const QPoly& f) {
  ZPoly z;
  for (const auto& c : f) {
    if (c.get_den() != 1) throw Error("newform_orbits: non-integral characteristic polynomial");
    z.push_back(c.get_num());
  }
  return z;
}

// Splits w (rows in new coordinates) along the factorization of the
// characteristic polynomial of a restricted to it. Returns {w} if unsplit.
std::vector<Subspace> split_by(const QMatrix& a, const Subspace& w, bool& irreducible, ZPoly& minpoly) {
  QMatrix r = restrict_to(a, w);
  ZPoly cp = integral_monic(charpoly(r));
  auto fac = zpoly::factor(cp);
  irreducible = fac.size() == 1 && fac[0].second == 1;
  if (irreducible) minpoly = cp;
  if (fac.size() == 1) return {w};
  std::vector<Subspace> out;
  for (const auto& [h, e] : fac) {
    QPoly he = qpoly::from_z(h);
    QPoly pw{Rational(1)};
    for (int i = 0; i < e; ++i) pw = poly::mul(pw, he);
    QMatrix k = left_kernel(evaluate(pw, r));
    out.push_back(Subspace::from_rows(k * w.basis));
  }
  return out;
}

}  // namespace

std::vector<NewformOrbit> newform_orbits(const SymbolSpace& space_in, long B) {
  if (B < 1) throw InvalidArgument("newform_orbits: truncation must be positive");
  std::shared_ptr<const SymbolSpace> holder;
  const SymbolSpace* sp = &space_in;
  if (space_in.sign() != 1) {
    holder = SymbolSpace::ambient(space_in.level(), 1);
    sp = holder.get();
  }
  const SymbolSpace& space = *sp;
  const std::uint64_t N = space.level();
  const Subspace& Wn = space.new_subspace();
  const std::size_t dn = Wn.dimension();
  if (dn == 0) return {};

  std::vector<std::uint64_t> bad = prime_divisors(N);
  std::map<std::uint64_t, QMatrix> amb;  // ambient Hecke matrices, computed on demand
  auto T_amb = [&](std::uint64_t n) -> const QMatrix& {
    auto it = amb.find(n);
    if (it == amb.end()) it = amb.emplace(n, space.hecke_ambient(n)).first;
    return it->second;
  };
  std::map<std::uint64_t, QMatrix> tnew;
  auto T_new = [&](std::uint64_t n) -> const QMatrix& {
    auto it = tnew.find(n);
    if (it == tnew.end()) it = tnew.emplace(n, restrict_to(T_amb(n), Wn)).first;
    return it->second;
  };

  // Atkin-Lehner splitting
  std::vector<Piece> pieces{{Subspace::from_rows(QMatrix::identity(dn)), {}}};
  for (std::uint64_t p : bad) {
    std::vector<Piece> next;
    for (const auto& pc : pieces) {
      QMatrix r = restrict_to(T_new(p), pc.space);
      for (int eps : {1, -1}) {
        QMatrix s = r;
        for (std::size_t i = 0; i < s.rows(); ++i) s(i, i) -= eps;
        QMatrix k = left_kernel(s);
        if (k.rows() == 0) continue;
        Piece q{Subspace::from_rows(k * pc.space.basis), pc.up};
        q.up[p] = eps;
        next.push_back(std::move(q));
      }
    }
    pieces = std::move(next);
  }
  std::size_t total = 0;
  for (const auto& pc : pieces) total += pc.space.dimension();
  if (total != dn) throw Error("newform_orbits: U_p is not an involution on the new subspace");

  struct Done {
    Piece piece;
    std::vector<std::pair<std::uint64_t, long>> combo;  // theta = sum c_q T_q
    ZPoly minpoly;
  };
  std::vector<Done> done;
  std::vector<Piece> todo = pieces;
  std::vector<std::uint64_t> good;
  for (std::uint64_t q = 2; good.size() < 8; ++q)
    if (is_prime(q) && N % q != 0) good.push_back(q);

  auto process = [&](const QMatrix& a, const std::vector<std::pair<std::uint64_t, long>>& combo) {
    std::vector<Piece> next;
    for (auto& pc : todo) {
      bool irr = false;
      ZPoly mp;
      auto parts = split_by(a, pc.space, irr, mp);
      if (irr) {
        done.push_back({pc, combo, mp});
        continue;
      }
      for (auto& s : parts) next.push_back({std::move(s), pc.up});
    }
    todo = std::move(next);
  };
  for (std::uint64_t q : good) {
    if (todo.empty()) break;
    process(T_new(q), {{q, 1}});
  }
  std::mt19937_64 rng(20240917);
  for (int attempt = 0; attempt < 40 && !todo.empty(); ++attempt) {
    std::vector<std::pair<std::uint64_t, long>> combo;
    QMatrix a(dn, dn);
    for (std::uint64_t q : good) {
      long c = static_cast<long>(rng() % 11) - 5;
      if (c == 0) continue;
      combo.emplace_back(q, c);
      a = a + Rational(c) * T_new(q);
    }
    if (combo.empty()) continue;
    process(a, combo);
  }
  if (!todo.empty()) throw Error("newform_orbits: splitting failed after the retry cap");

  std::vector<std::uint64_t> primes = primes_up_to(static_cast<std::uint64_t>(B));
  std::vector<NewformOrbit> out;
  for (const auto& dn_piece : done) {
    const Piece& pc = dn_piece.piece;
    const std::size_t d = pc.space.dimension();
    NewformOrbit o;
    o.level = N;
    o.field = std::make_shared<const NumberField>(dn_piece.minpoly);
    const NumberField& K = *o.field;

    // Krylov basis of theta acting on v, in ambient coordinates
    QMatrix theta(space.dimension(), space.dimension());
    for (const auto& [q, c] : dn_piece.combo) theta = theta + Rational(c) * T_amb(q);
    QVector v = vec_mat(pc.space.basis.row(0), Wn.basis);
    QMatrix kry(d, space.dimension());
    QVector cur = v;
    for (std::size_t j = 0; j < d; ++j) {
      kry.set_row(j, cur);
      if (j + 1 < d) cur = vec_mat(cur, theta);
    }
    QMatrix ech = kry;
    std::vector<std::size_t> piv = rref(ech);
    if (piv.size() != d) throw Error("newform_orbits: Krylov basis is degenerate");
    QMatrix sel_inv = inverse(kry.select_columns(piv));

    std::map<std::uint64_t, FieldElement> ap;
    for (std::uint64_t p : primes) {
      if (N % p == 0) {
        ap[p] = K.from_rational(pc.up.at(p));
        continue;
      }
      QVector y = vec_mat(v, T_amb(p));
      QVector ys(d);
      for (std::size_t j = 0; j < d; ++j) ys[j] = y[piv[j]];
      ap[p] = K.from_coords(vec_mat(ys, sel_inv));
    }
    o.an.assign(static_cast<std::size_t>(B) + 1, K.zero());
    o.an[1] = K.one();
    for (long n = 2; n <= B; ++n) {
      auto f = factor_u64(static_cast<std::uint64_t>(n));
      FieldElement acc = K.one();
      for (const auto& [p, e] : f) {
        // a_{p^e} by the Hecke recurrence
        FieldElement prev = K.one(), now = ap.at(p);
        for (int i = 1; i < e; ++i) {
          FieldElement nx = K.mul(ap.at(p), now);
          if (N % p != 0) nx = K.sub(nx, K.scale(prev, Rational(static_cast<unsigned long>(p))));
          prev = now, now = nx;
        }
        acc = K.mul(acc, now);
      }
      o.an[static_cast<std::size_t>(n)] = acc;
    }
    for (const auto& [p, eps] : pc.up) o.atkin_lehner[p] = -eps;
    out.push_back(std::move(o));
  }

  std::vector<std::vector<Rational>> keys(out.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::uint64_t p : primes) keys[i].push_back(out[i].field->trace(out[i].an[p]));
  std::vector<std::size_t> order(out.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (out[a].degree() != out[b].degree()) return out[a].degree() < out[b].degree();
    return keys[a] < keys[b];
  });
  std::vector<NewformOrbit> sorted;
  for (std::size_t i = 0; i < order.size(); ++i) {
    NewformOrbit o = std::move(out[order[i]]);
    o.index = static_cast<int>(i) + 1;
    o.label = std::to_string(i + 1);
    sorted.push_back(std::move(o));
  }
  return sorted;
}

}  // namespace eiscong
