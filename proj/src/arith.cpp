#include "eiscong/arith.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <ostream>

#include "eiscong/error.hpp"

namespace eiscong {

long Valuation::value() const {
  if (infinite_) throw InvalidArgument("value() of an infinite valuation");
  return value_;
}

std::string Valuation::to_string() const {
  return infinite_ ? std::string("inf") : std::to_string(value_);
}

std::ostream& operator<<(std::ostream& os, Valuation v) { return os << v.to_string(); }

namespace {

// Akiyama-Tanigawa produces B_n with B_1 = +1/2; the table stores that
// convention and bernoulli() flips the sign at n = 1.
class BernoulliTable {
 public:
  Rational get(unsigned k) {
    std::lock_guard<std::mutex> lock(mu_);
    if (k >= values_.size()) extend(k);
    return values_[k];
  }

 private:
  void extend(unsigned k) {
    // The A-T row for index n needs the full triangle, so recompute up to
    // the next power-of-two target; k stays small (weights <= a few dozen).
    unsigned target = std::max<unsigned>(k + 1, 2 * static_cast<unsigned>(values_.size()));
    values_.assign(target, Rational(0));
    std::vector<Rational> row(target);
    for (unsigned m = 0; m < target; ++m) {
      row[m] = Rational(1, m + 1);
      for (unsigned j = m; j >= 1; --j) {
        row[j - 1] = j * (row[j - 1] - row[j]);
        row[j - 1].canonicalize();
      }
      values_[m] = row[0];
    }
  }

  std::mutex mu_;
  std::vector<Rational> values_;
};

BernoulliTable& bernoulli_table() {
  static BernoulliTable table;
  return table;
}

}  // namespace

Rational bernoulli(unsigned k) {
  if (k == 1) return Rational(-1, 2);
  if (k > 1 && k % 2 == 1) return Rational(0);
  return bernoulli_table().get(k);
}

Integer sigma(unsigned s, std::uint64_t n) {
  if (n == 0) throw InvalidArgument("sigma(s, 0) is undefined");
  // multiplicative: prod over p^a || n of (p^{s(a+1)} - 1)/(p^s - 1)
  Integer result = 1;
  for (auto [p, a] : factor_u64(n)) {
    Integer term = 1;
    Integer pk = 1;
    Integer ps = ipow(p, s);
    for (int i = 0; i < a; ++i) {
      pk *= ps;
      term += pk;
    }
    result *= term;
  }
  return result;
}

Integer sigma_ext(unsigned s, const Rational& r_in) {
  Rational r = r_in;
  r.canonicalize();
  if (r.get_den() != 1 || r <= 0) return 0;
  Integer n = r.get_num();
  if (!n.fits_ulong_p()) throw InvalidArgument("sigma_ext: argument too large");
  return sigma(s, n.get_ui());
}

long v_ell(const Integer& x, std::uint64_t ell) {
  Integer q = x;
  Integer l(static_cast<unsigned long>(ell));
  long v = 0;
  while (mpz_divisible_p(q.get_mpz_t(), l.get_mpz_t()) != 0) {
    mpz_divexact(q.get_mpz_t(), q.get_mpz_t(), l.get_mpz_t());
    ++v;
  }
  return v;
}

Valuation v_ell(const Rational& x, std::uint64_t ell) {
  if (!is_prime(ell)) throw InvalidArgument("v_ell: " + std::to_string(ell) + " is not prime");
  if (x == 0) return Valuation::infinity();
  return Valuation(v_ell(Integer(x.get_num()), ell) - v_ell(Integer(x.get_den()), ell));
}

// ---------------------------------------------------------------------------

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e != 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  __int128 t = 0, nt = 1;
  __int128 r = m, nr = a % m;
  while (nr != 0) {
    __int128 q = r / nr;
    std::swap(t, nt);
    nt -= q * t;
    std::swap(r, nr);
    nr -= q * r;
  }
  if (r != 1) throw InvalidArgument("invmod: not invertible");
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

std::uint64_t reduce_mod(const Integer& x, std::uint64_t m) {
  Integer r;
  Integer mm(static_cast<unsigned long>(m));
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), mm.get_mpz_t());
  return r.get_ui();
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // deterministic witness set for 64-bit inputs
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(bound + 1, false);
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

namespace {

std::uint64_t pollard_rho(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mulmod(x, x, n) + c) % n; };
    std::uint64_t x = 2, y = 2, d = 1;
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_rec(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  std::uint64_t d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<std::uint64_t, int>> factor_u64(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("factor_u64(0)");
  std::vector<std::uint64_t> ps;
  for (std::uint64_t p = 2; p < 1000 && p * p <= n; ++p) {
    while (n % p == 0) {
      ps.push_back(p);
      n /= p;
    }
  }
  factor_rec(n, ps);
  std::sort(ps.begin(), ps.end());
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t p : ps) {
    if (!out.empty() && out.back().first == p) {
      ++out.back().second;
    } else {
      out.emplace_back(p, 1);
    }
  }
  return out;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (auto [p, a] : factor_u64(n)) out.push_back(p);
  return out;
}

bool is_squarefree(std::uint64_t n) {
  if (n == 0) return false;
  for (auto [p, a] : factor_u64(n)) {
    if (a > 1) return false;
  }
  return true;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out{1};
  for (auto [p, a] : factor_u64(n)) {
    std::size_t sz = out.size();
    std::uint64_t pk = 1;
    for (int i = 0; i < a; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < sz; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

Integer pollard_rho_big(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1, t;
    auto f = [&](Integer& v) {
      v = v * v + c;
      v %= n;
    };
    while (d == 1) {
      f(x);
      f(y);
      f(y);
      t = x - y;
      mpz_gcd(d.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

void factor_big_rec(const Integer& n, std::vector<Integer>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 40) != 0) {
    out.push_back(n);
    return;
  }
  Integer d = pollard_rho_big(n);
  factor_big_rec(d, out);
  factor_big_rec(Integer(n / d), out);
}

}  // namespace

std::vector<Integer> prime_divisors(const Integer& n_in) {
  if (n_in == 0) throw InvalidArgument("prime_divisors(0)");
  Integer n = abs(n_in);
  std::vector<Integer> out;
  for (unsigned long p = 2; p < 10000; ++p) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
      out.push_back(p);
      while (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    }
  }
  factor_big_rec(n, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Integer ipow(std::uint64_t base, unsigned e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

Integer ipow(const Integer& base, unsigned e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Rational parse_rational(const std::string& s) {
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0) {
    throw InvalidArgument("not a rational number: '" + s + "'");
  }
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }
std::string to_string(const Integer& z) { return z.get_str(10); }

}  // namespace eiscong
