#pragma once

// Exact integer and rational primitives shared by every other module.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace eiscong {

using Integer = mpz_class;
using Rational = mpq_class;

// An l-adic or lambda-adic valuation; +infinity is the valuation of zero.
class Valuation {
 public:
  constexpr Valuation() = default;
  constexpr explicit Valuation(long v) : value_(v), infinite_(false) {}
  static constexpr Valuation infinity() {
    Valuation v;
    v.infinite_ = true;
    return v;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }
  long value() const;  // throws InvalidArgument on +infinity

  friend constexpr bool operator==(Valuation a, Valuation b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(Valuation a, Valuation b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }
  friend constexpr Valuation operator+(Valuation a, Valuation b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return Valuation(a.value_ + b.value_);
  }
  friend constexpr Valuation operator-(Valuation a, long b) {
    if (a.infinite_) return a;
    return Valuation(a.value_ - b);
  }
  friend constexpr Valuation operator*(long scale, Valuation a) {
    if (a.infinite_) return a;
    return Valuation(scale * a.value_);
  }

  std::string to_string() const;

 private:
  long value_ = 0;
  bool infinite_ = false;
};

std::ostream& operator<<(std::ostream& os, Valuation v);

// B_k with B_1 = -1/2; memoized and safe to call concurrently.
Rational bernoulli(unsigned k);

// sum of m^s over the positive divisors m of n.
Integer sigma(unsigned s, std::uint64_t n);

// sigma_s extended to Q: zero off the integers (and at 0).
Integer sigma_ext(unsigned s, const Rational& r);

// l-adic valuation of a rational; throws InvalidArgument if ell is not prime.
Valuation v_ell(const Rational& x, std::uint64_t ell);
long v_ell(const Integer& x, std::uint64_t ell);  // x != 0, ell prime (unchecked)

// ---------------------------------------------------------------------------
// Small-integer number theory.

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);
std::vector<std::pair<std::uint64_t, int>> factor_u64(std::uint64_t n);
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);
bool is_squarefree(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);

// Distinct prime divisors of |n| for an arbitrary-size nonzero integer.
std::vector<Integer> prime_divisors(const Integer& n);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);  // throws when not invertible
std::uint64_t reduce_mod(const Integer& x, std::uint64_t m);  // result in [0, m)

Integer ipow(std::uint64_t base, unsigned e);
Integer ipow(const Integer& base, unsigned e);

// Parses "a/b", "a" or "-a/b"; canonicalizes.
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

}  // namespace eiscong
