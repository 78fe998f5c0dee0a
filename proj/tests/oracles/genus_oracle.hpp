#pragma once

// Dimensions of weight-2 cusp form spaces on Gamma_0(N), N square-free, from the
// genus formula for X_0(N). Independent of the library.

#include <cstdint>
#include <vector>

namespace oracle {

inline std::vector<std::uint64_t> primes_of(std::uint64_t n) {
  std::vector<std::uint64_t> ps;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) ps.push_back(n);
  return ps;
}

// Kronecker symbol (D/p) for D in {-1, -3} and p prime.
inline int kron(long D, std::uint64_t p) {
  if (p == 2) return D == -1 ? 0 : -1;  // -3 = 5 mod 8
  long r = ((D % static_cast<long>(p)) + static_cast<long>(p)) % static_cast<long>(p);
  if (r == 0) return 0;
  std::uint64_t e = (p - 1) / 2, acc = 1, b = static_cast<std::uint64_t>(r);
  while (e) {
    if (e & 1) acc = acc * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return acc == 1 ? 1 : -1;
}

inline long genus_x0(std::uint64_t N) {
  long mu = 1, nu2 = 1, nu3 = 1, cusps = 1;
  for (auto p : primes_of(N)) {
    mu *= static_cast<long>(p + 1);
    nu2 *= 1 + kron(-1, p);
    nu3 *= 1 + kron(-3, p);
    cusps *= 2;
  }
  // 12 g = 12 + mu - 3 nu2 - 4 nu3 - 6 cusps
  return (12 + mu - 3 * nu2 - 4 * nu3 - 6 * cusps) / 12;
}

inline long new_dimension(std::uint64_t N) {
  long total = 0;
  for (std::uint64_t M = 1; M <= N; ++M) {
    if (N % M) continue;
    long w = static_cast<long>(primes_of(N / M).size());
    long s = 1;
    for (long i = 0; i < w; ++i) s *= -2;
    total += s * genus_x0(M);
  }
  return total;
}

}  // namespace oracle
