#pragma once

// Truncated q-expansions with rational coefficients and the Eisenstein
// eigenbasis of square-free level.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "eiscong/arith.hpp"

namespace eiscong {

struct QExpansion {
  int weight = 0;
  std::uint64_t level = 1;
  long truncation = 0;          // coeffs holds a_0 .. a_truncation
  std::vector<Rational> coeffs;
  bool is_modular = true;       // false only for E_2 and its [p]^- images

  const Rational& operator[](long n) const;
  friend bool operator==(const QExpansion&, const QExpansion&) = default;
};

enum class Sign { Plus, Minus };

struct EisensteinLabel {
  int weight = 2;
  std::uint64_t n_minus = 1;
  std::uint64_t n_plus = 1;

  std::uint64_t level() const { return n_minus * n_plus; }
  Sign sign_at(std::uint64_t p) const;  // p must divide the level
  // Throws InvalidArgument unless the label names a modular eigenform.
  void validate() const;
  std::string to_string() const;  // "NM:NP"
  friend auto operator<=>(const EisensteinLabel&, const EisensteinLabel&) = default;
};

// E_k = -B_k/2k + sum sigma_{k-1}(n) q^n.
QExpansion eisenstein_level1(int k, long truncation);

QExpansion apply_A_d(const QExpansion& f, std::uint64_t d);
// [p]^+ f = f - p^{k-1} A_p f,  [p]^- f = f - A_p f.
QExpansion apply_bracket(const QExpansion& f, std::uint64_t p, Sign sign);

QExpansion eisenstein_eigenform(const EisensteinLabel& label, long truncation);
// Admissible labels for (k, N) in a fixed order: N^- runs over the divisors
// of N in increasing order.
std::vector<EisensteinLabel> eisenstein_labels(int k, std::uint64_t level);
std::vector<std::pair<EisensteinLabel, QExpansion>> eisenstein_basis(int k, std::uint64_t level, long truncation);

Rational a0_closed_form(const EisensteinLabel& label);
// Eigenvalue of T_q (q not dividing N) or U_q (q | N) on E_{N^-,N^+}.
Integer eisenstein_eigenvalue(const EisensteinLabel& label, std::uint64_t q);

// a_n(T_q f) = a_{nq}(f) + q^{k-1} a_{n/q}(f) for 0 <= n <= out_truncation.
QExpansion hecke_T(const QExpansion& f, std::uint64_t q, long out_truncation);
QExpansion hecke_T(const QExpansion& f, std::uint64_t q);  // out = floor(B / q)
// a_n(U_p f) = a_{np}(f).
QExpansion hecke_U(const QExpansion& f, std::uint64_t p, long out_truncation);
QExpansion hecke_U(const QExpansion& f, std::uint64_t p);

// floor(k * prod_{p | N} (p + 1) / 12).
long sturm_bound(int k, std::uint64_t level);

// {"weight":..,"level":..,"truncation":..,"coeffs":["a0","a1",..]}
std::string to_json(const QExpansion& f);

}  // namespace eiscong
