#pragma once

// Weight-2 modular symbols for Gamma_0(N), N square-free: Manin symbols
// (c:d) in P^1(Z/N) modulo the 2- and 3-term relations (and optionally the
// star involution), the cuspidal subspace, the new subspace and the Galois
// orbits of newforms.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "eiscong/linalg.hpp"
#include "eiscong/numberfield.hpp"

namespace eiscong {

// P^1(Z/N) for square-free N. Points are indexed by the mixed-radix tuple of
// their reductions (1 : x) -> x, (0 : 1) -> p at each prime p | N.
class P1List {
 public:
  explicit P1List(std::uint64_t N);
  std::uint64_t level() const { return N_; }
  std::size_t size() const { return reps_.size(); }
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  // npos when gcd(c, d, N) > 1. Arguments are arbitrary residues.
  std::size_t index(std::uint64_t c, std::uint64_t d) const;
  std::size_t index_signed(long long c, long long d) const;
  const std::pair<std::uint64_t, std::uint64_t>& rep(std::size_t i) const { return reps_[i]; }

 private:
  std::uint64_t N_;
  std::vector<std::uint64_t> primes_;
  std::vector<std::size_t> radix_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> reps_;
};

// Determinant-n matrices [a b; c d] with a > b >= 0, d > c >= 0. Acting on
// Manin symbols by (u : v) -> (ua + vc : ub + vd) they give T_n for gcd(n, N)
// = 1 and, dropping images outside P^1, U_p for p | N.
const std::vector<std::array<long long, 4>>& merel_matrices(std::uint64_t n);

using SparseVec = std::vector<std::pair<std::size_t, Rational>>;

class SymbolSpace {
 public:
  // sign 0: the full space; sign +1 or -1: the quotient by x = +-x*eta with
  // eta = [-1 0; 0 1].
  static std::shared_ptr<const SymbolSpace> ambient(std::uint64_t N, int sign);

  std::uint64_t level() const { return p1_.level(); }
  int sign() const { return sign_; }
  const P1List& p1() const { return p1_; }
  // Dimension of the relation quotient (cuspidal plus boundary part).
  std::size_t dimension() const { return free_symbol_.size(); }
  const Subspace& cuspidal() const { return cuspidal_; }
  const Subspace& new_subspace() const { return new_; }

  // Class of the Manin symbol with the given P^1 index, in quotient coordinates.
  const SparseVec& symbol(std::size_t i) const { return expr_[i]; }
  QVector symbol_dense(std::size_t i) const;
  // Modular symbol {0, x/y} (y = 0 stands for the cusp infinity).
  QVector zero_to(const Integer& x, const Integer& y) const;

  // Matrix of T_n (or U_n) on the whole quotient, rows are images of basis vectors.
  QMatrix hecke_ambient(std::uint64_t n) const;
  QVector hecke_image(std::size_t basis_index, std::uint64_t n) const;
  // Boundary map to the cusps, indexed by the divisors of N in increasing order.
  QMatrix boundary_matrix() const;

  SymbolSpace(std::uint64_t N, int sign);

 private:
  void build_relations();
  void build_cuspidal();
  void build_new();

  P1List p1_;
  int sign_;
  std::vector<SparseVec> expr_;
  std::vector<std::size_t> free_symbol_;  // P^1 index representing each basis vector
  Subspace cuspidal_;
  Subspace new_;
};

// Weight-2 cuspidal new subspace of level N (square-free, N > 1). Throws
// InvalidArgument otherwise. sign 0 gives the full space (dimension 2g_new),
// sign +1 the plus quotient (dimension g_new).
std::shared_ptr<const SymbolSpace> build_cuspidal_new(std::uint64_t N, int sign = 0);

// T_n for gcd(n, N) = 1, U_p for p | N, on the new subspace in its echelon basis.
QMatrix hecke_matrix(const SymbolSpace& space, std::uint64_t n);

struct NewformOrbit {
  std::uint64_t level = 0;
  int weight = 2;
  int index = 0;  // 1-based position in the deterministic ordering
  std::string label;
  std::shared_ptr<const NumberField> field;
  std::vector<FieldElement> an;          // a_0 .. a_B, a_0 = 0
  std::map<std::uint64_t, int> atkin_lehner;  // p | N -> lambda_p = -a_p
  int degree() const { return field->degree(); }
  long truncation() const { return static_cast<long>(an.size()) - 1; }
};

// One record per Galois orbit of newforms with a_n computed for n <= B.
// Orbits are ordered by degree, then by the traces of a_2, a_3, a_5, ..
// Spaces of sign 0 are handled through the plus quotient of the same level.
std::vector<NewformOrbit> newform_orbits(const SymbolSpace& space, long B);

}  // namespace eiscong
