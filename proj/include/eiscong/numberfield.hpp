#pragma once

// Number fields K = Q[x]/(m), prime ideals above a rational prime and the
// valuations they define.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "eiscong/arith.hpp"
#include "eiscong/linalg.hpp"
#include "eiscong/poly.hpp"

namespace eiscong {

// Coordinates over the power basis 1, t, .., t^{d-1} of the generator t.
struct FieldElement {
  QVector coords;
  bool is_zero() const;
  friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

// An order O of K that is maximal at ell. Basis rows are power-basis
// coordinates; mult[i] is the matrix of y -> y * w_i in O-coordinates.
struct LocalOrder {
  std::uint64_t ell = 0;
  QMatrix basis;
  QMatrix basis_inverse;
  std::vector<QMatrix> mult;
  bool equation_order = true;  // O = Z[t] locally at ell
  unsigned enlargements = 0;
  std::vector<std::pair<FpPoly, int>> residue_factors;  // of m mod ell

  QVector to_order(const QVector& power) const { return vec_mat(power, basis_inverse); }
  QVector to_power(const QVector& order) const { return vec_mat(order, basis); }
};

struct PrimeIdealData {
  std::uint64_t ell = 0;
  int e = 0;
  int f = 0;
  int label = 0;
  // Monic lift with coefficients in [0, ell) when the ideal is (ell, g(t));
  // empty when only the basis is available.
  ZPoly generator_poly;
  // HNF basis of the ideal in O-coordinates (contains ell * O).
  ZMatrix basis;
  std::shared_ptr<const LocalOrder> order;
  // beta in O with beta * lambda in ell*O and beta not in ell*O; beta/ell then
  // has valuation -1 at lambda and is integral at the other primes above ell.
  FieldElement beta;
};

class NumberField {
 public:
  // min_poly must be monic and irreducible over Q.
  explicit NumberField(ZPoly min_poly);

  const ZPoly& min_poly() const { return min_poly_; }
  int degree() const { return degree_; }
  const Integer& discriminant() const { return discriminant_; }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement generator() const;
  FieldElement from_rational(const Rational& a) const;
  FieldElement from_coords(QVector coords) const;
  FieldElement from_poly(const QPoly& p) const;  // p(t), reduced mod m

  FieldElement add(const FieldElement& a, const FieldElement& b) const;
  FieldElement sub(const FieldElement& a, const FieldElement& b) const;
  FieldElement mul(const FieldElement& a, const FieldElement& b) const;
  FieldElement neg(const FieldElement& a) const;
  FieldElement scale(const FieldElement& a, const Rational& s) const;
  FieldElement inverse(const FieldElement& a) const;  // a != 0

  // Row i holds the coordinates of t^i * a.
  QMatrix multiplication_matrix(const FieldElement& a) const;
  QPoly charpoly(const FieldElement& a) const;
  Rational norm(const FieldElement& a) const;
  Rational trace(const FieldElement& a) const;
  bool is_integral(const FieldElement& a) const;

  std::string to_string(const FieldElement& a, const std::string& var = "a") const;

  // Cached; the cap bounds the number of enlargement steps (default
  // 2 * v_ell(disc m)). Throws IndexDivisorUnsupported past the cap.
  std::shared_ptr<const LocalOrder> ell_maximal_order(std::uint64_t ell) const;
  std::shared_ptr<const LocalOrder> ell_maximal_order(std::uint64_t ell, unsigned cap) const;

 private:
  struct Cache {
    std::mutex mu;
    std::map<std::uint64_t, std::shared_ptr<const LocalOrder>> orders;
  };
  ZPoly min_poly_;
  int degree_ = 0;
  Integer discriminant_;
  std::shared_ptr<Cache> cache_;
};

// Dedekind's criterion: true when ell does not divide [O_K : Z[t]].
bool dedekind_maximal(const ZPoly& m, std::uint64_t ell);

// All prime ideals above ell, sorted by (e, f, generator) and labelled 1, 2, ..
std::vector<PrimeIdealData> factor_prime(const NumberField& K, std::uint64_t ell);
std::vector<PrimeIdealData> factor_prime(const NumberField& K, std::uint64_t ell, unsigned cap);

// Largest n with x in lambda^n (negative for elements with lambda in the
// denominator); infinity for x = 0.
Valuation ord_lambda(const NumberField& K, const FieldElement& x, const PrimeIdealData& lambda);

// Canonical residue of an ell-integral x modulo lambda^r, in O-coordinates
// reduced against an HNF basis of lambda^r + ell^c O with ell^c in lambda^r.
struct IdealResidue {
  std::vector<Integer> coords;
  bool is_zero() const;
  friend bool operator==(const IdealResidue&, const IdealResidue&) = default;
};
IdealResidue reduce_mod_ideal_power(const NumberField& K, const FieldElement& x, const PrimeIdealData& lambda,
                                    unsigned r);

// External ideal data {"ell":..,"e":..,"f":..,"generator_poly":[c0,c1,..]}
// interpreted as (ell, g(t)) in Z[t]. Throws SchemaError on malformed input or
// when the residue ring does not have ell^f elements.
PrimeIdealData prime_ideal_from_json(const NumberField& K, const std::string& json);

}  // namespace eiscong
