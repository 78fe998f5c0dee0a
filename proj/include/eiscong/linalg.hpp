#pragma once

// Exact dense linear algebra over Q, over F_p, and integer lattices modulo a
// prime power. Vectors are rows; matrices act on the right of row vectors
// unless a routine says otherwise.

#include <cstdint>
#include <vector>

#include "eiscong/arith.hpp"
#include "eiscong/poly.hpp"

namespace eiscong {

using QVector = std::vector<Rational>;

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static QMatrix identity(std::size_t n);
  static QMatrix from_rows(const std::vector<QVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  QVector row(std::size_t i) const;
  void set_row(std::size_t i, const QVector& v);
  void append_row(const QVector& v);
  QMatrix transpose() const;
  bool is_zero() const;
  // Rows i0..i1-1 restricted to the given column subset.
  QMatrix select_columns(const std::vector<std::size_t>& cols) const;

  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator-(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator*(const Rational& s, const QMatrix& a);
  friend bool operator==(const QMatrix& a, const QMatrix& b);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

QVector vec_mat(const QVector& v, const QMatrix& a);  // v * A

// Reduced row echelon form in place; returns the pivot column of each
// nonzero row (zero rows are removed).
std::vector<std::size_t> rref(QMatrix& a);
std::size_t rank(const QMatrix& a);
// Rows form a basis of {x : x * A = 0}, in reduced echelon form.
QMatrix left_kernel(const QMatrix& a);
// Rows form a basis of {x : A * x^T = 0}, in reduced echelon form.
QMatrix right_kernel(const QMatrix& a);
QMatrix inverse(const QMatrix& a);  // throws InvalidArgument when singular

// A subspace of Q^n held as an echelon basis; coordinates are read off the
// pivot columns.
struct Subspace {
  QMatrix basis;                    // rows, reduced echelon form
  std::vector<std::size_t> pivots;  // pivot column of each row
  std::size_t dimension() const { return basis.rows(); }
  std::size_t ambient_dimension() const { return basis.cols(); }
  // Coordinates of v with respect to basis (v must lie in the span).
  QVector coordinates(const QVector& v) const;
  bool contains(const QVector& v) const;
  static Subspace from_rows(QMatrix rows);
};

// Matrix of the map v -> v * A restricted to an A-stable subspace, in the
// subspace's own basis.
QMatrix restrict_to(const QMatrix& a, const Subspace& w);

// p(A) by Horner.
QMatrix evaluate(const QPoly& p, const QMatrix& a);

// Characteristic polynomial det(xI - A). Multimodular with a rigorous
// coefficient bound and CRT reconstruction.
QPoly charpoly(const QMatrix& a);

// ---------------------------------------------------------------------------
// F_p.

using FpMatrix = std::vector<std::vector<std::uint64_t>>;

std::vector<std::size_t> fp_rref(FpMatrix& a, std::uint64_t p);
// Basis of {x : A * x^T = 0} over F_p; the matrix has `cols` columns.
FpMatrix fp_right_kernel(const FpMatrix& a, std::size_t cols, std::uint64_t p);
FpPoly fp_charpoly(FpMatrix a, std::uint64_t p);

// ---------------------------------------------------------------------------
// Integer lattices L with ell^c Z^n contained in L.

using ZMatrix = std::vector<std::vector<Integer>>;

// Hermite normal form (upper triangular rows, positive diagonal, entries
// above the diagonal reduced) of the lattice generated by `gens` together
// with ell^c Z^n.
ZMatrix hnf_prime_power(const ZMatrix& gens, std::uint64_t ell, unsigned c, std::size_t n);

}  // namespace eiscong
