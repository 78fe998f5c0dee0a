#include <random>

#include "doctest.h"
#include "eiscong/linalg.hpp"

using namespace eiscong;

namespace {

QMatrix Mq(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<QVector> r;
  std::size_t cols = 0;
  for (auto row : rows) {
    QVector v;
    for (long x : row) v.emplace_back(x);
    cols = v.size();
    r.push_back(v);
  }
  return QMatrix::from_rows(r, cols);
}

// Reference charpoly by the Faddeev-LeVerrier recursion (exact over Q).
QPoly faddeev(const QMatrix& a) {
  const std::size_t n = a.rows();
  QPoly c(n + 1);
  c[n] = 1;
  QMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    QMatrix am = a * m;
    for (std::size_t i = 0; i < n; ++i) am(i, i) += c[n - k + 1];
    m = am;
    QMatrix t = a * m;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += t(i, i);
    c[n - k] = -tr / static_cast<long>(k);
  }
  return c;
}

}  // namespace

TEST_CASE("rref, rank and kernels") {
  QMatrix a = Mq({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  CHECK(rank(a) == 2);
  QMatrix k = right_kernel(a);
  REQUIRE(k.rows() == 1);
  QVector v = k.row(0);
  for (std::size_t i = 0; i < 3; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < 3; ++j) s += a(i, j) * v[j];
    CHECK(s == 0);
  }
  QMatrix lk = left_kernel(a);
  REQUIRE(lk.rows() == 1);
  CHECK(vec_mat(lk.row(0), a) == QVector(3));
  QMatrix inv = inverse(Mq({{2, 1}, {7, 4}}));
  CHECK(inv == Mq({{4, -1}, {-7, 2}}));
}

TEST_CASE("subspace coordinates and restriction") {
  Subspace w = Subspace::from_rows(Mq({{1, 1, 0}, {0, 1, 1}}));
  CHECK(w.dimension() == 2);
  QVector v = {Rational(2), Rational(5), Rational(3)};
  CHECK(w.contains(v));
  CHECK(!w.contains({Rational(1), Rational(0), Rational(0)}));
  QMatrix a = Mq({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
  Subspace inv = Subspace::from_rows(Mq({{1, 1, 0}, {0, 0, 1}}));
  QMatrix r = restrict_to(a, inv);
  CHECK(r == Mq({{1, 0}, {0, 1}}));
}

TEST_CASE("multimodular charpoly agrees with Faddeev-LeVerrier") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 1 + rng() % 7;
    QMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) = Rational(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 3));
        a(i, j).canonicalize();
      }
    CHECK(charpoly(a) == faddeev(a));
  }
  CHECK(charpoly(Mq({{0, 1}, {1, 1}})) == QPoly{Rational(-1), Rational(-1), Rational(1)});
}

TEST_CASE("F_p kernel and charpoly") {
  FpMatrix a = {{1, 2, 3}, {2, 4, 6}};
  auto k = fp_right_kernel(a, 3, 7);
  CHECK(k.size() == 2);
  for (const auto& v : k) CHECK((v[0] + 2 * v[1] + 3 * v[2]) % 7 == 0);
  FpPoly cp = fp_charpoly({{0, 1}, {1, 1}}, 5);
  CHECK(cp == FpPoly{4, 4, 1});
}

TEST_CASE("HNF modulo a prime power") {
  // lattice generated by (1, 2) and 5 Z^2: index 5
  ZMatrix h = hnf_prime_power({{Integer(1), Integer(2)}}, 5, 1, 2);
  CHECK(h[0][0] == 1);
  CHECK(h[0][1] == 2);
  CHECK(h[1][0] == 0);
  CHECK(h[1][1] == 5);
  // (2, 2) together with 4 Z^2 has index 8
  ZMatrix g = hnf_prime_power({{Integer(2), Integer(2)}}, 2, 2, 2);
  CHECK(g[0][0] == 2);
  CHECK(g[0][1] == 2);
  CHECK(g[1][1] == 4);
  ZMatrix z = hnf_prime_power({}, 3, 2, 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(z[i][i] == 9);
}
