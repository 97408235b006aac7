#include "doctest.h"
#include "helpers.hpp"

#include <random>

using namespace qalg;
using qalg::test::mat;

TEST_CASE("rref of small matrices") {
  auto r = rref(mat({{1, 0}, {0, 1}}));
  CHECK(r.rank == 2);
  CHECK(r.pivots == std::vector<int>{0, 1});
  CHECK(rank(mat({{1, 2}, {2, 4}})) == 1);
  ModulusScope gf2(2);
  CHECK(rank(mat<Zp>({{1, 1}, {1, 1}})) == 1);
}

TEST_CASE("kernel bases") {
  Mat<Rational> k = kernel_basis(mat({{1, 1}}));
  REQUIRE(k.cols() == 1);
  CHECK(k(0, 0) == Rational(-1));
  CHECK(k(1, 0) == Rational(1));
  CHECK(kernel_basis(Mat<Rational>(Mat<Rational>::Identity(3, 3))).cols() == 0);
  Mat<Rational> z = kernel_basis(Mat<Rational>(Mat<Rational>::Zero(2, 3)));
  CHECK(z == Mat<Rational>(Mat<Rational>::Identity(3, 3)));
}

TEST_CASE("solve") {
  Vec<Rational> rhs(2);
  rhs << Rational(1), Rational(2);
  auto x = solve(Mat<Rational>(Mat<Rational>::Identity(2, 2)), rhs);
  REQUIRE(x);
  CHECK(*x == rhs);
  Vec<Rational> zero(1);
  zero << Rational(0);
  auto y = solve(mat({{1, 1}}), zero);
  REQUIRE(y);
  CHECK(is_zero(Mat<Rational>(*y)));
  CHECK(!solve(mat({{1}, {1}}), rhs));
  CHECK_THROWS(solve(mat({{1, 1}}), rhs));
}

TEST_CASE("linear algebra invariants on pseudo-random matrices") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-2, 2);
  for (int trial = 0; trial < 40; ++trial) {
    const int r = 1 + trial % 5, c = 1 + (trial / 5) % 5;
    Mat<Rational> m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = Rational(d(rng) * (trial % 3 == 0 ? 0 : 1) + (i == j ? d(rng) : 0));
    CHECK(rank(m) == rank(Mat<Rational>(m.transpose())));
    Mat<Rational> k = kernel_basis(m);
    CHECK(k.cols() == c - rank(m));
    CHECK(is_zero(Mat<Rational>(mul(m, k))));
    CHECK(rank(k) == k.cols());
    Mat<Rational> once = rref(m).matrix;
    CHECK(rref(once).matrix == once);
  }
}

TEST_CASE("rational parsing and Zp arithmetic") {
  CHECK(Rational::parse("-3/6") == Rational(mpq_class(-1, 2)));
  CHECK(Rational::parse("0.25") == Rational(mpq_class(1, 4)));
  CHECK_THROWS(Rational::parse("1/0"));
  ModulusScope gf7(7);
  CHECK(Zp(3) * Zp(5) == Zp(1));
  CHECK(Zp(3).inverse() == Zp(5));
  CHECK(Zp::parse("1/2") == Zp(4));
  CHECK(Zp(-1) == Zp(6));
}

TEST_CASE("incremental basis expresses dependent vectors") {
  IncrementalBasis<Rational> b(3);
  Vec<Rational> u(3), v(3), w(3);
  u << Rational(1), Rational(1), Rational(0);
  v << Rational(0), Rational(1), Rational(1);
  w << Rational(2), Rational(5), Rational(3);
  CHECK(!b.insert_or_express(u));
  CHECK(!b.insert_or_express(v));
  auto c = b.insert_or_express(w);
  REQUIRE(c);
  CHECK((*c)(0) == Rational(2));
  CHECK((*c)(1) == Rational(3));
}
