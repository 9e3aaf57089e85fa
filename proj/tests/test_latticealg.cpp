#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "vcspace/error.hpp"
#include "vcspace/latticealg.hpp"

using namespace vcspace;

namespace {

IntMatrix to_matrix(const oracle::Mat& m) {
  IntMatrix out(m.size(), m.empty() ? 0 : m[0].size());
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = m[i][j];
  return out;
}

oracle::Mat to_longs(const IntMatrix& m) {
  oracle::Mat out(m.rows(), std::vector<long>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).get_si();
  return out;
}

}  // namespace

TEST_CASE("rationals parse and print as p/q") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-2") == Rational(-2));
  CHECK(rational_string(make_rational(-4, 6)) == "-2/3");
  CHECK(floor_of(Rational(-1, 2)) == -1);
  CHECK(frac_of(Rational(-1, 3)) == Rational(2, 3));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
}

TEST_CASE("determinant agrees with cofactor expansion") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + trial % 5;
    auto m = oracle::random_matrix(rng, n, n, -6, 6);
    CHECK(determinant(to_matrix(m)) == oracle::det(m));
  }
}

TEST_CASE("smith form properties on random matrices") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + trial % 5, c = 1 + (trial / 5) % 5;
    IntMatrix a = to_matrix(oracle::random_matrix(rng, r, c, -9, 9));
    auto s = smith_normal_form(a);
    REQUIRE(s.U * a * s.V == s.D);
    CHECK(abs(determinant(s.U)) == 1);
    CHECK(abs(determinant(s.V)) == 1);
    Int prev = 1;
    bool zeroSeen = false;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        if (i != j) {
          CHECK(s.D(i, j) == 0);
          continue;
        }
        Int d = s.D(i, i);
        CHECK(d >= 0);
        if (d == 0) zeroSeen = true;
        else {
          CHECK_FALSE(zeroSeen);
          CHECK(d % prev == 0);
          prev = d;
        }
      }
  }
}

TEST_CASE("elementary divisors and rank") {
  CHECK(elementary_divisors(IntMatrix{{2, 0}, {0, 3}}) == std::vector<Int>{1, 6});
  CHECK(elementary_divisors(IntMatrix{{2, 4}, {4, 8}}) == std::vector<Int>{2});
  CHECK(integer_rank(IntMatrix{{1, 2, 3}, {2, 4, 6}}) == 1);
}

TEST_CASE("unimodular completion of primitive vectors in rank 2") {
  for (long a = -4; a <= 4; ++a)
    for (long b = -4; b <= 4; ++b) {
      IntVector v{a, b};
      if (std::gcd(std::labs(a), std::labs(b)) != 1) {
        CHECK_THROWS_AS(hnf_extend_primitive(v), Error);
        continue;
      }
      REQUIRE(oracle::bezout_column_exists(a, b, 4));
      IntMatrix m = hnf_extend_primitive(v);
      CHECK(m.column(0) == v);
      CHECK(oracle::det(to_longs(m)) == 1);
    }
}

TEST_CASE("unimodular inverse round trip") {
  IntMatrix m = hnf_extend_primitive(IntVector{3, 5, 7});
  CHECK(m * unimodular_inverse(m) == IntMatrix::identity(3));
  CHECK_THROWS_AS(unimodular_inverse(IntMatrix{{2, 0}, {0, 1}}), Error);
}

TEST_CASE("integer solves agree with a box search") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<long> rhs(-4, 4);
  int solvable = 0;
  for (int trial = 0; trial < 150; ++trial) {
    auto a = oracle::random_matrix(rng, 2, 3, -3, 3);
    std::vector<long> b{rhs(rng), rhs(rng)};
    IntVector bi{b[0], b[1]};
    auto x = solve_linear_integer(to_matrix(a), bi);
    bool boxed = oracle::box_solvable(a, b, 3, 4);
    if (boxed) {
      ++solvable;
      CHECK(x.has_value());
    }
    if (x) CHECK(to_matrix(a) * *x == bi);
  }
  CHECK(solvable > 20);
  CHECK_FALSE(solve_linear_integer(IntMatrix{{2, 0}, {0, 2}}, IntVector{1, 0}).has_value());
  CHECK_THROWS_AS(solve_linear_integer(IntMatrix{{1, 0}}, IntVector{1, 0}), Error);
}

TEST_CASE("lattice basis of generators") {
  auto basis = lattice_basis({IntVector{2, 0}, IntVector{0, 2}, IntVector{1, 1}}, 2);
  REQUIRE(basis.size() == 2);
  CHECK(abs(determinant(IntMatrix::from_columns(basis, 2))) == 2);
}

TEST_CASE("affine fixed spaces") {
  AffineMap flip{IntMatrix{{-1, 0}, {0, -1}}, {Rational(1), Rational(0)}};
  auto p = affine_fixed_space({flip}, 2);
  REQUIRE(p);
  CHECK(p->dimension() == 0);
  CHECK(p->base == RatVector{Rational(1, 2), Rational(0)});

  AffineMap mirror{IntMatrix{{1, 0}, {0, -1}}, {Rational(0), Rational(0)}};
  auto line = affine_fixed_space({mirror}, 2);
  REQUIRE(line);
  CHECK(line->dimension() == 1);

  AffineMap glide{IntMatrix{{1, 0}, {0, -1}}, {Rational(1, 2), Rational(0)}};
  CHECK_FALSE(affine_fixed_space({glide}, 2).has_value());
  CHECK(affine_fixed_space({}, 3)->dimension() == 3);
}
