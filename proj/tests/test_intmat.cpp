#include "bohrwalk/intmat.hpp"

#include "doctest.h"
#include "helpers.hpp"

using namespace bohrwalk;
using testing::mat;

TEST_SUITE("intmat") {

TEST_CASE("coords_of lists entries row-major without the last diagonal entry") {
  CHECK(coords_of(Traceless(mat({{1, 2}, {3, -1}}))).vector() == testing::mat({{1}, {2}, {3}}).col(0));
  CHECK(coords_of(Traceless::zero(3)) == Coords::zero(3));
  const Traceless a(mat({{1, 2, 3}, {4, 5, 6}, {7, 8, -6}}));
  const Coords v = coords_of(a);
  REQUIRE(v.size() == 8);
  for (int i = 0; i < 8; ++i) CHECK(v[i] == i + 1);
}

TEST_CASE("coords_to rebuilds the last diagonal entry") {
  IntVector v(3);
  v << 1, 2, 3;
  CHECK(coords_to(Coords(2, v)) == Traceless(mat({{1, 2}, {3, -1}})));
  CHECK(coords_to(Coords::zero(4)) == Traceless::zero(4));
  CHECK_THROWS_AS(Coords(2, IntVector::Zero(4)), std::invalid_argument);

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> e(-1000, 1000);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 3;
    IntVector w(traceless_dim(d));
    for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = BigInt(e(rng));
    const Coords c(d, w);
    CHECK(coords_of(coords_to(c)) == c);
  }
}

TEST_CASE("traceless and unimodular constructors validate") {
  CHECK_THROWS_AS(Traceless(mat({{1, 0}, {0, 0}})), std::invalid_argument);
  CHECK_THROWS_AS(Unimodular(mat({{2, 0}, {0, 1}})), std::invalid_argument);
  CHECK_THROWS_AS(Unimodular(mat({{1, 2, 3}, {4, 5, 6}})), std::invalid_argument);
}

TEST_CASE("conjugate by identity and by E12(1)") {
  std::mt19937_64 rng(3);
  const Traceless a = testing::random_traceless(3, 9, rng);
  CHECK(conjugate(Unimodular::identity(3), a) == a);

  const Unimodular e = elementary<BigInt>(2, 0, 1, 1);
  CHECK(e.matrix() == mat({{1, 1}, {0, 1}}));
  for (long x = -3; x <= 3; ++x)
    for (long y = -3; y <= 3; ++y)
      for (long z = -3; z <= 3; ++z) {
        const Traceless got = conjugate(e, Traceless(mat({{x, y}, {z, -x}})));
        CHECK(got == Traceless(mat({{x - z, 2 * x + y - z}, {z, z - x}})));
      }
}

TEST_CASE("conjugation preserves trace and characteristic polynomial") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 3;
    const Unimodular g = testing::random_word(d, 6, rng);
    const Traceless a = testing::random_traceless(d, 5, rng);
    const Traceless b = conjugate(g, a);
    CHECK(b.matrix().trace() == 0);
    CHECK(char_poly<BigInt>(b.matrix()) == char_poly<BigInt>(a.matrix()));
  }
}

TEST_CASE("adjoint matrix examples") {
  CHECK(adjoint_matrix(Unimodular::identity(3)).matrix() == identity_matrix<BigInt>(8));
  const Unimodular b2 = b_matrix<BigInt>(2);
  CHECK(adjoint_matrix(b2).matrix() == mat({{3, -2, 1}, {-4, 4, -1}, {2, -1, 1}}));
  CHECK(adjoint_matrix(elementary<BigInt>(2, 0, 1, 1)).matrix() == mat({{1, 0, -1}, {2, 1, -1}, {0, 0, 1}}));
}

TEST_CASE("adjoint matrix agrees with conjugation and is an anti-homomorphism of determinant one") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 3;
    const Unimodular g1 = testing::random_word(d, 5, rng);
    const Unimodular g2 = testing::random_word(d, 5, rng);
    const Adjoint ad1 = adjoint_matrix(g1);
    CHECK(determinant<BigInt>(ad1.matrix()) == 1);
    const Traceless h = testing::random_traceless(d, 4, rng);
    CHECK(coords_of(conjugate(g1, h)).vector() == ad1.matrix() * coords_of(h).vector());
    CHECK(adjoint_matrix(Unimodular(g1 * g2)).matrix() == adjoint_matrix(g2).matrix() * ad1.matrix());
  }
}

TEST_CASE("char_poly examples") {
  CHECK(testing::coeffs(char_poly<BigInt>(identity_matrix<BigInt>(3))) == std::vector<std::int64_t>{-1, 3, -3, 1});
  CHECK(testing::coeffs(char_poly<BigInt>(adjoint_matrix(b_matrix<BigInt>(2)).matrix())) ==
        std::vector<std::int64_t>{-1, 8, -8, 1});
  // (l - 1)^2 (l^2 - 7 l + 1) on the full 2x2 matrix space
  const IntMatrix corner = mat({{2, -2, 1, -1}, {-2, 4, -1, 2}, {1, -1, 1, -1}, {-1, 2, -1, 2}});
  CHECK(testing::coeffs(char_poly<BigInt>(corner)) == std::vector<std::int64_t>{1, -9, 16, -9, 1});
}

TEST_CASE("char_poly matches the principal-minor expansion") {
  // every 2x2 matrix with entries in -2..2
  for (int code = 0; code < 625; ++code) {
    oracle::Mat m(2, std::vector<std::int64_t>(2));
    int c = code;
    for (auto& row : m)
      for (auto& v : row) {
        v = c % 5 - 2;
        c /= 5;
      }
    CHECK(testing::coeffs(char_poly<BigInt>(testing::from_oracle(m))) == oracle::char_poly(m));
  }
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> e(-2, 2);
  for (int trial = 0; trial < 1500; ++trial) {
    const int d = trial < 1000 ? 3 : 4;
    oracle::Mat m(d, std::vector<std::int64_t>(d));
    for (auto& row : m)
      for (auto& v : row) v = e(rng);
    CHECK(testing::coeffs(char_poly<BigInt>(testing::from_oracle(m))) == oracle::char_poly(m));
  }
}

TEST_CASE("determinant and inverse") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> e(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + trial % 4;
    oracle::Mat m(d, std::vector<std::int64_t>(d));
    for (auto& row : m)
      for (auto& v : row) v = e(rng);
    CHECK(determinant<BigInt>(testing::from_oracle(m)) == oracle::det(m));
  }
  for (int trial = 0; trial < 50; ++trial) {
    const Unimodular g = testing::random_word(3, 8, rng);
    CHECK(g * g.inverse() == Unimodular::identity(3));
  }
}

TEST_CASE("elementary generators") {
  CHECK(elementary_generators<BigInt>(2).size() == 4);
  CHECK(elementary_generators<BigInt>(3).size() == 12);
  for (const auto& g : elementary_generators<BigInt>(4)) {
    CHECK(determinant<BigInt>(g.matrix()) == 1);
    // symmetric set
    bool has_inverse = false;
    for (const auto& h : elementary_generators<BigInt>(4)) has_inverse = has_inverse || h == g.inverse();
    CHECK(has_inverse);
  }
}

TEST_CASE("b_matrix") {
  CHECK(b_matrix<BigInt>(2).matrix() == mat({{1, -1}, {-1, 2}}));
  CHECK(b_matrix<BigInt>(3).matrix() == mat({{1, -1, 0}, {-1, 2, 0}, {0, 0, 1}}));
  for (int d = 2; d <= 6; ++d) CHECK(determinant<BigInt>(b_matrix<BigInt>(d).matrix()) == 1);
  CHECK_THROWS(b_matrix<BigInt>(1));
}

TEST_CASE("traceless companion realizes its polynomial") {
  const IntPolynomial p({BigInt(-7), BigInt(0), BigInt(1)});
  const Traceless c = traceless_companion(p);
  CHECK(char_poly<BigInt>(c.matrix()) == p);
  CHECK_THROWS_AS(traceless_companion(IntPolynomial({BigInt(1), BigInt(2), BigInt(1)})), std::invalid_argument);
  CHECK_THROWS_AS(IntPolynomial({BigInt(1), BigInt(2)}), std::invalid_argument);
}

TEST_CASE("entries past 64 bits stay exact") {
  Unimodular g = Unimodular::identity(2);
  const Unimodular b = b_matrix<BigInt>(2);
  for (int i = 0; i < 60; ++i) g = g * b;
  CHECK_FALSE(fits_int64(g.matrix()(1, 1)));
  CHECK(determinant<BigInt>(g.matrix()) == 1);
  CHECK(g * g.inverse() == Unimodular::identity(2));
}

}
