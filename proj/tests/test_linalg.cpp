#include <doctest.h>

#include <random>

#include "halfcake/linalg.hpp"
#include "oracles.hpp"

using namespace halfcake;

namespace {

oracle::IntMatrix random_small(std::mt19937_64& rng, int rows, int cols, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  oracle::IntMatrix m(rows, std::vector<std::int64_t>(cols));
  for (auto& row : m)
    for (auto& x : row) x = d(rng);
  return m;
}

FMatrix to_field(const oracle::IntMatrix& m) {
  FMatrix f(static_cast<int>(m.size()), static_cast<int>(m[0].size()));
  for (int r = 0; r < f.rows(); ++r)
    for (int c = 0; c < f.cols(); ++c) f(r, c) = field::from_int(m[r][c]);
  return f;
}

CMatrix to_complex(const oracle::IntMatrix& m) {
  CMatrix c(static_cast<int>(m.size()), static_cast<int>(m[0].size()));
  for (int r = 0; r < c.rows(); ++r)
    for (int k = 0; k < c.cols(); ++k) c(r, k) = Complex(double(m[r][k]), 0.0);
  return c;
}

}  // namespace

TEST_CASE("field arithmetic obeys the Mersenne modulus") {
  using namespace field;
  CHECK(add(kModulus - 1, 1) == 0);
  CHECK(sub(0, 1) == kModulus - 1);
  CHECK(mul(kModulus - 1, kModulus - 1) == 1);  // (-1)^2
  CHECK(from_int(-5) == kModulus - 5);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const Element a = uniform(rng);
    if (a == 0) continue;
    CHECK(mul(a, inv(a)) == 1);
    const Element b = uniform(rng);
    const unsigned __int128 wide = static_cast<unsigned __int128>(a) * b % kModulus;
    CHECK(mul(a, b) == static_cast<Element>(wide));
  }
}

TEST_CASE("field determinant matches cofactor expansion") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + t % 5;
    const auto m = random_small(rng, n, n, -3, 3);
    CHECK(field::determinant(to_field(m)) == field::from_int(oracle::determinant(m)));
  }
}

TEST_CASE("field and complex ranks agree with the largest nonzero minor") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    const int rows = 1 + int(rng() % 5), cols = 1 + int(rng() % 5);
    // Narrow entry range so that rank deficiency happens often.
    const auto m = random_small(rng, rows, cols, -1, 1);
    const int expect = oracle::minor_rank(m);
    CHECK(field::rank(to_field(m)) == expect);
    CHECK(rank(to_complex(m)) == expect);
  }
}

TEST_CASE("low-rank products have the rank of their inner dimension") {
  std::mt19937_64 rng(8);
  for (int d = 0; d <= 4; ++d) {
    const FMatrix a = FMatrix::random(6, d, rng);
    const FMatrix b = FMatrix::random(d, 5, rng);
    CHECK(field::rank(a * b) == d);
  }
}

TEST_CASE("null space bases are orthonormal and annihilate the matrix") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 50; ++t) {
    const auto m = random_small(rng, 1 + int(rng() % 4), 1 + int(rng() % 6), -1, 1);
    const CMatrix a = to_complex(m);
    const int r = oracle::minor_rank(m);
    const CMatrix n = null_space_basis(a);
    REQUIRE(n.cols() == a.cols() - r);
    if (n.cols() == 0) continue;
    CHECK((a * n).norm() < 1e-9);
    CHECK((n.adjoint() * n - CMatrix::Identity(n.cols(), n.cols())).norm() < 1e-9);
    const CMatrix l = left_null_space_basis(a);
    CHECK(l.rows() == a.rows() - r);
    if (l.rows() > 0) CHECK((l * a).norm() < 1e-9);
  }
}

TEST_CASE("complex rank honours the relative tolerance") {
  CMatrix a = CMatrix::Identity(3, 3);
  a(2, 2) = 1e-12;
  CHECK(rank(a, 1e-9) == 2);
  CHECK(rank(a, 1e-13) == 3);
  CHECK(rank(CMatrix::Zero(3, 4)) == 0);
}
