/**
 * @file prime_field.hpp
 * @brief Arithmetic and dense matrices over GF(p), p = 2^61 - 1.
 *
 * Elements are canonical residues in [0, p).  The Mersenne modulus lets a
 * 122-bit product reduce with two shifts and an add.
 */
#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace halfcake::field {

inline constexpr std::uint64_t kModulus = (std::uint64_t{1} << 61) - 1;

using Element = std::uint64_t;

constexpr Element add(Element a, Element b) {
  Element s = a + b;
  return s >= kModulus ? s - kModulus : s;
}

constexpr Element sub(Element a, Element b) { return a >= b ? a - b : a + kModulus - b; }

constexpr Element neg(Element a) { return a == 0 ? 0 : kModulus - a; }

constexpr Element mul(Element a, Element b) {
  const unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
  Element lo = static_cast<Element>(prod) & kModulus;
  Element hi = static_cast<Element>(prod >> 61);
  return add(lo, hi);
}

constexpr Element pow(Element base, std::uint64_t exp) {
  Element acc = 1;
  while (exp != 0) {
    if (exp & 1) acc = mul(acc, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return acc;
}

/// Multiplicative inverse; `a` must be nonzero.
constexpr Element inv(Element a) { return pow(a, kModulus - 2); }

/// Maps a signed integer into the field.
constexpr Element from_int(std::int64_t v) {
  const auto m = static_cast<std::int64_t>(kModulus);
  std::int64_t r = v % m;
  if (r < 0) r += m;
  return static_cast<Element>(r);
}

/// Uniform draw from GF(p) by rejection on 61 random bits.
template <class Rng>
Element uniform(Rng& rng) {
  for (;;) {
    const Element x = static_cast<Element>(rng()) >> 3;
    if (x < kModulus) return x;
  }
}

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, 0) {}

  static Matrix zero(int rows, int cols) { return Matrix(rows, cols); }
  static Matrix identity(int n);
  template <class Rng>
  static Matrix random(int rows, int cols, Rng& rng) {
    Matrix m(rows, cols);
    for (auto& x : m.data_) x = uniform(rng);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Element& operator()(int r, int c) { return data_[std::size_t(r) * cols_ + c]; }
  Element operator()(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }

  void set_block(int row, int col, const Matrix& block);
  Matrix block(int row, int col, int rows, int cols) const;
  bool is_zero() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Element> data_;
};

/// Exact rank by Gaussian elimination.
int rank(Matrix m);

/// Determinant of a square matrix.
Element determinant(Matrix m);

}  // namespace halfcake::field
