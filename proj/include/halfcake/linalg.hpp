/**
 * @file linalg.hpp
 * @brief Rank and null-space kernels over complex doubles and GF(2^61 - 1).
 */
#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "halfcake/prime_field.hpp"

namespace halfcake {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using FMatrix = field::Matrix;

/// Relative singular-value cutoff used wherever a tolerance is not supplied.
inline constexpr double kDefaultTolerance = 1e-9;

struct ScalarDomain {
  enum class Kind { Complex, PrimeField };

  Kind kind = Kind::Complex;
  double tolerance = kDefaultTolerance;       // complex only, relative
  std::uint64_t modulus = field::kModulus;    // prime field only

  static ScalarDomain complex(double tol = kDefaultTolerance) { return {Kind::Complex, tol, 0}; }
  static ScalarDomain prime_field() { return {Kind::PrimeField, 0.0, field::kModulus}; }

  const char* name() const { return kind == Kind::Complex ? "complex" : "prime-field"; }
};

/// Numerical rank: singular values above `tol` times the largest one.
int rank(const CMatrix& mat, double tol = kDefaultTolerance);

/// Exact rank over the field.
int rank(const FMatrix& mat);

/// Orthonormal basis of the right null space, one basis vector per column.
/// Width is cols - rank(mat, tol); a full-column-rank input yields width 0.
CMatrix null_space_basis(const CMatrix& mat, double tol = kDefaultTolerance);

/// Orthonormal rows spanning {u : u * mat = 0}.
CMatrix left_null_space_basis(const CMatrix& mat, double tol = kDefaultTolerance);

/// Block-diagonal stacking of equal-shaped blocks.
CMatrix block_diagonal(const std::vector<CMatrix>& blocks);

}  // namespace halfcake
