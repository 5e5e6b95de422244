#include "halfcake/prime_field.hpp"

#include <algorithm>
#include <cassert>

namespace halfcake::field {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

void Matrix::set_block(int row, int col, const Matrix& block) {
  assert(row + block.rows() <= rows_ && col + block.cols() <= cols_);
  for (int r = 0; r < block.rows(); ++r)
    for (int c = 0; c < block.cols(); ++c) (*this)(row + r, col + c) = block(r, c);
}

Matrix Matrix::block(int row, int col, int rows, int cols) const {
  Matrix out(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) out(r, c) = (*this)(row + r, col + c);
  return out;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Element x) { return x == 0; });
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  assert(a.cols() == b.rows());
  Matrix out(a.rows(), b.cols());
  for (int r = 0; r < a.rows(); ++r) {
    for (int k = 0; k < a.cols(); ++k) {
      const Element x = a(r, k);
      if (x == 0) continue;
      for (int c = 0; c < b.cols(); ++c) out(r, c) = add(out(r, c), mul(x, b(k, c)));
    }
  }
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  assert(a.rows() == b.rows() && a.cols() == b.cols());
  Matrix out(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out(r, c) = sub(a(r, c), b(r, c));
  return out;
}

namespace {

// Reduces `m` to row echelon form in place; returns the rank and the sign /
// pivot product needed for the determinant.
int eliminate(Matrix& m, Element* det) {
  int rank = 0;
  Element d = 1;
  for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
    int pivot = -1;
    for (int r = rank; r < m.rows(); ++r) {
      if (m(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) {
      d = 0;
      continue;
    }
    if (pivot != rank) {
      for (int c = col; c < m.cols(); ++c) std::swap(m(pivot, c), m(rank, c));
      d = neg(d);
    }
    const Element p = m(rank, col);
    d = mul(d, p);
    const Element p_inv = inv(p);
    for (int r = rank + 1; r < m.rows(); ++r) {
      if (m(r, col) == 0) continue;
      const Element f = mul(m(r, col), p_inv);
      for (int c = col; c < m.cols(); ++c) m(r, c) = sub(m(r, c), mul(f, m(rank, c)));
    }
    ++rank;
  }
  if (det) *det = rank == m.rows() ? d : 0;
  return rank;
}

}  // namespace

int rank(Matrix m) { return eliminate(m, nullptr); }

Element determinant(Matrix m) {
  assert(m.rows() == m.cols());
  Element d = 0;
  eliminate(m, &d);
  return d;
}

}  // namespace halfcake::field
