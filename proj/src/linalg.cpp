#include "halfcake/linalg.hpp"

#include <vector>

namespace halfcake {

namespace {

int count_above(const Eigen::VectorXd& singular, double tol) {
  if (singular.size() == 0) return 0;
  const double top = singular(0);
  if (top == 0.0) return 0;
  int r = 0;
  for (Eigen::Index k = 0; k < singular.size(); ++k)
    if (singular(k) > tol * top) ++r;
  return r;
}

}  // namespace

int rank(const CMatrix& mat, double tol) {
  if (mat.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(mat);
  return count_above(svd.singularValues(), tol);
}

int rank(const FMatrix& mat) { return field::rank(mat); }

CMatrix null_space_basis(const CMatrix& mat, double tol) {
  const auto cols = mat.cols();
  if (cols == 0) return CMatrix(0, 0);
  if (mat.rows() == 0) return CMatrix::Identity(cols, cols);
  Eigen::JacobiSVD<CMatrix> svd(mat, Eigen::ComputeFullV);
  const int r = count_above(svd.singularValues(), tol);
  return svd.matrixV().rightCols(cols - r);
}

CMatrix left_null_space_basis(const CMatrix& mat, double tol) {
  return null_space_basis(mat.adjoint(), tol).adjoint();
}

CMatrix block_diagonal(const std::vector<CMatrix>& blocks) {
  Eigen::Index rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  CMatrix out = CMatrix::Zero(rows, cols);
  Eigen::Index r = 0, c = 0;
  for (const auto& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

}  // namespace halfcake
