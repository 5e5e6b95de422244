#include "halfcake/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace halfcake {

namespace {

constexpr double kDegenerateNorm = 1e-9;

CMatrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, std::sqrt(0.5));
  CMatrix m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = Complex(dist(rng), dist(rng));
  return m;
}

// Generic unit vector inside the column span of `basis`.
CMatrix generic_in_span(const CMatrix& basis, std::mt19937_64& rng) {
  CMatrix v = basis * random_matrix(static_cast<int>(basis.cols()), 1, rng);
  return v / v.norm();
}

// Generic unit row inside the row span of `basis`.
CMatrix generic_in_row_span(const CMatrix& basis, std::mt19937_64& rng) {
  CMatrix u = random_matrix(1, static_cast<int>(basis.rows()), rng) * basis;
  return u / u.norm();
}

// [v;0] or [0;v] over two slots.
CMatrix fresh_column(const CMatrix& v, int slot) {
  CMatrix out = CMatrix::Zero(2 * v.rows(), v.cols());
  out.block(slot * v.rows(), 0, v.rows(), v.cols()) = v;
  return out;
}

CMatrix fresh_row(const CMatrix& u, int slot) {
  CMatrix out = CMatrix::Zero(u.rows(), 2 * u.cols());
  out.block(0, slot * u.cols(), u.rows(), u.cols()) = u;
  return out;
}

// [V;V]: same symbol in both slots.
CMatrix repeated_columns(const CMatrix& v) {
  CMatrix out(2 * v.rows(), v.cols());
  out << v, v;
  return out;
}

// [U, -U]: difference of the two slot outputs.
CMatrix subtracting_rows(const CMatrix& u) {
  CMatrix out(u.rows(), 2 * u.cols());
  out << u, -u;
  return out;
}

CMatrix hcat(const std::vector<CMatrix>& parts) {
  Eigen::Index rows = 0, cols = 0;
  for (const auto& p : parts) {
    if (p.cols() == 0) continue;
    rows = p.rows();
    cols += p.cols();
  }
  CMatrix out(rows, cols);
  Eigen::Index c = 0;
  for (const auto& p : parts) {
    if (p.cols() == 0) continue;
    out.middleCols(c, p.cols()) = p;
    c += p.cols();
  }
  return out;
}

CMatrix vcat(const std::vector<CMatrix>& parts) {
  Eigen::Index rows = 0, cols = 0;
  for (const auto& p : parts) {
    if (p.rows() == 0) continue;
    cols = p.cols();
    rows += p.rows();
  }
  CMatrix out(rows, cols);
  Eigen::Index r = 0;
  for (const auto& p : parts) {
    if (p.rows() == 0) continue;
    out.middleRows(r, p.rows()) = p;
    r += p.rows();
  }
  return out;
}

void require_ergodic_pair(const ExtendedRealization& ext) {
  if (ext.n() != 2) throw Error(Errc::InvalidArgument, "scheme needs a two-slot extension");
  const auto& s = ext.spec();
  for (int j = 0; j < s.K; ++j) {
    for (int i = 0; i < s.K; ++i) {
      if (i == j) continue;
      const CMatrix& a = ext.slots[0].at(j, i);
      const CMatrix& b = ext.slots[1].at(j, i);
      if ((a - b).norm() > 1e-12 * std::max(1.0, a.norm()))
        throw Error(Errc::InvalidArgument, "cross channels differ between the two slots");
    }
  }
}

void require_square_three_users(const NetworkSpec& s) {
  if (s.K != 3) throw Error(Errc::WrongK, "scheme is defined for three users");
  if (!s.square()) throw Error(Errc::NotSquareCase, "scheme needs M = N");
}

UserScheme repeated_user(const CMatrix& V, const CMatrix& U) {
  return {static_cast<int>(V.cols()), repeated_columns(V), subtracting_rows(U)};
}

// Repeated streams on a generic (M-1)-dimensional subspace plus one fresh
// stream per slot on (v, u).
UserScheme fresh_plus_repeated(const CMatrix& v, const CMatrix& u, int M, std::mt19937_64& rng) {
  const CMatrix Ve = random_matrix(M, M - 1, rng);
  const CMatrix Ue = random_matrix(M - 1, M, rng);
  UserScheme us;
  us.V = hcat({fresh_column(v, 0), fresh_column(v, 1), repeated_columns(Ve)});
  us.U = vcat({fresh_row(u, 0), fresh_row(u, 1), subtracting_rows(Ue)});
  us.m = M + 1;
  return us;
}

LinearScheme aligned_pair(const ExtendedRealization& ext, std::uint64_t seed) {
  const auto& s = ext.spec();
  const auto& H = ext.slots[0];
  const int M1 = s.M[0], M2 = s.M[1], M3 = s.M[2];
  std::mt19937_64 rng(seed);

  // H21 v1 = 0, H12 v2 = 0, H31 v1 = H32 v2.
  CMatrix A = CMatrix::Zero(s.N[1] + s.N[0] + s.N[2], M1 + M2);
  A.block(0, 0, s.N[1], M1) = H.at(1, 0);
  A.block(s.N[1], M1, s.N[0], M2) = H.at(0, 1);
  A.block(s.N[1] + s.N[0], 0, s.N[2], M1) = H.at(2, 0);
  A.block(s.N[1] + s.N[0], M1, s.N[2], M2) = -H.at(2, 1);
  const CMatrix null_a = null_space_basis(A);
  if (null_a.cols() == 0) throw Error(Errc::NullSpaceEmpty, "transmit alignment system has full column rank");
  const CMatrix v = generic_in_span(null_a, rng);
  const CMatrix v1 = v.topRows(M1), v2 = v.bottomRows(M2);

  // u1 H12 = 0, u2 H21 = 0, u1 H13 = u2 H23.
  CMatrix B = CMatrix::Zero(s.N[0] + s.N[1], M2 + M1 + M3);
  B.block(0, 0, s.N[0], M2) = H.at(0, 1);
  B.block(s.N[0], M2, s.N[1], M1) = H.at(1, 0);
  B.block(0, M2 + M1, s.N[0], M3) = H.at(0, 2);
  B.block(s.N[0], M2 + M1, s.N[1], M3) = -H.at(1, 2);
  const CMatrix null_b = left_null_space_basis(B);
  if (null_b.rows() == 0) throw Error(Errc::NullSpaceEmpty, "receive alignment system has full row rank");
  const CMatrix u = generic_in_row_span(null_b, rng);
  const CMatrix u1 = u.leftCols(s.N[0]), u2 = u.rightCols(s.N[1]);

  const CMatrix aligned = H.at(2, 1) * v2;
  const CMatrix seen = u2 * H.at(1, 2);
  if (v1.norm() < kDegenerateNorm || v2.norm() < kDegenerateNorm || u1.norm() < kDegenerateNorm ||
      u2.norm() < kDegenerateNorm || aligned.norm() < kDegenerateNorm || seen.norm() < kDegenerateNorm)
    throw Error(Errc::NullSpaceEmpty, "alignment vectors are degenerate for this realization");

  // User 3 repeats M3 - 1 streams orthogonal to what the fresh streams leave behind.
  const CMatrix V3 = null_space_basis(seen).leftCols(M3 - 1);
  const CMatrix U3 = left_null_space_basis(aligned).topRows(M3 - 1);

  LinearScheme scheme;
  scheme.n = 2;
  scheme.users.push_back(fresh_plus_repeated(v1, u1, M1, rng));
  scheme.users.push_back(fresh_plus_repeated(v2, u2, M2, rng));
  scheme.users.push_back(repeated_user(V3, U3));
  return scheme;
}

}  // namespace

Rational LinearScheme::sum_dof() const {
  Rational total(0);
  for (std::size_t k = 0; k < users.size(); ++k) total += dof(static_cast<int>(k));
  return total;
}

std::vector<Rational> LinearScheme::dof_tuple() const {
  std::vector<Rational> out;
  for (std::size_t k = 0; k < users.size(); ++k) out.push_back(dof(static_cast<int>(k)));
  return out;
}

VerificationReport verify_scheme(const ExtendedRealization& ext, const LinearScheme& input, double tol) {
  const auto& s = ext.spec();
  if (input.n != ext.n() || static_cast<int>(input.users.size()) != s.K)
    throw Error(Errc::DimensionMismatch, "scheme and realization disagree on n or K");
  // A silent user may come in with empty matrices of any shape.
  LinearScheme scheme = input;
  for (int k = 0; k < s.K; ++k) {
    auto& u = scheme.users[k];
    if (u.m == 0 && u.V.size() == 0 && u.U.size() == 0) {
      u.V = CMatrix::Zero(scheme.n * s.M[k], 0);
      u.U = CMatrix::Zero(0, scheme.n * s.N[k]);
    }
  }
  for (int k = 0; k < s.K; ++k) {
    const auto& u = scheme.users[k];
    if (u.m < 0 || u.V.rows() != scheme.n * s.M[k] || u.V.cols() != u.m ||
        u.U.cols() != scheme.n * s.N[k] || u.U.rows() != u.m)
      throw Error(Errc::DimensionMismatch,
                  "beamformer or filter shape mismatch for user " + std::to_string(k + 1));
  }

  VerificationReport rep;
  rep.tolerance = tol;
  rep.residual.assign(s.K, std::vector<double>(s.K, 0.0));
  rep.pass = true;
  for (int j = 0; j < s.K; ++j) {
    const auto& Uj = scheme.users[j].U;
    for (int i = 0; i < s.K; ++i) {
      const auto& Vi = scheme.users[i].V;
      const CMatrix H = ext.extended(j, i);
      if (i == j) {
        const int r = rank(CMatrix(Uj * H * Vi), tol);
        rep.desired_rank.push_back(r);
        rep.streams.push_back(scheme.users[j].m);
        if (r != scheme.users[j].m) rep.pass = false;
        continue;
      }
      const double denom = Uj.norm() * H.norm() * Vi.norm();
      const double res = denom == 0.0 ? 0.0 : (Uj * H * Vi).norm() / denom;
      rep.residual[j][i] = res;
      rep.max_residual = std::max(rep.max_residual, res);
      if (res > tol) rep.pass = false;
    }
  }
  rep.sum_dof = scheme.sum_dof();
  return rep;
}

LinearScheme ergodic_half_cake(const ExtendedRealization& ext) {
  require_ergodic_pair(ext);
  const auto& s = ext.spec();
  LinearScheme scheme;
  scheme.n = 2;
  for (int k = 0; k < s.K; ++k) {
    const int M = s.M[k], N = s.N[k];
    const int m = std::min(M, N);
    const CMatrix diff = ext.slots[0].at(k, k) - ext.slots[1].at(k, k);
    if (rank(diff) != m)
      throw Error(Errc::DegenerateDesiredDifference,
                  "desired difference of user " + std::to_string(k + 1) + " is rank deficient");
    CMatrix V = CMatrix::Identity(M, M), W = CMatrix::Identity(N, N);
    if (M != N) {
      Eigen::JacobiSVD<CMatrix> svd(diff, Eigen::ComputeFullU | Eigen::ComputeFullV);
      if (M > m) V = svd.matrixV().leftCols(m);
      if (N > m) W = svd.matrixU().leftCols(m).adjoint();
    }
    scheme.users.push_back(repeated_user(V, W));
  }
  return scheme;
}

LinearScheme counterexample_scheme(const ExtendedRealization& ext, std::uint64_t seed) {
  require_ergodic_pair(ext);
  require_square_three_users(ext.spec());
  return aligned_pair(ext, seed);
}

LinearScheme aligned_pair_scheme(const ExtendedRealization& ext, std::uint64_t seed) {
  require_ergodic_pair(ext);
  const auto& s = ext.spec();
  require_square_three_users(s);
  if (!(s.D[0][1] + s.D[1][0] < s.M[0] + s.M[1] - s.M[2]))
    throw Error(Errc::ConditionFails, "aligned pair needs D12 + D21 < M1 + M2 - M3");
  return aligned_pair(ext, seed);
}

LinearScheme zero_forced_scheme(const ExtendedRealization& ext, std::uint64_t seed) {
  require_ergodic_pair(ext);
  const auto& s = ext.spec();
  require_square_three_users(s);
  const int M1 = s.M[0];
  if (!(s.D[1][0] + s.D[2][0] < M1) || !(s.D[0][1] + s.D[0][2] < M1))
    throw Error(Errc::ConditionFails, "zero-forced stream needs D21 + D31 < M1 and D12 + D13 < M1");
  const auto& H = ext.slots[0];
  std::mt19937_64 rng(seed);

  CMatrix tx_block(s.N[1] + s.N[2], M1);
  tx_block << H.at(1, 0), H.at(2, 0);
  CMatrix rx_block(s.N[0], s.M[1] + s.M[2]);
  rx_block << H.at(0, 1), H.at(0, 2);
  const CMatrix null_tx = null_space_basis(tx_block);
  const CMatrix null_rx = left_null_space_basis(rx_block);
  if (null_tx.cols() == 0 || null_rx.rows() == 0)
    throw Error(Errc::NullSpaceEmpty, "no zero-forcing direction for user 1");
  const CMatrix v1 = generic_in_span(null_tx, rng);
  const CMatrix u1 = generic_in_row_span(null_rx, rng);

  LinearScheme scheme;
  scheme.n = 2;
  scheme.users.push_back(fresh_plus_repeated(v1, u1, M1, rng));
  for (int k = 1; k < 3; ++k)
    scheme.users.push_back(repeated_user(CMatrix::Identity(s.M[k], s.M[k]),
                                         CMatrix::Identity(s.N[k], s.N[k])));
  return scheme;
}

LinearScheme unpermute_scheme(const LinearScheme& scheme, const std::vector<int>& perm) {
  LinearScheme out = scheme;
  for (std::size_t a = 0; a < perm.size(); ++a) out.users[perm[a]] = scheme.users[a];
  return out;
}

LinearScheme attach_zero_forcing_receivers(const ExtendedRealization& ext, LinearScheme scheme) {
  const auto& s = ext.spec();
  for (int k = 0; k < s.K; ++k) {
    std::vector<CMatrix> parts;
    for (int j = 0; j < s.K; ++j)
      if (j != k) parts.push_back(ext.extended(k, j) * scheme.users[j].V);
    CMatrix interference = hcat(parts);
    const int dim = scheme.n * s.N[k];
    if (interference.cols() == 0) interference = CMatrix::Zero(dim, 0);
    const CMatrix free_rows = interference.cols() == 0 ? CMatrix(CMatrix::Identity(dim, dim))
                                                       : left_null_space_basis(interference);
    const int m = scheme.users[k].m;
    if (free_rows.rows() < m)
      throw Error(Errc::ConditionFails,
                  "interference at receiver " + std::to_string(k + 1) + " leaves fewer than " +
                      std::to_string(m) + " dimensions");
    scheme.users[k].U = free_rows.topRows(m);
  }
  return scheme;
}

int interference_dimension(const ExtendedRealization& ext, const LinearScheme& scheme, int rx, double tol) {
  const auto& s = ext.spec();
  std::vector<CMatrix> parts;
  for (int j = 0; j < s.K; ++j)
    if (j != rx) parts.push_back(ext.extended(rx, j) * scheme.users[j].V);
  const CMatrix interference = hcat(parts);
  return interference.cols() == 0 ? 0 : rank(interference, tol);
}

int subspace_intersection_width(const CMatrix& a, const CMatrix& b, double tol) {
  CMatrix joint(a.rows(), a.cols() + b.cols());
  joint << a, -b;
  return static_cast<int>(null_space_basis(joint, tol).cols());
}

LinearScheme asymmetric_example_scheme(const ChannelRealization& real, std::uint64_t seed) {
  const auto& s = real.spec;
  const NetworkSpec expected = [] {
    NetworkSpec e = NetworkSpec::full_rank({10, 8, 6}, {10, 10, 3});
    e.D[2][0] = 0;
    return e;
  }();
  if (s.K != 3 || s.M != expected.M || s.N != expected.N || s.D != expected.D)
    throw Error(Errc::ConditionFails, "construction is specific to the (10x10)(8x10)(6x3) network with H31 = 0");
  std::mt19937_64 rng(seed);
  const CMatrix& H12 = real.at(0, 1);
  const CMatrix& H13 = real.at(0, 2);
  const CMatrix& H21 = real.at(1, 0);
  const CMatrix& H23 = real.at(1, 2);
  const CMatrix& H32 = real.at(2, 1);

  // H32 v21 = 0 and H12 v21 = H13 v31.
  CMatrix A = CMatrix::Zero(13, 14);
  A.block(0, 0, 3, 8) = H32;
  A.block(3, 0, 10, 8) = H12;
  A.block(3, 8, 10, 6) = -H13;
  const CMatrix null_a = null_space_basis(A);
  if (null_a.cols() == 0) throw Error(Errc::NullSpaceEmpty, "no aligned pair (v21, v31)");
  const CMatrix v = generic_in_span(null_a, rng);
  const CMatrix v21 = v.topRows(8), v31 = v.bottomRows(6);

  // v22 in null(H32), independent of v21.
  const CMatrix v22 = generic_in_span(null_space_basis(H32), rng);

  // H12 v23 = H13 v32 from the intersection of the two column spaces.
  CMatrix joint(10, 14);
  joint << H12, -H13;
  const CMatrix null_joint = null_space_basis(joint);
  if (null_joint.cols() == 0) throw Error(Errc::NullSpaceEmpty, "column spaces of H12 and H13 do not meet");
  const CMatrix w = generic_in_span(null_joint, rng);
  const CMatrix v23 = w.topRows(8), v32 = w.bottomRows(6);

  CMatrix V2(8, 3), V3(6, 2);
  V2 << v21, v22, v23;
  V3 << v31, v32;
  if (rank(V2) != 3 || rank(V3) != 2)
    throw Error(Errc::NullSpaceEmpty, "beamformers are not independent for this realization");

  // Transmitter 3's interference at receiver 2 hides inside transmitter 1's.
  Eigen::PartialPivLU<CMatrix> lu(H21);
  const CMatrix V1_aligned = lu.solve(CMatrix(H23 * V3));
  CMatrix V1(10, 7);
  V1 << V1_aligned, random_matrix(10, 5, rng);
  for (int c = 0; c < V1.cols(); ++c) V1.col(c).normalize();
  for (int c = 0; c < V2.cols(); ++c) V2.col(c).normalize();

  LinearScheme scheme;
  scheme.n = 1;
  scheme.users = {{7, V1, CMatrix()}, {3, V2, CMatrix()}, {2, V3, CMatrix()}};
  return attach_zero_forcing_receivers(single_slot(real), std::move(scheme));
}

VerifiedScheme construct_verified(
    const std::function<ExtendedRealization(std::uint64_t)>& realize,
    const std::function<LinearScheme(const ExtendedRealization&, std::uint64_t)>& build,
    std::uint64_t seed, double tol, int attempts) {
  std::string last = "no attempt made";
  for (int a = 0; a < attempts; ++a) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(a);
    try {
      VerifiedScheme out;
      out.ext = realize(s);
      out.scheme = build(out.ext, s);
      out.report = verify_scheme(out.ext, out.scheme, tol);
      out.seed = s;
      if (out.report.pass) return out;
      last = "verification failed";
    } catch (const Error& e) {
      if (e.code() != Errc::NullSpaceEmpty && e.code() != Errc::DegenerateDesiredDifference) throw;
      last = e.what();
    }
  }
  throw Error(Errc::NullSpaceEmpty, "no verified scheme after resampling: " + last);
}

}  // namespace halfcake
