/**
 * @file spec.hpp
 * @brief Network instances, reduced-rank certificates and the library error type.
 *
 * A K-user interference network has M[k] transmit and N[k] receive antennas
 * per user.  D[j][i] (j != i) caps the rank of the cross link from
 * transmitter i to receiver j.  Users are 0-based in C++ and 1-based in
 * every serialized form.
 */
#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace halfcake {

using Rational = boost::rational<std::int64_t>;

enum class Errc {
  InvalidArgument,
  Parse,
  Io,
  BadShape,
  RankExceedsDimension,
  NotSquareCase,
  NotSquare,
  WrongK,
  NotSymmetric,
  ConditionFails,
  CertificateInfeasible,
  DominantUser,
  PlanViolatesReplicationRules,
  BadPartition,
  NonUniformMu,
  DimensionMismatch,
  NullSpaceEmpty,
  DegenerateDesiredDifference,
  UnknownTarget,
  Internal,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Cross link from transmitter `tx` to receiver `rx`.
struct Link {
  int rx = 0;
  int tx = 0;
  bool desired() const { return rx == tx; }
  friend bool operator==(const Link&, const Link&) = default;
};

struct NetworkSpec {
  int K = 0;
  std::vector<int> M;
  std::vector<int> N;
  // D[j][i]: rank cap of the link transmitter i -> receiver j.  Diagonal is
  // unused and held at zero.
  std::vector<std::vector<int>> D;

  int m_sum() const;
  int n_sum() const;
  bool square() const { return M == N; }
  int rank(int rx, int tx) const { return D[rx][tx]; }
  int max_rank(int rx, int tx) const;

  /// Square network with every cross link at full rank min(M_i, M_j).
  static NetworkSpec full_rank(std::vector<int> M, std::vector<int> N);
  static NetworkSpec square_full_rank(std::vector<int> M) { return full_rank(M, M); }

  friend bool operator==(const NetworkSpec&, const NetworkSpec&) = default;
};

/// Checks every structural invariant and returns the network unchanged.
/// Throws Error{BadShape} or Error{RankExceedsDimension}.
NetworkSpec validate_spec(NetworkSpec raw);

/// Size consistency only (K >= 1, matching vectors, rank caps in range).
/// Realization builders accept the degenerate single-user network through this.
void check_shape(const NetworkSpec& spec);

/// Entrywise-lowered ranks whose row and column sums hit every M_k.
struct ReducedRankCertificate {
  std::vector<std::vector<int>> dbar;  // dbar[j][i], diagonal zero
  friend bool operator==(const ReducedRankCertificate&, const ReducedRankCertificate&) = default;
};

/// Empty string when `cert` is a valid certificate for the square `spec`,
/// otherwise a description of the first violated condition.
std::string certificate_violation(const NetworkSpec& spec, const ReducedRankCertificate& cert);
bool certificate_valid(const NetworkSpec& spec, const ReducedRankCertificate& cert);

/// Relabels users: user `a` of the result is user `perm[a]` of the input.
NetworkSpec permute_spec(const NetworkSpec& spec, const std::vector<int>& perm);
ReducedRankCertificate permute_certificate(const ReducedRankCertificate& cert,
                                           const std::vector<int>& perm);
std::vector<int> inverse_permutation(const std::vector<int>& perm);

/// Square network with K in [k_min, k_max], M_k in [1, m_max] and every
/// cross rank uniform on [0, min(M_i, M_j)].
NetworkSpec random_square_spec(std::mt19937_64& rng, int k_min, int k_max, int m_max);

}  // namespace halfcake
