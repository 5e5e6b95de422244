/**
 * @file schemes.hpp
 * @brief Linear achievability schemes over symbol extensions and their
 * verification against the zero-interference / full-desired-rank equations.
 *
 * Over n channel uses transmitter k sends m_k streams through the
 * (n M_k) x m_k beamformer V_k and receiver k applies the m_k x (n N_k)
 * filter U_k.  A scheme is valid when U_j Hex_ji V_i = 0 for every j != i and
 * U_k Hex_kk V_k has rank m_k, where Hex is block diagonal over the slots.
 *
 * Two-slot schemes mix two kinds of streams: fresh streams carry a new
 * symbol per slot (block-diagonal columns [v;0], [0;v]) and repeated streams
 * carry the same symbol in both slots (stacked columns [v;v]) so that
 * subtracting the slots removes every unchanged cross channel.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "halfcake/channel.hpp"

namespace halfcake {

struct UserScheme {
  int m = 0;
  CMatrix V;  // (n M_k) x m
  CMatrix U;  // m x (n N_k)
};

struct LinearScheme {
  int n = 1;
  std::vector<UserScheme> users;

  Rational dof(int k) const { return Rational(users[k].m, n); }
  Rational sum_dof() const;
  std::vector<Rational> dof_tuple() const;
};

struct VerificationReport {
  // residual[j][i]: ||U_j Hex_ji V_i|| / (||U_j|| ||Hex_ji|| ||V_i||), 0 on the diagonal.
  std::vector<std::vector<double>> residual;
  std::vector<int> desired_rank;
  std::vector<int> streams;
  double max_residual = 0.0;
  double tolerance = kDefaultTolerance;
  bool pass = false;
  Rational sum_dof{0};
};

/// Evaluates both equation families.  `tol` bounds the relative residuals and
/// is the relative singular-value cutoff for the desired ranks.
/// Throws Error{DimensionMismatch}.
VerificationReport verify_scheme(const ExtendedRealization& ext, const LinearScheme& scheme,
                                 double tol = kDefaultTolerance);

/// Repetition over two slots with equal cross channels; each receiver
/// subtracts its outputs.  d_k = min(M_k, N_k) / 2.
LinearScheme ergodic_half_cake(const ExtendedRealization& ext);

/// Two zero-forced streams of users 1 and 2 aligned at receiver 3, fresh in
/// each slot, on top of repeated streams.  Needs a nontrivial null space of
/// the stacked alignment system; throws Error{NullSpaceEmpty} otherwise.
/// Streams over two slots are (M1 + 1, M2 + 1, M3 - 1).
LinearScheme counterexample_scheme(const ExtendedRealization& ext, std::uint64_t seed = 0);

/// Aligned-pair scheme guarded by D12 + D21 < M1 + M2 - M3.
/// Throws Error{ConditionFails}.
LinearScheme aligned_pair_scheme(const ExtendedRealization& ext, std::uint64_t seed = 0);

/// User 1 sends one fresh stream invisible at receivers 2 and 3; everything
/// else is repeated.  Needs D21 + D31 < M1 and D12 + D13 < M1.
/// Streams over two slots are (M1 + 1, M2, M3).  Throws Error{ConditionFails}.
LinearScheme zero_forced_scheme(const ExtendedRealization& ext, std::uint64_t seed = 0);

/// Relabels a scheme built for the permuted network (user a built for user
/// perm[a]) back to the original labels.
LinearScheme unpermute_scheme(const LinearScheme& scheme, const std::vector<int>& perm);

/// One-shot (n = 1) scheme for the three-user (10x10)(8x10)(6x3) network with
/// H31 = 0; DoF (7, 3, 2).  Receive filters project away each receiver's
/// interference space.  Throws Error{NullSpaceEmpty} or Error{ConditionFails}
/// when the network has the wrong shape.
LinearScheme asymmetric_example_scheme(const ChannelRealization& real, std::uint64_t seed = 0);

/// Receive filters that annihilate each receiver's interference space; keeps
/// the first m_k rows of the orthonormal left null basis.
LinearScheme attach_zero_forcing_receivers(const ExtendedRealization& ext, LinearScheme scheme);

/// Dimension of the span of all interference at receiver `rx`.
int interference_dimension(const ExtendedRealization& ext, const LinearScheme& scheme, int rx,
                           double tol = kDefaultTolerance);

/// Width of col(A) intersect col(B), via the null space of [A, -B].
int subspace_intersection_width(const CMatrix& a, const CMatrix& b, double tol = kDefaultTolerance);

/// Tries seeds seed, seed+1, ... until `build` yields a scheme that verifies
/// on a fresh realization; constructors assume genericity and this absorbs
/// the measure-zero failures.
struct VerifiedScheme {
  ExtendedRealization ext;
  LinearScheme scheme;
  VerificationReport report;
  std::uint64_t seed = 0;
};

VerifiedScheme construct_verified(
    const std::function<ExtendedRealization(std::uint64_t)>& realize,
    const std::function<LinearScheme(const ExtendedRealization&, std::uint64_t)>& build,
    std::uint64_t seed, double tol = kDefaultTolerance, int attempts = 4);

}  // namespace halfcake
