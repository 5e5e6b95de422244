/**
 * @file feasibility.hpp
 * @brief Sufficient (and, in special cases, necessary) conditions under which
 * half the interference-free DoF is optimal for square rank-deficient
 * networks, with constructive reduced-rank certificates.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "halfcake/spec.hpp"
#include "halfcake/structural_rank.hpp"

namespace halfcake {

/// Outcome of the transportation max-flow: supply M_i at transmitter i,
/// demand M_j at receiver j, arc i -> j of capacity D[j][i].
struct FlowResult {
  std::optional<ReducedRankCertificate> certificate;
  int max_flow = 0;
  int required = 0;
  // Minimum cut when infeasible: transmitters and receivers left on the
  // source side after the last search (0-based).
  std::vector<int> cut_transmitters;
  std::vector<int> cut_receivers;
  int cut_capacity = 0;

  bool feasible() const { return certificate.has_value(); }
};

/// Decides whether reduced ranks Dbar <= D exist with every row and column
/// sum equal to M_k.  Throws Error{NotSquareCase}.
FlowResult reduced_rank_feasible(const NetworkSpec& spec);

/// Closed-form three-user test:
///   min{M1+D32, M2+D13, M3+D21} + min{M3+D12, M1+D23, M2+D31} >= M1+M2+M3.
/// Throws Error{WrongK} or Error{NotSquareCase}.
bool three_user_condition(const NetworkSpec& spec);

enum class SchemeFamily {
  None,
  ZeroForcedStream,  // one user's stream is invisible at both other receivers
  AlignedPair,       // two zero-forced streams aligned at the third receiver
};

const char* scheme_family_name(SchemeFamily f);

/// The nine linear inequalities obtained by expanding the three-user test,
/// numbered 1..9.  Inequality `id` reads sum of `lhs` ranks >= `rhs`.
struct RankInequality {
  int id = 0;
  std::vector<Link> lhs;
  int rhs = 0;
  std::string text;
};

std::vector<RankInequality> three_user_inequalities(const NetworkSpec& spec);

struct SymmetricClassification {
  bool half_cake_optimal = true;
  int violated = 0;  // first violated inequality id, 0 when none
  std::vector<int> all_violated;
  SchemeFamily family = SchemeFamily::None;
  // Users (0-based) the matching scheme is built around: the zero-forcing
  // user, or the aligned pair.
  std::vector<int> focus;
};

/// Three-user networks with D[j][i] = D[i][j].  Throws Error{NotSymmetric},
/// Error{WrongK} or Error{NotSquareCase}.
SymmetricClassification classify_symmetric_3user(const NetworkSpec& spec);

/// Explicit three-user certificate from the closed-form assignment, after
/// relabeling so that M1 + D23 attains the second minimum.
/// Throws Error{ConditionFails} when the three-user test fails.
ReducedRankCertificate assign_reduced_ranks_3user(const NetworkSpec& spec);

/// Chip-into-bin allocation for full-rank square networks without a
/// dominant user.  Throws Error{DominantUser} or Error{ConditionFails}.
ReducedRankCertificate greedy_chip_allocation(const NetworkSpec& spec);

/// Cyclic floor/ceil allocation for K users with M antennas each and all
/// cross ranks D.  Throws Error{ConditionFails} when (K-1) D < M.
ReducedRankCertificate symmetric_allocation(int K, int M, int D);

/// Greedy coefficient removal on the rank-one expansion of the stripped
/// matrix: visits coefficients in (rx, tx, m) order and pins each to zero
/// if the determinant stays a nonzero polynomial.  Returns nullopt when the
/// stripped matrix is not generically full rank.
std::optional<ReducedRankCertificate> necessity_reduction(const NetworkSpec& spec,
                                                          std::uint64_t seed = 0,
                                                          int trials = kDefaultTrials);

enum class VerdictStatus { OptimalCertified, MoreThanHalfPossible, Undecided };

const char* verdict_status_name(VerdictStatus s);

struct HalfCakeVerdict {
  VerdictStatus status = VerdictStatus::Undecided;
  Rational half_cake{0};
  std::optional<ReducedRankCertificate> certificate;
  std::optional<Rational> bound;
  std::vector<std::string> witnesses;
  std::vector<std::string> notes;
  std::optional<FlowResult> flow;
  std::optional<SymmetricClassification> symmetric;
  // Relabeling under which a boundary condition matched (user a of the
  // canonical form is user relabeling[a]).
  std::vector<int> relabeling;
};

inline const char* kWitnessFlow = "reduced-rank-flow";
inline const char* kWitnessSumAntennas = "boundary-sum-antennas";
inline const char* kWitnessEqualAntennas = "boundary-equal-antennas";
inline const char* kWitnessSymmetric = "symmetric-necessity";

/// Three-user boundary cases not covered by the reduced-rank condition:
///  (a) M1 = M2 + M3 with D12 = M2, D13 = M3 or D21 = M2, D31 = M3;
///  (b) M1 = M2 with D21 = M1, D31 = D23 = M3 or D12 = M1, D13 = D32 = M3;
/// each tried under all six relabelings.
HalfCakeVerdict boundary_case_verdict(const NetworkSpec& spec);

/// Flow certificate first, then boundary cases, then symmetric necessity.
HalfCakeVerdict half_cake_verdict(const NetworkSpec& spec);

}  // namespace halfcake
