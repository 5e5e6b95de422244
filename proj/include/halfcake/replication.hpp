/**
 * @file replication.hpp
 * @brief Replicated and created networks, two-group cooperation and the
 * resulting sum-DoF outer bounds.
 *
 * User k is replaced by mu_k replicas k^[0..mu_k-1].  Every replica keeps
 * the original desired link, and each replica receiver j^[b] hears exactly
 * one replica of every other transmitter i, chosen by the plan.  Any coding
 * scheme of the original network runs unchanged on every replica, so the
 * replicated network's sum-DoF bounds sum_k mu_k d_k.  Splitting the replicas
 * into two cooperating groups leaves a two-user channel bounded by
 * M1 + N2 - rank(Hcoop), with Hcoop the group-1 to group-2 interference.
 *
 * Replica ids are global: offset(k) + alpha, users in order.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "halfcake/schemes.hpp"
#include "halfcake/structural_rank.hpp"

namespace halfcake {

struct ReplicaId {
  int user = 0;
  int replica = 0;
  friend bool operator==(const ReplicaId&, const ReplicaId&) = default;
  friend auto operator<=>(const ReplicaId&, const ReplicaId&) = default;
};

enum class AssignKind { Table, Shifts, Mirror };

struct ReplicationPlan {
  std::vector<int> mu;
  // assign[g][i]: replica of transmitter i heard by replica receiver g
  // (global id); the entry for g's own user is unused and held at -1.
  std::vector<std::vector<int>> assign;
  // Two cooperating groups; group 0 transmits into group 1's receivers in Hcoop.
  std::vector<std::vector<ReplicaId>> partition;

  AssignKind kind = AssignKind::Table;
  std::vector<std::vector<int>> shifts;  // shifts[j][i], kept for Shifts/Mirror

  int replicas() const;
  int offset(int user) const;
  int id(const ReplicaId& r) const { return offset(r.user) + r.replica; }
  ReplicaId replica(int id) const;
  bool uniform() const;
};

/// Circulant assignment alpha = (beta + shifts[j][i]) mod mu_i.
std::vector<std::vector<int>> shift_assign(const std::vector<int>& mu,
                                           const std::vector<std::vector<int>>& shifts);

/// Plan from shifts; the partition is left empty.
ReplicationPlan shift_plan(std::vector<int> mu, const std::vector<std::vector<int>>& shifts);

/// Two replicas of every user; replica b of each receiver hears replica 1-b
/// of every other transmitter.
ReplicationPlan mirror_plan(int K);

/// mu = 1 everywhere: the original network.
ReplicationPlan identity_plan(int K);

/// First `count` replicas in replica-major order (1^[0], 2^[0], ...,
/// K^[0], 1^[1], ...) against the rest.  `prefix_first` selects which side
/// is group 0.
std::vector<std::vector<ReplicaId>> prefix_partition(const std::vector<int>& mu, int count,
                                                     bool prefix_first = true);

/// Every replica of the original users against every auxiliary replica.
std::vector<std::vector<ReplicaId>> replica_partition(const std::vector<int>& mu);

struct ReplicatedNetwork {
  NetworkSpec spec;                         // one user per replica
  std::vector<ReplicaId> users;             // global id -> replica
  std::vector<std::optional<Link>> links;   // (rx id, tx id) row-major -> original link

  const std::optional<Link>& link(int rx, int tx) const {
    return links[std::size_t(rx) * users.size() + tx];
  }
};

/// Validates both replication constraints and expands the plan.
/// Throws Error{PlanViolatesReplicationRules}.
ReplicatedNetwork build_replicated(const NetworkSpec& spec, const ReplicationPlan& plan);

struct CooperativeChannel {
  int Mbar1 = 0, Nbar1 = 0, Mbar2 = 0, Nbar2 = 0;
  BlockLayout hcoop;  // group-1 receivers x group-0 transmitters, cells are original links
};

/// Throws Error{BadPartition} unless the two groups are disjoint, nonempty
/// and cover every replica.
CooperativeChannel cooperate(const NetworkSpec& spec, const ReplicatedNetwork& rep,
                             const std::vector<std::vector<ReplicaId>>& partition);

enum class RankEvidence { Generic, Realized };

struct DofBound {
  Rational value{0};
  int mu = 1;
  int rank = 0;
  int Mbar1 = 0, Nbar1 = 0, Mbar2 = 0, Nbar2 = 0;
  ReplicationPlan plan;
  RankEvidence evidence = RankEvidence::Generic;
};

/// d_sum <= (Mbar1 + Nbar2 - rank(Hcoop)) / mu with the generic rank of Hcoop.
/// Throws Error{NonUniformMu}, Error{PlanViolatesReplicationRules}, Error{BadPartition}.
DofBound outer_bound(const NetworkSpec& spec, const ReplicationPlan& plan, int trials = kDefaultTrials,
                     std::uint64_t seed = 0);

/// Same bound evaluated on one explicit realization (exact field rank).
DofBound outer_bound(const NetworkSpec& spec, const ReplicationPlan& plan, const FieldRealization& real);

/// sum_k weights[k] d_k <= rhs.
struct WeightedDofStatement {
  std::vector<int> weights;
  int rhs = 0;
  int rank = 0;
  int Mbar1 = 0, Nbar2 = 0;
  ReplicationPlan plan;
  std::string text;
};

/// Replicated-network bound before dividing by mu; any replica counts.
/// Throws Error{PlanViolatesReplicationRules} or Error{BadPartition}.
WeightedDofStatement weighted_dof_bound(const NetworkSpec& spec, const ReplicationPlan& plan,
                                        int trials = kDefaultTrials, std::uint64_t seed = 0);

struct SearchResult {
  std::optional<DofBound> best;
  int evaluated = 0;
  int pruned = 0;
};

/// Bounded search over uniform mu <= mu_max, circulant shift assignments and
/// replica-major prefix partitions (either side as group 0).  Shift vectors
/// that depend only on (i - j) mod K are tried first, then all shift vectors
/// exhaustively when they fit in the remaining budget and a seeded sample
/// otherwise.  `budget` caps rank evaluations; deterministic in
/// (seed, budget).  Ties go to the smaller mu, then the smaller plan encoding.
SearchResult search_bounds(const NetworkSpec& spec, int mu_max, int budget, std::uint64_t seed = 0,
                           int trials = kDefaultTrials);

/// All-connected replica network: the cross link between j^[b] and i^[a] is
/// scalars * H_ji with a scalar uniform on [0, 1].
struct CreatedNetwork {
  NetworkSpec spec;                    // original network
  std::vector<int> mu;
  std::vector<ReplicaId> users;
  std::vector<double> scalars;         // (rx id, tx id) row-major; 0 within one user

  double scalar(int rx, int tx) const { return scalars[std::size_t(rx) * users.size() + tx]; }
  NetworkSpec replicated_spec() const;
};

CreatedNetwork build_created_network(const NetworkSpec& spec, const std::vector<int>& mu,
                                     std::uint64_t seed);

/// The created network driven by the channels of `ext`, slot by slot.
ExtendedRealization realize_created(const CreatedNetwork& net, const ExtendedRealization& ext);

/// Every replica of user k reuses V_k and U_k.
LinearScheme lift_scheme(const LinearScheme& scheme, const std::vector<int>& mu);

// 0/1 channels under which the worked-example cooperative matrices are
// nonsingular.

/// Three-user (2x3) network: H_{i,i+1} = [e1 e2], H_{i,i+2} = [e2 e3].
FieldRealization two_by_three_witness();

/// (10x10)(8x10)(6x3) network with H31 = 0.
FieldRealization asymmetric_example_witness();

/// Three users with M1 = M2, D21 = M1, D31 = D23 = M3: H21 = I,
/// H31 = [I 0], H23 = [I; 0], everything else zero.
FieldRealization equal_antennas_witness(const NetworkSpec& spec);

/// Full-rank three-user (2x3) spec, the mu = 5 shift plan and the
/// first-three-replicas partition.
NetworkSpec two_by_three_spec();
ReplicationPlan two_by_three_plan();

/// (10x10)(8x10)(6x3) spec with D31 = 0 and its mirrored plan.
NetworkSpec asymmetric_example_spec();
ReplicationPlan asymmetric_example_plan();

/// Mirrored plan with groups {1, 3, 1'} and {2', 3', 2}.
ReplicationPlan equal_antennas_plan();

}  // namespace halfcake
