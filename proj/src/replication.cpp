#include "halfcake/replication.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>
#include <sstream>

namespace halfcake {

namespace {

void plan_error(const std::string& what) { throw Error(Errc::PlanViolatesReplicationRules, what); }

FMatrix eye(int rows, int cols) {
  FMatrix m(rows, cols);
  for (int k = 0; k < std::min(rows, cols); ++k) m(k, k) = 1;
  return m;
}

FieldRealization zero_realization(const NetworkSpec& spec) {
  FieldRealization real{spec, 0, {}};
  for (int j = 0; j < spec.K; ++j)
    for (int i = 0; i < spec.K; ++i)
      real.blocks.push_back(i == j ? eye(spec.N[j], spec.M[i]) : FMatrix::zero(spec.N[j], spec.M[i]));
  return real;
}

struct GroupTotals {
  int Mbar1 = 0, Nbar1 = 0, Mbar2 = 0, Nbar2 = 0;
};

GroupTotals group_totals(const NetworkSpec& spec, const std::vector<std::vector<ReplicaId>>& partition) {
  GroupTotals t;
  for (const auto& r : partition[0]) {
    t.Mbar1 += spec.M[r.user];
    t.Nbar1 += spec.N[r.user];
  }
  for (const auto& r : partition[1]) {
    t.Mbar2 += spec.M[r.user];
    t.Nbar2 += spec.N[r.user];
  }
  return t;
}

DofBound make_bound(const CooperativeChannel& coop, const ReplicationPlan& plan, int rank,
                    RankEvidence evidence) {
  DofBound b;
  b.mu = plan.mu.front();
  b.rank = rank;
  b.Mbar1 = coop.Mbar1;
  b.Nbar1 = coop.Nbar1;
  b.Mbar2 = coop.Mbar2;
  b.Nbar2 = coop.Nbar2;
  b.value = Rational(coop.Mbar1 + coop.Nbar2 - rank, b.mu);
  b.plan = plan;
  b.evidence = evidence;
  return b;
}

void require_uniform(const ReplicationPlan& plan) {
  if (!plan.uniform()) throw Error(Errc::NonUniformMu, "sum-DoF bound needs equal replica counts");
}

std::vector<int> plan_key(const ReplicationPlan& plan, int count, bool prefix_first) {
  std::vector<int> key{plan.mu.front()};
  for (const auto& row : plan.shifts) key.insert(key.end(), row.begin(), row.end());
  key.push_back(prefix_first ? 0 : 1);
  key.push_back(count);
  return key;
}

// Saturating mu^c.
long long power_capped(int base, int exp, long long cap) {
  long long v = 1;
  for (int e = 0; e < exp; ++e) {
    if (v > cap / std::max(base, 1)) return cap + 1;
    v *= base;
  }
  return v;
}

}  // namespace

int ReplicationPlan::replicas() const {
  int total = 0;
  for (int m : mu) total += m;
  return total;
}

int ReplicationPlan::offset(int user) const {
  int off = 0;
  for (int k = 0; k < user; ++k) off += mu[k];
  return off;
}

ReplicaId ReplicationPlan::replica(int id) const {
  for (int k = 0; k < static_cast<int>(mu.size()); ++k) {
    if (id < mu[k]) return {k, id};
    id -= mu[k];
  }
  throw Error(Errc::InvalidArgument, "replica id out of range");
}

bool ReplicationPlan::uniform() const {
  return !mu.empty() && std::all_of(mu.begin(), mu.end(), [&](int m) { return m == mu.front(); });
}

std::vector<std::vector<int>> shift_assign(const std::vector<int>& mu,
                                           const std::vector<std::vector<int>>& shifts) {
  const int K = static_cast<int>(mu.size());
  std::vector<std::vector<int>> assign;
  for (int j = 0; j < K; ++j) {
    for (int b = 0; b < mu[j]; ++b) {
      std::vector<int> row(K, -1);
      for (int i = 0; i < K; ++i)
        if (i != j) row[i] = ((b + shifts[j][i]) % mu[i] + mu[i]) % mu[i];
      assign.push_back(std::move(row));
    }
  }
  return assign;
}

ReplicationPlan shift_plan(std::vector<int> mu, const std::vector<std::vector<int>>& shifts) {
  ReplicationPlan plan;
  plan.assign = shift_assign(mu, shifts);
  plan.mu = std::move(mu);
  plan.kind = AssignKind::Shifts;
  plan.shifts = shifts;
  return plan;
}

ReplicationPlan mirror_plan(int K) {
  std::vector<std::vector<int>> shifts(K, std::vector<int>(K, 1));
  for (int k = 0; k < K; ++k) shifts[k][k] = 0;
  ReplicationPlan plan = shift_plan(std::vector<int>(K, 2), shifts);
  plan.kind = AssignKind::Mirror;
  plan.partition = replica_partition(plan.mu);
  return plan;
}

ReplicationPlan identity_plan(int K) {
  ReplicationPlan plan =
      shift_plan(std::vector<int>(K, 1), std::vector<std::vector<int>>(K, std::vector<int>(K, 0)));
  plan.partition = prefix_partition(plan.mu, 1);
  return plan;
}

std::vector<std::vector<ReplicaId>> prefix_partition(const std::vector<int>& mu, int count,
                                                     bool prefix_first) {
  std::vector<ReplicaId> order;
  const int depth = mu.empty() ? 0 : *std::max_element(mu.begin(), mu.end());
  for (int a = 0; a < depth; ++a)
    for (int k = 0; k < static_cast<int>(mu.size()); ++k)
      if (a < mu[k]) order.push_back({k, a});
  if (count < 1 || count >= static_cast<int>(order.size()))
    throw Error(Errc::BadPartition, "prefix length must leave both groups nonempty");
  std::vector<ReplicaId> head(order.begin(), order.begin() + count);
  std::vector<ReplicaId> tail(order.begin() + count, order.end());
  if (prefix_first) return {head, tail};
  return {tail, head};
}

std::vector<std::vector<ReplicaId>> replica_partition(const std::vector<int>& mu) {
  std::vector<std::vector<ReplicaId>> groups(2);
  for (int k = 0; k < static_cast<int>(mu.size()); ++k)
    for (int a = 0; a < mu[k]; ++a) groups[a == 0 ? 0 : 1].push_back({k, a});
  return groups;
}

ReplicatedNetwork build_replicated(const NetworkSpec& spec, const ReplicationPlan& plan) {
  check_shape(spec);
  const int K = spec.K;
  if (static_cast<int>(plan.mu.size()) != K) plan_error("mu needs one entry per user");
  for (int m : plan.mu)
    if (m < 1) plan_error("every user needs at least one replica");
  const int R = plan.replicas();
  if (static_cast<int>(plan.assign.size()) != R) plan_error("assignment needs one row per replica receiver");

  ReplicatedNetwork rep;
  rep.links.assign(std::size_t(R) * R, std::nullopt);
  rep.spec.K = R;
  rep.spec.D.assign(R, std::vector<int>(R, 0));
  for (int g = 0; g < R; ++g) {
    const ReplicaId r = plan.replica(g);
    rep.users.push_back(r);
    rep.spec.M.push_back(spec.M[r.user]);
    rep.spec.N.push_back(spec.N[r.user]);
  }
  for (int g = 0; g < R; ++g) {
    const ReplicaId rx = rep.users[g];
    const auto& row = plan.assign[g];
    if (static_cast<int>(row.size()) != K) plan_error("assignment row needs one entry per user");
    // Desired link only to the matching replica; other replicas of the own user stay silent.
    rep.links[std::size_t(g) * R + g] = Link{rx.user, rx.user};
    for (int i = 0; i < K; ++i) {
      if (i == rx.user) continue;
      const int a = row[i];
      if (a < 0 || a >= plan.mu[i]) {
        std::ostringstream os;
        os << "receiver " << rx.user + 1 << "^[" << rx.replica + 1 << "] hears no valid replica of transmitter "
           << i + 1;
        plan_error(os.str());
      }
      const int t = plan.offset(i) + a;
      rep.links[std::size_t(g) * R + t] = Link{rx.user, i};
      rep.spec.D[g][t] = spec.D[rx.user][i];
    }
  }
  return rep;
}

CooperativeChannel cooperate(const NetworkSpec& spec, const ReplicatedNetwork& rep,
                             const std::vector<std::vector<ReplicaId>>& partition) {
  const int R = static_cast<int>(rep.users.size());
  if (partition.size() != 2 || partition[0].empty() || partition[1].empty())
    throw Error(Errc::BadPartition, "partition needs two nonempty groups");
  std::vector<int> seen(R, 0);
  std::vector<std::vector<int>> ids(2);
  for (int g = 0; g < 2; ++g) {
    for (const auto& r : partition[g]) {
      const auto it = std::find(rep.users.begin(), rep.users.end(), r);
      if (it == rep.users.end())
        throw Error(Errc::BadPartition, "partition names replica " + std::to_string(r.user + 1) + "^[" +
                                            std::to_string(r.replica + 1) + "] which does not exist");
      const int id = static_cast<int>(it - rep.users.begin());
      if (seen[id]++) throw Error(Errc::BadPartition, "replica listed twice in the partition");
      ids[g].push_back(id);
    }
  }
  if (std::count(seen.begin(), seen.end(), 0) != 0)
    throw Error(Errc::BadPartition, "partition leaves replicas unassigned");

  const GroupTotals t = group_totals(spec, partition);
  CooperativeChannel coop{t.Mbar1, t.Nbar1, t.Mbar2, t.Nbar2, {}};
  for (int rx : ids[1]) coop.hcoop.row_sizes.push_back(rep.spec.N[rx]);
  for (int tx : ids[0]) coop.hcoop.col_sizes.push_back(rep.spec.M[tx]);
  for (int rx : ids[1])
    for (int tx : ids[0]) coop.hcoop.cells.push_back(rep.link(rx, tx));
  return coop;
}

DofBound outer_bound(const NetworkSpec& spec, const ReplicationPlan& plan, int trials, std::uint64_t seed) {
  require_uniform(plan);
  const CooperativeChannel coop = cooperate(spec, build_replicated(spec, plan), plan.partition);
  return make_bound(coop, plan, generic_rank(spec, coop.hcoop, trials, seed), RankEvidence::Generic);
}

DofBound outer_bound(const NetworkSpec& spec, const ReplicationPlan& plan, const FieldRealization& real) {
  require_uniform(plan);
  if (!(real.spec == spec)) throw Error(Errc::DimensionMismatch, "realization belongs to another network");
  const CooperativeChannel coop = cooperate(spec, build_replicated(spec, plan), plan.partition);
  return make_bound(coop, plan, realized_rank(coop.hcoop, real), RankEvidence::Realized);
}

WeightedDofStatement weighted_dof_bound(const NetworkSpec& spec, const ReplicationPlan& plan, int trials,
                                        std::uint64_t seed) {
  const CooperativeChannel coop = cooperate(spec, build_replicated(spec, plan), plan.partition);
  WeightedDofStatement s;
  s.weights = plan.mu;
  s.rank = generic_rank(spec, coop.hcoop, trials, seed);
  s.Mbar1 = coop.Mbar1;
  s.Nbar2 = coop.Nbar2;
  s.rhs = coop.Mbar1 + coop.Nbar2 - s.rank;
  s.plan = plan;
  std::ostringstream os;
  for (std::size_t k = 0; k < s.weights.size(); ++k) {
    if (k) os << " + ";
    if (s.weights[k] != 1) os << s.weights[k] << " ";
    os << "d" << k + 1;
  }
  os << " <= " << s.rhs;
  s.text = os.str();
  return s;
}

SearchResult search_bounds(const NetworkSpec& spec, int mu_max, int budget, std::uint64_t seed, int trials) {
  check_shape(spec);
  if (mu_max < 1) throw Error(Errc::InvalidArgument, "mu_max must be at least 1");
  const int K = spec.K;
  std::vector<std::pair<int, int>> cross;
  for (int j = 0; j < K; ++j)
    for (int i = 0; i < K; ++i)
      if (i != j) cross.emplace_back(j, i);

  SearchResult result;
  std::vector<int> best_key;
  int remaining = std::max(budget, 0);

  auto better = [&](const Rational& value, const std::vector<int>& key) {
    if (!result.best) return true;
    if (value != result.best->value) return value < result.best->value;
    return key < best_key;
  };

  auto evaluate_shifts = [&](int mu, const std::vector<std::vector<int>>& shifts) {
    ReplicationPlan plan = shift_plan(std::vector<int>(K, mu), shifts);
    const ReplicatedNetwork rep = build_replicated(spec, plan);
    for (int orient = 0; orient < 2; ++orient) {
      for (int count = 1; count < K * mu; ++count) {
        const bool prefix_first = orient == 0;
        auto partition = prefix_partition(plan.mu, count, prefix_first);
        const GroupTotals t = group_totals(spec, partition);
        const Rational floor_value(std::max(t.Mbar1, t.Nbar2), mu);
        const std::vector<int> key = plan_key(plan, count, prefix_first);
        if (!better(floor_value, key)) {
          ++result.pruned;
          continue;
        }
        if (remaining <= 0) return;
        --remaining;
        ++result.evaluated;
        const CooperativeChannel coop = cooperate(spec, rep, partition);
        const int r = generic_rank(spec, coop.hcoop, trials, seed);
        const Rational value(coop.Mbar1 + coop.Nbar2 - r, mu);
        if (better(value, key)) {
          plan.partition = std::move(partition);
          result.best = make_bound(coop, plan, r, RankEvidence::Generic);
          best_key = key;
        }
      }
    }
  };

  for (int mu = 1; mu <= mu_max && remaining > 0; ++mu) {
    // Shifts depending only on (i - j) mod K.
    std::set<std::vector<int>> tried;
    const long long circulant = power_capped(mu, K - 1, std::numeric_limits<int>::max());
    for (long long code = 0; code < circulant && remaining > 0; ++code) {
      std::vector<int> by_diff(K, 0);
      long long c = code;
      for (int d = 1; d < K; ++d) {
        by_diff[d] = static_cast<int>(c % mu);
        c /= mu;
      }
      std::vector<std::vector<int>> shifts(K, std::vector<int>(K, 0));
      std::vector<int> flat;
      for (auto [j, i] : cross) {
        shifts[j][i] = by_diff[((i - j) % K + K) % K];
        flat.push_back(shifts[j][i]);
      }
      tried.insert(flat);
      evaluate_shifts(mu, shifts);
    }
    if (mu == 1 || K < 3) continue;  // the circulant family already covers every shift vector

    const int per_plan = 2 * (K * mu - 1);
    const long long share = remaining / (mu_max - mu + 1);
    const long long affordable = share / per_plan;
    const long long all = power_capped(mu, static_cast<int>(cross.size()), affordable);
    std::vector<std::vector<int>> flats;
    if (all <= affordable) {
      for (long long code = 0; code < all; ++code) {
        std::vector<int> flat;
        long long c = code;
        for (std::size_t x = 0; x < cross.size(); ++x) {
          flat.push_back(static_cast<int>(c % mu));
          c /= mu;
        }
        flats.push_back(std::move(flat));
      }
    } else {
      std::mt19937_64 rng(mix_seed(seed, std::uint64_t(mu)));
      std::uniform_int_distribution<int> pick(0, mu - 1);
      for (long long n = 0; n < affordable; ++n) {
        std::vector<int> flat;
        for (std::size_t x = 0; x < cross.size(); ++x) flat.push_back(pick(rng));
        flats.push_back(std::move(flat));
      }
    }
    const int stop = std::max(0, remaining - static_cast<int>(share));
    for (const auto& flat : flats) {
      if (remaining <= stop) break;
      if (!tried.insert(flat).second) continue;
      std::vector<std::vector<int>> shifts(K, std::vector<int>(K, 0));
      for (std::size_t x = 0; x < cross.size(); ++x) shifts[cross[x].first][cross[x].second] = flat[x];
      evaluate_shifts(mu, shifts);
    }
  }
  return result;
}

NetworkSpec CreatedNetwork::replicated_spec() const {
  NetworkSpec out;
  out.K = static_cast<int>(users.size());
  out.D.assign(out.K, std::vector<int>(out.K, 0));
  for (int g = 0; g < out.K; ++g) {
    out.M.push_back(spec.M[users[g].user]);
    out.N.push_back(spec.N[users[g].user]);
  }
  for (int r = 0; r < out.K; ++r)
    for (int t = 0; t < out.K; ++t)
      if (users[r].user != users[t].user) out.D[r][t] = spec.D[users[r].user][users[t].user];
  return out;
}

CreatedNetwork build_created_network(const NetworkSpec& spec, const std::vector<int>& mu, std::uint64_t seed) {
  check_shape(spec);
  if (static_cast<int>(mu.size()) != spec.K) throw Error(Errc::InvalidArgument, "mu needs one entry per user");
  CreatedNetwork net;
  net.spec = spec;
  net.mu = mu;
  for (int k = 0; k < spec.K; ++k) {
    if (mu[k] < 1) throw Error(Errc::InvalidArgument, "every user needs at least one replica");
    for (int a = 0; a < mu[k]; ++a) net.users.push_back({k, a});
  }
  const std::size_t R = net.users.size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  net.scalars.assign(R * R, 0.0);
  for (std::size_t r = 0; r < R; ++r)
    for (std::size_t t = 0; t < R; ++t)
      if (net.users[r].user != net.users[t].user) net.scalars[r * R + t] = unit(rng);
  return net;
}

ExtendedRealization realize_created(const CreatedNetwork& net, const ExtendedRealization& ext) {
  if (!(ext.spec() == net.spec)) throw Error(Errc::DimensionMismatch, "realization belongs to another network");
  const NetworkSpec rspec = net.replicated_spec();
  const int R = rspec.K;
  ExtendedRealization out;
  for (const auto& slot : ext.slots) {
    ChannelRealization real{rspec, slot.seed, {}};
    for (int r = 0; r < R; ++r) {
      for (int t = 0; t < R; ++t) {
        const int j = net.users[r].user, i = net.users[t].user;
        if (i == j)
          real.blocks.push_back(r == t ? slot.at(j, j) : CMatrix(CMatrix::Zero(rspec.N[r], rspec.M[t])));
        else
          real.blocks.push_back(net.scalar(r, t) * slot.at(j, i));
      }
    }
    out.slots.push_back(std::move(real));
  }
  return out;
}

LinearScheme lift_scheme(const LinearScheme& scheme, const std::vector<int>& mu) {
  if (mu.size() != scheme.users.size()) throw Error(Errc::InvalidArgument, "mu needs one entry per user");
  LinearScheme out;
  out.n = scheme.n;
  for (std::size_t k = 0; k < mu.size(); ++k)
    for (int a = 0; a < mu[k]; ++a) out.users.push_back(scheme.users[k]);
  return out;
}

NetworkSpec two_by_three_spec() { return NetworkSpec::full_rank({2, 2, 2}, {3, 3, 3}); }

ReplicationPlan two_by_three_plan() {
  // Receiver i^[b] hears (i+1)^[b-3] and (i+2)^[b-2], indices mod 5.
  std::vector<std::vector<int>> shifts(3, std::vector<int>(3, 0));
  for (int i = 0; i < 3; ++i) {
    shifts[i][(i + 1) % 3] = 2;
    shifts[i][(i + 2) % 3] = 3;
  }
  ReplicationPlan plan = shift_plan({5, 5, 5}, shifts);
  plan.partition = prefix_partition(plan.mu, 9);
  return plan;
}

FieldRealization two_by_three_witness() {
  FieldRealization real = zero_realization(two_by_three_spec());
  for (int i = 0; i < 3; ++i) {
    real.at(i, (i + 1) % 3) = eye(3, 2);
    FMatrix& h = real.at(i, (i + 2) % 3);
    h(1, 0) = 1;
    h(2, 1) = 1;
  }
  return real;
}

NetworkSpec asymmetric_example_spec() {
  NetworkSpec spec = NetworkSpec::full_rank({10, 8, 6}, {10, 10, 3});
  spec.D[2][0] = 0;
  return spec;
}

ReplicationPlan asymmetric_example_plan() { return mirror_plan(3); }

FieldRealization asymmetric_example_witness() {
  FieldRealization real = zero_realization(asymmetric_example_spec());
  real.at(1, 0) = eye(10, 10);
  real.at(2, 1) = eye(3, 8);
  real.at(0, 2) = eye(10, 6);
  real.at(1, 2) = eye(10, 6);
  FMatrix& h12 = real.at(0, 1);
  for (int k = 0; k < 8; ++k) h12(2 + k, k) = 1;
  return real;
}

ReplicationPlan equal_antennas_plan() {
  ReplicationPlan plan = mirror_plan(3);
  plan.partition = {{{0, 0}, {2, 0}, {0, 1}}, {{1, 1}, {2, 1}, {1, 0}}};
  return plan;
}

FieldRealization equal_antennas_witness(const NetworkSpec& spec) {
  if (spec.K != 3) throw Error(Errc::WrongK, "witness is defined for three users");
  if (spec.M[0] != spec.M[1] || spec.D[1][0] != spec.M[0] || spec.D[2][0] != spec.M[2] ||
      spec.D[1][2] != spec.M[2])
    throw Error(Errc::ConditionFails, "witness needs M1 = M2, D21 = M1 and D31 = D23 = M3");
  FieldRealization real = zero_realization(spec);
  real.at(1, 0) = eye(spec.N[1], spec.M[0]);
  real.at(2, 0) = eye(spec.N[2], spec.M[0]);
  real.at(1, 2) = eye(spec.N[1], spec.M[2]);
  return real;
}

}  // namespace halfcake
