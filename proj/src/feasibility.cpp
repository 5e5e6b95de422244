#include "halfcake/feasibility.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <limits>
#include <queue>
#include <sstream>

namespace halfcake {

namespace {

void require_square(const NetworkSpec& spec) {
  if (!spec.square()) throw Error(Errc::NotSquareCase, "operation needs M = N");
}

void require_three_users(const NetworkSpec& spec) {
  if (spec.K != 3) throw Error(Errc::WrongK, "operation is defined for three users only");
}

// Dense Edmonds-Karp; the transportation network has 2K + 2 nodes.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes) : n_(nodes), cap_(std::size_t(nodes) * nodes, 0), flow_(cap_.size(), 0) {}

  void add_arc(int from, int to, int capacity) { cap_[idx(from, to)] += capacity; }
  int flow(int from, int to) const { return flow_[idx(from, to)]; }

  int run(int source, int sink) {
    int total = 0;
    for (;;) {
      std::vector<int> parent = search(source);
      if (parent[sink] < 0) break;
      int push = std::numeric_limits<int>::max();
      for (int v = sink; v != source; v = parent[v]) push = std::min(push, residual(parent[v], v));
      for (int v = sink; v != source; v = parent[v]) {
        flow_[idx(parent[v], v)] += push;
        flow_[idx(v, parent[v])] -= push;
      }
      total += push;
    }
    return total;
  }

  /// Nodes reachable from `source` in the residual graph.
  std::vector<bool> source_side(int source) const {
    const auto parent = search(source);
    std::vector<bool> out(n_);
    for (int v = 0; v < n_; ++v) out[v] = parent[v] >= 0;
    return out;
  }

 private:
  std::size_t idx(int a, int b) const { return std::size_t(a) * n_ + b; }
  int residual(int a, int b) const { return cap_[idx(a, b)] - flow_[idx(a, b)]; }

  std::vector<int> search(int source) const {
    std::vector<int> parent(n_, -1);
    parent[source] = source;
    std::queue<int> q;
    q.push(source);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v = 0; v < n_; ++v) {
        if (parent[v] < 0 && residual(u, v) > 0) {
          parent[v] = u;
          q.push(v);
        }
      }
    }
    return parent;
  }

  int n_;
  std::vector<int> cap_;
  std::vector<int> flow_;
};

ReducedRankCertificate empty_certificate(int K) {
  return {std::vector<std::vector<int>>(K, std::vector<int>(K, 0))};
}

void ensure_valid(const NetworkSpec& spec, const ReducedRankCertificate& cert, const char* who) {
  if (const auto why = certificate_violation(spec, cert); !why.empty())
    throw Error(Errc::Internal, std::string(who) + " produced an invalid certificate: " + why);
}

bool symmetric_ranks(const NetworkSpec& spec) {
  for (int j = 0; j < spec.K; ++j)
    for (int i = 0; i < j; ++i)
      if (spec.D[j][i] != spec.D[i][j]) return false;
  return true;
}

const std::array<std::array<int, 3>, 6> kPermutations = {{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
}};

}  // namespace

FlowResult reduced_rank_feasible(const NetworkSpec& spec) {
  check_shape(spec);
  require_square(spec);
  const int K = spec.K;
  const int source = 0, sink = 2 * K + 1;
  auto tx = [](int i) { return 1 + i; };
  auto rx = [K](int j) { return 1 + K + j; };

  MaxFlow net(2 * K + 2);
  for (int i = 0; i < K; ++i) {
    net.add_arc(source, tx(i), spec.M[i]);
    net.add_arc(rx(i), sink, spec.M[i]);
    for (int j = 0; j < K; ++j)
      if (j != i) net.add_arc(tx(i), rx(j), spec.D[j][i]);
  }

  FlowResult result;
  result.required = spec.m_sum();
  result.max_flow = net.run(source, sink);
  if (result.max_flow == result.required) {
    ReducedRankCertificate cert = empty_certificate(K);
    for (int i = 0; i < K; ++i)
      for (int j = 0; j < K; ++j)
        if (j != i) cert.dbar[j][i] = net.flow(tx(i), rx(j));
    ensure_valid(spec, cert, "max-flow");
    result.certificate = std::move(cert);
    return result;
  }
  const auto side = net.source_side(source);
  for (int k = 0; k < K; ++k) {
    if (side[tx(k)]) result.cut_transmitters.push_back(k);
    if (side[rx(k)]) result.cut_receivers.push_back(k);
  }
  result.cut_capacity = result.max_flow;
  return result;
}

bool three_user_condition(const NetworkSpec& spec) {
  require_three_users(spec);
  require_square(spec);
  const auto& M = spec.M;
  const auto& D = spec.D;
  const int first = std::min({M[0] + D[2][1], M[1] + D[0][2], M[2] + D[1][0]});
  const int second = std::min({M[2] + D[0][1], M[0] + D[1][2], M[1] + D[2][0]});
  return first + second >= spec.m_sum();
}

const char* scheme_family_name(SchemeFamily f) {
  switch (f) {
    case SchemeFamily::None: return "none";
    case SchemeFamily::ZeroForcedStream: return "zero-forced-stream";
    case SchemeFamily::AlignedPair: return "aligned-pair";
  }
  return "none";
}

std::vector<RankInequality> three_user_inequalities(const NetworkSpec& spec) {
  require_three_users(spec);
  const auto& M = spec.M;
  auto make = [](int id, Link a, Link b, int rhs, const char* text) {
    return RankInequality{id, {a, b}, rhs, text};
  };
  return {
      make(1, {0, 1}, {0, 2}, M[0], "D12 + D13 >= M1"),
      make(2, {1, 0}, {1, 2}, M[1], "D21 + D23 >= M2"),
      make(3, {2, 0}, {2, 1}, M[2], "D31 + D32 >= M3"),
      make(4, {1, 0}, {2, 0}, M[0], "D21 + D31 >= M1"),
      make(5, {0, 1}, {2, 1}, M[1], "D12 + D32 >= M2"),
      make(6, {0, 2}, {1, 2}, M[2], "D13 + D23 >= M3"),
      make(7, {0, 1}, {1, 0}, M[0] + M[1] - M[2], "D12 + D21 >= M1 + M2 - M3"),
      make(8, {1, 2}, {2, 1}, M[1] + M[2] - M[0], "D23 + D32 >= M2 + M3 - M1"),
      make(9, {0, 2}, {2, 0}, M[0] + M[2] - M[1], "D13 + D31 >= M1 + M3 - M2"),
  };
}

SymmetricClassification classify_symmetric_3user(const NetworkSpec& spec) {
  require_three_users(spec);
  require_square(spec);
  if (!symmetric_ranks(spec)) throw Error(Errc::NotSymmetric, "cross ranks are not symmetric");

  SymmetricClassification out;
  for (const auto& ineq : three_user_inequalities(spec)) {
    int lhs = 0;
    for (const auto& l : ineq.lhs) lhs += spec.D[l.rx][l.tx];
    if (lhs < ineq.rhs) out.all_violated.push_back(ineq.id);
  }
  if (out.all_violated.empty()) return out;

  out.half_cake_optimal = false;
  out.violated = out.all_violated.front();
  static const std::array<std::vector<int>, 9> kFocus = {{
      {0}, {1}, {2}, {0}, {1}, {2}, {0, 1}, {1, 2}, {0, 2},
  }};
  out.focus = kFocus[out.violated - 1];
  out.family = out.violated <= 6 ? SchemeFamily::ZeroForcedStream : SchemeFamily::AlignedPair;
  return out;
}

ReducedRankCertificate assign_reduced_ranks_3user(const NetworkSpec& spec) {
  require_three_users(spec);
  require_square(spec);
  if (!three_user_condition(spec))
    throw Error(Errc::ConditionFails, "three-user rank condition does not hold");

  const auto& M = spec.M;
  const auto& D = spec.D;
  const std::array<int, 3> terms = {M[0] + D[1][2], M[1] + D[2][0], M[2] + D[0][1]};
  const auto pick = std::min_element(terms.begin(), terms.end()) - terms.begin();
  static const std::array<std::vector<int>, 3> kRotation = {{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}};
  const std::vector<int>& perm = kRotation[pick];

  const NetworkSpec s = permute_spec(spec, perm);
  const int m1 = s.M[0], m2 = s.M[1], m3 = s.M[2];
  const int d23 = s.D[1][2];
  ReducedRankCertificate c = empty_certificate(3);
  c.dbar[0][1] = m1 + d23 - m3;
  c.dbar[0][2] = m3 - d23;
  c.dbar[1][0] = m2 - d23;
  c.dbar[1][2] = d23;
  c.dbar[2][0] = m1 + d23 - m2;
  c.dbar[2][1] = m2 + m3 - m1 - d23;

  ReducedRankCertificate out = permute_certificate(c, inverse_permutation(perm));
  ensure_valid(spec, out, "three-user closed form");
  return out;
}

ReducedRankCertificate greedy_chip_allocation(const NetworkSpec& spec) {
  check_shape(spec);
  require_square(spec);
  const int K = spec.K;
  const int total = spec.m_sum();
  for (int k = 0; k < K; ++k)
    if (2 * spec.M[k] > total)
      throw Error(Errc::DominantUser, "user " + std::to_string(k + 1) + " dominates the rest");
  for (int j = 0; j < K; ++j)
    for (int i = 0; i < K; ++i)
      if (i != j && spec.D[j][i] != std::min(spec.M[i], spec.M[j]))
        throw Error(Errc::ConditionFails, "chip allocation needs full-rank cross links");

  std::vector<int> order(K);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return spec.M[a] > spec.M[b]; });

  std::vector<int> room = spec.M;
  ReducedRankCertificate cert = empty_certificate(K);
  for (int p = 0; p < K; ++p) {
    const int tx = order[p];
    int chips = spec.M[tx];
    for (int step = 1; step < K && chips > 0; ++step) {
      const int rx = order[(p + step) % K];
      const int put = std::min(chips, room[rx]);
      cert.dbar[rx][tx] = put;
      room[rx] -= put;
      chips -= put;
    }
    if (chips > 0)
      throw Error(Errc::ConditionFails,
                  "transmitter " + std::to_string(tx + 1) + " has chips left over");
  }
  ensure_valid(spec, cert, "chip allocation");
  return cert;
}

ReducedRankCertificate symmetric_allocation(int K, int M, int D) {
  if (K < 2 || M < 1 || D < 0 || D > M)
    throw Error(Errc::InvalidArgument, "symmetric allocation needs K >= 2, M >= 1, 0 <= D <= M");
  if ((K - 1) * D < M) throw Error(Errc::ConditionFails, "(K-1) D < M");
  const int base = M / (K - 1);
  const int extra = M - base * (K - 1);
  ReducedRankCertificate cert = empty_certificate(K);
  for (int i = 0; i < K; ++i) {
    for (int step = 1; step < K; ++step) {
      const int j = (i + step) % K;
      cert.dbar[j][i] = step <= extra ? base + 1 : base;
    }
  }
  NetworkSpec spec = NetworkSpec::square_full_rank(std::vector<int>(K, M));
  for (int j = 0; j < K; ++j)
    for (int i = 0; i < K; ++i)
      if (i != j) spec.D[j][i] = D;
  ensure_valid(spec, cert, "symmetric allocation");
  return cert;
}

std::optional<ReducedRankCertificate> necessity_reduction(const NetworkSpec& spec,
                                                          std::uint64_t seed, int trials) {
  check_shape(spec);
  require_square(spec);
  StructuredMatrix mat(spec, seed);
  if (!det_nonzero(mat, trials, mix_seed(seed, 0))) return std::nullopt;

  std::uint64_t stream = 1;
  for (const auto& var : mat.coefficients()) {
    if (det_nonzero_with_var_zeroed(mat, var, trials, mix_seed(seed, stream++)))
      mat = mat.with_zeroed(var);
  }
  ReducedRankCertificate cert = empty_certificate(spec.K);
  for (int j = 0; j < spec.K; ++j)
    for (int i = 0; i < spec.K; ++i)
      if (i != j) cert.dbar[j][i] = mat.surviving(j, i);
  ensure_valid(spec, cert, "coefficient removal");
  return cert;
}

const char* verdict_status_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::OptimalCertified: return "OPTIMAL_CERTIFIED";
    case VerdictStatus::MoreThanHalfPossible: return "MORE_THAN_HALF_POSSIBLE";
    case VerdictStatus::Undecided: return "UNDECIDED";
  }
  return "UNDECIDED";
}

HalfCakeVerdict boundary_case_verdict(const NetworkSpec& spec) {
  require_three_users(spec);
  require_square(spec);
  const auto& M = spec.M;
  const auto& D = spec.D;
  HalfCakeVerdict v;
  v.half_cake = Rational(spec.m_sum(), 2);

  for (const auto& p : kPermutations) {
    const int a = p[0], b = p[1], c = p[2];
    if (M[a] != M[b] + M[c]) continue;
    const bool rx_side = D[a][b] == M[b] && D[a][c] == M[c];
    const bool tx_side = D[b][a] == M[b] && D[c][a] == M[c];
    if (!rx_side && !tx_side) continue;
    v.status = VerdictStatus::OptimalCertified;
    v.witnesses.push_back(kWitnessSumAntennas);
    v.relabeling = {a, b, c};
    // Cooperation of the two smaller users gives a two-user bound.
    const int coop = spec.m_sum() - std::max(D[b][a] + D[c][a], D[a][b] + D[a][c]);
    v.bound = Rational(coop);
    std::ostringstream os;
    os << "users " << b + 1 << " and " << c + 1 << " cooperate; two-user bound " << coop;
    v.notes.push_back(os.str());
    return v;
  }

  for (const auto& p : kPermutations) {
    const int a = p[0], b = p[1], c = p[2];
    if (M[a] != M[b]) continue;
    const bool forward = D[b][a] == M[a] && D[c][a] == M[c] && D[b][c] == M[c];
    const bool backward = D[a][b] == M[a] && D[a][c] == M[c] && D[c][b] == M[c];
    if (!forward && !backward) continue;
    v.status = VerdictStatus::OptimalCertified;
    v.witnesses.push_back(kWitnessEqualAntennas);
    // Canonical form is the forward condition; the backward one swaps a, b.
    v.relabeling = forward ? std::vector<int>{a, b, c} : std::vector<int>{b, a, c};
    v.bound = v.half_cake;
    v.notes.push_back("six-user replicated network with a full-rank cooperative interference matrix");
    return v;
  }

  v.notes.push_back("no boundary condition matches under any relabeling");
  return v;
}

HalfCakeVerdict half_cake_verdict(const NetworkSpec& spec) {
  check_shape(spec);
  require_square(spec);
  HalfCakeVerdict v;
  v.half_cake = Rational(spec.m_sum(), 2);

  FlowResult flow = reduced_rank_feasible(spec);
  if (flow.feasible()) {
    v.status = VerdictStatus::OptimalCertified;
    v.certificate = flow.certificate;
    v.bound = v.half_cake;
    v.witnesses.push_back(kWitnessFlow);
    v.flow = std::move(flow);
    return v;
  }
  std::ostringstream os;
  os << "no reduced-rank certificate: max flow " << flow.max_flow << " < " << flow.required;
  v.notes.push_back(os.str());
  v.flow = std::move(flow);

  if (spec.K == 3) {
    HalfCakeVerdict boundary = boundary_case_verdict(spec);
    if (boundary.status == VerdictStatus::OptimalCertified) {
      boundary.flow = std::move(v.flow);
      boundary.notes.insert(boundary.notes.begin(), v.notes.begin(), v.notes.end());
      return boundary;
    }
    if (symmetric_ranks(spec)) {
      SymmetricClassification cls = classify_symmetric_3user(spec);
      if (!cls.half_cake_optimal) {
        v.status = VerdictStatus::MoreThanHalfPossible;
        v.witnesses.push_back(kWitnessSymmetric);
        v.notes.push_back(std::string("violated inequality ") + std::to_string(cls.violated) +
                          "; scheme family " + scheme_family_name(cls.family));
      } else {
        v.notes.push_back("symmetric classification inconsistent with flow result");
      }
      v.symmetric = std::move(cls);
      return v;
    }
    v.notes.push_back("asymmetric three-user ranks: the symmetric necessity test does not apply");
  }
  return v;
}

}  // namespace halfcake
