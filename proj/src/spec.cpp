#include "halfcake/spec.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace halfcake {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Parse: return "Parse";
    case Errc::Io: return "Io";
    case Errc::BadShape: return "BadShape";
    case Errc::RankExceedsDimension: return "RankExceedsDimension";
    case Errc::NotSquareCase: return "NotSquareCase";
    case Errc::NotSquare: return "NotSquare";
    case Errc::WrongK: return "WrongK";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::ConditionFails: return "ConditionFails";
    case Errc::CertificateInfeasible: return "CertificateInfeasible";
    case Errc::DominantUser: return "DominantUser";
    case Errc::PlanViolatesReplicationRules: return "PlanViolatesReplicationRules";
    case Errc::BadPartition: return "BadPartition";
    case Errc::NonUniformMu: return "NonUniformMu";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NullSpaceEmpty: return "NullSpaceEmpty";
    case Errc::DegenerateDesiredDifference: return "DegenerateDesiredDifference";
    case Errc::UnknownTarget: return "UnknownTarget";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

int NetworkSpec::m_sum() const { return std::accumulate(M.begin(), M.end(), 0); }
int NetworkSpec::n_sum() const { return std::accumulate(N.begin(), N.end(), 0); }
int NetworkSpec::max_rank(int rx, int tx) const { return std::min(M[tx], N[rx]); }

NetworkSpec NetworkSpec::full_rank(std::vector<int> M, std::vector<int> N) {
  NetworkSpec s;
  s.K = static_cast<int>(M.size());
  s.M = std::move(M);
  s.N = std::move(N);
  s.D.assign(s.K, std::vector<int>(s.K, 0));
  for (int j = 0; j < s.K; ++j)
    for (int i = 0; i < s.K; ++i)
      if (i != j) s.D[j][i] = std::min(s.M[i], s.N[j]);
  return s;
}

void check_shape(const NetworkSpec& spec) {
  if (spec.K < 1) throw Error(Errc::BadShape, "K must be positive");
  const auto k = static_cast<std::size_t>(spec.K);
  if (spec.M.size() != k || spec.N.size() != k || spec.D.size() != k)
    throw Error(Errc::BadShape, "antenna or rank sequences disagree with K");
  for (int u = 0; u < spec.K; ++u) {
    if (spec.D[u].size() != k) throw Error(Errc::BadShape, "rank matrix is not K x K");
    if (spec.M[u] < 1 || spec.N[u] < 1)
      throw Error(Errc::BadShape, "antenna counts must be positive");
  }
  for (int j = 0; j < spec.K; ++j) {
    for (int i = 0; i < spec.K; ++i) {
      if (i == j) continue;
      const int d = spec.D[j][i];
      if (d < 0 || d > spec.max_rank(j, i)) {
        std::ostringstream os;
        os << "rank D_" << j + 1 << "_" << i + 1 << " = " << d << " outside [0, "
           << spec.max_rank(j, i) << "]";
        throw Error(Errc::RankExceedsDimension, os.str());
      }
    }
  }
}

NetworkSpec validate_spec(NetworkSpec raw) {
  check_shape(raw);
  if (raw.K < 2) throw Error(Errc::BadShape, "a network needs at least two users");
  for (int k = 0; k < raw.K; ++k) raw.D[k][k] = 0;
  return raw;
}

std::string certificate_violation(const NetworkSpec& spec, const ReducedRankCertificate& cert) {
  const auto k = static_cast<std::size_t>(spec.K);
  if (!spec.square()) return "not a square network";
  if (cert.dbar.size() != k) return "certificate is not K x K";
  std::ostringstream os;
  for (int j = 0; j < spec.K; ++j) {
    if (cert.dbar[j].size() != k) return "certificate is not K x K";
    for (int i = 0; i < spec.K; ++i) {
      if (i == j) continue;
      const int v = cert.dbar[j][i];
      if (v < 0 || v > spec.D[j][i]) {
        os << "entry (" << j + 1 << "," << i + 1 << ") = " << v << " outside [0, " << spec.D[j][i]
           << "]";
        return os.str();
      }
    }
  }
  for (int u = 0; u < spec.K; ++u) {
    int row = 0, col = 0;
    for (int v = 0; v < spec.K; ++v) {
      if (v == u) continue;
      row += cert.dbar[u][v];
      col += cert.dbar[v][u];
    }
    if (row != spec.M[u] || col != spec.M[u]) {
      os << "user " << u + 1 << " sums (row " << row << ", column " << col << ") differ from "
         << spec.M[u];
      return os.str();
    }
  }
  return {};
}

bool certificate_valid(const NetworkSpec& spec, const ReducedRankCertificate& cert) {
  return certificate_violation(spec, cert).empty();
}

std::vector<int> inverse_permutation(const std::vector<int>& perm) {
  std::vector<int> inv(perm.size());
  for (std::size_t a = 0; a < perm.size(); ++a) inv[perm[a]] = static_cast<int>(a);
  return inv;
}

NetworkSpec permute_spec(const NetworkSpec& spec, const std::vector<int>& perm) {
  NetworkSpec out = spec;
  for (int a = 0; a < spec.K; ++a) {
    out.M[a] = spec.M[perm[a]];
    out.N[a] = spec.N[perm[a]];
    for (int b = 0; b < spec.K; ++b) out.D[b][a] = spec.D[perm[b]][perm[a]];
  }
  return out;
}

ReducedRankCertificate permute_certificate(const ReducedRankCertificate& cert,
                                           const std::vector<int>& perm) {
  ReducedRankCertificate out = cert;
  const auto k = perm.size();
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) out.dbar[b][a] = cert.dbar[perm[b]][perm[a]];
  return out;
}

NetworkSpec random_square_spec(std::mt19937_64& rng, int k_min, int k_max, int m_max) {
  const int K = std::uniform_int_distribution<int>(k_min, k_max)(rng);
  std::uniform_int_distribution<int> antennas(1, m_max);
  std::vector<int> M(K);
  for (auto& m : M) m = antennas(rng);
  NetworkSpec spec = NetworkSpec::square_full_rank(M);
  for (int j = 0; j < K; ++j)
    for (int i = 0; i < K; ++i)
      if (i != j) spec.D[j][i] = std::uniform_int_distribution<int>(0, std::min(M[i], M[j]))(rng);
  return spec;
}

}  // namespace halfcake
