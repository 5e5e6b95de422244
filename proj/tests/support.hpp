// Shared fixtures for the unit and acceptance tests.
#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "halfcake/feasibility.hpp"
#include "halfcake/schemes.hpp"

namespace support {

inline halfcake::NetworkSpec three_user(std::vector<int> M, int d12, int d13, int d21, int d23, int d31,
                                        int d32) {
  halfcake::NetworkSpec s = halfcake::NetworkSpec::square_full_rank(std::move(M));
  s.D[0][1] = d12;
  s.D[0][2] = d13;
  s.D[1][0] = d21;
  s.D[1][2] = d23;
  s.D[2][0] = d31;
  s.D[2][1] = d32;
  return halfcake::validate_spec(s);
}

inline halfcake::NetworkSpec counterexample() {
  halfcake::NetworkSpec s = halfcake::NetworkSpec::square_full_rank({10, 8, 6});
  s.D[0][1] = 6;
  s.D[1][0] = 5;
  return s;
}

// Puts the classification's focus users first, so that the scheme
// constructors (written for users 1 and 2) apply.
inline std::vector<int> focus_first(const halfcake::SymmetricClassification& cls) {
  std::vector<int> perm = cls.focus;
  for (int k = 0; k < 3; ++k)
    if (std::find(perm.begin(), perm.end(), k) == perm.end()) perm.push_back(k);
  return perm;
}

// Builds and verifies the two-slot scheme that beats half the cake on a
// symmetric network that violates a pairwise inequality.
inline halfcake::VerifiedScheme symmetric_violation_scheme(const halfcake::NetworkSpec& spec,
                                                          const halfcake::SymmetricClassification& cls,
                                                          std::uint64_t seed, double tol) {
  using namespace halfcake;
  const std::vector<int> perm = focus_first(cls);
  const bool aligned = cls.family == SchemeFamily::AlignedPair;
  return construct_verified(
      [&](std::uint64_t s) { return extend_ergodic_pair(spec, s); },
      [&](const ExtendedRealization& ext, std::uint64_t s) {
        const ExtendedRealization p = permute_extended(ext, perm);
        return unpermute_scheme(aligned ? aligned_pair_scheme(p, s) : zero_forced_scheme(p, s), perm);
      },
      seed, tol);
}

}  // namespace support
