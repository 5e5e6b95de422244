// Brute-force reference computations used to cross-check the library.
// Everything here is deliberately naive and shares no code with src/.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "halfcake/spec.hpp"

namespace oracle {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

// Laplace expansion along the first row.
inline std::int64_t determinant(const IntMatrix& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  std::int64_t det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (a[0][c] == 0) continue;
    IntMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<std::int64_t> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(std::move(row));
    }
    const std::int64_t term = a[0][c] * determinant(minor);
    det += (c % 2 == 0) ? term : -term;
  }
  return det;
}

// Calls f on every k-subset of {0..n-1}; stops when f returns true.
inline bool any_subset(int n, int k, const std::function<bool(const std::vector<int>&)>& f) {
  std::vector<int> idx(k);
  std::function<bool(int, int)> rec = [&](int pos, int start) {
    if (pos == k) return f(idx);
    for (int v = start; v <= n - (k - pos); ++v) {
      idx[pos] = v;
      if (rec(pos + 1, v + 1)) return true;
    }
    return false;
  };
  return rec(0, 0);
}

// Largest k with a nonzero k x k minor.
inline int minor_rank(const IntMatrix& a) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
  for (int k = std::min(rows, cols); k > 0; --k) {
    const bool found = any_subset(rows, k, [&](const std::vector<int>& rs) {
      return any_subset(cols, k, [&](const std::vector<int>& cs) {
        IntMatrix sub(k, std::vector<std::int64_t>(k));
        for (int r = 0; r < k; ++r)
          for (int c = 0; c < k; ++c) sub[r][c] = a[rs[r]][cs[c]];
        return determinant(sub) != 0;
      });
    });
    if (found) return k;
  }
  return 0;
}

// Exhaustive search for reduced ranks dbar <= D with all row and column
// sums equal to M.  Fine for K <= 4 with a handful of antennas.
inline bool reduced_ranks_exist(const halfcake::NetworkSpec& s) {
  const int K = s.K;
  std::vector<std::pair<int, int>> cells;
  for (int j = 0; j < K; ++j)
    for (int i = 0; i < K; ++i)
      if (i != j) cells.emplace_back(j, i);
  std::vector<int> row(K, 0), col(K, 0);
  std::function<bool(std::size_t)> rec = [&](std::size_t n) {
    if (n == cells.size()) {
      for (int k = 0; k < K; ++k)
        if (row[k] != s.M[k] || col[k] != s.M[k]) return false;
      return true;
    }
    const auto [j, i] = cells[n];
    // Leaving a row: it must be complete.
    if (n > 0 && cells[n - 1].first != j && row[cells[n - 1].first] != s.M[cells[n - 1].first]) return false;
    for (int v = 0; v <= s.D[j][i]; ++v) {
      if (row[j] + v > s.M[j] || col[i] + v > s.M[i]) break;
      row[j] += v;
      col[i] += v;
      const bool ok = rec(n + 1);
      row[j] -= v;
      col[i] -= v;
      if (ok) return true;
    }
    return false;
  };
  return rec(0);
}

// Three-user reduced ranks: dbar12 and dbar21 fix the other four through
// the row and column sums.
inline bool reduced_ranks_exist_3user(const halfcake::NetworkSpec& s) {
  const auto& M = s.M;
  const auto& D = s.D;
  for (int d12 = 0; d12 <= D[0][1]; ++d12)
    for (int d21 = 0; d21 <= D[1][0]; ++d21) {
      const int d13 = M[0] - d12;
      const int d23 = M[1] - d21;
      const int d31 = M[0] - d21;
      const int d32 = M[1] - d12;
      const int v[4] = {d13, d23, d31, d32};
      const int cap[4] = {D[0][2], D[1][2], D[2][0], D[2][1]};
      bool ok = d13 + d23 == M[2] && d31 + d32 == M[2];
      for (int k = 0; k < 4 && ok; ++k) ok = v[k] >= 0 && v[k] <= cap[k];
      if (ok) return true;
    }
  return false;
}

// The nine pairwise rank inequalities that carve out the three-user
// feasibility polytope, written out directly.
inline bool pairwise_inequalities_hold(const halfcake::NetworkSpec& s) {
  const auto& M = s.M;
  const auto& D = s.D;
  return D[0][1] + D[0][2] >= M[0] && D[1][0] + D[1][2] >= M[1] && D[2][0] + D[2][1] >= M[2] &&
         D[1][0] + D[2][0] >= M[0] && D[0][1] + D[2][1] >= M[1] && D[0][2] + D[1][2] >= M[2] &&
         D[0][1] + D[1][0] >= M[0] + M[1] - M[2] && D[1][2] + D[2][1] >= M[1] + M[2] - M[0] &&
         D[0][2] + D[2][0] >= M[0] + M[2] - M[1];
}

// Both replication rules checked replica by replica: receiver (j, b) hears
// its own transmitter (j, b) and no other replica of user j, and exactly
// one replica of every other user.
inline bool satisfies_replication_rules(const std::vector<int>& mu,
                                        const std::function<bool(int, int, int, int)>& connected) {
  const int K = static_cast<int>(mu.size());
  for (int j = 0; j < K; ++j)
    for (int b = 0; b < mu[j]; ++b)
      for (int i = 0; i < K; ++i) {
        int heard = 0;
        for (int a = 0; a < mu[i]; ++a) heard += connected(j, b, i, a) ? 1 : 0;
        if (i == j && (heard != 1 || !connected(j, b, j, b))) return false;
        if (i != j && heard != 1) return false;
      }
  return true;
}

}  // namespace oracle
