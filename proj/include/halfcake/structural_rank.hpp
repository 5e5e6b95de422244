/**
 * @file structural_rank.hpp
 * @brief Generic (structural) rank of channel-built matrices, certified by
 * random evaluation over GF(2^61 - 1).
 *
 * Rank is lower semicontinuous: any single evaluation gives a lower bound on
 * the generic rank, and a deficient evaluation happens with probability at
 * most (matrix size) / p per trial.  Taking the maximum over independent
 * trials therefore converges to the generic rank from below.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "halfcake/channel.hpp"

namespace halfcake {

inline constexpr int kDefaultTrials = 8;

/// Maximum rank of `layout` over `trials` independent generic field
/// realizations of `spec`.  Stops early once the rank reaches min(rows, cols).
int generic_rank(const NetworkSpec& spec, const BlockLayout& layout, int trials = kDefaultTrials,
                 std::uint64_t seed = 0);

int generic_rank(const NetworkSpec& spec, LayoutShape shape, int trials = kDefaultTrials,
                 std::uint64_t seed = 0);

/// Exact rank of `layout` on one explicit field realization (e.g. a 0/1
/// witness channel).
int realized_rank(const BlockLayout& layout, const FieldRealization& real);

/// Numerical rank of `layout` on one complex realization.
int realized_rank(const BlockLayout& layout, const ChannelRealization& real,
                  double tol = kDefaultTolerance);

/// Coefficient a_{rx,tx}^{[m]} of the rank-one expansion of one cross block.
struct CoefIndex {
  int rx = 0;
  int tx = 0;
  int m = 0;
  friend bool operator==(const CoefIndex&, const CoefIndex&) = default;
};

/**
 * Stripped interference matrix with every cross block written as
 * sum_m a^{[m]} v^{[m]} u^{[m]} (column v, row u).  The vectors are drawn once
 * from the field and frozen; only the scalar coefficients vary.  A set of
 * coefficients can be pinned to zero.
 */
class StructuredMatrix {
 public:
  StructuredMatrix(const NetworkSpec& spec, std::uint64_t seed);

  const NetworkSpec& spec() const { return spec_; }
  int size() const { return spec_.n_sum(); }
  bool square() const { return spec_.n_sum() == spec_.m_sum(); }

  /// All coefficients in lexicographic (rx, tx, m) order.
  std::vector<CoefIndex> coefficients() const;
  bool zeroed(const CoefIndex& var) const;
  /// Copy with `var` additionally pinned to zero.
  StructuredMatrix with_zeroed(const CoefIndex& var) const;
  /// Number of coefficients of block (rx, tx) that are not pinned.
  int surviving(int rx, int tx) const;

  /// Instantiates the matrix with fresh random values for the free coefficients.
  FMatrix evaluate(std::uint64_t seed) const;

 private:
  std::size_t slot(int rx, int tx) const { return std::size_t(rx) * spec_.K + tx; }

  NetworkSpec spec_;
  std::vector<FMatrix> left_;   // N_rx x D, columns are v^{[m]}
  std::vector<FMatrix> right_;  // D x M_tx, rows are u^{[m]}
  std::vector<std::vector<bool>> pinned_;
};

/// True iff some trial, with `var` and every already pinned coefficient set
/// to zero, yields a nonzero determinant.  Throws Error{NotSquare}.
bool det_nonzero_with_var_zeroed(const StructuredMatrix& mat, const CoefIndex& var,
                                 int trials = kDefaultTrials, std::uint64_t seed = 0);

/// Same test without pinning an extra coefficient.
bool det_nonzero(const StructuredMatrix& mat, int trials = kDefaultTrials, std::uint64_t seed = 0);

}  // namespace halfcake
