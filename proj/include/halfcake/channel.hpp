/**
 * @file channel.hpp
 * @brief Channel realizations: generic sampling, stripped interference
 * matrices, canonical 0/1 witnesses and ergodic two-slot extensions.
 *
 * A cross block of rank cap D is drawn as the product of an N x D and a
 * D x M factor, so its rank is D for generic draws and can never exceed it.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "halfcake/linalg.hpp"
#include "halfcake/spec.hpp"

namespace halfcake {

/// splitmix64 finalizer; derives independent sub-seeds from (seed, stream).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

template <class Mat>
struct Realization {
  NetworkSpec spec;
  std::uint64_t seed = 0;
  std::vector<Mat> blocks;  // row-major over (rx, tx)

  const Mat& at(int rx, int tx) const { return blocks[std::size_t(rx) * spec.K + tx]; }
  Mat& at(int rx, int tx) { return blocks[std::size_t(rx) * spec.K + tx]; }
};

using ChannelRealization = Realization<CMatrix>;
using FieldRealization = Realization<FMatrix>;

/// A dense matrix together with its block partition.
template <class Mat>
struct BlockMatrix {
  std::vector<int> row_sizes;
  std::vector<int> col_sizes;
  Mat data;
};

/// Placement of original links inside a larger block matrix.  A cell holding
/// a link receives that link's matrix; an empty cell is a zero block.  One
/// link may appear in many cells (replicated networks reuse channels).
struct BlockLayout {
  std::vector<int> row_sizes;
  std::vector<int> col_sizes;
  std::vector<std::optional<Link>> cells;  // row-major

  int rows() const;
  int cols() const;
  std::optional<Link>& cell(int r, int c) { return cells[std::size_t(r) * col_sizes.size() + c]; }
  const std::optional<Link>& cell(int r, int c) const {
    return cells[std::size_t(r) * col_sizes.size() + c];
  }
};

enum class LayoutShape { Full, Stripped };

/// K x K layout of the overall channel (Full) or with desired blocks zeroed
/// (Stripped).
BlockLayout network_layout(const NetworkSpec& spec, LayoutShape shape);

/// K x K layout keeping only blocks with mask[j][i] set.
BlockLayout masked_layout(const NetworkSpec& spec, const std::vector<std::vector<bool>>& mask);

CMatrix assemble(const BlockLayout& layout, const ChannelRealization& real);
FMatrix assemble(const BlockLayout& layout, const FieldRealization& real);

/// Generic realization with circularly-symmetric unit-variance Gaussian entries.
ChannelRealization sample_generic(const NetworkSpec& spec, std::uint64_t seed);

/// Generic realization with uniform GF(p) entries.
FieldRealization sample_generic_field(const NetworkSpec& spec, std::uint64_t seed);

/// The overall matrix with every desired block replaced by zeros.  Requires
/// a square network; throws Error{NotSquareCase} otherwise.
BlockMatrix<CMatrix> strip_desired(const ChannelRealization& real);
BlockMatrix<FMatrix> strip_desired(const FieldRealization& real);

/// 0/1 realization that wires each transmit antenna to exactly one
/// undesired receive antenna following the certificate, so the stripped
/// matrix is a permutation matrix.  Desired blocks are identities.
FieldRealization canonical_realization(const NetworkSpec& spec, const ReducedRankCertificate& cert);

/// Interprets small field elements as signed integers.
ChannelRealization to_complex(const FieldRealization& real);

/// n channel uses of one network.
struct ExtendedRealization {
  std::vector<ChannelRealization> slots;

  int n() const { return static_cast<int>(slots.size()); }
  const NetworkSpec& spec() const { return slots.front().spec; }
  /// Block-diagonal n*N_rx x n*M_tx matrix of one link across all slots.
  CMatrix extended(int rx, int tx) const;
};

/// Single-slot extension.
ExtendedRealization single_slot(ChannelRealization real);

/// Two slots sharing every cross block; desired blocks are drawn
/// independently and redrawn until each slot difference has full rank.
ExtendedRealization extend_ergodic_pair(const NetworkSpec& spec, std::uint64_t seed);

/// Relabels users: user `a` of the result is user `perm[a]` of the input.
ChannelRealization permute_realization(const ChannelRealization& real, const std::vector<int>& perm);
ExtendedRealization permute_extended(const ExtendedRealization& ext, const std::vector<int>& perm);

}  // namespace halfcake
