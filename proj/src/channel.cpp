#include "halfcake/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace halfcake {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int BlockLayout::rows() const { return std::accumulate(row_sizes.begin(), row_sizes.end(), 0); }
int BlockLayout::cols() const { return std::accumulate(col_sizes.begin(), col_sizes.end(), 0); }

BlockLayout network_layout(const NetworkSpec& spec, LayoutShape shape) {
  std::vector<std::vector<bool>> mask(spec.K, std::vector<bool>(spec.K, true));
  if (shape == LayoutShape::Stripped)
    for (int k = 0; k < spec.K; ++k) mask[k][k] = false;
  return masked_layout(spec, mask);
}

BlockLayout masked_layout(const NetworkSpec& spec, const std::vector<std::vector<bool>>& mask) {
  BlockLayout layout;
  layout.row_sizes = spec.N;
  layout.col_sizes = spec.M;
  layout.cells.assign(std::size_t(spec.K) * spec.K, std::nullopt);
  for (int j = 0; j < spec.K; ++j)
    for (int i = 0; i < spec.K; ++i)
      if (mask[j][i]) layout.cell(j, i) = Link{j, i};
  return layout;
}

namespace {

std::vector<int> offsets(const std::vector<int>& sizes) {
  std::vector<int> out(sizes.size() + 1, 0);
  std::partial_sum(sizes.begin(), sizes.end(), out.begin() + 1);
  return out;
}

CMatrix gaussian(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, std::sqrt(0.5));
  CMatrix m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = Complex(dist(rng), dist(rng));
  return m;
}

CMatrix generic_block(int rows, int cols, int rank_cap, bool desired, std::mt19937_64& rng) {
  if (desired) return gaussian(rows, cols, rng);
  if (rank_cap == 0) return CMatrix::Zero(rows, cols);
  CMatrix left = gaussian(rows, rank_cap, rng);
  CMatrix right = gaussian(rank_cap, cols, rng);
  return left * right;
}

FMatrix generic_field_block(int rows, int cols, int rank_cap, bool desired,
                            std::mt19937_64& rng) {
  if (desired) return FMatrix::random(rows, cols, rng);
  if (rank_cap == 0) return FMatrix::zero(rows, cols);
  FMatrix left = FMatrix::random(rows, rank_cap, rng);
  FMatrix right = FMatrix::random(rank_cap, cols, rng);
  return left * right;
}

template <class Mat>
BlockMatrix<Mat> strip_impl(const Realization<Mat>& real) {
  if (!real.spec.square())
    throw Error(Errc::NotSquareCase, "stripping desired links needs M = N");
  const BlockLayout layout = network_layout(real.spec, LayoutShape::Stripped);
  return {layout.row_sizes, layout.col_sizes, assemble(layout, real)};
}

}  // namespace

CMatrix assemble(const BlockLayout& layout, const ChannelRealization& real) {
  const auto ro = offsets(layout.row_sizes);
  const auto co = offsets(layout.col_sizes);
  CMatrix out = CMatrix::Zero(ro.back(), co.back());
  for (std::size_t r = 0; r < layout.row_sizes.size(); ++r) {
    for (std::size_t c = 0; c < layout.col_sizes.size(); ++c) {
      const auto& link = layout.cell(int(r), int(c));
      if (!link) continue;
      const CMatrix& b = real.at(link->rx, link->tx);
      if (b.rows() != layout.row_sizes[r] || b.cols() != layout.col_sizes[c])
        throw Error(Errc::DimensionMismatch, "layout cell does not match the link shape");
      out.block(ro[r], co[c], b.rows(), b.cols()) = b;
    }
  }
  return out;
}

FMatrix assemble(const BlockLayout& layout, const FieldRealization& real) {
  const auto ro = offsets(layout.row_sizes);
  const auto co = offsets(layout.col_sizes);
  FMatrix out(ro.back(), co.back());
  for (std::size_t r = 0; r < layout.row_sizes.size(); ++r) {
    for (std::size_t c = 0; c < layout.col_sizes.size(); ++c) {
      const auto& link = layout.cell(int(r), int(c));
      if (!link) continue;
      const FMatrix& b = real.at(link->rx, link->tx);
      if (b.rows() != layout.row_sizes[r] || b.cols() != layout.col_sizes[c])
        throw Error(Errc::DimensionMismatch, "layout cell does not match the link shape");
      out.set_block(ro[r], co[c], b);
    }
  }
  return out;
}

ChannelRealization sample_generic(const NetworkSpec& spec, std::uint64_t seed) {
  check_shape(spec);
  std::mt19937_64 rng(seed);
  ChannelRealization real{spec, seed, {}};
  real.blocks.reserve(std::size_t(spec.K) * spec.K);
  for (int j = 0; j < spec.K; ++j)
    for (int i = 0; i < spec.K; ++i)
      real.blocks.push_back(generic_block(spec.N[j], spec.M[i], spec.D[j][i], i == j, rng));
  return real;
}

FieldRealization sample_generic_field(const NetworkSpec& spec, std::uint64_t seed) {
  check_shape(spec);
  std::mt19937_64 rng(seed);
  FieldRealization real{spec, seed, {}};
  real.blocks.reserve(std::size_t(spec.K) * spec.K);
  for (int j = 0; j < spec.K; ++j)
    for (int i = 0; i < spec.K; ++i)
      real.blocks.push_back(generic_field_block(spec.N[j], spec.M[i], spec.D[j][i], i == j, rng));
  return real;
}

BlockMatrix<CMatrix> strip_desired(const ChannelRealization& real) { return strip_impl(real); }
BlockMatrix<FMatrix> strip_desired(const FieldRealization& real) { return strip_impl(real); }

FieldRealization canonical_realization(const NetworkSpec& spec, const ReducedRankCertificate& cert) {
  check_shape(spec);
  if (const auto why = certificate_violation(spec, cert); !why.empty())
    throw Error(Errc::CertificateInfeasible, "certificate rejected: " + why);
  const int K = spec.K;
  FieldRealization real{spec, 0, {}};
  real.blocks.reserve(std::size_t(K) * K);
  for (int j = 0; j < K; ++j)
    for (int i = 0; i < K; ++i)
      real.blocks.push_back(i == j ? FMatrix::identity(spec.M[i]) : FMatrix::zero(spec.N[j], spec.M[i]));

  // Receiver r lists its antenna groups for transmitters r+1, r+2, ... (cyclic);
  // transmitter t lists its groups for receivers t+1, t+2, ...
  for (int r = 0; r < K; ++r) {
    int row = 0;
    for (int step = 1; step < K; ++step) {
      const int t = (r + step) % K;
      int col = 0;
      for (int s = 1; s < K; ++s) {
        const int rr = (t + s) % K;
        if (rr == r) break;
        col += cert.dbar[rr][t];
      }
      FMatrix& block = real.at(r, t);
      for (int x = 0; x < cert.dbar[r][t]; ++x) block(row + x, col + x) = 1;
      row += cert.dbar[r][t];
    }
  }
  return real;
}

ChannelRealization to_complex(const FieldRealization& real) {
  ChannelRealization out{real.spec, real.seed, {}};
  out.blocks.reserve(real.blocks.size());
  for (const auto& b : real.blocks) {
    CMatrix m(b.rows(), b.cols());
    for (int r = 0; r < b.rows(); ++r) {
      for (int c = 0; c < b.cols(); ++c) {
        const auto e = b(r, c);
        const double v = e > field::kModulus / 2 ? -double(field::kModulus - e) : double(e);
        m(r, c) = Complex(v, 0.0);
      }
    }
    out.blocks.push_back(std::move(m));
  }
  return out;
}

CMatrix ExtendedRealization::extended(int rx, int tx) const {
  std::vector<CMatrix> parts;
  parts.reserve(slots.size());
  for (const auto& s : slots) parts.push_back(s.at(rx, tx));
  return block_diagonal(parts);
}

ExtendedRealization single_slot(ChannelRealization real) {
  ExtendedRealization ext;
  ext.slots.push_back(std::move(real));
  return ext;
}

ExtendedRealization extend_ergodic_pair(const NetworkSpec& spec, std::uint64_t seed) {
  constexpr int kMaxAttempts = 64;
  ExtendedRealization ext;
  ext.slots.push_back(sample_generic(spec, seed));
  ChannelRealization second = ext.slots.front();
  for (int k = 0; k < spec.K; ++k) {
    const int full = std::min(spec.M[k], spec.N[k]);
    bool ok = false;
    for (int attempt = 0; attempt < kMaxAttempts && !ok; ++attempt) {
      std::mt19937_64 rng(mix_seed(seed, std::uint64_t(k) * kMaxAttempts + attempt));
      second.at(k, k) = gaussian(spec.N[k], spec.M[k], rng);
      ok = rank(CMatrix(ext.slots[0].at(k, k) - second.at(k, k))) == full;
    }
    if (!ok)
      throw Error(Errc::DegenerateDesiredDifference,
                  "could not draw a full-rank desired difference for user " + std::to_string(k + 1));
  }
  ext.slots.push_back(std::move(second));
  return ext;
}

ChannelRealization permute_realization(const ChannelRealization& real, const std::vector<int>& perm) {
  ChannelRealization out{permute_spec(real.spec, perm), real.seed, real.blocks};
  for (int b = 0; b < real.spec.K; ++b)
    for (int a = 0; a < real.spec.K; ++a) out.at(b, a) = real.at(perm[b], perm[a]);
  return out;
}

ExtendedRealization permute_extended(const ExtendedRealization& ext, const std::vector<int>& perm) {
  ExtendedRealization out;
  for (const auto& s : ext.slots) out.slots.push_back(permute_realization(s, perm));
  return out;
}

}  // namespace halfcake
