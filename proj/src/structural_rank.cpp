#include "halfcake/structural_rank.hpp"

#include <algorithm>
#include <random>

namespace halfcake {

int generic_rank(const NetworkSpec& spec, const BlockLayout& layout, int trials,
                 std::uint64_t seed) {
  if (trials < 1) throw Error(Errc::InvalidArgument, "trials must be at least 1");
  const int cap = std::min(layout.rows(), layout.cols());
  int best = 0;
  for (int t = 0; t < trials && best < cap; ++t) {
    const FieldRealization real = sample_generic_field(spec, mix_seed(seed, std::uint64_t(t)));
    best = std::max(best, field::rank(assemble(layout, real)));
  }
  return best;
}

int generic_rank(const NetworkSpec& spec, LayoutShape shape, int trials, std::uint64_t seed) {
  return generic_rank(spec, network_layout(spec, shape), trials, seed);
}

int realized_rank(const BlockLayout& layout, const FieldRealization& real) {
  return field::rank(assemble(layout, real));
}

int realized_rank(const BlockLayout& layout, const ChannelRealization& real, double tol) {
  return rank(assemble(layout, real), tol);
}

StructuredMatrix::StructuredMatrix(const NetworkSpec& spec, std::uint64_t seed) : spec_(spec) {
  check_shape(spec_);
  const int K = spec_.K;
  std::mt19937_64 rng(seed);
  left_.resize(std::size_t(K) * K);
  right_.resize(std::size_t(K) * K);
  pinned_.resize(std::size_t(K) * K);
  for (int j = 0; j < K; ++j) {
    for (int i = 0; i < K; ++i) {
      const int d = i == j ? 0 : spec_.D[j][i];
      left_[slot(j, i)] = FMatrix::random(spec_.N[j], d, rng);
      right_[slot(j, i)] = FMatrix::random(d, spec_.M[i], rng);
      pinned_[slot(j, i)].assign(std::size_t(d), false);
    }
  }
}

std::vector<CoefIndex> StructuredMatrix::coefficients() const {
  std::vector<CoefIndex> out;
  for (int j = 0; j < spec_.K; ++j)
    for (int i = 0; i < spec_.K; ++i)
      for (int m = 0; m < static_cast<int>(pinned_[slot(j, i)].size()); ++m) out.push_back({j, i, m});
  return out;
}

bool StructuredMatrix::zeroed(const CoefIndex& var) const { return pinned_[slot(var.rx, var.tx)].at(var.m); }

StructuredMatrix StructuredMatrix::with_zeroed(const CoefIndex& var) const {
  StructuredMatrix out = *this;
  out.pinned_[slot(var.rx, var.tx)].at(var.m) = true;
  return out;
}

int StructuredMatrix::surviving(int rx, int tx) const {
  const auto& p = pinned_[slot(rx, tx)];
  return static_cast<int>(std::count(p.begin(), p.end(), false));
}

FMatrix StructuredMatrix::evaluate(std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  const int K = spec_.K;
  std::vector<int> ro(K + 1, 0), co(K + 1, 0);
  for (int k = 0; k < K; ++k) {
    ro[k + 1] = ro[k] + spec_.N[k];
    co[k + 1] = co[k] + spec_.M[k];
  }
  FMatrix out(ro[K], co[K]);
  for (int j = 0; j < K; ++j) {
    for (int i = 0; i < K; ++i) {
      const auto& pins = pinned_[slot(j, i)];
      if (pins.empty()) continue;
      // left * diag(a) * right
      FMatrix scaled = left_[slot(j, i)];
      for (int m = 0; m < static_cast<int>(pins.size()); ++m) {
        const field::Element a = pins[m] ? 0 : field::uniform(rng);
        for (int r = 0; r < scaled.rows(); ++r) scaled(r, m) = field::mul(scaled(r, m), a);
      }
      out.set_block(ro[j], co[i], scaled * right_[slot(j, i)]);
    }
  }
  return out;
}

bool det_nonzero(const StructuredMatrix& mat, int trials, std::uint64_t seed) {
  if (!mat.square()) throw Error(Errc::NotSquare, "determinant needs a square stripped matrix");
  for (int t = 0; t < trials; ++t)
    if (field::determinant(mat.evaluate(mix_seed(seed, std::uint64_t(t)))) != 0) return true;
  return false;
}

bool det_nonzero_with_var_zeroed(const StructuredMatrix& mat, const CoefIndex& var, int trials,
                                 std::uint64_t seed) {
  if (!mat.square()) throw Error(Errc::NotSquare, "determinant needs a square stripped matrix");
  return det_nonzero(mat.with_zeroed(var), trials, seed);
}

}  // namespace halfcake
