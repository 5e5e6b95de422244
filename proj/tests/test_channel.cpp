#include <doctest.h>

#include <random>

#include "halfcake/channel.hpp"
#include "halfcake/feasibility.hpp"
#include "halfcake/structural_rank.hpp"
#include "oracles.hpp"

using namespace halfcake;

namespace {

NetworkSpec counterexample() {
  NetworkSpec s = NetworkSpec::square_full_rank({10, 8, 6});
  s.D[0][1] = 6;
  s.D[1][0] = 5;
  return s;
}

template <class F>
Errc error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::Internal;
}

}  // namespace

TEST_CASE("spec validation rejects malformed networks") {
  NetworkSpec s = NetworkSpec::square_full_rank({2, 3});
  CHECK_NOTHROW(validate_spec(s));

  NetworkSpec one = NetworkSpec::square_full_rank({2});
  CHECK(error_of([&] { validate_spec(one); }) == Errc::BadShape);

  NetworkSpec bad_rank = s;
  bad_rank.D[0][1] = 3;  // min(2, 3) = 2
  CHECK(error_of([&] { validate_spec(bad_rank); }) == Errc::RankExceedsDimension);
  bad_rank.D[0][1] = -1;
  CHECK(error_of([&] { validate_spec(bad_rank); }) == Errc::RankExceedsDimension);

  NetworkSpec short_m = s;
  short_m.M.pop_back();
  CHECK(error_of([&] { validate_spec(short_m); }) == Errc::BadShape);

  NetworkSpec zero_antennas = s;
  zero_antennas.M[1] = zero_antennas.N[1] = 0;
  CHECK(error_of([&] { validate_spec(zero_antennas); }) == Errc::BadShape);
}

TEST_CASE("rank caps use the receive side of the link") {
  const NetworkSpec s = NetworkSpec::full_rank({4, 2}, {1, 5});
  CHECK(s.max_rank(0, 1) == 1);  // receiver 1 has one antenna
  CHECK(s.max_rank(1, 0) == 4);
  CHECK(s.D[0][1] == 1);
  CHECK(s.D[1][0] == 4);
}

TEST_CASE("generic samples realize every rank cap exactly") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    const NetworkSpec s = random_square_spec(rng, 2, 4, 4);
    const ChannelRealization c = sample_generic(s, t);
    const FieldRealization f = sample_generic_field(s, t);
    for (int j = 0; j < s.K; ++j)
      for (int i = 0; i < s.K; ++i) {
        const int want = i == j ? s.M[i] : s.D[j][i];
        CHECK(rank(c.at(j, i)) == want);
        CHECK(field::rank(f.at(j, i)) == want);
        CHECK(c.at(j, i).rows() == s.N[j]);
        CHECK(c.at(j, i).cols() == s.M[i]);
      }
  }
}

TEST_CASE("sampling is a pure function of the seed") {
  const NetworkSpec s = counterexample();
  CHECK(sample_generic(s, 9).blocks == sample_generic(s, 9).blocks);
  CHECK(!(sample_generic(s, 9).blocks == sample_generic(s, 10).blocks));
  CHECK(sample_generic_field(s, 4).blocks == sample_generic_field(s, 4).blocks);
  CHECK(mix_seed(1, 2) != mix_seed(2, 1));
}

TEST_CASE("stripping zeroes exactly the desired blocks") {
  const NetworkSpec s = counterexample();
  const ChannelRealization c = sample_generic(s, 1);
  const auto stripped = strip_desired(c);
  REQUIRE(stripped.data.rows() == 24);
  int r0 = 0;
  for (int j = 0; j < 3; ++j) {
    int c0 = 0;
    for (int i = 0; i < 3; ++i) {
      const CMatrix block = stripped.data.block(r0, c0, s.N[j], s.M[i]);
      if (i == j)
        CHECK(block.norm() == 0.0);
      else
        CHECK((block - c.at(j, i)).norm() == 0.0);
      c0 += s.M[i];
    }
    r0 += s.N[j];
  }
  NetworkSpec rect = NetworkSpec::full_rank({2, 2}, {3, 2});
  CHECK(error_of([&] { strip_desired(sample_generic(rect, 0)); }) == Errc::NotSquareCase);
}

TEST_CASE("canonical realization turns a certificate into a permutation") {
  std::mt19937_64 rng(17);
  int tested = 0;
  for (int t = 0; t < 300; ++t) {
    const NetworkSpec s = random_square_spec(rng, 2, 4, 4);
    const FlowResult flow = reduced_rank_feasible(s);
    if (!flow.feasible()) continue;
    ++tested;
    const FieldRealization w = canonical_realization(s, *flow.certificate);
    const FMatrix h = strip_desired(w).data;
    for (int r = 0; r < h.rows(); ++r) {
      int ones = 0;
      for (int c = 0; c < h.cols(); ++c) {
        CHECK((h(r, c) == 0 || h(r, c) == 1));
        ones += h(r, c) == 1;
      }
      CHECK(ones == 1);
    }
    CHECK(field::rank(h) == s.m_sum());
    // The witness never uses more rank than a link allows.
    for (int j = 0; j < s.K; ++j)
      for (int i = 0; i < s.K; ++i)
        if (i != j) CHECK(field::rank(w.at(j, i)) <= s.D[j][i]);
  }
  CHECK(tested > 10);
}

TEST_CASE("ergodic pairs share cross blocks and vary desired blocks") {
  const NetworkSpec s = counterexample();
  const ExtendedRealization e = extend_ergodic_pair(s, 3);
  REQUIRE(e.n() == 2);
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) {
      const CMatrix diff = e.slots[0].at(j, i) - e.slots[1].at(j, i);
      if (i == j)
        CHECK(rank(diff) == s.M[i]);
      else
        CHECK(diff.norm() == 0.0);
    }
  const CMatrix ext = e.extended(0, 1);
  CHECK(ext.rows() == 20);
  CHECK(ext.cols() == 16);
  CHECK(ext.block(0, 8, 10, 8).norm() == 0.0);
}

TEST_CASE("permuting a realization relabels its links") {
  const NetworkSpec s = counterexample();
  const ChannelRealization c = sample_generic(s, 5);
  const std::vector<int> perm = {2, 0, 1};
  const ChannelRealization p = permute_realization(c, perm);
  CHECK(p.spec == permute_spec(s, perm));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) CHECK((p.at(a, b) - c.at(perm[a], perm[b])).norm() == 0.0);
  CHECK(inverse_permutation(perm) == std::vector<int>{1, 2, 0});
}

TEST_CASE("generic rank matches brute force on small structured matrices") {
  // Entries of a 0/1 realization are small integers, so the exact rank of
  // the assembled stripped matrix can be checked against minors.
  std::mt19937_64 rng(31);
  for (int t = 0; t < 30; ++t) {
    const NetworkSpec s = random_square_spec(rng, 2, 3, 2);
    const FieldRealization f = sample_generic_field(s, t);
    const FMatrix h = strip_desired(f).data;
    const int g = generic_rank(s, LayoutShape::Stripped, 8, t);
    CHECK(g >= field::rank(h));
    CHECK(g <= s.m_sum());
    const FlowResult flow = reduced_rank_feasible(s);
    if (flow.feasible()) {
      const FieldRealization w = canonical_realization(s, *flow.certificate);
      const FMatrix hw = strip_desired(w).data;
      oracle::IntMatrix im(hw.rows(), std::vector<std::int64_t>(hw.cols()));
      for (int r = 0; r < hw.rows(); ++r)
        for (int c = 0; c < hw.cols(); ++c) im[r][c] = std::int64_t(hw(r, c));
      CHECK(oracle::minor_rank(im) == s.m_sum());
      CHECK(g == s.m_sum());
    }
  }
}
