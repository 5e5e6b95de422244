#include <doctest.h>

#include <random>

#include "halfcake/replication.hpp"
#include "halfcake/schemes.hpp"
#include "support.hpp"

using namespace halfcake;

namespace {

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

TEST_CASE("ergodic repetition achieves half the cake on generic networks") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 15; ++t) {
    const NetworkSpec s = random_square_spec(rng, 2, 5, 5);
    const ExtendedRealization ext = extend_ergodic_pair(s, t);
    const LinearScheme scheme = ergodic_half_cake(ext);
    const VerificationReport rep = verify_scheme(ext, scheme);
    CHECK(rep.pass);
    CHECK(rep.sum_dof == Rational(s.m_sum(), 2));
    CHECK(rep.max_residual < 1e-10);
    for (int k = 0; k < s.K; ++k) CHECK(rep.desired_rank[k] == s.M[k]);
  }
}

TEST_CASE("ergodic repetition with unequal antenna counts keeps min(M, N) per user") {
  const NetworkSpec s = validate_spec(NetworkSpec::full_rank({4, 2, 3}, {2, 3, 3}));
  const ExtendedRealization ext = extend_ergodic_pair(s, 1);
  const VerificationReport rep = verify_scheme(ext, ergodic_half_cake(ext));
  CHECK(rep.pass);
  CHECK(rep.sum_dof == Rational(2 + 2 + 3, 2));
}

TEST_CASE("the aligned-pair scheme beats half the cake on the counterexample network") {
  const NetworkSpec s = support::counterexample();
  const VerifiedScheme vs = construct_verified([&](std::uint64_t k) { return extend_ergodic_pair(s, k); },
                                               [](const ExtendedRealization& e, std::uint64_t k) {
                                                 return counterexample_scheme(e, k);
                                               },
                                               0, 1e-8);
  CHECK(vs.report.pass);
  CHECK(vs.report.sum_dof == Rational(25, 2));
  CHECK(vs.scheme.dof_tuple() == std::vector<Rational>{Rational(11, 2), Rational(9, 2), Rational(5, 2)});
  CHECK(vs.report.max_residual < 1e-8);
}

TEST_CASE("a 1e-3 rank-one channel perturbation breaks a verified scheme") {
  const NetworkSpec s = support::counterexample();
  ExtendedRealization ext = extend_ergodic_pair(s, 4);
  const LinearScheme scheme = counterexample_scheme(ext, 4);
  REQUIRE(verify_scheme(ext, scheme, 1e-8).pass);

  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  Eigen::VectorXcd u(s.N[2]), v(s.M[0]);
  for (int k = 0; k < u.size(); ++k) u(k) = Complex(g(rng), g(rng));
  for (int k = 0; k < v.size(); ++k) v(k) = Complex(g(rng), g(rng));
  const CMatrix bump = 1e-3 * (u / u.norm()) * (v / v.norm()).adjoint();
  for (auto& slot : ext.slots) slot.at(2, 0) += bump * slot.at(2, 0).norm();
  const VerificationReport rep = verify_scheme(ext, scheme, 1e-8);
  CHECK(!rep.pass);
  CHECK(rep.residual[2][0] > 1e-6);
}

TEST_CASE("verification rejects schemes of the wrong shape") {
  const NetworkSpec s = NetworkSpec::square_full_rank({2, 2});
  const ExtendedRealization ext = extend_ergodic_pair(s, 0);
  LinearScheme scheme = ergodic_half_cake(ext);
  scheme.users[0].V = CMatrix::Zero(3, scheme.users[0].m);
  CHECK(error_of([&] { verify_scheme(ext, scheme); }) == Errc::DimensionMismatch);
  LinearScheme missing = ergodic_half_cake(ext);
  missing.users.pop_back();
  CHECK(error_of([&] { verify_scheme(ext, missing); }) == Errc::DimensionMismatch);
}

TEST_CASE("a silent user with no streams verifies") {
  const NetworkSpec s = NetworkSpec::square_full_rank({2, 2});
  const ExtendedRealization ext = extend_ergodic_pair(s, 0);
  LinearScheme scheme = ergodic_half_cake(ext);
  scheme.users[1] = UserScheme{0, CMatrix::Zero(4, 0), CMatrix::Zero(0, 4)};
  const VerificationReport rep = verify_scheme(ext, scheme);
  CHECK(rep.pass);
  CHECK(rep.sum_dof == Rational(1));
}

TEST_CASE("scheme constructors check their rank conditions") {
  const ExtendedRealization full = extend_ergodic_pair(NetworkSpec::square_full_rank({3, 3, 3}), 0);
  CHECK(error_of([&] { aligned_pair_scheme(full, 0); }) == Errc::ConditionFails);
  CHECK(error_of([&] { zero_forced_scheme(full, 0); }) == Errc::ConditionFails);
  // One-sided zero forcing is not enough.
  const NetworkSpec one_side = support::three_user({3, 2, 2}, 2, 2, 1, 2, 1, 2);
  CHECK(error_of([&] { zero_forced_scheme(extend_ergodic_pair(one_side, 0), 0); }) == Errc::ConditionFails);
}

TEST_CASE("the zero-forced stream scheme gives user 1 an extra stream") {
  const NetworkSpec s = support::three_user({3, 2, 2}, 1, 1, 1, 2, 1, 2);
  const VerifiedScheme vs = construct_verified([&](std::uint64_t k) { return extend_ergodic_pair(s, k); },
                                               [](const ExtendedRealization& e, std::uint64_t k) {
                                                 return zero_forced_scheme(e, k);
                                               },
                                               2);
  CHECK(vs.report.pass);
  CHECK(vs.report.streams == std::vector<int>{4, 2, 2});
  CHECK(vs.report.sum_dof == Rational(8, 2));
}

TEST_CASE("relabeled symmetric violations reach (M_sum + 1) / 2") {
  // Inequality 8 fails: the aligned pair is users 2 and 3.
  const NetworkSpec s = support::three_user({2, 3, 3}, 2, 2, 2, 1, 2, 1);
  const SymmetricClassification cls = classify_symmetric_3user(s);
  REQUIRE(cls.family == SchemeFamily::AlignedPair);
  CHECK(cls.focus == std::vector<int>{1, 2});
  const VerifiedScheme vs = support::symmetric_violation_scheme(s, cls, 0, 1e-9);
  CHECK(vs.report.pass);
  CHECK(vs.report.sum_dof == Rational(9, 2));
}

TEST_CASE("the asymmetric example scheme delivers (7, 3, 2) in one shot") {
  const NetworkSpec s = asymmetric_example_spec();
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const VerifiedScheme vs = construct_verified(
        [&](std::uint64_t k) { return single_slot(sample_generic(s, k)); },
        [](const ExtendedRealization& e, std::uint64_t k) { return asymmetric_example_scheme(e.slots[0], k); },
        seed);
    CHECK(vs.report.pass);
    CHECK(vs.scheme.dof_tuple() == std::vector<Rational>{Rational(7), Rational(3), Rational(2)});
    // Receiver 3 (three antennas, two streams) sees one interference dimension.
    CHECK(interference_dimension(vs.ext, vs.scheme, 2) == 1);
  }
  const ChannelRealization other = sample_generic(NetworkSpec::square_full_rank({3, 3, 3}), 0);
  CHECK(error_of([&] { asymmetric_example_scheme(other, 0); }) == Errc::ConditionFails);
}

TEST_CASE("subspace intersection width counts shared directions") {
  std::mt19937_64 rng(29);
  std::normal_distribution<double> g;
  auto gauss = [&](int r, int c) {
    CMatrix m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = Complex(g(rng), g(rng));
    return m;
  };
  for (int shared = 0; shared <= 3; ++shared) {
    const CMatrix common = gauss(8, shared);
    CMatrix a(8, shared + 2), b(8, shared + 1);
    a << common, gauss(8, 2);
    b << common, gauss(8, 1);
    CHECK(subspace_intersection_width(a, b) == shared);
  }
}

TEST_CASE("zero-forcing receivers annihilate all interference") {
  const NetworkSpec s = support::counterexample();
  const ExtendedRealization ext = extend_ergodic_pair(s, 6);
  LinearScheme scheme = counterexample_scheme(ext, 6);
  for (auto& u : scheme.users) u.U = CMatrix();
  scheme = attach_zero_forcing_receivers(ext, scheme);
  CHECK(verify_scheme(ext, scheme, 1e-8).pass);
}
