#include <doctest.h>

#include <random>

#include "halfcake/feasibility.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace halfcake;
using support::three_user;

namespace {

// Capacity of the cut described by the source-side node sets.
int cut_capacity(const NetworkSpec& s, const FlowResult& f) {
  std::vector<bool> tx(s.K, false), rx(s.K, false);
  for (int i : f.cut_transmitters) tx[i] = true;
  for (int j : f.cut_receivers) rx[j] = true;
  int cap = 0;
  for (int i = 0; i < s.K; ++i)
    if (!tx[i]) cap += s.M[i];
  for (int j = 0; j < s.K; ++j)
    if (rx[j]) cap += s.M[j];
  for (int i = 0; i < s.K; ++i)
    for (int j = 0; j < s.K; ++j)
      if (i != j && tx[i] && !rx[j]) cap += s.D[j][i];
  return cap;
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

TEST_CASE("flow feasibility agrees with exhaustive reduced-rank search") {
  std::mt19937_64 rng(7);
  int feasible = 0;
  for (int t = 0; t < 400; ++t) {
    const NetworkSpec s = random_square_spec(rng, 2, 4, 3);
    const FlowResult f = reduced_rank_feasible(s);
    const bool expect = oracle::reduced_ranks_exist(s);
    REQUIRE(f.feasible() == expect);
    CHECK(f.required == s.m_sum());
    if (f.feasible()) {
      ++feasible;
      CHECK(certificate_valid(s, *f.certificate));
      CHECK(f.max_flow == f.required);
    } else {
      CHECK(f.max_flow < f.required);
      CHECK(f.cut_capacity == f.max_flow);
      CHECK(cut_capacity(s, f) == f.max_flow);
    }
  }
  CHECK(feasible > 20);
  CHECK(feasible < 380);
}

TEST_CASE("three-user closed form equals flow and the pairwise inequalities") {
  for (int m1 = 1; m1 <= 2; ++m1)
    for (int m2 = 1; m2 <= 2; ++m2)
      for (int m3 = 1; m3 <= 2; ++m3) {
        const std::vector<int> M = {m1, m2, m3};
        auto cap = [&](int j, int i) { return std::min(M[j], M[i]); };
        for (int a = 0; a <= cap(0, 1); ++a)
          for (int b = 0; b <= cap(0, 2); ++b)
            for (int c = 0; c <= cap(1, 0); ++c)
              for (int d = 0; d <= cap(1, 2); ++d)
                for (int e = 0; e <= cap(2, 0); ++e)
                  for (int f = 0; f <= cap(2, 1); ++f) {
                    const NetworkSpec s = three_user(M, a, b, c, d, e, f);
                    const bool brute = oracle::reduced_ranks_exist_3user(s);
                    REQUIRE(three_user_condition(s) == brute);
                    REQUIRE(oracle::pairwise_inequalities_hold(s) == brute);
                    REQUIRE(reduced_rank_feasible(s).feasible() == brute);
                    if (brute) CHECK(certificate_valid(s, assign_reduced_ranks_3user(s)));
                  }
      }
}

TEST_CASE("closed-form assignment refuses networks that fail the test") {
  const NetworkSpec s = three_user({2, 2, 2}, 0, 0, 0, 0, 0, 0);
  CHECK(error_of([&] { assign_reduced_ranks_3user(s); }) == Errc::ConditionFails);
  CHECK(error_of([&] { three_user_condition(NetworkSpec::square_full_rank({1, 1})); }) == Errc::WrongK);
}

TEST_CASE("certificate checks name the broken condition") {
  const NetworkSpec s = NetworkSpec::square_full_rank({2, 2});
  ReducedRankCertificate ok{{{0, 2}, {2, 0}}};
  CHECK(certificate_violation(s, ok).empty());
  ReducedRankCertificate short_row{{{0, 1}, {2, 0}}};
  CHECK(!certificate_valid(s, short_row));
  NetworkSpec low = s;
  low.D[0][1] = 1;
  CHECK(!certificate_violation(low, ok).empty());
}

TEST_CASE("greedy chip allocation certifies full-rank networks without a dominant user") {
  std::mt19937_64 rng(13);
  int done = 0;
  while (done < 60) {
    const int K = 2 + int(rng() % 5);
    std::vector<int> M(K);
    for (auto& m : M) m = 1 + int(rng() % 7);
    const NetworkSpec s = NetworkSpec::square_full_rank(M);
    bool dominant = false;
    for (int m : M) dominant |= 2 * m > s.m_sum();
    if (dominant) {
      CHECK(error_of([&] { greedy_chip_allocation(s); }) == Errc::DominantUser);
      continue;
    }
    CHECK(certificate_valid(s, greedy_chip_allocation(s)));
    ++done;
  }
}

TEST_CASE("symmetric allocation matches the (K-1) D >= M threshold") {
  for (int K = 2; K <= 5; ++K)
    for (int M = 1; M <= 6; ++M)
      for (int D = 0; D <= M; ++D) {
        NetworkSpec s = NetworkSpec::square_full_rank(std::vector<int>(K, M));
        for (int j = 0; j < K; ++j)
          for (int i = 0; i < K; ++i)
            if (i != j) s.D[j][i] = D;
        if ((K - 1) * D >= M) {
          CHECK(certificate_valid(s, symmetric_allocation(K, M, D)));
          if (K <= 3 && M <= 4) CHECK(oracle::reduced_ranks_exist(s));
        } else {
          CHECK(error_of([&] { symmetric_allocation(K, M, D); }) == Errc::ConditionFails);
        }
      }
}

TEST_CASE("greedy coefficient removal certifies exactly the generically full-rank networks") {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 40; ++t) {
    const NetworkSpec s = random_square_spec(rng, 2, 3, 3);
    const auto cert = necessity_reduction(s, t);
    CHECK(cert.has_value() == reduced_rank_feasible(s).feasible());
    if (cert) CHECK(certificate_valid(s, *cert));
  }
}

TEST_CASE("symmetric classification picks the scheme family of the first violation") {
  // Only inequality 7 fails: D12 + D21 = 2 < M1 + M2 - M3 = 4.
  const NetworkSpec aligned = three_user({3, 3, 2}, 1, 2, 1, 2, 2, 2);
  const auto a = classify_symmetric_3user(aligned);
  CHECK(!a.half_cake_optimal);
  CHECK(a.all_violated == std::vector<int>{7});
  CHECK(a.family == SchemeFamily::AlignedPair);
  CHECK(a.focus == std::vector<int>{0, 1});

  const NetworkSpec zf = three_user({3, 2, 2}, 1, 1, 1, 2, 1, 2);
  const auto z = classify_symmetric_3user(zf);
  CHECK(z.violated == 1);
  CHECK(z.family == SchemeFamily::ZeroForcedStream);
  CHECK(z.focus == std::vector<int>{0});

  const auto full = classify_symmetric_3user(NetworkSpec::square_full_rank({2, 2, 2}));
  CHECK(full.half_cake_optimal);
  CHECK(full.all_violated.empty());

  const NetworkSpec skew = three_user({2, 2, 2}, 1, 2, 2, 2, 2, 2);
  CHECK(error_of([&] { classify_symmetric_3user(skew); }) == Errc::NotSymmetric);
}

TEST_CASE("boundary cases certify half the cake without reduced ranks") {
  const NetworkSpec sum_case = three_user({5, 3, 2}, 0, 0, 3, 0, 2, 0);
  const NetworkSpec equal_case = three_user({5, 5, 3}, 0, 0, 5, 3, 3, 0);
  for (const NetworkSpec& s : {sum_case, equal_case}) {
    CHECK(!reduced_rank_feasible(s).feasible());
    const HalfCakeVerdict v = half_cake_verdict(s);
    CHECK(v.status == VerdictStatus::OptimalCertified);
    CHECK(v.bound == Rational(s.m_sum(), 2));
  }
  CHECK(half_cake_verdict(sum_case).witnesses == std::vector<std::string>{kWitnessSumAntennas});
  CHECK(half_cake_verdict(equal_case).witnesses == std::vector<std::string>{kWitnessEqualAntennas});

  // Relabeled copies are recognized too.
  for (const std::vector<int>& perm : {std::vector<int>{2, 0, 1}, std::vector<int>{1, 2, 0}}) {
    CHECK(half_cake_verdict(permute_spec(sum_case, perm)).status == VerdictStatus::OptimalCertified);
    CHECK(half_cake_verdict(permute_spec(equal_case, perm)).status == VerdictStatus::OptimalCertified);
  }
}

TEST_CASE("verdict statuses") {
  const HalfCakeVerdict full = half_cake_verdict(NetworkSpec::square_full_rank({3, 2, 2}));
  CHECK(full.status == VerdictStatus::OptimalCertified);
  CHECK(full.certificate.has_value());
  CHECK(full.half_cake == Rational(7, 2));

  const HalfCakeVerdict sym = half_cake_verdict(three_user({3, 3, 2}, 1, 2, 1, 2, 2, 2));
  CHECK(sym.status == VerdictStatus::MoreThanHalfPossible);

  NetworkSpec ce = NetworkSpec::square_full_rank({10, 8, 6});
  ce.D[0][1] = 6;
  ce.D[1][0] = 5;
  const HalfCakeVerdict u = half_cake_verdict(ce);
  CHECK(u.status == VerdictStatus::Undecided);
  REQUIRE(u.flow.has_value());
  CHECK(u.flow->max_flow == 23);
}
