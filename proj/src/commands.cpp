#include "halfcake/commands.hpp"

#include <chrono>
#include <numeric>

namespace halfcake {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::vector<int> one_based(const std::vector<int>& v) {
  std::vector<int> out;
  for (int x : v) out.push_back(x + 1);
  return out;
}

using Builder = std::function<LinearScheme(const ExtendedRealization&, std::uint64_t)>;

struct Achieved {
  std::string id;
  std::vector<int> perm;
  VerifiedScheme verified;
};

std::optional<Achieved> try_scheme(const NetworkSpec& spec, const std::string& id, const std::vector<int>& perm,
                                   const Builder& build, const Options& opts) {
  const NetworkSpec ps = permute_spec(spec, perm);
  try {
    VerifiedScheme vs = construct_verified([&](std::uint64_t s) { return extend_ergodic_pair(ps, s); }, build,
                                           opts.seed, opts.tol);
    return Achieved{id, perm, std::move(vs)};
  } catch (const Error& e) {
    if (e.code() == Errc::NullSpaceEmpty || e.code() == Errc::ConditionFails ||
        e.code() == Errc::DegenerateDesiredDifference)
      return std::nullopt;
    throw;
  }
}

Json achieved_json(const Achieved& a) {
  // dof listed under the original labels.
  const auto tuple = a.verified.scheme.dof_tuple();
  std::vector<Rational> dof(tuple.size());
  for (std::size_t x = 0; x < a.perm.size(); ++x) dof[a.perm[x]] = tuple[x];
  Json d = Json::array();
  for (const auto& r : dof) d.push_back(to_json(r));
  return Json{{"scheme", a.id},
              {"relabeling", one_based(a.perm)},
              {"n", a.verified.scheme.n},
              {"dof", std::move(d)},
              {"sum_dof", to_json(a.verified.report.sum_dof)},
              {"pass", a.verified.report.pass},
              {"max_residual", a.verified.report.max_residual},
              {"seed", a.verified.seed}};
}

std::vector<Achieved> achievable_schemes(const NetworkSpec& spec, const Options& opts) {
  std::vector<Achieved> out;
  std::vector<int> identity(spec.K);
  std::iota(identity.begin(), identity.end(), 0);
  if (auto a = try_scheme(spec, "ergodic-half-cake", identity,
                          [](const ExtendedRealization& e, std::uint64_t) { return ergodic_half_cake(e); }, opts))
    out.push_back(std::move(*a));
  if (spec.K != 3 || !spec.square()) return out;

  std::vector<int> perm = identity;
  do {
    if (auto a = try_scheme(spec, "aligned-pair", perm,
                            [](const ExtendedRealization& e, std::uint64_t s) { return counterexample_scheme(e, s); },
                            opts))
      out.push_back(std::move(*a));
    if (perm[1] < perm[2]) {
      if (auto a = try_scheme(spec, "zero-forced-stream", perm,
                              [](const ExtendedRealization& e, std::uint64_t s) { return zero_forced_scheme(e, s); }, opts))
        out.push_back(std::move(*a));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Json options_json(const Options& o) {
  return Json{{"seed", o.seed}, {"trials", o.trials}, {"tol", o.tol}, {"mu_max", o.mu_max}, {"budget", o.budget}};
}

struct Checks {
  Json list = Json::array();
  bool ok = true;

  void add(const std::string& name, const Json& expected, const Json& observed, bool pass) {
    list.push_back(Json{{"check", name}, {"expected", expected}, {"observed", observed}, {"pass", pass}});
    ok = ok && pass;
  }
  void rational(const std::string& name, const Rational& expected, const Rational& observed) {
    add(name, to_json(expected), to_json(observed), expected == observed);
  }
  void integer(const std::string& name, int expected, int observed) {
    add(name, expected, observed, expected == observed);
  }
  void flag(const std::string& name, bool expected, bool observed) {
    add(name, expected, observed, expected == observed);
  }
};

CommandResult finish(const std::string& target, const std::string& description, Checks&& checks,
                     Json extra = Json::object()) {
  Json report{{"target", target}, {"description", description}, {"pass", checks.ok},
              {"checks", std::move(checks.list)}};
  for (auto& [k, v] : extra.items()) report[k] = v;
  return {checks.ok ? 0 : 1, std::move(report)};
}

NetworkSpec counterexample_spec() {
  NetworkSpec spec = NetworkSpec::square_full_rank({10, 8, 6});
  spec.D[0][1] = 6;
  spec.D[1][0] = 5;
  return spec;
}

NetworkSpec sum_antennas_spec() {
  NetworkSpec spec = NetworkSpec::square_full_rank({5, 3, 2});
  for (auto& row : spec.D) std::fill(row.begin(), row.end(), 0);
  spec.D[1][0] = 3;
  spec.D[2][0] = 2;
  return spec;
}

NetworkSpec equal_antennas_spec() {
  NetworkSpec spec = NetworkSpec::square_full_rank({5, 5, 3});
  for (auto& row : spec.D) std::fill(row.begin(), row.end(), 0);
  spec.D[1][0] = 5;
  spec.D[2][0] = 3;
  spec.D[1][2] = 3;
  return spec;
}

CommandResult reproduce_counterexample(const Options& opts) {
  const NetworkSpec spec = counterexample_spec();
  Checks c;
  const HalfCakeVerdict v = half_cake_verdict(spec);
  c.flag("no half-cake optimality certificate", false, v.status == VerdictStatus::OptimalCertified);
  c.flag("reduced-rank flow feasible", false, v.flow && v.flow->feasible());
  c.integer("generic rank of the stripped matrix", 23, generic_rank(spec, LayoutShape::Stripped, opts.trials, opts.seed));
  const VerifiedScheme vs = construct_verified([&](std::uint64_t s) { return extend_ergodic_pair(spec, s); },
                                               [](const ExtendedRealization& e, std::uint64_t s) {
                                                 return counterexample_scheme(e, s);
                                               },
                                               opts.seed, opts.tol);
  c.flag("aligned-pair scheme verifies", true, vs.report.pass);
  c.rational("achievable sum DoF", Rational(25, 2), vs.report.sum_dof);
  const SearchResult sr = search_bounds(spec, std::min(opts.mu_max, 2), opts.budget, opts.seed, opts.trials);
  const bool sound = sr.best && sr.best->value >= Rational(25, 2);
  c.add("searched outer bound stays at or above 25/2", Json(">= 25/2"),
        sr.best ? to_json(sr.best->value) : Json(nullptr), sound);
  return finish("counterexample",
                "three-user 10/8/6 antenna network with D12 = 6, D21 = 5: more than half the cake is achievable",
                std::move(c), Json{{"verdict", to_json(v)}, {"scheme_report", to_json(vs.report)}});
}

CommandResult reproduce_two_by_three(const Options& opts) {
  const NetworkSpec spec = two_by_three_spec();
  const ReplicationPlan plan = two_by_three_plan();
  Checks c;
  const DofBound generic = outer_bound(spec, plan, opts.trials, opts.seed);
  const DofBound witness = outer_bound(spec, plan, two_by_three_witness());
  c.integer("Mbar1", 18, generic.Mbar1);
  c.integer("Nbar2", 18, generic.Nbar2);
  c.integer("generic rank of Hcoop", 18, generic.rank);
  c.integer("rank of Hcoop on the 0/1 witness channel", 18, witness.rank);
  c.rational("sum-DoF outer bound", Rational(18, 5), generic.value);
  return finish("example-2x3", "three-user 2x3 full-rank network, five replicas per user", std::move(c),
                Json{{"bound", to_json(generic)}});
}

CommandResult reproduce_asymmetric(const Options& opts) {
  const NetworkSpec spec = asymmetric_example_spec();
  const ReplicationPlan plan = asymmetric_example_plan();
  Checks c;
  const DofBound generic = outer_bound(spec, plan, opts.trials, opts.seed);
  const DofBound witness = outer_bound(spec, plan, asymmetric_example_witness());
  c.integer("Mbar1", 24, generic.Mbar1);
  c.integer("Nbar2", 23, generic.Nbar2);
  c.integer("generic rank of Hcoop", 23, generic.rank);
  c.integer("rank of Hcoop on the 0/1 witness channel", 23, witness.rank);
  c.rational("sum-DoF outer bound", Rational(12), generic.value);
  const VerifiedScheme vs = construct_verified(
      [&](std::uint64_t s) { return single_slot(sample_generic(spec, s)); },
      [](const ExtendedRealization& e, std::uint64_t s) { return asymmetric_example_scheme(e.slots.front(), s); }, opts.seed,
      opts.tol);
  c.flag("one-shot scheme verifies", true, vs.report.pass);
  Json tuple = Json::array();
  for (const auto& r : vs.scheme.dof_tuple()) tuple.push_back(to_json(r));
  c.add("DoF tuple", Json::array({7, 3, 2}), tuple,
        vs.scheme.dof_tuple() == std::vector<Rational>{Rational(7), Rational(3), Rational(2)});
  c.integer("interference dimension at receiver 3", 1, interference_dimension(vs.ext, vs.scheme, 2, opts.tol));
  return finish("example-asym", "three-user (10x10)(8x10)(6x3) network with H31 = 0", std::move(c),
                Json{{"bound", to_json(generic)}, {"scheme_report", to_json(vs.report)}});
}

CommandResult reproduce_boundary(const std::string& target, const NetworkSpec& spec, const char* witness,
                                 const Options& opts) {
  Checks c;
  const HalfCakeVerdict v = half_cake_verdict(spec);
  const FlowResult flow = reduced_rank_feasible(spec);
  c.flag("reduced-rank flow feasible", false, flow.feasible());
  c.add("verdict", "OPTIMAL_CERTIFIED", verdict_status_name(v.status),
        v.status == VerdictStatus::OptimalCertified);
  c.add("witness", witness, v.witnesses, v.witnesses.size() == 1 && v.witnesses.front() == witness);
  const Rational half(spec.m_sum(), 2);
  c.add("certified bound", to_json(half), v.bound ? to_json(*v.bound) : Json(nullptr), v.bound == half);
  Json extra{{"spec", to_json(spec)}, {"verdict", to_json(v)}};
  if (target == "boundary-equal-antennas") {
    const ReplicationPlan plan = equal_antennas_plan();
    const DofBound generic = outer_bound(spec, plan, opts.trials, opts.seed);
    const DofBound real = outer_bound(spec, plan, equal_antennas_witness(spec));
    c.rational("six-user cooperation bound", half, generic.value);
    c.integer("rank of Hcoop on the 0/1 witness channel", spec.m_sum(), real.rank);
    extra["bound"] = to_json(generic);
  }
  return finish(target,
                target == "boundary-sum-antennas" ? "M1 = M2 + M3 boundary case, M = (5, 3, 2), D21 = 3, D31 = 2"
                                     : "M1 = M2 boundary case, M = (5, 5, 3), D21 = 5, D31 = D23 = 3",
                std::move(c), std::move(extra));
}

CommandResult reproduce_flow_rank(const Options& opts) {
  std::mt19937_64 rng(opts.seed);
  int agree = 0, feasible = 0;
  const int total = 200;
  Json disagreements = Json::array();
  for (int n = 0; n < total; ++n) {
    const NetworkSpec spec = random_square_spec(rng, 2, 4, 5);
    const bool flow = reduced_rank_feasible(spec).feasible();
    const bool full = generic_rank(spec, LayoutShape::Stripped, opts.trials, mix_seed(opts.seed, n)) == spec.m_sum();
    feasible += flow;
    if (flow == full)
      ++agree;
    else
      disagreements.push_back(to_json(spec));
  }
  Checks c;
  c.add("flow feasible iff stripped matrix generically full rank", "100%",
        std::to_string(100.0 * agree / total) + "%", agree == total);
  return finish("flow-rank-equivalence", "200 random square networks, K <= 4, M_k <= 5", std::move(c),
                Json{{"instances", total}, {"feasible", feasible}, {"disagreements", std::move(disagreements)}});
}

}  // namespace

CommandResult cmd_analyze(const NetworkSpec& spec, const Options& opts) {
  Json report{{"spec", to_json(spec)}, {"options", options_json(opts)}};
  Json timing = Json::object();

  auto t0 = Clock::now();
  std::optional<HalfCakeVerdict> verdict;
  if (spec.square()) {
    verdict = half_cake_verdict(spec);
    report["verdict"] = to_json(*verdict);
  } else {
    report["verdict"] = nullptr;
  }
  timing["verdict"] = ms_since(t0);

  t0 = Clock::now();
  const SearchResult sr = search_bounds(spec, opts.mu_max, opts.budget, opts.seed, opts.trials);
  timing["bound_search"] = ms_since(t0);
  report["bound_search"] = Json{{"evaluated", sr.evaluated}, {"pruned", sr.pruned}};

  std::optional<Rational> upper;
  Json upper_json = nullptr;
  if (sr.best) {
    upper = sr.best->value;
    upper_json = Json{{"value", to_json(sr.best->value)}, {"source", "replication-search"}, {"witness", to_json(*sr.best)}};
  }
  if (verdict && verdict->bound && (!upper || *verdict->bound < *upper)) {
    upper = verdict->bound;
    upper_json = Json{{"value", to_json(*verdict->bound)}, {"source", "verdict"}, {"witness", verdict->witnesses}};
  }
  report["upper_bound"] = upper_json;

  t0 = Clock::now();
  const std::vector<Achieved> achieved = achievable_schemes(spec, opts);
  timing["achievability"] = ms_since(t0);
  Json list = Json::array();
  const Achieved* best = nullptr;
  for (const auto& a : achieved) {
    list.push_back(achieved_json(a));
    if (!best || a.verified.report.sum_dof > best->verified.report.sum_dof) best = &a;
  }
  report["achievable"] = std::move(list);
  report["best_achievable"] =
      best ? Json{{"sum_dof", to_json(best->verified.report.sum_dof)}, {"scheme", best->id},
                  {"relabeling", one_based(best->perm)}}
           : Json(nullptr);
  report["sum_dof"] = best && upper && best->verified.report.sum_dof == *upper
                          ? to_json(*upper)
                          : Json(nullptr);
  report["timing_ms"] = std::move(timing);
  return {0, std::move(report)};
}

CommandResult cmd_feasibility(const NetworkSpec& spec, const Options&) {
  const HalfCakeVerdict v = half_cake_verdict(spec);
  Json report = to_json(v);
  if (spec.K == 3) report["three_user_condition"] = three_user_condition(spec);
  return {0, std::move(report)};
}

CommandResult cmd_bound(const NetworkSpec& spec, const Options& opts, const std::optional<ReplicationPlan>& plan) {
  if (plan) {
    if (plan->uniform()) return {0, to_json(outer_bound(spec, *plan, opts.trials, opts.seed))};
    return {0, to_json(weighted_dof_bound(spec, *plan, opts.trials, opts.seed))};
  }
  const SearchResult sr = search_bounds(spec, opts.mu_max, opts.budget, opts.seed, opts.trials);
  Json report = sr.best ? to_json(*sr.best) : Json{{"bound", nullptr}};
  report["search"] = Json{{"mu_max", opts.mu_max}, {"budget", opts.budget}, {"evaluated", sr.evaluated},
                          {"pruned", sr.pruned}};
  return {0, std::move(report)};
}

CommandResult cmd_verify(const NetworkSpec& spec, const ExtendedRealization& ext, const LinearScheme& scheme,
                         double tol) {
  if (!(ext.spec() == spec)) throw Error(Errc::DimensionMismatch, "channel does not match the network");
  const VerificationReport rep = verify_scheme(ext, scheme, tol);
  Json report = to_json(rep);
  Json dof = Json::array();
  for (const auto& r : scheme.dof_tuple()) dof.push_back(to_json(r));
  report["dof"] = std::move(dof);
  return {rep.pass ? 0 : 1, std::move(report)};
}

SampleOutput cmd_sample(const NetworkSpec& spec, std::uint64_t seed, bool ergodic) {
  if (!ergodic) return {to_json(sample_generic(spec, seed)), std::nullopt};
  const ExtendedRealization ext = extend_ergodic_pair(spec, seed);
  return {to_json(ext), to_json(ergodic_half_cake(ext))};
}

const std::vector<ReproduceTarget>& reproduce_targets() {
  static const std::vector<ReproduceTarget> targets = {
      {"counterexample", "10/8/6 network where more than half the cake is achievable (25/2)"},
      {"example-2x3", "three-user 2x3 network, replication bound 18/5"},
      {"example-asym", "(10x10)(8x10)(6x3) network, bound 12 met by DoF (7, 3, 2)"},
      {"boundary-sum-antennas", "M1 = M2 + M3 boundary case, half the cake optimal without a reduced-rank certificate"},
      {"boundary-equal-antennas", "M1 = M2 boundary case, half the cake optimal without a reduced-rank certificate"},
      {"flow-rank-equivalence", "flow certificate vs generic full rank of the stripped matrix on random networks"},
  };
  return targets;
}

CommandResult cmd_reproduce(const std::string& target, const Options& opts) {
  if (target == "counterexample") return reproduce_counterexample(opts);
  if (target == "example-2x3") return reproduce_two_by_three(opts);
  if (target == "example-asym") return reproduce_asymmetric(opts);
  if (target == "boundary-sum-antennas") return reproduce_boundary(target, sum_antennas_spec(), kWitnessSumAntennas, opts);
  if (target == "boundary-equal-antennas") return reproduce_boundary(target, equal_antennas_spec(), kWitnessEqualAntennas, opts);
  if (target == "flow-rank-equivalence") return reproduce_flow_rank(opts);
  throw Error(Errc::UnknownTarget, "unknown reproduction target '" + target + "'");
}

int exit_code_for(const Error&) { return 2; }

}  // namespace halfcake
