/**
 * @file commands.hpp
 * @brief The command pipelines behind the CLI and the C API.  Each returns
 * a JSON report and an exit status (0 all checks pass, 1 mismatch); input
 * problems surface as halfcake::Error.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "halfcake/json_io.hpp"

namespace halfcake {

struct Options {
  std::uint64_t seed = 0;
  int trials = kDefaultTrials;
  double tol = kDefaultTolerance;
  int mu_max = 3;
  int budget = 10000;
};

struct CommandResult {
  int exit_code = 0;
  Json report;
};

/// Verdict, bound search and verified achievable schemes in one report.
CommandResult cmd_analyze(const NetworkSpec& spec, const Options& opts);

/// Half-cake verdict with flow evidence.
CommandResult cmd_feasibility(const NetworkSpec& spec, const Options& opts);

/// Bound for an explicit plan (sum-DoF for uniform mu, weighted statement
/// otherwise), or the bound search when no plan is given.
CommandResult cmd_bound(const NetworkSpec& spec, const Options& opts,
                        const std::optional<ReplicationPlan>& plan);

/// Exit 1 when the scheme fails verification.
CommandResult cmd_verify(const NetworkSpec& spec, const ExtendedRealization& ext,
                         const LinearScheme& scheme, double tol);

struct SampleOutput {
  Json channel;
  std::optional<Json> scheme;  // ergodic scheme for the sampled pair
};

/// Generic realization; `ergodic` samples a two-slot pair instead and also
/// emits the half-cake scheme for it.
SampleOutput cmd_sample(const NetworkSpec& spec, std::uint64_t seed, bool ergodic);

struct ReproduceTarget {
  const char* name;
  const char* description;
};

const std::vector<ReproduceTarget>& reproduce_targets();

/// Throws Error{UnknownTarget}.
CommandResult cmd_reproduce(const std::string& target, const Options& opts);

/// Maps an error to the CLI exit status (2 for every input problem).
int exit_code_for(const Error& e);

}  // namespace halfcake
