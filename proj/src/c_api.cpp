#include "halfcake/halfcake.h"

#include <string>

#include "halfcake/commands.hpp"

struct hc_spec {
  halfcake::NetworkSpec spec;
};

struct hc_report {
  std::string json;
  bool passed = true;
};

namespace {

using namespace halfcake;

thread_local std::string last_error;

hc_status status_for(Errc code) {
  switch (code) {
    case Errc::InvalidArgument: return HC_ERR_INVALID_ARGUMENT;
    case Errc::Parse: return HC_ERR_PARSE;
    case Errc::Io: return HC_ERR_IO;
    case Errc::BadShape: return HC_ERR_BAD_SHAPE;
    case Errc::RankExceedsDimension: return HC_ERR_RANK_EXCEEDS_DIMENSION;
    case Errc::NotSquareCase: return HC_ERR_NOT_SQUARE_CASE;
    case Errc::NotSquare: return HC_ERR_NOT_SQUARE;
    case Errc::WrongK: return HC_ERR_WRONG_K;
    case Errc::NotSymmetric: return HC_ERR_NOT_SYMMETRIC;
    case Errc::ConditionFails: return HC_ERR_CONDITION_FAILS;
    case Errc::CertificateInfeasible: return HC_ERR_CERTIFICATE_INFEASIBLE;
    case Errc::DominantUser: return HC_ERR_DOMINANT_USER;
    case Errc::PlanViolatesReplicationRules: return HC_ERR_PLAN_VIOLATES_REPLICATION_RULES;
    case Errc::BadPartition: return HC_ERR_BAD_PARTITION;
    case Errc::NonUniformMu: return HC_ERR_NON_UNIFORM_MU;
    case Errc::DimensionMismatch: return HC_ERR_DIMENSION_MISMATCH;
    case Errc::NullSpaceEmpty: return HC_ERR_NULL_SPACE_EMPTY;
    case Errc::DegenerateDesiredDifference: return HC_ERR_DEGENERATE_DESIRED_DIFFERENCE;
    case Errc::UnknownTarget: return HC_ERR_UNKNOWN_TARGET;
    case Errc::Internal: return HC_ERR_INTERNAL;
  }
  return HC_ERR_INTERNAL;
}

// Runs `body`, translating every exception into a status code.
template <class F>
hc_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return HC_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_for(e.code());
  } catch (const nlohmann::json::exception& e) {
    last_error = e.what();
    return HC_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return HC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return HC_ERR_INTERNAL;
  }
}

Json parse_text(const char* text, const char* what) {
  if (!text) throw Error(Errc::InvalidArgument, std::string(what) + " is NULL");
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Parse, std::string(what) + ": " + e.what());
  }
}

Options options_from(const hc_options* opts) {
  Options o;
  if (!opts) return o;
  if (opts->trials < 1) throw Error(Errc::InvalidArgument, "trials must be at least 1");
  if (opts->mu_max < 1) throw Error(Errc::InvalidArgument, "mu_max must be at least 1");
  if (opts->budget < 0) throw Error(Errc::InvalidArgument, "budget must be nonnegative");
  if (!(opts->tol > 0.0)) throw Error(Errc::InvalidArgument, "tol must be positive");
  o.seed = opts->seed;
  o.trials = opts->trials;
  o.tol = opts->tol;
  o.mu_max = opts->mu_max;
  o.budget = opts->budget;
  return o;
}

hc_report* make_report(const Json& j, bool passed) { return new hc_report{j.dump(2) + "\n", passed}; }

void require(const void* p, const char* what) {
  if (!p) throw Error(Errc::InvalidArgument, std::string(what) + " is NULL");
}

void emit(const CommandResult& r, hc_report** out) { *out = make_report(r.report, r.exit_code == 0); }

}  // namespace

extern "C" {

void hc_options_default(hc_options* opts) {
  if (!opts) return;
  const Options o;
  opts->seed = o.seed;
  opts->trials = o.trials;
  opts->tol = o.tol;
  opts->mu_max = o.mu_max;
  opts->budget = o.budget;
}

const char* hc_status_name(hc_status status) {
  switch (status) {
    case HC_OK: return "OK";
    case HC_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case HC_ERR_PARSE: return "ParseError";
    case HC_ERR_IO: return "IoError";
    case HC_ERR_BAD_SHAPE: return "BadShape";
    case HC_ERR_RANK_EXCEEDS_DIMENSION: return "RankExceedsDimension";
    case HC_ERR_NOT_SQUARE_CASE: return "NotSquareCase";
    case HC_ERR_NOT_SQUARE: return "NotSquare";
    case HC_ERR_WRONG_K: return "WrongK";
    case HC_ERR_NOT_SYMMETRIC: return "NotSymmetric";
    case HC_ERR_CONDITION_FAILS: return "ConditionFails";
    case HC_ERR_CERTIFICATE_INFEASIBLE: return "CertificateInfeasible";
    case HC_ERR_DOMINANT_USER: return "DominantUser";
    case HC_ERR_PLAN_VIOLATES_REPLICATION_RULES: return "PlanViolatesReplicationRules";
    case HC_ERR_BAD_PARTITION: return "BadPartition";
    case HC_ERR_NON_UNIFORM_MU: return "NonUniformMu";
    case HC_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
    case HC_ERR_NULL_SPACE_EMPTY: return "NullSpaceEmpty";
    case HC_ERR_DEGENERATE_DESIRED_DIFFERENCE: return "DegenerateDesiredDifference";
    case HC_ERR_UNKNOWN_TARGET: return "UnknownTarget";
    case HC_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* hc_last_error_message(void) { return last_error.c_str(); }

hc_status hc_spec_from_json(const char* json, hc_spec** out) {
  return guarded([&] {
    require(out, "out");
    *out = new hc_spec{spec_from_json(parse_text(json, "spec"))};
  });
}

hc_status hc_spec_from_file(const char* path, hc_spec** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new hc_spec{spec_from_json(read_json_file(path))};
  });
}

int hc_spec_users(const hc_spec* spec) { return spec ? spec->spec.K : 0; }

void hc_spec_free(hc_spec* spec) { delete spec; }

hc_status hc_analyze(const hc_spec* spec, const hc_options* opts, hc_report** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    emit(cmd_analyze(spec->spec, options_from(opts)), out);
  });
}

hc_status hc_feasibility(const hc_spec* spec, const hc_options* opts, hc_report** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    emit(cmd_feasibility(spec->spec, options_from(opts)), out);
  });
}

hc_status hc_bound(const hc_spec* spec, const hc_options* opts, const char* plan_json, hc_report** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    std::optional<ReplicationPlan> plan;
    if (plan_json) plan = plan_from_json(parse_text(plan_json, "plan"), spec->spec.K);
    emit(cmd_bound(spec->spec, options_from(opts), plan), out);
  });
}

hc_status hc_verify(const hc_spec* spec, const char* channel_json, const char* scheme_json, double tol,
                    hc_report** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    if (!(tol > 0.0)) throw Error(Errc::InvalidArgument, "tol must be positive");
    const ExtendedRealization ext = extended_from_json(parse_text(channel_json, "channel"), spec->spec);
    const LinearScheme scheme = scheme_from_json(parse_text(scheme_json, "scheme"));
    emit(cmd_verify(spec->spec, ext, scheme, tol), out);
  });
}

hc_status hc_sample(const hc_spec* spec, uint64_t seed, int ergodic, hc_report** channel_out,
                    hc_report** scheme_out) {
  return guarded([&] {
    require(spec, "spec");
    require(channel_out, "channel_out");
    const SampleOutput s = cmd_sample(spec->spec, seed, ergodic != 0);
    hc_report* channel = make_report(s.channel, true);
    if (scheme_out && s.scheme) {
      try {
        *scheme_out = make_report(*s.scheme, true);
      } catch (...) {
        delete channel;
        throw;
      }
    }
    *channel_out = channel;
  });
}

hc_status hc_reproduce(const char* target, const hc_options* opts, hc_report** out) {
  return guarded([&] {
    require(target, "target");
    require(out, "out");
    emit(cmd_reproduce(target, options_from(opts)), out);
  });
}

size_t hc_reproduce_target_count(void) { return reproduce_targets().size(); }

const char* hc_reproduce_target_name(size_t index) {
  const auto& t = reproduce_targets();
  return index < t.size() ? t[index].name : nullptr;
}

const char* hc_reproduce_target_description(size_t index) {
  const auto& t = reproduce_targets();
  return index < t.size() ? t[index].description : nullptr;
}

const char* hc_report_json(const hc_report* report) { return report ? report->json.c_str() : ""; }

int hc_report_passed(const hc_report* report) { return report && report->passed ? 1 : 0; }

void hc_report_free(hc_report* report) { delete report; }

}  // extern "C"
