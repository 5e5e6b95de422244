// Command-line front end over the C API.  Exit status: 0 every check
// passes, 1 a verification or reproduction mismatch, 2 bad input.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "halfcake/halfcake.h"

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitInput = 2;

struct SpecDeleter {
  void operator()(hc_spec* s) const { hc_spec_free(s); }
};
struct ReportDeleter {
  void operator()(hc_report* r) const { hc_report_free(r); }
};
using SpecPtr = std::unique_ptr<hc_spec, SpecDeleter>;
using ReportPtr = std::unique_ptr<hc_report, ReportDeleter>;

struct InputError {
  std::string message;
};

int fail(hc_status status) {
  std::cerr << "error: " << hc_status_name(status) << ": " << hc_last_error_message() << "\n";
  return kExitInput;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError{"cannot open " + path};
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const char* text) {
  if (path.empty() || path == "-") {
    std::fputs(text, stdout);
    std::fflush(stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw InputError{"cannot write " + path};
}

SpecPtr load_spec(const std::string& path) {
  if (path.empty()) throw InputError{"--spec is required"};
  hc_spec* raw = nullptr;
  const hc_status st = hc_spec_from_file(path.c_str(), &raw);
  if (st != HC_OK) throw st;
  return SpecPtr(raw);
}

// `call` fills the report pointer it is handed.
template <class Call>
int emit(Call&& call, const std::string& out) {
  hc_report* raw = nullptr;
  const hc_status st = call(&raw);
  if (st != HC_OK) return fail(st);
  ReportPtr report(raw);
  write_text(out, hc_report_json(report.get()));
  return hc_report_passed(report.get()) ? 0 : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Half-the-cake DoF analysis for rank-constrained MIMO interference channels"};
  app.require_subcommand(1);

  hc_options opts;
  hc_options_default(&opts);
  std::string spec_path, out_path = "-";

  auto add_common = [&](CLI::App* cmd, bool with_spec) {
    if (with_spec) cmd->add_option("--spec", spec_path, "network spec JSON")->required();
    cmd->add_option("--seed", opts.seed, "random seed")->capture_default_str();
    cmd->add_option("--trials", opts.trials, "field evaluations per generic rank")->capture_default_str();
    cmd->add_option("--tol", opts.tol, "relative numerical tolerance")->capture_default_str();
    cmd->add_option("--mu-max", opts.mu_max, "largest replica count searched")->capture_default_str();
    cmd->add_option("--budget", opts.budget, "rank evaluations allowed in the bound search")
        ->capture_default_str();
    cmd->add_option("--out", out_path, "output file, - for stdout")->capture_default_str();
  };

  auto* analyze = app.add_subcommand("analyze", "verdict, best outer bound and verified achievable schemes");
  add_common(analyze, true);

  auto* feasibility = app.add_subcommand("feasibility", "half-the-cake verdict with flow evidence");
  add_common(feasibility, true);

  std::string plan_path;
  auto* bound = app.add_subcommand("bound", "replication outer bound for a plan, or the best one found");
  add_common(bound, true);
  bound->add_option("--plan", plan_path, "replication plan JSON (search when omitted)");

  std::string channel_path, scheme_path;
  auto* verify = app.add_subcommand("verify", "check a linear scheme against a channel realization");
  add_common(verify, true);
  verify->add_option("--channel", channel_path, "channel JSON (one slot or {\"slots\": [...]})")->required();
  verify->add_option("--scheme", scheme_path, "scheme JSON")->required();

  bool ergodic = false;
  std::string scheme_out;
  auto* sample = app.add_subcommand("sample", "draw a generic channel realization");
  add_common(sample, true);
  sample->add_flag("--ergodic", ergodic, "two slots sharing every cross channel");
  sample->add_option("--scheme-out", scheme_out, "also write the half-cake scheme for an ergodic pair");

  std::string target;
  bool list = false;
  auto* reproduce = app.add_subcommand("reproduce", "rerun a worked example and compare with expected values");
  add_common(reproduce, false);
  reproduce->add_option("target", target, "target name (see --list)");
  reproduce->add_flag("--list", list, "list targets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*reproduce) {
      if (list || target.empty()) {
        for (std::size_t i = 0; i < hc_reproduce_target_count(); ++i)
          std::cout << hc_reproduce_target_name(i) << "\t" << hc_reproduce_target_description(i) << "\n";
        return target.empty() && !list ? kExitInput : 0;
      }
      return emit([&](hc_report** r) { return hc_reproduce(target.c_str(), &opts, r); }, out_path);
    }

    const SpecPtr spec = load_spec(spec_path);
    if (*analyze) return emit([&](hc_report** r) { return hc_analyze(spec.get(), &opts, r); }, out_path);
    if (*feasibility) return emit([&](hc_report** r) { return hc_feasibility(spec.get(), &opts, r); }, out_path);
    if (*bound) {
      const std::string plan = plan_path.empty() ? std::string() : read_file(plan_path);
      const char* plan_json = plan_path.empty() ? nullptr : plan.c_str();
      return emit([&](hc_report** r) { return hc_bound(spec.get(), &opts, plan_json, r); }, out_path);
    }
    if (*verify) {
      const std::string channel = read_file(channel_path);
      const std::string scheme = read_file(scheme_path);
      return emit([&](hc_report** r) { return hc_verify(spec.get(), channel.c_str(), scheme.c_str(), opts.tol, r); },
                  out_path);
    }
    if (*sample) {
      hc_report* r = nullptr;
      hc_report* s = nullptr;
      const hc_status st = hc_sample(spec.get(), opts.seed, ergodic ? 1 : 0, &r, scheme_out.empty() ? nullptr : &s);
      if (st != HC_OK) return fail(st);
      ReportPtr channel(r), scheme(s);
      if (!scheme_out.empty() && !scheme)
        throw InputError{"--scheme-out needs --ergodic"};
      write_text(out_path, hc_report_json(channel.get()));
      if (scheme) write_text(scheme_out, hc_report_json(scheme.get()));
      return 0;
    }
  } catch (hc_status st) {
    return fail(st);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitInput;
  }
  return kExitInput;
}
