#include "halfcake/json_io.hpp"

#include <fstream>
#include <sstream>

namespace halfcake {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(Errc::Parse, what); }

const Json& member(const Json& j, const char* key) {
  if (!j.is_object()) parse_error(std::string("expected an object holding \"") + key + "\"");
  const auto it = j.find(key);
  if (it == j.end()) parse_error(std::string("missing key \"") + key + "\"");
  return *it;
}

int as_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) parse_error(what + " must be an integer");
  return j.get<int>();
}

std::vector<int> int_array(const Json& j, const std::string& what) {
  if (!j.is_array()) parse_error(what + " must be an array");
  std::vector<int> out;
  for (const auto& x : j) out.push_back(as_int(x, what + " entry"));
  return out;
}

Complex scalar_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  parse_error("matrix entries must be [re, im] pairs or real numbers");
}

// Shape taken from the document itself.
CMatrix matrix_any_shape(const Json& j) {
  if (!j.is_array()) parse_error("matrix must be an array of rows");
  const int rows = static_cast<int>(j.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(j[0].is_array() ? j[0].size() : 0);
  return matrix_from_json(j, rows, cols);
}

std::vector<int> one_based(const std::vector<int>& v) {
  std::vector<int> out;
  for (int x : v) out.push_back(x + 1);
  return out;
}

const char* evidence_name(RankEvidence e) { return e == RankEvidence::Generic ? "generic" : "realized"; }

}  // namespace

Json to_json(const Rational& r) { return Json{{"num", r.numerator()}, {"den", r.denominator()}}; }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  const Json& num = member(j, "num");
  const Json& den = member(j, "den");
  if (!num.is_number_integer() || !den.is_number_integer()) parse_error("rational parts must be integers");
  if (den.get<std::int64_t>() == 0) parse_error("rational denominator is zero");
  return Rational(num.get<std::int64_t>(), den.get<std::int64_t>());
}

Json rank_matrix_json(const std::vector<std::vector<int>>& d) {
  Json out = Json::array();
  for (std::size_t j = 0; j < d.size(); ++j) {
    Json row = Json::array();
    for (std::size_t i = 0; i < d[j].size(); ++i) row.push_back(i == j ? Json(nullptr) : Json(d[j][i]));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const NetworkSpec& spec) {
  return Json{{"K", spec.K}, {"M", spec.M}, {"N", spec.N}, {"D", rank_matrix_json(spec.D)}};
}

NetworkSpec spec_from_json(const Json& j) {
  NetworkSpec spec;
  spec.K = as_int(member(j, "K"), "K");
  spec.M = int_array(member(j, "M"), "M");
  spec.N = j.contains("N") ? int_array(j["N"], "N") : spec.M;
  const Json& d = member(j, "D");
  if (!d.is_array()) parse_error("D must be an array of rows");
  for (std::size_t r = 0; r < d.size(); ++r) {
    if (!d[r].is_array()) parse_error("D must be an array of rows");
    std::vector<int> row;
    for (std::size_t c = 0; c < d[r].size(); ++c) {
      const Json& x = d[r][c];
      if (r == c) {
        if (!x.is_null() && !(x.is_number_integer() && x.get<int>() == 0))
          parse_error("D diagonal must be null");
        row.push_back(0);
      } else {
        if (x.is_null()) parse_error("D may hold null on the diagonal only");
        row.push_back(as_int(x, "D entry"));
      }
    }
    spec.D.push_back(std::move(row));
  }
  return validate_spec(std::move(spec));
}

Json to_json(const CMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    out.push_back(std::move(row));
  }
  return out;
}

CMatrix matrix_from_json(const Json& j, int rows, int cols) {
  if (!j.is_array()) parse_error("matrix must be an array of rows");
  if (static_cast<int>(j.size()) != rows)
    throw Error(Errc::DimensionMismatch, "matrix has " + std::to_string(j.size()) + " rows, expected " +
                                             std::to_string(rows));
  CMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array()) parse_error("matrix rows must be arrays");
    if (static_cast<int>(j[r].size()) != cols)
      throw Error(Errc::DimensionMismatch, "matrix row has " + std::to_string(j[r].size()) +
                                               " entries, expected " + std::to_string(cols));
    for (int c = 0; c < cols; ++c) m(r, c) = scalar_from_json(j[r][c]);
  }
  return m;
}

Json to_json(const ChannelRealization& real, const char* domain) {
  Json out{{"seed", real.seed}, {"domain", domain}};
  for (int j = 0; j < real.spec.K; ++j)
    for (int i = 0; i < real.spec.K; ++i)
      out["H_" + std::to_string(j + 1) + "_" + std::to_string(i + 1)] = to_json(real.at(j, i));
  return out;
}

ChannelRealization channel_from_json(const Json& j, const NetworkSpec& spec) {
  ChannelRealization real{spec, 0, {}};
  if (j.contains("seed") && j["seed"].is_number_unsigned()) real.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("domain") && j["domain"] != "complex")
    parse_error("channel files hold complex matrices (domain \"complex\")");
  for (int r = 0; r < spec.K; ++r) {
    for (int t = 0; t < spec.K; ++t) {
      const std::string key = "H_" + std::to_string(r + 1) + "_" + std::to_string(t + 1);
      real.blocks.push_back(matrix_from_json(member(j, key.c_str()), spec.N[r], spec.M[t]));
    }
  }
  return real;
}

Json to_json(const ExtendedRealization& ext) {
  Json slots = Json::array();
  for (const auto& s : ext.slots) slots.push_back(to_json(s));
  return Json{{"n", ext.n()}, {"slots", std::move(slots)}};
}

ExtendedRealization extended_from_json(const Json& j, const NetworkSpec& spec) {
  ExtendedRealization ext;
  if (j.is_object() && j.contains("slots")) {
    const Json& slots = j["slots"];
    if (!slots.is_array() || slots.empty()) parse_error("slots must be a nonempty array");
    for (const auto& s : slots) ext.slots.push_back(channel_from_json(s, spec));
    if (j.contains("n") && as_int(j["n"], "n") != ext.n()) parse_error("n disagrees with the number of slots");
  } else {
    ext.slots.push_back(channel_from_json(j, spec));
  }
  return ext;
}

Json to_json(const LinearScheme& scheme) {
  Json users = Json::array();
  for (const auto& u : scheme.users) users.push_back(Json{{"m", u.m}, {"V", to_json(u.V)}, {"U", to_json(u.U)}});
  return Json{{"n", scheme.n}, {"users", std::move(users)}};
}

LinearScheme scheme_from_json(const Json& j) {
  LinearScheme scheme;
  scheme.n = as_int(member(j, "n"), "n");
  if (scheme.n < 1) parse_error("n must be positive");
  const Json& users = member(j, "users");
  if (!users.is_array()) parse_error("users must be an array");
  for (const auto& u : users) {
    UserScheme us;
    us.m = as_int(member(u, "m"), "m");
    us.V = matrix_any_shape(member(u, "V"));
    us.U = matrix_any_shape(member(u, "U"));
    scheme.users.push_back(std::move(us));
  }
  return scheme;
}

Json to_json(const VerificationReport& rep) {
  Json residual = Json::array();
  for (std::size_t j = 0; j < rep.residual.size(); ++j) {
    Json row = Json::array();
    for (std::size_t i = 0; i < rep.residual[j].size(); ++i)
      row.push_back(i == j ? Json(nullptr) : Json(rep.residual[j][i]));
    residual.push_back(std::move(row));
  }
  return Json{{"pass", rep.pass},
              {"tolerance", rep.tolerance},
              {"max_residual", rep.max_residual},
              {"residual", std::move(residual)},
              {"streams", rep.streams},
              {"desired_rank", rep.desired_rank},
              {"sum_dof", to_json(rep.sum_dof)}};
}

Json to_json(const FlowResult& flow) {
  Json out{{"feasible", flow.feasible()}, {"max_flow", flow.max_flow}, {"required", flow.required}};
  if (flow.certificate) {
    out["certificate"] = rank_matrix_json(flow.certificate->dbar);
  } else {
    out["cut"] = Json{{"transmitters", one_based(flow.cut_transmitters)},
                      {"receivers", one_based(flow.cut_receivers)},
                      {"capacity", flow.cut_capacity}};
  }
  return out;
}

Json to_json(const SymmetricClassification& cls) {
  return Json{{"half_cake_optimal", cls.half_cake_optimal},
              {"violated", cls.violated == 0 ? Json(nullptr) : Json(cls.violated)},
              {"all_violated", cls.all_violated},
              {"family", scheme_family_name(cls.family)},
              {"focus", one_based(cls.focus)}};
}

Json to_json(const HalfCakeVerdict& v) {
  Json out{{"status", verdict_status_name(v.status)}, {"half_cake", to_json(v.half_cake)}};
  out["certificate"] = v.certificate ? rank_matrix_json(v.certificate->dbar) : Json(nullptr);
  out["witnesses"] = v.witnesses;
  out["bound"] = v.bound ? to_json(*v.bound) : Json(nullptr);
  if (!v.relabeling.empty()) out["relabeling"] = one_based(v.relabeling);
  if (v.flow) out["flow"] = to_json(*v.flow);
  if (v.symmetric) out["symmetric"] = to_json(*v.symmetric);
  out["notes"] = v.notes;
  return out;
}

Json to_json(const ReplicaId& r) { return Json::array({r.user + 1, r.replica + 1}); }

Json to_json(const ReplicationPlan& plan) {
  Json out{{"mu", plan.mu}};
  if (plan.kind == AssignKind::Mirror) {
    out["assign"] = "mirror";
  } else if (plan.kind == AssignKind::Shifts) {
    out["assign"] = Json{{"shifts", rank_matrix_json(plan.shifts)}};
  } else {
    Json table = Json::array();
    for (std::size_t g = 0; g < plan.assign.size(); ++g) {
      const int own = plan.replica(static_cast<int>(g)).user;
      Json row = Json::array();
      for (std::size_t i = 0; i < plan.assign[g].size(); ++i)
        row.push_back(static_cast<int>(i) == own ? Json(nullptr) : Json(plan.assign[g][i] + 1));
      table.push_back(std::move(row));
    }
    out["assign"] = Json{{"table", std::move(table)}};
  }
  Json partition = Json::array();
  for (const auto& group : plan.partition) {
    Json g = Json::array();
    for (const auto& r : group) g.push_back(to_json(r));
    partition.push_back(std::move(g));
  }
  out["partition"] = std::move(partition);
  return out;
}

ReplicationPlan plan_from_json(const Json& j, int K) {
  const std::vector<int> mu = int_array(member(j, "mu"), "mu");
  if (static_cast<int>(mu.size()) != K)
    throw Error(Errc::PlanViolatesReplicationRules, "mu needs one entry per user");
  for (int m : mu)
    if (m < 1) throw Error(Errc::PlanViolatesReplicationRules, "every user needs at least one replica");

  ReplicationPlan plan;
  const Json& assign = member(j, "assign");
  if (assign.is_string()) {
    if (assign != "mirror") parse_error("assign must be \"mirror\", {\"shifts\"} or {\"table\"}");
    if (mu != std::vector<int>(K, 2))
      throw Error(Errc::PlanViolatesReplicationRules, "mirrored assignment needs two replicas per user");
    plan = mirror_plan(K);
  } else if (assign.is_object() && assign.contains("shifts")) {
    const Json& s = assign["shifts"];
    if (!s.is_array() || static_cast<int>(s.size()) != K) parse_error("shifts must be a K x K array");
    std::vector<std::vector<int>> shifts(K, std::vector<int>(K, 0));
    for (int r = 0; r < K; ++r) {
      if (!s[r].is_array() || static_cast<int>(s[r].size()) != K) parse_error("shifts must be a K x K array");
      for (int c = 0; c < K; ++c)
        if (r != c) shifts[r][c] = as_int(s[r][c], "shift");
    }
    plan = shift_plan(mu, shifts);
  } else if (assign.is_object() && assign.contains("table")) {
    const Json& t = assign["table"];
    if (!t.is_array()) parse_error("table must be an array of rows");
    plan.mu = mu;
    plan.kind = AssignKind::Table;
    for (const auto& row : t) {
      if (!row.is_array()) parse_error("table rows must be arrays");
      std::vector<int> r;
      for (const auto& x : row) r.push_back(x.is_null() ? -1 : as_int(x, "table entry") - 1);
      plan.assign.push_back(std::move(r));
    }
    if (static_cast<int>(plan.assign.size()) != plan.replicas())
      throw Error(Errc::PlanViolatesReplicationRules, "table needs one row per replica receiver");
    for (int g = 0; g < plan.replicas(); ++g) {
      const int own = plan.replica(g).user;
      if (static_cast<int>(plan.assign[g].size()) == K) plan.assign[g][own] = -1;
    }
  } else {
    parse_error("assign must be \"mirror\", {\"shifts\"} or {\"table\"}");
  }
  plan.mu = mu;

  if (j.contains("partition")) {
    const Json& p = j["partition"];
    if (!p.is_array()) parse_error("partition must be an array of two groups");
    plan.partition.clear();
    for (const auto& group : p) {
      if (!group.is_array()) parse_error("partition groups must be arrays");
      std::vector<ReplicaId> g;
      for (const auto& r : group) {
        if (!r.is_array() || r.size() != 2) parse_error("replicas are [user, replica] pairs");
        g.push_back({as_int(r[0], "replica user") - 1, as_int(r[1], "replica index") - 1});
      }
      plan.partition.push_back(std::move(g));
    }
  } else if (plan.partition.empty()) {
    plan.partition = replica_partition(mu);
  }
  return plan;
}

Json to_json(const DofBound& b) {
  return Json{{"bound", to_json(b.value)}, {"mu", b.mu},       {"rank", b.rank},
              {"Mbar1", b.Mbar1},          {"Nbar2", b.Nbar2}, {"Nbar1", b.Nbar1},
              {"Mbar2", b.Mbar2},          {"evidence", evidence_name(b.evidence)},
              {"plan", to_json(b.plan)}};
}

Json to_json(const WeightedDofStatement& s) {
  return Json{{"statement", s.text}, {"weights", s.weights}, {"rhs", s.rhs},   {"rank", s.rank},
              {"Mbar1", s.Mbar1},    {"Nbar2", s.Nbar2},     {"plan", to_json(s.plan)}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Parse, path + ": " + e.what());
  }
}

}  // namespace halfcake
