/**
 * @file json_io.hpp
 * @brief JSON forms of specs, channels, schemes, plans, bounds and verdicts.
 *
 * Users are 1-based everywhere in JSON.  Complex scalars are [re, im] pairs
 * and rationals are {"num", "den"} in lowest terms.  Readers throw
 * Error{Parse} on malformed documents and the usual validation errors on
 * well-formed but invalid content.
 */
#pragma once

#include <string>

#include <json.hpp>

#include "halfcake/feasibility.hpp"
#include "halfcake/replication.hpp"
#include "halfcake/schemes.hpp"

namespace halfcake {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const NetworkSpec& spec);
/// Parses and validates.
NetworkSpec spec_from_json(const Json& j);

/// K x K array with null on the diagonal.
Json rank_matrix_json(const std::vector<std::vector<int>>& d);

Json to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j, int rows, int cols);

/// {"seed", "domain", "H_j_i": ...} for every link.
Json to_json(const ChannelRealization& real, const char* domain = "complex");
ChannelRealization channel_from_json(const Json& j, const NetworkSpec& spec);

/// {"n", "slots": [channel, ...]}.
Json to_json(const ExtendedRealization& ext);
/// Accepts either a single channel object or the slotted form.
ExtendedRealization extended_from_json(const Json& j, const NetworkSpec& spec);

Json to_json(const LinearScheme& scheme);
LinearScheme scheme_from_json(const Json& j);

Json to_json(const VerificationReport& rep);
Json to_json(const FlowResult& flow);
Json to_json(const SymmetricClassification& cls);
Json to_json(const HalfCakeVerdict& verdict);

Json to_json(const ReplicaId& r);
Json to_json(const ReplicationPlan& plan);
ReplicationPlan plan_from_json(const Json& j, int K);

Json to_json(const DofBound& bound);
Json to_json(const WeightedDofStatement& statement);

/// Throws Error{Io} or Error{Parse}.
Json read_json_file(const std::string& path);

}  // namespace halfcake
