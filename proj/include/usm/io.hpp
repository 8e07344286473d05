#pragma once

// JSON encoding of instances, matchings, profiles and generator problems.
// Agents are referred to by name; indices follow file order.

#include "usm/models.hpp"
#include "usm/reductions.hpp"

#include <json.hpp>

#include <string>

namespace usm::io {

using Json = nlohmann::ordered_json;

/// Throws InvalidInput on malformed JSON or schema violations.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);

Instance instance_from_json(const Json& doc);
Json instance_to_json(const Instance& instance);

Matching matching_from_json(const Json& doc, const Instance& instance);
Json matching_to_json(const Matching& matching, const Instance& instance);

Json profile_to_json(const Profile& profile, const Instance& instance);

/// {"universe": 6, "triples": [[0,1,2], ...]}, elements 0-based.
X3cInstance x3c_from_json(const Json& doc);
/// {"variables": n, "clauses": [[1,-2], ...]}, DIMACS literals.
TwoSatInstance twosat_from_json(const Json& doc);
/// {"vertices": n, "edges": [[0,1], ...]}.
Graph graph_from_json(const Json& doc);

/// Exact fraction plus a decimal rendering.
Json probability_to_json(const Rational& p);

} // namespace usm::io
