#pragma once

#include "ballcover/covering.hpp"
#include "ballcover/separation.hpp"
#include "ballcover/spaces.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

// JSON exchange formats of the command-line tool. Malformed documents raise
// ParseError; well-formed but mathematically invalid content is left to the
// library's PreconditionError checks.
namespace ballcover::io {

using nlohmann::json;

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// "3,4" or "-1, 0.1".
Vector parse_vector(const std::string& text);

json vector_to_json(const VectorRef& v);
Vector vector_from_json(const json& j, const std::string& what);
/// Accepts a bare array of vectors or an object holding one under `key`.
std::vector<Vector> vectors_from_json(const json& j, const std::string& key);

/// {"dim": 2, "norm": {"kind": "lp", "p": 2 | "inf"}} or
/// {"dim": 2, "norm": {"kind": "polyhedral", "functionals": [[..], ..]}}.
Space space_from_json(const json& j);
json space_to_json(const Space& space);

json certificate_to_json(const CoverageCertificate& c);
json target_to_json(const TargetSet& t);

struct CoveringFile {
    std::vector<Ball> balls;
    std::optional<json> target;
    std::optional<json> certificate;
};

CoveringFile covering_from_json(const json& j);
json covering_to_json(const Covering& c, const TargetSet& target);

/// Rebuilds the target a covering file refers to: a sphere net at the stored
/// resolution, or the stored finite points.
TargetSet target_from_json(const Space& space, const json& j);

/// {"space": {..}, "directions": [..], "points": [..], "closure_points": [..]}.
SelectionInstance instance_from_json(const json& j);

/// Hex SHA-256 of `data`.
std::string sha256_hex(const std::string& data);

}  // namespace ballcover::io
