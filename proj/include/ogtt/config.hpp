#pragma once

#include <string>

#include <json.hpp>

namespace ogtt {

using json = nlohmann::json;

// Reads and parses a JSON config document; error messages carry the path.
json load_json(const std::string& path);

void save_json(const std::string& path, const json& doc);

// Stable content hash of a config document (FNV-1a 64 over the canonical
// dump), reported in results and manifests so runs can be tied to the exact
// configuration that produced them. Not cryptographic.
std::string config_hash(const json& doc);

// Hash of raw file bytes, for input/output digests in run manifests.
std::string file_digest(const std::string& path);

// Canonical float formatting for CSV output: shortest form that survives
// a round-trip, identical across runs.
std::string fmt_double(double v);

}  // namespace ogtt
