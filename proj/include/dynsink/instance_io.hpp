#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "dynsink/network.hpp"

namespace dynsink {

// Instance documents: {"positions": [...], "weights": [...], "capacity": c, "tau": t}.
// Any other key is rejected.
RawInstance raw_instance_from_json(const nlohmann::json& doc);
nlohmann::json instance_to_json(const DynamicPathNetwork& net);
nlohmann::json raw_instance_to_json(const RawInstance& raw);

DynamicPathNetwork parse_instance(const std::string& text);
DynamicPathNetwork load_instance(const std::filesystem::path& path);

/// Short hex digest (FNV-1a 64) of the canonical serialization.
std::string instance_digest(const DynamicPathNetwork& net);

}  // namespace dynsink
