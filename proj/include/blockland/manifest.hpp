#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace blockland {

constexpr const char* kToolVersion = "blockland 0.1.0";

// Every training/eval command writes exactly one manifest.json into its
// output directory; every other artifact must be listed in one, which is
// how `report` traces results back to their inputs.
struct RunManifest {
  std::string command;
  std::string tool_version = kToolVersion;
  nlohmann::json config = nlohmann::json::object();  // fully resolved
  nlohmann::json level = nlohmann::json::object();   // level snapshot
  std::vector<std::uint64_t> seeds;
  std::string opponent_identity;  // scripted tag or "checkpoint:<digest>"
  nlohmann::json extra = nlohmann::json::object();   // command-specific fields
  std::string started_at;
  std::string finished_at;
  std::vector<std::string> artifacts;  // paths relative to the manifest dir
};

void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest);
RunManifest read_manifest(const std::filesystem::path& dir);

// True when dir/manifest.json exists and lists the artifact.
bool manifest_covers(const std::filesystem::path& artifact);

}  // namespace blockland
