#include "blockland/manifest.hpp"

#include <algorithm>

#include "blockland/errors.hpp"
#include "blockland/io.hpp"

namespace blockland {

using nlohmann::json;

void write_manifest(const std::filesystem::path& dir, const RunManifest& m) {
  json j{
      {"command", m.command},
      {"tool_version", m.tool_version},
      {"config", m.config},
      {"level", m.level},
      {"seeds", m.seeds},
      {"opponent_identity", m.opponent_identity},
      {"extra", m.extra},
      {"started_at", m.started_at},
      {"finished_at", m.finished_at},
      {"artifacts", m.artifacts},
  };
  write_file(dir / "manifest.json", j.dump(2) + "\n");
}

RunManifest read_manifest(const std::filesystem::path& dir) {
  json j;
  try {
    j = json::parse(read_file(dir / "manifest.json"));
  } catch (const json::exception& e) {
    throw ConfigError("cannot parse manifest in " + dir.string() + ": " + e.what());
  }
  RunManifest m;
  m.command = j.value("command", std::string());
  m.tool_version = j.value("tool_version", std::string());
  m.config = j.value("config", json::object());
  m.level = j.value("level", json::object());
  m.seeds = j.value("seeds", std::vector<std::uint64_t>{});
  m.opponent_identity = j.value("opponent_identity", std::string());
  m.extra = j.value("extra", json::object());
  m.started_at = j.value("started_at", std::string());
  m.finished_at = j.value("finished_at", std::string());
  m.artifacts = j.value("artifacts", std::vector<std::string>{});
  return m;
}

bool manifest_covers(const std::filesystem::path& artifact) {
  const std::filesystem::path dir = artifact.has_parent_path() ? artifact.parent_path() : ".";
  if (!std::filesystem::exists(dir / "manifest.json")) return false;
  try {
    const RunManifest m = read_manifest(dir);
    const std::string name = artifact.filename().string();
    return std::find(m.artifacts.begin(), m.artifacts.end(), name) != m.artifacts.end();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace blockland
